#include "moezipf/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "moezipf/dist.hpp"

namespace moezipf {

namespace {

// shortest exact decimal form, stable across runs
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

FitReport cmd_fit(const IngestSpec& input, std::int64_t threshold,
                  const std::string& out_json, const FitRunOptions& opt) {
    const FrequencyTable data = ingest(input);
    const FitReport report = run_fit(data, threshold, opt);
    std::ofstream os(out_json, std::ios::binary);
    if (!os) throw Error("cmd_fit: cannot write '" + out_json + "'");
    os << report_to_json(report);
    return report;
}

void cmd_pmf(double alpha, double beta, std::int64_t x_max, std::ostream& os) {
    if (x_max < 1) throw DomainError("cmd_pmf: x_max must be >= 1");
    const MOEZipf dist(MOEZipfParams(alpha, beta));
    const double slope = -alpha;
    const double intercept = std::log(beta) - std::log(dist.zeta());
    os << "# moezipf pmf alpha=" << fmt(alpha) << " beta=" << fmt(beta) << "\n";
    os << "# asymptote_slope=" << fmt(slope)
       << " asymptote_intercept=" << fmt(intercept) << "\n";
    os << "x,pmf,log_x,log_pmf\n";
    for (std::int64_t x = 1; x <= x_max; ++x) {
        const double p = dist.pmf(x);
        os << x << ',' << fmt(p) << ',' << fmt(std::log(static_cast<double>(x)))
           << ',' << fmt(std::log(p)) << "\n";
    }
}

void cmd_sample(double alpha, double beta, std::int64_t n, std::uint64_t seed,
                std::ostream& os) {
    if (n < 1) throw DomainError("cmd_sample: n must be >= 1");
    const MOEZipf dist(MOEZipfParams(alpha, beta));
    const auto draws = dist.sample(static_cast<std::size_t>(n), seed);
    for (const std::int64_t d : draws) os << d << "\n";
    os << "# moezipf sample alpha=" << fmt(alpha) << " beta=" << fmt(beta)
       << " n=" << n << " seed=" << seed << "\n";
}

void cmd_loglog(const FrequencyTable& data, const FitReport& report,
                std::ostream& os) {
    const Zipf zipf(ZipfParams(report.zipf_mle.alpha));
    const MOEZipf moe(
        MOEZipfParams(report.moezipf_mle.alpha, report.moezipf_mle.beta));
    const double n = static_cast<double>(data.n());
    os << "x,log_x,log_obs_relfreq,log_zipf_pmf,log_moezipf_pmf\n";
    for (const auto& [v, c] : data.entries()) {
        const double relfreq = static_cast<double>(c) / n;
        os << v << ',' << fmt(std::log(static_cast<double>(v))) << ','
           << fmt(std::log(relfreq)) << ',' << fmt(std::log(zipf.pmf(v)))
           << ',' << fmt(std::log(moe.pmf(v))) << "\n";
    }
}

}  // namespace moezipf
