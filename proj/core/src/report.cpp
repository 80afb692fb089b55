#include "moezipf/report.hpp"

#include <cmath>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace moezipf {

namespace {

using nlohmann::json;

Verdict pick_verdict(const FitReport& r) {
    Verdict v = Verdict::ZipfMle;
    double best = r.zipf_mle.aic;
    if (r.moezipf_moments.aic < best) {
        best = r.moezipf_moments.aic;
        v = Verdict::MoezipfMoments;
    }
    if (r.moezipf_mle.aic < best) {
        v = Verdict::MoezipfMle;
    }
    return v;
}

json fit_to_json(const FitResult& f) {
    json j{
        {"model", to_string(f.model)},
        {"method", to_string(f.method)},
        {"alpha", f.alpha},
        {"beta", f.beta},
        {"log_likelihood", f.log_likelihood},
        {"aic", f.aic},
        {"converged", f.converged},
        {"iterations", f.iterations},
    };
    if (f.gradient_norm) j["gradient_norm"] = *f.gradient_norm;
    return j;
}

FitResult fit_from_json(const json& j) {
    FitResult f;
    const std::string model = j.at("model");
    f.model = model == "zipf" ? Model::Zipf : Model::MOEZipf;
    const std::string method = j.at("method");
    f.method = method == "mle" ? Method::MLE : Method::Moments;
    f.alpha = j.at("alpha");
    f.beta = j.at("beta");
    f.log_likelihood = j.at("log_likelihood");
    f.aic = j.at("aic");
    f.converged = j.at("converged");
    f.iterations = j.at("iterations");
    if (j.contains("gradient_norm")) {
        f.gradient_norm = j.at("gradient_norm").get<double>();
    }
    return f;
}

json gof_to_json(const GofResult& g) {
    json cells = json::array();
    for (const GofCell& c : g.cells.cells) {
        cells.push_back(json{{"lo", c.lo},
                             {"hi", c.hi},
                             {"observed", c.observed},
                             {"expected", c.expected}});
    }
    return json{
        {"x2", g.x2},
        {"df", g.df},
        {"p_value", g.p_value},
        {"threshold", g.cells.threshold},
        {"n", g.cells.n},
        {"n_small_expected", g.n_small_expected},
        {"model", fit_to_json(g.model)},
        {"cells", std::move(cells)},
    };
}

GofResult gof_from_json(const json& j) {
    GofResult g;
    g.x2 = j.at("x2");
    g.df = j.at("df");
    g.p_value = j.at("p_value");
    g.cells.threshold = j.at("threshold");
    g.cells.n = j.at("n");
    g.n_small_expected = j.at("n_small_expected");
    g.model = fit_from_json(j.at("model"));
    for (const json& c : j.at("cells")) {
        g.cells.cells.push_back({c.at("lo").get<std::int64_t>(),
                                 c.at("hi").get<std::int64_t>(),
                                 c.at("observed").get<std::int64_t>(),
                                 c.at("expected").get<double>()});
    }
    return g;
}

}  // namespace

FitReport run_fit(const FrequencyTable& data, std::int64_t threshold,
                  const FitRunOptions& opt) {
    FitReport r;
    r.dataset = {data.n(), data.max_value(),
                 static_cast<double>(data.f1()) / static_cast<double>(data.n()),
                 data.sample_mean()};
    r.threshold = threshold;

    r.zipf_mle = fit_zipf_mle(data, opt.fit);
    const auto init = std::make_pair(r.zipf_mle.alpha, 1.0);
    if (opt.concurrent) {
        auto moments = std::async(std::launch::async, [&] {
            return fit_moezipf_moments(data, opt.fit);
        });
        r.moezipf_mle = fit_moezipf_mle(data, init, opt.fit);
        r.moezipf_moments = moments.get();
    } else {
        r.moezipf_moments = fit_moezipf_moments(data, opt.fit);
        r.moezipf_mle = fit_moezipf_mle(data, init, opt.fit);
    }

    r.gof_zipf_mle = pearson_chi2(group_tail(data, r.zipf_mle, threshold),
                                  r.zipf_mle);
    r.gof_moezipf_moments = pearson_chi2(
        group_tail(data, r.moezipf_moments, threshold), r.moezipf_moments);
    r.gof_moezipf_mle = pearson_chi2(
        group_tail(data, r.moezipf_mle, threshold), r.moezipf_mle);
    r.verdict = pick_verdict(r);
    return r;
}

std::string report_to_json(const FitReport& r) {
    json j{
        {"schema_version", 1},
        {"dataset",
         json{{"n", r.dataset.n},
              {"max_value", r.dataset.max_value},
              {"f1_over_n", r.dataset.f1_over_n},
              {"sample_mean", r.dataset.sample_mean}}},
        {"threshold", r.threshold},
        {"fits",
         json{{"zipf_mle", fit_to_json(r.zipf_mle)},
              {"moezipf_moments", fit_to_json(r.moezipf_moments)},
              {"moezipf_mle", fit_to_json(r.moezipf_mle)}}},
        {"gof",
         json{{"zipf_mle", gof_to_json(r.gof_zipf_mle)},
              {"moezipf_moments", gof_to_json(r.gof_moezipf_moments)},
              {"moezipf_mle", gof_to_json(r.gof_moezipf_mle)}}},
        {"verdict", to_string(r.verdict)},
    };
    return j.dump(2) + "\n";
}

FitReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    FitReport r;
    const json& d = j.at("dataset");
    r.dataset = {d.at("n").get<std::int64_t>(),
                 d.at("max_value").get<std::int64_t>(),
                 d.at("f1_over_n").get<double>(),
                 d.at("sample_mean").get<double>()};
    r.threshold = j.at("threshold");
    const json& fits = j.at("fits");
    r.zipf_mle = fit_from_json(fits.at("zipf_mle"));
    r.moezipf_moments = fit_from_json(fits.at("moezipf_moments"));
    r.moezipf_mle = fit_from_json(fits.at("moezipf_mle"));
    const json& gof = j.at("gof");
    r.gof_zipf_mle = gof_from_json(gof.at("zipf_mle"));
    r.gof_moezipf_moments = gof_from_json(gof.at("moezipf_moments"));
    r.gof_moezipf_mle = gof_from_json(gof.at("moezipf_mle"));
    const std::string v = j.at("verdict");
    r.verdict = v == "zipf_mle" ? Verdict::ZipfMle
                : v == "moezipf_moments" ? Verdict::MoezipfMoments
                                         : Verdict::MoezipfMle;
    return r;
}

namespace {

void table_row(std::ostream& os, const std::string& name,
               const FitResult& f, const GofResult& g) {
    os << std::left << std::setw(20) << name << std::right;
    os << std::setw(9) << std::fixed << std::setprecision(3) << f.alpha;
    os << std::setw(9) << std::setprecision(3) << f.beta;
    os << std::setw(14) << std::setprecision(2) << f.log_likelihood;
    os << std::setw(12) << std::setprecision(2) << g.x2;
    os << std::setw(9) << std::setprecision(3) << g.p_value;
    os << std::setw(14) << std::setprecision(2) << f.aic;
    os << '\n';
}

}  // namespace

void write_report_table(std::ostream& os, const FitReport& r) {
    os << "n = " << r.dataset.n << ", max value = " << r.dataset.max_value
       << ", f1/n = " << std::fixed << std::setprecision(4)
       << r.dataset.f1_over_n << ", mean = " << std::setprecision(4)
       << r.dataset.sample_mean << ", tail threshold = " << r.threshold
       << "\n\n";
    os << std::left << std::setw(20) << "Distrib." << std::right
       << std::setw(9) << "alpha" << std::setw(9) << "beta" << std::setw(14)
       << "log-like" << std::setw(12) << "X2" << std::setw(9) << "p-val"
       << std::setw(14) << "AIC" << '\n';
    table_row(os, "Zipf", r.zipf_mle, r.gof_zipf_mle);
    table_row(os, "MOEZipf (moments)", r.moezipf_moments,
              r.gof_moezipf_moments);
    table_row(os, "MOEZipf (mle)", r.moezipf_mle, r.gof_moezipf_mle);
    os << "\nbest by AIC: " << to_string(r.verdict) << '\n';
    const int small = r.gof_zipf_mle.n_small_expected +
                      r.gof_moezipf_moments.n_small_expected +
                      r.gof_moezipf_mle.n_small_expected;
    if (small > 0) {
        os << "warning: " << small
           << " grouped cell(s) have expected count < 5\n";
    }
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::ZipfMle: return "zipf_mle";
        case Verdict::MoezipfMoments: return "moezipf_moments";
        case Verdict::MoezipfMle: return "moezipf_mle";
    }
    return "?";
}

const char* to_string(Model m) {
    return m == Model::Zipf ? "zipf" : "moezipf";
}

const char* to_string(Method m) {
    return m == Method::MLE ? "mle" : "moments";
}

}  // namespace moezipf
