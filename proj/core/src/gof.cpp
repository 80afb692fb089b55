#include "moezipf/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "moezipf/dist.hpp"

namespace moezipf {

GroupedCells group_tail(const FrequencyTable& data, const FitResult& model,
                        std::int64_t threshold) {
    if (threshold < 2) {
        throw DomainError("group_tail: threshold must be >= 2");
    }
    if (threshold > data.max_value() + 1) {
        throw DomainError("group_tail: threshold exceeds max observed value + 1");
    }
    const MOEZipf dist(MOEZipfParams(
        model.alpha, model.model == Model::Zipf ? 1.0 : model.beta));
    const double n = static_cast<double>(data.n());

    GroupedCells out;
    out.threshold = threshold;
    out.n = data.n();
    out.cells.reserve(static_cast<std::size_t>(threshold));
    for (std::int64_t x = 1; x < threshold; ++x) {
        out.cells.push_back({x, x, data.count_at(x), n * dist.pmf(x)});
    }
    std::int64_t tail_obs = 0;
    for (const auto& [v, c] : data.entries()) {
        if (v >= threshold) tail_obs += c;
    }
    out.cells.push_back(
        {threshold, -1, tail_obs, n * dist.survival(threshold - 1)});
    return out;
}

GofResult pearson_chi2(const GroupedCells& cells, const FitResult& model) {
    GofResult r;
    r.cells = cells;
    r.model = model;
    double x2 = 0.0;
    for (const GofCell& c : cells.cells) {
        if (c.expected < 1e-12) {
            throw DegenerateCellsError(
                "pearson_chi2: expected count below 1e-12 in cell [" +
                std::to_string(c.lo) + ", " + std::to_string(c.hi) + "]");
        }
        if (c.expected < 5.0) ++r.n_small_expected;
        const double d = static_cast<double>(c.observed) - c.expected;
        x2 += d * d / c.expected;
    }
    r.x2 = x2;
    const int df = static_cast<int>(cells.cells.size()) - 1 - model.n_params();
    r.df = std::max(1, df);
    r.p_value = chi2_upper_tail(r.df, x2);
    return r;
}

namespace {

// Regularized incomplete gamma, NR-style: P(a,x) by series for x < a+1,
// Q(a,x) by Lentz continued fraction otherwise.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double chi2_upper_tail(int df, double x) {
    if (df < 1) throw DomainError("chi2_upper_tail: df must be >= 1");
    if (!(x >= 0.0)) throw DomainError("chi2_upper_tail: x must be >= 0");
    if (x == 0.0) return 1.0;
    const double a = 0.5 * df;
    const double xx = 0.5 * x;
    if (xx < a + 1.0) return 1.0 - gamma_p_series(a, xx);
    return gamma_q_contfrac(a, xx);
}

double aic(double log_likelihood, int n_params) {
    return 2.0 * n_params - 2.0 * log_likelihood;
}

}  // namespace moezipf
