#pragma once

#include <cstdint>
#include <vector>

#include "moezipf/estimate.hpp"
#include "moezipf/freq_table.hpp"

namespace moezipf {

struct GofCell {
    std::int64_t lo = 0;        // inclusive
    std::int64_t hi = 0;        // inclusive; -1 marks an unbounded tail cell
    std::int64_t observed = 0;
    double expected = 0.0;
};

// Cells {1}, {2}, ..., {threshold-1} plus one tail cell [threshold, inf).
struct GroupedCells {
    std::vector<GofCell> cells;
    std::int64_t threshold = 0;
    std::int64_t n = 0;
};

struct GofResult {
    double x2 = 0.0;
    int df = 0;
    double p_value = 1.0;
    GroupedCells cells;
    FitResult model;
    int n_small_expected = 0;  // cells with expected < 5 (warn, never regroup)
};

// Expected counts come from the fitted model's pmf for the singleton cells
// and n * survival(threshold - 1) for the tail cell. Empty interior cells are
// retained with observed = 0.
GroupedCells group_tail(const FrequencyTable& data, const FitResult& model,
                        std::int64_t threshold);

GofResult pearson_chi2(const GroupedCells& cells, const FitResult& model);

// Upper tail of the chi-square(df) distribution at x: Q(df/2, x/2) via the
// regularized incomplete gamma function (series / continued fraction).
double chi2_upper_tail(int df, double x);

// Akaike information criterion, 2k - 2 loglik.
double aic(double log_likelihood, int n_params);

}  // namespace moezipf
