#pragma once

#include <cstdint>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "moezipf/errors.hpp"

namespace moezipf {

// Accuracy control for the zeta evaluators.
struct ZetaEvalConfig {
    double rel_tolerance = 1e-12;  // target relative error, must be in (0, 1e-6)
    int max_terms = 1024;          // cap on direct summation before giving up, >= 16

    void validate() const;
};

// Smallest alpha the evaluators accept; below this the series is (numerically)
// divergent and the distributions are undefined anyway.
inline constexpr double kMinAlpha = 1.0 + 1e-9;

// Riemann zeta(alpha) = sum_{k>=1} k^-alpha, alpha > 1.
double riemann_zeta(double alpha, const ZetaEvalConfig& cfg = {});

// Tail sum zeta(alpha, x) = sum_{k>=x} k^-alpha, alpha > 1, x >= 1.
double hurwitz_tail(double alpha, std::int64_t x, const ZetaEvalConfig& cfg = {});

// Smallest integer x >= 1 with hurwitz_tail(alpha, x) <= target.
// Requires 0 < target <= riemann_zeta(alpha).
std::int64_t hurwitz_tail_inverse(double alpha, double target,
                                  const ZetaEvalConfig& cfg = {});

// Tail values at an ascending list of points, sharing work between neighbours
// (the forward recurrence zeta(a,x+1) = zeta(a,x) - x^-a, re-anchored before
// drift matters). Input must be sorted ascending, all >= 1.
std::vector<double> hurwitz_tail_batch(double alpha,
                                       std::span<const std::int64_t> xs,
                                       const ZetaEvalConfig& cfg = {});

// Fixed-alpha evaluator with a memo over x. Fitting code evaluates the tail at
// the same observed values over and over at one alpha; repeated lookups are
// amortized O(1). Thread-safe: the memo is guarded, values are pure in (a, x).
class ZetaCache {
public:
    explicit ZetaCache(double alpha, ZetaEvalConfig cfg = {});

    double alpha() const noexcept { return alpha_; }
    double zeta() const noexcept { return zeta_; }  // == tail(1)
    const ZetaEvalConfig& config() const noexcept { return cfg_; }

    double tail(std::int64_t x) const;

    // Smallest x >= lo_hint with tail(x) <= target; used by the sampler, which
    // already knows a lower bound. Requires target > 0 and tail(lo_hint) known
    // to possibly exceed target.
    std::int64_t tail_inverse(double target, std::int64_t lo_hint = 1) const;

private:
    double alpha_;
    ZetaEvalConfig cfg_;
    double zeta_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::int64_t, double> memo_;
};

// Incremental forward walker over zeta(alpha, x): produces tail values at
// x, x+1, x+2, ... with automatic re-anchoring. Single-threaded use.
class ZetaWalker {
public:
    ZetaWalker(double alpha, std::int64_t start, const ZetaEvalConfig& cfg = {});

    std::int64_t x() const noexcept { return x_; }
    double value() const noexcept { return value_; }  // zeta(alpha, x())

    void advance();                  // x -> x+1
    void seek(std::int64_t x_new);   // jump forward to x_new >= x()

private:
    void anchor(std::int64_t x_new);

    double alpha_;
    ZetaEvalConfig cfg_;
    std::int64_t x_;
    double value_;
    double anchor_value_;
    int steps_ = 0;
};

}  // namespace moezipf
