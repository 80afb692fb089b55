#include "moezipf/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace moezipf {

namespace {

struct EmEval {
    double value;
    double err;  // magnitude of the first omitted Bernoulli term
};

// Euler-Maclaurin evaluation of sum_{k>=x} k^-a with n direct terms:
//
//   sum_{k=x}^{N-1} k^-a + N^{1-a}/(a-1) + N^-a/2 + a N^{-a-1}/12
//                 - a(a+1)(a+2) N^{-a-3}/720
//
// The remainder of the corrected series is bounded in magnitude by the next
// term, a(a+1)(a+2)(a+3)(a+4) N^{-a-5}/30240 (f(t)=t^-a is completely
// monotone, so the Bernoulli-term remainders alternate and shrink once the
// terms decrease).
EmEval em_tail(double a, double x, int n_terms) {
    double sum = 0.0, comp = 0.0;
    double k = x;
    for (int i = 0; i < n_terms; ++i, k += 1.0) {
        const double term = std::pow(k, -a);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (term <= sum * 1e-17) {
            k += 1.0;
            break;
        }
    }
    const double n = k;  // first index not in the direct sum
    const double inv = 1.0 / n;
    const double fn = std::pow(n, -a);
    const double integral = fn * n / (a - 1.0);
    const double p3 = a * (a + 1.0) * (a + 2.0);
    const double inv2 = inv * inv;
    double value = sum + integral + 0.5 * fn + a * fn * inv / 12.0
                   - p3 * fn * inv * inv2 / 720.0;
    double err = p3 * (a + 3.0) * (a + 4.0) * fn * inv * inv2 * inv2 / 30240.0;
    return {value, err};
}

double tail_checked(double a, double x, const ZetaEvalConfig& cfg) {
    int n = 16;
    for (;;) {
        const EmEval e = em_tail(a, x, n);
        if (e.value == 0.0) return 0.0;  // underflow; true value < DBL_MIN
        if (e.err <= cfg.rel_tolerance * e.value) return e.value;
        if (n >= cfg.max_terms) {
            throw AccuracyError("hurwitz_tail: tolerance " +
                                std::to_string(cfg.rel_tolerance) +
                                " unreachable within max_terms=" +
                                std::to_string(cfg.max_terms) + " at alpha=" +
                                std::to_string(a) + ", x=" + std::to_string(x));
        }
        n = std::min(n * 2, cfg.max_terms);
    }
}

void check_alpha(double alpha) {
    if (!(alpha > kMinAlpha)) {
        throw DomainError("zeta: alpha must exceed 1 (got " +
                          std::to_string(alpha) + ")");
    }
}

}  // namespace

void ZetaEvalConfig::validate() const {
    if (!(rel_tolerance > 0.0) || !(rel_tolerance < 1e-6)) {
        throw DomainError("ZetaEvalConfig: rel_tolerance must be in (0, 1e-6)");
    }
    if (max_terms < 16) {
        throw DomainError("ZetaEvalConfig: max_terms must be >= 16");
    }
}

double riemann_zeta(double alpha, const ZetaEvalConfig& cfg) {
    cfg.validate();
    check_alpha(alpha);
    return tail_checked(alpha, 1.0, cfg);
}

double hurwitz_tail(double alpha, std::int64_t x, const ZetaEvalConfig& cfg) {
    cfg.validate();
    check_alpha(alpha);
    if (x < 1) throw DomainError("hurwitz_tail: x must be >= 1");
    return tail_checked(alpha, static_cast<double>(x), cfg);
}

std::int64_t hurwitz_tail_inverse(double alpha, double target,
                                  const ZetaEvalConfig& cfg) {
    cfg.validate();
    check_alpha(alpha);
    if (!(target > 0.0)) {
        throw DomainError("hurwitz_tail_inverse: target must be positive");
    }
    const double z1 = tail_checked(alpha, 1.0, cfg);
    if (target > z1) {
        throw DomainError("hurwitz_tail_inverse: target exceeds zeta(alpha)");
    }
    if (z1 <= target) return 1;

    auto tail_at = [&](std::int64_t x) {
        return tail_checked(alpha, static_cast<double>(x), cfg);
    };
    std::int64_t lo = 1, hi = 2;
    while (tail_at(hi) > target) {
        lo = hi;
        if (hi > (std::int64_t{1} << 61)) {
            throw AccuracyError("hurwitz_tail_inverse: no x found below 2^62");
        }
        hi *= 2;
    }
    // invariant: tail(lo) > target >= tail(hi)
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (tail_at(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

// --- forward walker --------------------------------------------------------

namespace {
// Re-anchor after this many recurrence steps, or earlier once the running
// value has shrunk well below the anchor (each subtraction rounds at the
// anchor's magnitude, so the relative drift is steps * eps * anchor/value).
constexpr int kMaxSteps = 64;
constexpr double kAnchorRatio = 1.0 / 32.0;
constexpr std::int64_t kSeekGap = 48;
}  // namespace

ZetaWalker::ZetaWalker(double alpha, std::int64_t start,
                       const ZetaEvalConfig& cfg)
    : alpha_(alpha), cfg_(cfg) {
    cfg_.validate();
    check_alpha(alpha);
    if (start < 1) throw DomainError("ZetaWalker: start must be >= 1");
    anchor(start);
}

void ZetaWalker::anchor(std::int64_t x_new) {
    x_ = x_new;
    value_ = tail_checked(alpha_, static_cast<double>(x_new), cfg_);
    anchor_value_ = value_;
    steps_ = 0;
}

void ZetaWalker::advance() {
    value_ -= std::pow(static_cast<double>(x_), -alpha_);
    ++x_;
    ++steps_;
    if (steps_ >= kMaxSteps || value_ <= anchor_value_ * kAnchorRatio) {
        anchor(x_);
    }
}

void ZetaWalker::seek(std::int64_t x_new) {
    if (x_new < x_) throw DomainError("ZetaWalker: seek is forward-only");
    if (x_new - x_ > kSeekGap) {
        anchor(x_new);
        return;
    }
    while (x_ < x_new) advance();
}

std::vector<double> hurwitz_tail_batch(double alpha,
                                       std::span<const std::int64_t> xs,
                                       const ZetaEvalConfig& cfg) {
    std::vector<double> out;
    out.reserve(xs.size());
    if (xs.empty()) return out;
    ZetaWalker w(alpha, xs.front(), cfg);
    for (const std::int64_t x : xs) {
        w.seek(x);
        out.push_back(w.value());
    }
    return out;
}

// --- memoizing cache --------------------------------------------------------

ZetaCache::ZetaCache(double alpha, ZetaEvalConfig cfg)
    : alpha_(alpha), cfg_(cfg) {
    cfg_.validate();
    check_alpha(alpha);
    zeta_ = tail_checked(alpha_, 1.0, cfg_);
    memo_.emplace(1, zeta_);
}

double ZetaCache::tail(std::int64_t x) const {
    if (x < 1) throw DomainError("ZetaCache::tail: x must be >= 1");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(x);
        if (it != memo_.end()) return it->second;
    }
    const double v = tail_checked(alpha_, static_cast<double>(x), cfg_);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(x, v);
    return v;
}

std::int64_t ZetaCache::tail_inverse(double target, std::int64_t lo_hint) const {
    if (!(target > 0.0)) {
        throw DomainError("ZetaCache::tail_inverse: target must be positive");
    }
    std::int64_t lo = std::max<std::int64_t>(1, lo_hint);
    if (tail(lo) <= target) return lo;
    std::int64_t hi = lo * 2;
    while (tail(hi) > target) {
        lo = hi;
        if (hi > (std::int64_t{1} << 61)) {
            throw AccuracyError("ZetaCache::tail_inverse: no x below 2^62");
        }
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (tail(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace moezipf
