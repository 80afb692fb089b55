#include "moezipf/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

namespace moezipf {

namespace {

void check_beta(double beta) {
    if (!(beta > 0.0)) {
        throw DomainError("beta must be positive (got " + std::to_string(beta) +
                          ")");
    }
}

}  // namespace

ZipfParams::ZipfParams(double alpha) : alpha_(alpha) {
    if (!(alpha > kMinAlpha)) {
        throw DomainError("ZipfParams: alpha must exceed 1 (got " +
                          std::to_string(alpha) + ")");
    }
}

MOEZipfParams::MOEZipfParams(double alpha, double beta)
    : alpha_(alpha), beta_(beta) {
    if (!(alpha > kMinAlpha)) {
        throw DomainError("MOEZipfParams: alpha must exceed 1 (got " +
                          std::to_string(alpha) + ")");
    }
    check_beta(beta);
}

DiscreteSurvival mo_transform(DiscreteSurvival base, double beta) {
    check_beta(beta);
    return [base = std::move(base), beta](std::int64_t x) {
        const double s = base(x);
        // 1 - (1-beta) s = (1-s) + beta s: both summands non-negative
        return beta * s / ((1.0 - s) + beta * s);
    };
}

void validate_survival(const DiscreteSurvival& s, std::int64_t horizon,
                       double tail_eps) {
    if (horizon < 1) throw DomainError("validate_survival: horizon must be >= 1");
    double prev = s(0);
    if (!(prev <= 1.0 + 1e-12)) {
        throw DomainError("survival: S(0) must be <= 1");
    }
    for (std::int64_t x = 1; x <= horizon;
         x = (x < 64) ? x + 1 : x + x / 16) {
        const double cur = s(x);
        if (cur > prev + 1e-12) {
            throw DomainError("survival: not non-increasing at x=" +
                              std::to_string(x));
        }
        prev = cur;
    }
    if (!(s(horizon) <= tail_eps)) {
        throw DomainError("survival: does not vanish by the horizon");
    }
}

// --- Zipf --------------------------------------------------------------------

Zipf::Zipf(ZipfParams params, ZetaEvalConfig cfg)
    : params_(params),
      cache_(std::make_shared<ZetaCache>(params.alpha(), cfg)) {}

double Zipf::pmf(std::int64_t x) const {
    if (x < 1) throw DomainError("zipf pmf: x must be >= 1");
    return std::pow(static_cast<double>(x), -params_.alpha()) / cache_->zeta();
}

double Zipf::survival(std::int64_t x) const {
    if (x < 0) throw DomainError("zipf survival: x must be >= 0");
    return cache_->tail(x + 1) / cache_->zeta();
}

ZipfMoments Zipf::moments() const {
    const double a = params_.alpha();
    ZipfMoments m;
    if (a > 2.0) {
        if (a - 1.0 <= kMinAlpha) {
            throw AccuracyError("zipf moments: alpha too close to 2");
        }
        const ZetaEvalConfig& cfg = cache_->config();
        m.mean = hurwitz_tail(a - 1.0, 1, cfg) / cache_->zeta();
    }
    if (a > 3.0) {
        if (a - 2.0 <= kMinAlpha) {
            throw AccuracyError("zipf moments: alpha too close to 3");
        }
        const ZetaEvalConfig& cfg = cache_->config();
        const double z = cache_->zeta();
        const double z1 = hurwitz_tail(a - 1.0, 1, cfg);
        const double z2 = hurwitz_tail(a - 2.0, 1, cfg);
        m.variance = (z2 * z - z1 * z1) / (z * z);
    }
    return m;
}

// --- MOEZipf ------------------------------------------------------------------

MOEZipf::MOEZipf(MOEZipfParams params, ZetaEvalConfig cfg)
    : params_(params),
      cache_(std::make_shared<ZetaCache>(params.alpha(), cfg)) {}

// D(x) = zeta - (1-beta) zeta(a,x), arranged as (zeta - zeta(a,x)) + beta
// zeta(a,x) so both summands are positive; the naive form cancels
// catastrophically for small beta at small x.
double MOEZipf::denom(std::int64_t x) const {
    const double t = cache_->tail(x);
    return (cache_->zeta() - t) + params_.beta() * t;
}

double MOEZipf::pmf(std::int64_t x) const {
    if (x < 1) throw DomainError("moezipf pmf: x must be >= 1");
    const double a = params_.alpha();
    return std::pow(static_cast<double>(x), -a) * params_.beta() *
           cache_->zeta() / (denom(x) * denom(x + 1));
}

double MOEZipf::survival(std::int64_t x) const {
    if (x < 0) throw DomainError("moezipf survival: x must be >= 0");
    return params_.beta() * cache_->tail(x + 1) / denom(x + 1);
}

double MOEZipf::consecutive_ratio(std::int64_t x) const {
    if (x < 1) throw DomainError("consecutive_ratio: x must be >= 1");
    const double a = params_.alpha();
    const double base = std::pow(static_cast<double>(x) / (x + 1.0), a);
    return base * denom(x) / denom(x + 2);
}

std::optional<double> MOEZipf::mean() const {
    return mean(cache_->config().rel_tolerance);
}

// E(Y) = sum_{x>=0} S(x). The survival values are summed directly up to N and
// the tail is expanded in powers of u = zeta(a,x+1)/zeta:
//
//   S(x) = (b/z) Z(x+1) [ 1 + bb u + (bb u)^2/(1 - bb u) ],  bb = 1-b
//
// First-order tail: sum_{m>N} Z(m) = zeta(a-1,N+1) - N zeta(a,N+1) (exact).
// Second-order: (b bb / z^2) sum_{m>N} Z(m)^2, summed directly to M with an
// integral bracket beyond. The third-order remainder is bounded by
// (b bb^2 / z^3) Z(N+1) sum Z(m)^2 / (1 - bb u)_min and certified against the
// requested tolerance.
std::optional<double> MOEZipf::mean(double rel_tolerance) const {
    const double a = params_.alpha();
    const double b = params_.beta();
    const double bb = params_.beta_bar();
    if (a <= 2.0) return std::nullopt;
    if (a - 1.0 <= kMinAlpha) {
        throw AccuracyError("moezipf mean: alpha too close to 2");
    }
    const double z = cache_->zeta();
    const ZetaEvalConfig& cfg = cache_->config();

    ZetaWalker walk(a, 1, cfg);  // walk.value() == zeta(a, m)
    double direct = 0.0, comp = 0.0;
    std::int64_t n = 0;  // survival summed for x = 0..n-1, walker at m = n+1

    std::int64_t target_n = 1 << 10;
    const std::int64_t max_n = 1 << 21;
    for (;;) {
        while (n < target_n) {
            const double t = walk.value();  // zeta(a, n+1)
            const double s = b * t / ((z - t) + b * t);
            const double y = s - comp;
            const double tt = direct + y;
            comp = (tt - direct) - y;
            direct = tt;
            ++n;
            walk.advance();
        }
        const double z_n1 = walk.value();  // zeta(a, N+1)
        const double first = hurwitz_tail(a - 1.0, n + 1, cfg) -
                             static_cast<double>(n) * z_n1;
        const double t1 = b / z * first;

        // second-order sum over m = N+1 .. M, then integral bracket
        const std::int64_t m_hi = 4 * n;
        ZetaWalker qwalk = walk;
        double q2 = 0.0;
        for (std::int64_t m = n + 1; m <= m_hi; ++m) {
            q2 += qwalk.value() * qwalk.value();
            qwalk.advance();
        }
        const double am1 = a - 1.0;
        const double md = static_cast<double>(m_hi);
        const double i2 = std::pow(md, 3.0 - 2.0 * a) /
                          ((2.0 * a - 3.0) * am1 * am1);
        const double cross = 2.0 * std::pow(md, 2.0 - 2.0 * a) /
                             ((2.0 * a - 2.0) * am1);
        const double f2 = std::pow(md, 1.0 - 2.0 * a) / (2.0 * a - 1.0);
        const double upper = i2 + cross + f2;
        const double lower = std::pow(md + 1.0, 3.0 - 2.0 * a) /
                             ((2.0 * a - 3.0) * am1 * am1);
        const double q2_mid = q2 + 0.5 * (upper + lower);
        const double q2_slop = 0.5 * (upper - lower);
        const double q2_up = q2 + upper;
        const double t2 = b * bb / (z * z) * q2_mid;

        const double denom_lb = (b < 1.0) ? 1.0 - z_n1 / z : 1.0;
        const double r3 = b * bb * bb / (z * z * z) * z_n1 * q2_up / denom_lb;

        const double est = direct + t1 + t2;
        const double cert = std::abs(r3) +
                            std::abs(b * bb) / (z * z) * q2_slop +
                            32.0 * std::numeric_limits<double>::epsilon() * est;
        if (cert <= rel_tolerance * est) return est;
        if (target_n >= max_n) {
            throw AccuracyError(
                "moezipf mean: tail bound not certified at rel_tolerance=" +
                std::to_string(rel_tolerance));
        }
        target_n *= 2;
    }
}

LogLogSeries MOEZipf::loglog_series(std::int64_t x_max) const {
    if (x_max < 2) throw DomainError("loglog_series: x_max must be >= 2");
    const double a = params_.alpha();
    const double b = params_.beta();
    const double z = cache_->zeta();

    LogLogSeries out;
    out.log_x.reserve(x_max);
    out.log_pmf.reserve(x_max);
    out.slope = -a;
    out.intercept = std::log(b) - std::log(z);

    ZetaWalker walk(a, 1, cache_->config());
    double t_cur = walk.value();  // zeta(a, x)
    for (std::int64_t x = 1; x <= x_max; ++x) {
        walk.advance();
        const double t_next = walk.value();  // zeta(a, x+1)
        const double d0 = (z - t_cur) + b * t_cur;
        const double d1 = (z - t_next) + b * t_next;
        const double xd = static_cast<double>(x);
        const double p = std::pow(xd, -a) * b * z / (d0 * d1);
        out.log_x.push_back(std::log(xd));
        out.log_pmf.push_back(std::log(p));
        t_cur = t_next;
    }
    return out;
}

DiscreteSurvival MOEZipf::survival_fn() const {
    auto cache = cache_;
    const double b = params_.beta();
    return [cache, b](std::int64_t x) {
        if (x < 0) throw DomainError("moezipf survival: x must be >= 0");
        const double t = cache->tail(x + 1);
        return b * t / ((cache->zeta() - t) + b * t);
    };
}

namespace {
constexpr std::int64_t kSamplerTable = 4096;
}

void MOEZipf::ensure_sampler_table() const {
    std::call_once(table_->once, [this] {
        table_->z.resize(kSamplerTable);
        for (std::int64_t i = 0; i < kSamplerTable; ++i) {
            table_->z[static_cast<std::size_t>(i)] = cache_->tail(i + 2);
        }
    });
}

std::vector<std::int64_t> MOEZipf::sample(std::size_t n,
                                          std::uint64_t seed) const {
    if (n < 1) throw DomainError("sample: n must be >= 1");
    ensure_sampler_table();
    const double z = cache_->zeta();
    const double b = params_.beta();

    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        const double t = 1.0 - u;  // in (0,1)
        // smallest x >= 1 with S(x) <= t  <=>  smallest m >= 2 with
        // zeta(a,m) <= t z / (b(1-t) + t); the draw is m-1
        const double tau = t * z / (b * (1.0 - t) + t);
        const std::vector<double>& zt = table_->z;
        std::int64_t m;
        if (zt.back() <= tau) {
            auto it = std::partition_point(
                zt.begin(), zt.end(), [tau](double v) { return v > tau; });
            m = 2 + static_cast<std::int64_t>(it - zt.begin());
        } else {
            m = cache_->tail_inverse(tau, kSamplerTable + 2);
        }
        out.push_back(m - 1);
    }
    return out;
}

}  // namespace moezipf
