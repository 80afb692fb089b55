#include "moezipf/estimate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace moezipf {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kBig = 1e300;  // finite sentinel for "objective blew up"
constexpr std::uint64_t kJitterSeed = 0x5eedf17ull;

// --- likelihood ---------------------------------------------------------------

// Tail values are needed at every distinct y and y+1 (plus 1, whose value is
// zeta itself and anchors the cancellation-free denominators). Merged into one
// ascending list so a single walker serves the whole evaluation.
struct LLWork {
    std::vector<std::int64_t> xs;
    std::vector<std::pair<std::size_t, std::size_t>> idx;  // per entry: y, y+1

    static LLWork build(const FrequencyTable& data) {
        LLWork w;
        w.xs.reserve(2 * data.entries().size() + 1);
        w.idx.reserve(data.entries().size());
        w.xs.push_back(1);
        auto push = [&w](std::int64_t x) -> std::size_t {
            if (w.xs.back() != x) w.xs.push_back(x);
            return w.xs.size() - 1;
        };
        for (const auto& [y, c] : data.entries()) {
            const std::size_t i0 = push(y);
            const std::size_t i1 = push(y + 1);
            w.idx.emplace_back(i0, i1);
        }
        return w;
    }
};

double ll_value(double alpha, double beta, const FrequencyTable& data,
                const LLWork& w, const ZetaEvalConfig& cfg) {
    const std::vector<double> zs = hurwitz_tail_batch(alpha, w.xs, cfg);
    const double z = zs[0];
    double acc = 0.0;
    for (std::size_t i = 0; i < data.entries().size(); ++i) {
        const double c = static_cast<double>(data.entries()[i].second);
        const double t0 = zs[w.idx[i].first];
        const double t1 = zs[w.idx[i].second];
        const double d0 = (z - t0) + beta * t0;
        const double d1 = (z - t1) + beta * t1;
        acc += c * (std::log(d0) + std::log(d1));
    }
    const double n = static_cast<double>(data.n());
    return n * (std::log(beta) + std::log(z)) - alpha * data.sum_log() - acc;
}

// --- 1-D root finding (Brent) --------------------------------------------------

struct RootResult {
    double x;
    int iterations;
    bool converged;
};

template <typename F>
RootResult brent_root(F&& f, double a, double b, double fa, double fb,
                      double xtol, double ftol, int maxit) {
    double c = b, fc = fb;
    double d = b - a, e = d;
    int it = 0;
    for (; it < maxit; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || std::abs(fb) <= ftol) {
            return {b, it, true};
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                                   std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return {b, it, false};
}

// --- Nelder-Mead (2-D) ----------------------------------------------------------

using Vec2 = std::array<double, 2>;

struct NMResult {
    Vec2 x;
    double f;
    int iterations;
    bool hit_cap;
};

template <typename F>
NMResult nelder_mead2(F&& f, Vec2 x0, double step, double ftol, double xtol,
                      int maxit) {
    std::array<Vec2, 3> v{x0, Vec2{x0[0] + step, x0[1]},
                          Vec2{x0[0], x0[1] + step}};
    std::array<double, 3> fv{f(v[0]), f(v[1]), f(v[2])};

    auto order = [&] {
        if (fv[0] > fv[1]) {
            std::swap(fv[0], fv[1]);
            std::swap(v[0], v[1]);
        }
        if (fv[1] > fv[2]) {
            std::swap(fv[1], fv[2]);
            std::swap(v[1], v[2]);
        }
        if (fv[0] > fv[1]) {
            std::swap(fv[0], fv[1]);
            std::swap(v[0], v[1]);
        }
    };
    order();

    int it = 0;
    for (; it < maxit; ++it) {
        const double fspread = std::abs(fv[2] - fv[0]);
        const double xspread =
            std::max(std::max(std::abs(v[1][0] - v[0][0]),
                              std::abs(v[2][0] - v[0][0])),
                     std::max(std::abs(v[1][1] - v[0][1]),
                              std::abs(v[2][1] - v[0][1])));
        if (fspread <= ftol * (1.0 + std::abs(fv[0])) && xspread <= xtol) {
            return {v[0], fv[0], it, false};
        }
        const Vec2 centroid{(v[0][0] + v[1][0]) / 2.0,
                            (v[0][1] + v[1][1]) / 2.0};
        auto at = [&](double coef) {
            return Vec2{centroid[0] + coef * (centroid[0] - v[2][0]),
                        centroid[1] + coef * (centroid[1] - v[2][1])};
        };
        const Vec2 xr = at(1.0);
        const double fr = f(xr);
        if (fr < fv[0]) {
            const Vec2 xe = at(2.0);
            const double fe = f(xe);
            if (fe < fr) {
                v[2] = xe;
                fv[2] = fe;
            } else {
                v[2] = xr;
                fv[2] = fr;
            }
        } else if (fr < fv[1]) {
            v[2] = xr;
            fv[2] = fr;
        } else {
            const bool outside = fr < fv[2];
            const Vec2 xc = at(outside ? 0.5 : -0.5);
            const double fc = f(xc);
            if (fc < (outside ? fr : fv[2])) {
                v[2] = xc;
                fv[2] = fc;
            } else {
                // shrink toward the best vertex
                for (int i = 1; i < 3; ++i) {
                    v[i] = {v[0][0] + 0.5 * (v[i][0] - v[0][0]),
                            v[0][1] + 0.5 * (v[i][1] - v[0][1])};
                    fv[i] = f(v[i]);
                }
            }
        }
        order();
    }
    return {v[0], fv[0], it, true};
}

// --- Newton polish on the mean log-likelihood ------------------------------------

struct PolishResult {
    Vec2 x;
    double grad_norm;
    int iterations;
};

// Maximizes a smooth 2-D function with finite-difference derivatives; used to
// sharpen the Nelder-Mead terminus until the per-observation score norm sits
// at the finite-difference noise floor.
template <typename F>
PolishResult newton_polish(F&& f, Vec2 u, int maxit = 40) {
    const double hg = 1e-4;   // gradient step
    const double hh = 5e-4;   // Hessian step
    double fu = f(u);
    Vec2 g{0.0, 0.0};
    double gnorm = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < maxit; ++it) {
        g[0] = (f({u[0] + hg, u[1]}) - f({u[0] - hg, u[1]})) / (2.0 * hg);
        g[1] = (f({u[0], u[1] + hg}) - f({u[0], u[1] - hg})) / (2.0 * hg);
        gnorm = std::hypot(g[0], g[1]);
        if (!std::isfinite(gnorm) || gnorm <= 3e-8) break;

        const double fxx =
            (f({u[0] + hh, u[1]}) - 2.0 * fu + f({u[0] - hh, u[1]})) / (hh * hh);
        const double fyy =
            (f({u[0], u[1] + hh}) - 2.0 * fu + f({u[0], u[1] - hh})) / (hh * hh);
        const double fxy = (f({u[0] + hh, u[1] + hh}) -
                            f({u[0] + hh, u[1] - hh}) -
                            f({u[0] - hh, u[1] + hh}) +
                            f({u[0] - hh, u[1] - hh})) /
                           (4.0 * hh * hh);
        const double det = fxx * fyy - fxy * fxy;
        Vec2 delta;
        if (fxx < 0.0 && det > 0.0) {
            // Newton step: solve H d = -g
            delta = {(-g[0] * fyy + g[1] * fxy) / det,
                     (-g[1] * fxx + g[0] * fxy) / det};
        } else {
            const double scale =
                1.0 / std::max({std::abs(fxx), std::abs(fyy), 1.0});
            delta = {g[0] * scale, g[1] * scale};
        }
        // backtrack until the step improves f
        double lam = 1.0;
        bool moved = false;
        for (int k = 0; k < 25; ++k, lam *= 0.5) {
            const Vec2 cand{u[0] + lam * delta[0], u[1] + lam * delta[1]};
            const double fc = f(cand);
            if (fc > fu) {
                u = cand;
                fu = fc;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return {u, gnorm, it};
}

FitResult make_moe_result(double alpha, double beta, double ll, Method method) {
    FitResult r;
    r.model = Model::MOEZipf;
    r.method = method;
    r.alpha = alpha;
    r.beta = beta;
    r.log_likelihood = ll;
    r.aic = 2.0 * 2 - 2.0 * ll;
    return r;
}

}  // namespace

double log_likelihood(const MOEZipfParams& params, const FrequencyTable& data,
                      const ZetaEvalConfig& cfg) {
    const LLWork w = LLWork::build(data);
    const double v = ll_value(params.alpha(), params.beta(), data, w, cfg);
    if (!std::isfinite(v)) {
        throw NumericalError("log_likelihood: not finite at alpha=" +
                             std::to_string(params.alpha()) + ", beta=" +
                             std::to_string(params.beta()));
    }
    return v;
}

FitResult fit_zipf_mle(const FrequencyTable& data, const FitOptions& opt) {
    if (data.max_value() == 1) {
        throw DegenerateDataError(
            "fit_zipf_mle: all observations equal one; alpha is unbounded");
    }
    const double target = data.sum_log() / static_cast<double>(data.n());
    const ZetaEvalConfig& cfg = opt.zeta;

    // score/n = -zeta'(a)/zeta(a) - mean log, with zeta' by central difference
    auto score = [&](double a) {
        const double h = std::min(1e-6, (a - 1.0) / 16.0);
        const double zp = hurwitz_tail(a + h, 1, cfg);
        const double zm = hurwitz_tail(a - h, 1, cfg);
        const double z = hurwitz_tail(a, 1, cfg);
        return -(zp - zm) / (2.0 * h) / z - target;
    };

    double lo = 1.0 + 2e-6, hi = 32.0;
    double flo = score(lo), fhi = score(hi);
    int expand = 0;
    while (fhi > 0.0 && expand++ < 16) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = score(hi);
    }
    if (!(flo > 0.0) || !(fhi < 0.0)) {
        throw NoRootError("fit_zipf_mle: score has no sign change in [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    const RootResult root =
        brent_root(score, lo, hi, flo, fhi, 1e-10, 0.0, 200);

    FitResult r;
    r.model = Model::Zipf;
    r.method = Method::MLE;
    r.alpha = root.x;
    r.beta = 1.0;
    const double z = hurwitz_tail(root.x, 1, cfg);
    r.log_likelihood =
        -root.x * data.sum_log() - static_cast<double>(data.n()) * std::log(z);
    r.aic = 2.0 - 2.0 * r.log_likelihood;
    r.converged = root.converged;
    r.iterations = root.iterations;
    r.gradient_norm = std::abs(score(root.x));
    return r;
}

FitResult fit_moezipf_mle(const FrequencyTable& data,
                          std::optional<std::pair<double, double>> init,
                          const FitOptions& opt) {
    const LLWork w = LLWork::build(data);
    const double n = static_cast<double>(data.n());
    const ZetaEvalConfig cfg = opt.zeta;

    // mean log-likelihood in unconstrained coordinates (log(alpha-1), log beta)
    auto mean_ll = [&](Vec2 u) -> double {
        const double alpha = 1.0 + std::exp(u[0]);
        const double beta = std::exp(u[1]);
        if (!std::isfinite(alpha) || !std::isfinite(beta) || beta <= 0.0) {
            return -kBig;
        }
        try {
            const double v = ll_value(alpha, beta, data, w, cfg) / n;
            return std::isfinite(v) ? v : -kBig;
        } catch (const Error&) {
            return -kBig;
        }
    };
    auto neg = [&](Vec2 u) { return -mean_ll(u); };

    double alpha0, beta0;
    if (init) {
        alpha0 = init->first;
        beta0 = init->second;
        if (!(alpha0 > kMinAlpha) || !(beta0 > 0.0)) {
            throw DomainError("fit_moezipf_mle: invalid init");
        }
    } else {
        alpha0 = fit_zipf_mle(data, opt).alpha;
        beta0 = 1.0;
    }
    const Vec2 u0{std::log(alpha0 - 1.0), std::log(beta0)};

    std::mt19937_64 jrng(kJitterSeed);
    auto unit = [&jrng] {
        return (static_cast<double>(jrng() >> 11) + 0.5) * 0x1.0p-53;
    };

    std::vector<NMResult> runs;
    int total_iters = 0;
    for (int r = 0; r < std::max(1, opt.restarts); ++r) {
        Vec2 start = u0;
        if (r > 0) {
            start[0] += 0.7 * unit() - 0.35;
            start[1] += 0.7 * unit() - 0.35;
        }
        NMResult res =
            nelder_mead2(neg, start, 0.15, 1e-13, 1e-9, opt.max_iterations);
        total_iters += res.iterations;
        runs.push_back(res);
    }

    std::sort(runs.begin(), runs.end(),
              [](const NMResult& a, const NMResult& b) { return a.f < b.f; });
    const bool all_capped =
        std::all_of(runs.begin(), runs.end(),
                    [](const NMResult& r) { return r.hit_cap; });
    bool agree = true;
    if (runs.size() >= 2) {
        agree = std::max(std::abs(runs[0].x[0] - runs[1].x[0]),
                         std::abs(runs[0].x[1] - runs[1].x[1])) <= 1e-4;
    }

    const PolishResult pol = newton_polish(mean_ll, runs[0].x);
    total_iters += pol.iterations;
    const double alpha_hat = 1.0 + std::exp(pol.x[0]);
    const double beta_hat = std::exp(pol.x[1]);
    const double ll = ll_value(alpha_hat, beta_hat, data, w, cfg);

    FitResult res = make_moe_result(alpha_hat, beta_hat, ll, Method::MLE);
    res.iterations = total_iters;
    res.gradient_norm = pol.grad_norm;
    res.converged = agree && pol.grad_norm <= opt.gradient_tolerance;

    if (all_capped) {
        throw ConvergenceError(
            "fit_moezipf_mle: no restart met the simplex tolerance within " +
                std::to_string(opt.max_iterations) + " iterations",
            res);
    }
    return res;
}

FitResult fit_moezipf_moments(const FrequencyTable& data,
                              const FitOptions& opt) {
    const std::int64_t f1 = data.f1();
    const std::int64_t n = data.n();
    if (f1 < 1) {
        throw DegenerateDataError("fit_moezipf_moments: no observations at 1");
    }
    if (f1 == n) {
        throw DegenerateDataError(
            "fit_moezipf_moments: all observations equal one");
    }
    const double ybar = data.sample_mean();
    const double ratio = static_cast<double>(n - f1) / static_cast<double>(f1);
    const ZetaEvalConfig cfg = opt.zeta;

    // matching P(Y=1) = f1/n pins beta = (n/f1 - 1)/zeta(a,2); the remaining
    // equation E(Y) = ybar is solved for alpha. E(Y) is finite only for
    // alpha > 2, so that is where the bracket lives.
    auto beta_of = [&](double a) { return ratio / hurwitz_tail(a, 2, cfg); };
    int evals = 0;
    auto g = [&](double a) {
        ++evals;
        MOEZipf dist(MOEZipfParams(a, beta_of(a)), cfg);
        return *dist.mean(1e-9) - ybar;
    };

    double lo = 2.0 + 1e-6, hi = 50.0;
    double glo = g(lo), ghi = g(hi);
    while (ghi > 0.0 && hi < 1024.0) {
        lo = hi;
        glo = ghi;
        hi *= 2.0;
        ghi = g(hi);
    }
    if (!(glo > 0.0 && ghi < 0.0)) {
        throw NoRootError(
            "fit_moezipf_moments: E(Y)=mean has no root for alpha in (2, " +
            std::to_string(hi) + "]: g(lo)=" + std::to_string(glo) +
            ", g(hi)=" + std::to_string(ghi) +
            " (f1/n=" + std::to_string(static_cast<double>(f1) / n) +
            ", mean=" + std::to_string(ybar) + ")");
    }
    const double ftol = std::max(1e-7 * std::abs(ybar), 1e-12);
    const RootResult root = brent_root(g, lo, hi, glo, ghi, 1e-11, ftol, 200);

    const double alpha_t = root.x;
    const double beta_t = beta_of(alpha_t);
    const double ll =
        log_likelihood(MOEZipfParams(alpha_t, beta_t), data, cfg);
    FitResult res = make_moe_result(alpha_t, beta_t, ll, Method::Moments);
    res.iterations = evals;
    res.converged = root.converged;
    return res;
}

}  // namespace moezipf
