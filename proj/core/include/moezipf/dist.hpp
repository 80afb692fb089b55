#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "moezipf/errors.hpp"
#include "moezipf/zeta.hpp"

namespace moezipf {

// Shape parameter bundle for Zipf(alpha): pmf x^-alpha / zeta(alpha), x >= 1.
class ZipfParams {
public:
    explicit ZipfParams(double alpha);
    double alpha() const noexcept { return alpha_; }

private:
    double alpha_;
};

// Parameter bundle for the Marshall-Olkin extended Zipf(alpha, beta).
// beta = 1 recovers Zipf(alpha) exactly; beta_bar = 1 - beta is derived.
class MOEZipfParams {
public:
    MOEZipfParams(double alpha, double beta);
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double beta_bar() const noexcept { return 1.0 - beta_; }

private:
    double alpha_;
    double beta_;
};

// A discrete survival function S(x) = P(W > x) on integer x >= 0:
// S(0) <= 1, non-increasing, -> 0.
using DiscreteSurvival = std::function<double(std::int64_t)>;

// Marshall-Olkin transform of a survival function:
//   S(x) -> beta S(x) / (1 - (1-beta) S(x)),  beta > 0.
// beta = 1 is the identity; composing two transforms multiplies the betas.
DiscreteSurvival mo_transform(DiscreteSurvival base, double beta);

// Check the DiscreteSurvival contract up to `horizon` (S(0) <= 1,
// non-increasing, below `tail_eps` at the horizon). Throws DomainError.
void validate_survival(const DiscreteSurvival& s, std::int64_t horizon,
                       double tail_eps = 1e-3);

struct ZipfMoments {
    std::optional<double> mean;      // nullopt: infinite (alpha <= 2)
    std::optional<double> variance;  // nullopt: infinite (alpha <= 3)
};

struct LogLogSeries {
    std::vector<double> log_x;    // natural logs, x = 1..x_max
    std::vector<double> log_pmf;
    double slope;       // -alpha
    double intercept;   // log(beta) - log(zeta(alpha))
};

class Zipf {
public:
    explicit Zipf(ZipfParams params, ZetaEvalConfig cfg = {});

    const ZipfParams& params() const noexcept { return params_; }
    double zeta() const noexcept { return cache_->zeta(); }

    double pmf(std::int64_t x) const;        // x >= 1
    double survival(std::int64_t x) const;   // x >= 0
    ZipfMoments moments() const;

private:
    ZipfParams params_;
    std::shared_ptr<ZetaCache> cache_;
};

class MOEZipf {
public:
    explicit MOEZipf(MOEZipfParams params, ZetaEvalConfig cfg = {});

    const MOEZipfParams& params() const noexcept { return params_; }
    double zeta() const noexcept { return cache_->zeta(); }

    double pmf(std::int64_t x) const;        // x >= 1
    double survival(std::int64_t x) const;   // x >= 0

    // E(Y) as sum of survival values with a certified tail correction; nullopt
    // when alpha <= 2 (infinite mean). AccuracyError if the tail bound cannot
    // be brought below rel_tolerance * result.
    std::optional<double> mean() const;
    std::optional<double> mean(double rel_tolerance) const;

    // pmf(x+1)/pmf(x) in closed form: (x/(x+1))^alpha * D(x)/D(x+2)
    // with D(x) = zeta(alpha) - beta_bar * zeta(alpha, x).
    double consecutive_ratio(std::int64_t x) const;  // x >= 1

    // (log x, log pmf(x)) for x = 1..x_max plus the tail asymptote
    // log pmf ~= -alpha log x + log beta - log zeta(alpha).
    LogLogSeries loglog_series(std::int64_t x_max) const;

    // n i.i.d. draws by exact inverse transform through the survival function;
    // deterministic for a fixed seed. Each call owns its generator state.
    std::vector<std::int64_t> sample(std::size_t n, std::uint64_t seed) const;

    DiscreteSurvival survival_fn() const;

private:
    struct SamplerTable {
        std::once_flag once;
        std::vector<double> z;  // zeta(alpha, m), m = 2..K+1
    };

    double denom(std::int64_t x) const;  // D(x), cancellation-free
    void ensure_sampler_table() const;

    MOEZipfParams params_;
    std::shared_ptr<ZetaCache> cache_;
    std::shared_ptr<SamplerTable> table_ = std::make_shared<SamplerTable>();
};

}  // namespace moezipf
