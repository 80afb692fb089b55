#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "moezipf/dist.hpp"
#include "moezipf/errors.hpp"
#include "moezipf/freq_table.hpp"
#include "moezipf/zeta.hpp"

namespace moezipf {

enum class Model { Zipf, MOEZipf };
enum class Method { MLE, Moments };

struct FitResult {
    Model model = Model::Zipf;
    Method method = Method::MLE;
    double alpha = 0.0;
    double beta = 1.0;
    double log_likelihood = 0.0;
    double aic = 0.0;
    bool converged = false;
    int iterations = 0;
    std::optional<double> gradient_norm;  // MLE only: per-observation score
                                          // norm in (log(alpha-1), log beta)

    int n_params() const noexcept { return model == Model::Zipf ? 1 : 2; }
};

// Optimizer terminated without meeting its tolerance; carries the best point.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, FitResult best)
        : Error(what), best_so_far(best) {}
    FitResult best_so_far;
};

struct FitOptions {
    int max_iterations = 500;        // Nelder-Mead iterations per restart
    int restarts = 5;                // jittered restarts (fixed internal seed)
    double gradient_tolerance = 1e-6;
    ZetaEvalConfig zeta;
};

// MOEZipf log-likelihood of a frequency table, computed over distinct values
// weighted by counts. NumericalError if it is not finite at these parameters.
double log_likelihood(const MOEZipfParams& params, const FrequencyTable& data,
                      const ZetaEvalConfig& cfg = {});

FitResult fit_zipf_mle(const FrequencyTable& data, const FitOptions& opt = {});

FitResult fit_moezipf_mle(
    const FrequencyTable& data,
    std::optional<std::pair<double, double>> init = std::nullopt,
    const FitOptions& opt = {});

// Second estimator: matches P(Y=1) = f1/n exactly through
// beta(alpha) = (n/f1 - 1)/zeta(alpha,2), then solves E(Y) = sample mean for
// alpha by bracketed root finding. The mean is finite only for alpha > 2, so
// the bracket lives in (2, inf).
FitResult fit_moezipf_moments(const FrequencyTable& data,
                              const FitOptions& opt = {});

}  // namespace moezipf
