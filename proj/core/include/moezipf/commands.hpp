#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "moezipf/ingest.hpp"
#include "moezipf/report.hpp"

namespace moezipf {

// Command bodies behind the CLI, kept here so they are directly testable.

// Ingest, fit all three models, run the grouped chi-square tests, write the
// JSON report to `out_json` and return the report.
FitReport cmd_fit(const IngestSpec& input, std::int64_t threshold,
                  const std::string& out_json,
                  const FitRunOptions& opt = {});

// CSV of x, pmf, log_x, log_pmf for x = 1..x_max, preceded by comment lines
// carrying the log-log tail asymptote (slope -alpha,
// intercept log beta - log zeta(alpha)).
void cmd_pmf(double alpha, double beta, std::int64_t x_max, std::ostream& os);

// One draw per line, then a provenance comment footer. Deterministic per seed;
// the output re-ingests as `observations` format.
void cmd_sample(double alpha, double beta, std::int64_t n, std::uint64_t seed,
                std::ostream& os);

// CSV of x, log_x, log_obs_relfreq, log_zipf_pmf, log_moezipf_pmf over the
// observed support, using the report's fitted Zipf-MLE and MOEZipf-MLE models.
void cmd_loglog(const FrequencyTable& data, const FitReport& report,
                std::ostream& os);

}  // namespace moezipf
