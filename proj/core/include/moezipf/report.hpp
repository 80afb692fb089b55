#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "moezipf/estimate.hpp"
#include "moezipf/freq_table.hpp"
#include "moezipf/gof.hpp"

namespace moezipf {

struct DatasetSummary {
    std::int64_t n = 0;
    std::int64_t max_value = 0;
    double f1_over_n = 0.0;
    double sample_mean = 0.0;
};

enum class Verdict { ZipfMle, MoezipfMoments, MoezipfMle };

// Everything one fitting run produces: the three fits (Zipf MLE, MOEZipf by
// probability/mean matching, MOEZipf MLE), their grouped chi-square tests and
// the AIC winner.
struct FitReport {
    DatasetSummary dataset;
    std::int64_t threshold = 0;
    FitResult zipf_mle;
    FitResult moezipf_moments;
    FitResult moezipf_mle;
    GofResult gof_zipf_mle;
    GofResult gof_moezipf_moments;
    GofResult gof_moezipf_mle;
    Verdict verdict = Verdict::ZipfMle;
};

struct FitRunOptions {
    FitOptions fit;
    bool concurrent = true;  // run the two MOEZipf fits in parallel
};

// Run all three fits plus their tail-grouped chi-square tests.
FitReport run_fit(const FrequencyTable& data, std::int64_t threshold,
                  const FitRunOptions& opt = {});

// Stable machine-readable form (JSON, sorted keys, shortest round-trip
// floats): serialize -> parse -> serialize is byte-identical.
std::string report_to_json(const FitReport& report);
FitReport report_from_json(const std::string& text);

// Aligned human-readable summary table.
void write_report_table(std::ostream& os, const FitReport& report);

const char* to_string(Verdict v);
const char* to_string(Model m);
const char* to_string(Method m);

}  // namespace moezipf
