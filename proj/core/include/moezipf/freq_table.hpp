#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "moezipf/errors.hpp"

namespace moezipf {

// Sample of positive integers compressed to sorted (value, count) pairs, with
// the summary statistics every estimator needs cached once. Both construction
// paths aggregate first and derive the statistics from the sorted entries, so
// a per-observation list and its compressed form give bit-identical fits.
class FrequencyTable {
public:
    using Entry = std::pair<std::int64_t, std::int64_t>;

    static FrequencyTable from_observations(std::span<const std::int64_t> obs);
    static FrequencyTable from_counts(std::vector<Entry> counts);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::int64_t n() const noexcept { return n_; }
    double sum_log() const noexcept { return sum_log_; }     // sum c log v
    double sample_mean() const noexcept { return mean_; }    // sum c v / n
    std::int64_t f1() const noexcept { return f1_; }         // count at value 1
    std::int64_t max_value() const noexcept { return entries_.back().first; }
    std::int64_t count_at(std::int64_t value) const;         // 0 if absent

private:
    FrequencyTable() = default;
    void finalize();

    std::vector<Entry> entries_;
    std::int64_t n_ = 0;
    double sum_log_ = 0.0;
    double mean_ = 0.0;
    std::int64_t f1_ = 0;
};

}  // namespace moezipf
