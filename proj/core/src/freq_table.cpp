#include "moezipf/freq_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace moezipf {

FrequencyTable FrequencyTable::from_observations(
    std::span<const std::int64_t> obs) {
    std::map<std::int64_t, std::int64_t> agg;
    for (const std::int64_t v : obs) ++agg[v];
    std::vector<Entry> counts(agg.begin(), agg.end());
    return from_counts(std::move(counts));
}

FrequencyTable FrequencyTable::from_counts(std::vector<Entry> counts) {
    std::map<std::int64_t, std::int64_t> agg;
    for (const auto& [v, c] : counts) {
        if (c < 1) {
            throw DomainError("FrequencyTable: count must be >= 1 (value " +
                              std::to_string(v) + ")");
        }
        agg[v] += c;
    }
    if (agg.empty()) throw EmptyDataError("FrequencyTable: no entries");
    if (agg.begin()->first < 1) {
        throw DomainError("FrequencyTable: values must be >= 1 (got " +
                          std::to_string(agg.begin()->first) + ")");
    }
    FrequencyTable t;
    t.entries_.assign(agg.begin(), agg.end());
    t.finalize();
    return t;
}

void FrequencyTable::finalize() {
    n_ = 0;
    double sum_log = 0.0, sum_v = 0.0;
    for (const auto& [v, c] : entries_) {
        n_ += c;
        const double cd = static_cast<double>(c);
        sum_log += cd * std::log(static_cast<double>(v));
        sum_v += cd * static_cast<double>(v);
    }
    sum_log_ = sum_log;
    mean_ = sum_v / static_cast<double>(n_);
    f1_ = count_at(1);
}

std::int64_t FrequencyTable::count_at(std::int64_t value) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), value,
        [](const Entry& e, std::int64_t v) { return e.first < v; });
    if (it != entries_.end() && it->first == value) return it->second;
    return 0;
}

}  // namespace moezipf
