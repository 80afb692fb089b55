#include "moezipf/ingest.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace moezipf {

namespace {

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t line) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.begin(), tok.end(), v);
    if (ec != std::errc{} || ptr != tok.end()) {
        throw ParseError("expected an integer, got '" + std::string(tok) + "'",
                         line);
    }
    return v;
}

// shared per-line iteration: strips comments/blanks, tracks line numbers
template <typename Fn>
void for_each_data_line(std::istream& in, Fn fn) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        fn(t, lineno);
    }
}

FrequencyTable table_from_agg(std::map<std::int64_t, std::int64_t>&& agg) {
    if (agg.empty()) throw EmptyDataError("ingest: no usable data lines");
    std::vector<FrequencyTable::Entry> counts(agg.begin(), agg.end());
    return FrequencyTable::from_counts(std::move(counts));
}

void check_value(std::int64_t v, ZeroPolicy policy, std::size_t line,
                 bool& keep) {
    keep = true;
    if (v < 0) throw ParseError("negative value " + std::to_string(v), line);
    if (v == 0) {
        if (policy == ZeroPolicy::Error) {
            throw ZeroValueError("ingest: zero value at line " +
                                 std::to_string(line));
        }
        keep = false;
    }
}

FrequencyTable ingest_observations(std::istream& in, const IngestSpec& spec) {
    std::map<std::int64_t, std::int64_t> agg;
    for_each_data_line(in, [&](std::string_view t, std::size_t lineno) {
        const auto toks = split_ws(t);
        if (toks.size() != 1) {
            throw ParseError("expected one integer per line", lineno);
        }
        const std::int64_t v = parse_int(toks[0], lineno);
        bool keep;
        check_value(v, spec.zero_policy, lineno, keep);
        if (keep) ++agg[v];
    });
    return table_from_agg(std::move(agg));
}

FrequencyTable ingest_freq_table(std::istream& in, const IngestSpec& spec) {
    std::map<std::int64_t, std::int64_t> agg;
    for_each_data_line(in, [&](std::string_view t, std::size_t lineno) {
        const auto toks = split_ws(t);
        if (toks.size() != 2) {
            throw ParseError("expected 'value<TAB>count'", lineno);
        }
        const std::int64_t v = parse_int(toks[0], lineno);
        const std::int64_t c = parse_int(toks[1], lineno);
        if (c < 0) throw ParseError("negative count", lineno);
        bool keep_v, keep_c;
        check_value(v, spec.zero_policy, lineno, keep_v);
        check_value(c, spec.zero_policy, lineno, keep_c);
        if (keep_v && keep_c) agg[v] += c;
    });
    return table_from_agg(std::move(agg));
}

FrequencyTable ingest_edge_list(std::istream& in, const IngestSpec& spec) {
    std::unordered_map<std::string, std::int64_t> degree;
    for_each_data_line(in, [&](std::string_view t, std::size_t lineno) {
        const auto toks = split_ws(t);
        if (toks.size() != 2) {
            throw ParseError("expected 'src<TAB>dst'", lineno);
        }
        const std::string src(toks[0]), dst(toks[1]);
        switch (spec.direction) {
            case Direction::Out:
                ++degree[src];
                degree.try_emplace(dst, 0);
                break;
            case Direction::In:
                ++degree[dst];
                degree.try_emplace(src, 0);
                break;
            case Direction::Total:
                ++degree[src];
                ++degree[dst];
                break;
        }
    });
    if (degree.empty()) throw EmptyDataError("ingest: no usable data lines");
    std::map<std::int64_t, std::int64_t> agg;
    for (const auto& [node, d] : degree) {
        if (d == 0) {
            if (spec.zero_policy == ZeroPolicy::Error) {
                throw ZeroValueError("ingest: node '" + node +
                                     "' has degree zero");
            }
            continue;
        }
        ++agg[d];
    }
    return table_from_agg(std::move(agg));
}

}  // namespace

FrequencyTable ingest_stream(std::istream& in, const IngestSpec& spec) {
    switch (spec.format) {
        case DataFormat::Observations:
            return ingest_observations(in, spec);
        case DataFormat::FreqTable:
            return ingest_freq_table(in, spec);
        case DataFormat::EdgeList:
            return ingest_edge_list(in, spec);
    }
    throw DomainError("ingest: unknown format");
}

FrequencyTable ingest(const IngestSpec& spec) {
    std::ifstream in(spec.path);
    if (!in) {
        throw ParseError("cannot open '" + spec.path + "'", 0);
    }
    return ingest_stream(in, spec);
}

const char* to_string(DataFormat f) {
    switch (f) {
        case DataFormat::Observations: return "observations";
        case DataFormat::FreqTable: return "freq_table";
        case DataFormat::EdgeList: return "edge_list";
    }
    return "?";
}

DataFormat data_format_from_string(const std::string& s) {
    if (s == "observations") return DataFormat::Observations;
    if (s == "freq_table") return DataFormat::FreqTable;
    if (s == "edge_list") return DataFormat::EdgeList;
    throw DomainError("unknown format '" + s + "'");
}

Direction direction_from_string(const std::string& s) {
    if (s == "in") return Direction::In;
    if (s == "out") return Direction::Out;
    if (s == "total") return Direction::Total;
    throw DomainError("unknown direction '" + s + "'");
}

ZeroPolicy zero_policy_from_string(const std::string& s) {
    if (s == "drop") return ZeroPolicy::Drop;
    if (s == "error") return ZeroPolicy::Error;
    throw DomainError("unknown zero policy '" + s + "'");
}

}  // namespace moezipf
