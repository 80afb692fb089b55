#pragma once

#include <istream>
#include <string>

#include "moezipf/errors.hpp"
#include "moezipf/freq_table.hpp"

namespace moezipf {

enum class DataFormat { Observations, FreqTable, EdgeList };
enum class Direction { In, Out, Total };  // edge_list degree direction
enum class ZeroPolicy { Drop, Error };

struct IngestSpec {
    DataFormat format = DataFormat::Observations;
    std::string path;
    Direction direction = Direction::Out;       // edge_list only
    ZeroPolicy zero_policy = ZeroPolicy::Drop;
};

// Parse a data file into a FrequencyTable. Lines that are blank or start with
// '#' are skipped in every format; fields are whitespace-separated. The result
// depends only on the multiset of lines, never on their order.
//
//   observations: one positive integer per line
//   freq_table:   value <TAB> count
//   edge_list:    src <TAB> dst; the variable is the node degree under
//                 `direction`, nodes of degree zero handled per `zero_policy`
FrequencyTable ingest(const IngestSpec& spec);

// Same, reading from a stream (the file-path fields of `spec` are ignored).
FrequencyTable ingest_stream(std::istream& in, const IngestSpec& spec);

const char* to_string(DataFormat f);
DataFormat data_format_from_string(const std::string& s);
Direction direction_from_string(const std::string& s);
ZeroPolicy zero_policy_from_string(const std::string& s);

}  // namespace moezipf
