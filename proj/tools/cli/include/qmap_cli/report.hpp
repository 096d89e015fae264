#pragma once

#include "qmap/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qmap::cli {

/// Provenance stamped on every emitted file.
struct ReportMeta {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::size_t n = 1;
    Rational c_n;
};

using CsvRow = std::vector<std::string>;

/// Shortest decimal text that reads back to the same double.
std::string cell(double v);

/// '#'-prefixed key=value metadata lines, a header and the rows.
void write_csv(const std::string& path, const ReportMeta& meta, const CsvRow& header, const std::vector<CsvRow>& rows);

/// body plus a "meta" object, pretty-printed with sorted keys.
void write_json(const std::string& path, const ReportMeta& meta, nlohmann::json body);

nlohmann::json read_json(const std::string& path);

}  // namespace qmap::cli
