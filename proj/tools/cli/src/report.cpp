#include "qmap_cli/report.hpp"

#include "qmap/error.hpp"

#include <charconv>
#include <fstream>

namespace qmap::cli {
namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    return out;
}

}  // namespace

std::string cell(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_csv(const std::string& path, const ReportMeta& meta, const CsvRow& header, const std::vector<CsvRow>& rows) {
    auto out = open_out(path);
    out << "# command=" << meta.command << "\n# config_hash=" << meta.config_hash << "\n# seed=" << meta.seed
        << "\n# n=" << meta.n << "\n# c_n=" << to_string(meta.c_n) << "\n";
    auto line = [&](const CsvRow& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void write_json(const std::string& path, const ReportMeta& meta, nlohmann::json body) {
    body["meta"] = {{"command", meta.command},
                    {"config_hash", meta.config_hash},
                    {"seed", meta.seed},
                    {"n", meta.n},
                    {"c_n", to_string(meta.c_n)}};
    open_out(path) << body.dump(2) << "\n";
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    return nlohmann::json::parse(in);
}

}  // namespace qmap::cli
