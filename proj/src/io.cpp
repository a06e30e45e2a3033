#include "prespa/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace prespa {

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<std::string> OutputMeta::comment_lines() const {
    return {
        "# tool: prespa " + std::string(kVersion),
        "# command: " + command,
        "# config_hash: " + config_hash,
        "# units: " + std::string(kUnitNote),
    };
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, const OutputMeta& meta,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    for (const auto& line : meta.comment_lines()) out << line << "\n";
    for (size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::invalid_argument("csv row width does not match the header");
        for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
        out << "\n";
    }
    if (!out.good()) throw std::runtime_error("write failure on " + path);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out.good()) throw std::runtime_error("write failure on " + path);
}

}  // namespace prespa
