#pragma once

// Output writers. Every emitted file carries a metadata header (config hash,
// tool version, unit conventions) so results are traceable to their inputs.

#include <string>
#include <vector>

#include "prespa/version.hpp"

namespace prespa {

/// FNV-1a 64-bit hash, stable across platforms and builds.
std::uint64_t fnv1a(const std::string& data);

struct OutputMeta {
    std::string config_hash;
    std::string command;

    std::vector<std::string> comment_lines() const;
};

/// Writes a CSV with '#'-prefixed metadata lines, a header row, then data rows
/// formatted with %.12g (deterministic for identical inputs).
void write_csv(const std::string& path, const OutputMeta& meta,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

void write_text_file(const std::string& path, const std::string& content);

std::string format_double(double v);

}  // namespace prespa
