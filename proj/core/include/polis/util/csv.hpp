#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace polis::util {

/// Shortest round-trip decimal rendering of a double (via std::to_chars).
/// Keeps CSV output byte-stable across runs.
std::string fmt_double(double v);

std::string csv_escape(const std::string& field);

/// RFC-4180 writer: UTF-8, CRLF-free ("\n" line ends), header row first.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& fields);

private:
    std::ofstream out_;
    std::size_t n_cols_;
};

} // namespace polis::util
