#include "polis/util/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "polis/util/errors.hpp"

namespace polis::util {

std::string fmt_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    bool needs_quote = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quote) {
        return field;
    }
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') {
            quoted += "\"\"";
        } else {
            quoted.push_back(c);
        }
    }
    quoted.push_back('"');
    return quoted;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::trunc), n_cols_(header.size()) {
    if (!out_) {
        throw ValidationError("cannot write " + path.string());
    }
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != n_cols_) {
        throw std::logic_error("CSV row width mismatch");
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            out_ << ',';
        }
        out_ << csv_escape(fields[i]);
    }
    out_ << '\n';
}

} // namespace polis::util
