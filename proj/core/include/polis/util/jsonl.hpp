#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace polis::util {

using json = nlohmann::json;

/// Streams a JSONL file line by line. `fn` receives the 1-based line number
/// and the parsed object. Blank lines are skipped. A line that fails to
/// parse raises ValidationError naming the file and line.
void read_jsonl(const std::filesystem::path& path,
                const std::function<void(std::size_t, const json&)>& fn);

std::vector<json> read_jsonl(const std::filesystem::path& path);

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& lines);

void append_jsonl(const std::filesystem::path& path, const json& line);

/// Fetches a required field, raising ValidationError that names the line
/// and the field on absence or type mismatch.
template <typename T>
T require_field(const json& obj, const std::string& key, std::size_t line_no);

std::string json_type_name(const json& v);

} // namespace polis::util
