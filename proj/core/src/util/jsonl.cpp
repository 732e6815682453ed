#include "polis/util/jsonl.hpp"

#include <fstream>

#include "polis/util/errors.hpp"

namespace polis::util {

void read_jsonl(const std::filesystem::path& path,
                const std::function<void(std::size_t, const json&)>& fn) {
    std::ifstream in(path);
    if (!in) {
        throw MissingArtifactError("cannot open " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded()) {
            throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                                  ": malformed JSON line");
        }
        fn(line_no, obj);
    }
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
    std::vector<json> lines;
    read_jsonl(path, [&](std::size_t, const json& obj) { lines.push_back(obj); });
    return lines;
}

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& lines) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw ValidationError("cannot write " + path.string());
    }
    for (const auto& obj : lines) {
        out << obj.dump() << '\n';
    }
}

void append_jsonl(const std::filesystem::path& path, const json& line) {
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw ValidationError("cannot append to " + path.string());
    }
    out << line.dump() << '\n';
}

std::string json_type_name(const json& v) {
    return std::string(v.type_name());
}

template <typename T>
T require_field(const json& obj, const std::string& key, std::size_t line_no) {
    if (!obj.contains(key)) {
        throw ValidationError("line " + std::to_string(line_no) + ": missing field \"" +
                              key + "\"");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ValidationError("line " + std::to_string(line_no) + ": field \"" + key +
                              "\" has unexpected type " + json_type_name(obj.at(key)));
    }
}

template std::string require_field<std::string>(const json&, const std::string&, std::size_t);
template double require_field<double>(const json&, const std::string&, std::size_t);
template std::int64_t require_field<std::int64_t>(const json&, const std::string&, std::size_t);
template std::vector<std::string> require_field<std::vector<std::string>>(const json&,
                                                                           const std::string&,
                                                                           std::size_t);

} // namespace polis::util
