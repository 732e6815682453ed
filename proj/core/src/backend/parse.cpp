#include "polis/backend/parse.hpp"

#include <cctype>
#include <cmath>
#include <optional>

#include <json.hpp>

#include "polis/util/text.hpp"

namespace polis::backend {

using nlohmann::json;

namespace {

// Returns the end index (one past '}') of the balanced object starting at
// `start`, or npos. Tracks strings and escapes so braces in values don't
// derail the scan.
std::size_t balanced_end(std::string_view s, std::size_t start) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            --depth;
            if (depth == 0) {
                return i + 1;
            }
        }
    }
    return std::string_view::npos;
}

std::optional<json> first_json_object(std::string_view raw) {
    for (std::size_t pos = raw.find('{'); pos != std::string_view::npos;
         pos = raw.find('{', pos + 1)) {
        std::size_t end = balanced_end(raw, pos);
        if (end == std::string_view::npos) {
            continue;
        }
        json doc = json::parse(raw.substr(pos, end - pos), nullptr, false);
        if (!doc.is_discarded() && doc.is_object()) {
            return doc;
        }
    }
    return std::nullopt;
}

std::optional<int> coerce_int(const json& v) {
    if (v.is_number_integer()) {
        return static_cast<int>(v.get<std::int64_t>());
    }
    if (v.is_number_float()) {
        double d = v.get<double>();
        if (d == std::floor(d)) {
            return static_cast<int>(d);
        }
        return std::nullopt;
    }
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        std::size_t b = s.find_first_not_of(" \t");
        std::size_t e = s.find_last_not_of(" \t");
        if (b == std::string::npos) {
            return std::nullopt;
        }
        s = s.substr(b, e - b + 1);
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) {
            return std::nullopt;
        }
        for (std::size_t j = i; j < s.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(s[j]))) {
                return std::nullopt;
            }
        }
        try {
            return std::stoi(s);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

MalformedResponse malformed(MalformedResponse::Reason reason, std::string_view raw,
                            std::string detail = "") {
    return MalformedResponse{reason, std::string(raw), std::move(detail)};
}

} // namespace

const char* reason_code(MalformedResponse::Reason reason) {
    switch (reason) {
    case MalformedResponse::Reason::empty_response:
        return "empty_response";
    case MalformedResponse::Reason::no_json_object:
        return "no_json_object";
    case MalformedResponse::Reason::missing_party:
        return "missing_party";
    case MalformedResponse::Reason::unknown_party:
        return "unknown_party";
    case MalformedResponse::Reason::missing_confidence:
        return "missing_confidence";
    case MalformedResponse::Reason::invalid_confidence:
        return "invalid_confidence";
    case MalformedResponse::Reason::confidence_out_of_range:
        return "confidence_out_of_range";
    case MalformedResponse::Reason::transport:
        return "transport";
    }
    return "unknown";
}

ParseOutcome parse_prediction(std::string_view raw) {
    if (raw.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        return malformed(MalformedResponse::Reason::empty_response, raw);
    }
    auto doc = first_json_object(raw);
    if (!doc) {
        return malformed(MalformedResponse::Reason::no_json_object, raw);
    }
    if (!doc->contains("party")) {
        return malformed(MalformedResponse::Reason::missing_party, raw);
    }
    const json& party_field = (*doc)["party"];
    if (!party_field.is_string()) {
        return malformed(MalformedResponse::Reason::unknown_party, raw,
                         "party is not a string");
    }
    auto party = corpus::parse_party(party_field.get<std::string>());
    if (!party) {
        return malformed(MalformedResponse::Reason::unknown_party, raw,
                         party_field.get<std::string>());
    }
    if (!doc->contains("confidence")) {
        return malformed(MalformedResponse::Reason::missing_confidence, raw);
    }
    auto confidence = coerce_int((*doc)["confidence"]);
    if (!confidence) {
        return malformed(MalformedResponse::Reason::invalid_confidence, raw);
    }
    if (*confidence < 1 || *confidence > 5) {
        return malformed(MalformedResponse::Reason::confidence_out_of_range, raw,
                         std::to_string(*confidence));
    }
    Prediction p;
    p.party = *party;
    p.confidence = *confidence;
    p.raw = std::string(raw);
    return p;
}

} // namespace polis::backend
