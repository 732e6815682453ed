#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "polis/corpus/types.hpp"

namespace polis::backend {

struct Prediction {
    corpus::Party party = corpus::Party::Republican;
    int confidence = 1; // integer scale 1..5
    std::string raw;
    std::string model_id;
    std::string template_version;
};

struct MalformedResponse {
    enum class Reason {
        empty_response,
        no_json_object,
        missing_party,
        unknown_party,
        missing_confidence,
        invalid_confidence,
        confidence_out_of_range,
        transport,
    };
    Reason reason = Reason::no_json_object;
    std::string raw;
    std::string detail;
};

const char* reason_code(MalformedResponse::Reason reason);

using ParseOutcome = std::variant<Prediction, MalformedResponse>;

inline bool is_prediction(const ParseOutcome& o) {
    return std::holds_alternative<Prediction>(o);
}

/// Extracts the first JSON object embedded in `raw` (prose and code fences
/// around it are tolerated) and reads the two required fields. Party names
/// are case-folded and accept Democrat/Democratic; confidence accepts
/// integers, integral floats and numeric strings but must land in [1,5].
/// Anything else comes back as a MalformedResponse value, never a throw.
ParseOutcome parse_prediction(std::string_view raw);

} // namespace polis::backend
