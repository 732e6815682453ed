#include "polis/corpus/tokenizer.hpp"

#include <cctype>
#include <cmath>

#include "polis/util/errors.hpp"

namespace polis::corpus {

std::size_t WhitespaceTokenizer::count(std::string_view text) const {
    std::size_t n = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        bool ws = std::isspace(c) != 0;
        if (!ws && !in_token) {
            ++n;
        }
        in_token = !ws;
    }
    return n;
}

std::size_t ByteRatioTokenizer::count(std::string_view text) const {
    if (text.empty()) {
        return 0;
    }
    return static_cast<std::size_t>(
        std::ceil(static_cast<double>(text.size()) / bytes_per_token_));
}

std::unique_ptr<Tokenizer> make_tokenizer(const std::string& id) {
    if (id == "whitespace") {
        return std::make_unique<WhitespaceTokenizer>();
    }
    if (id == "byte-ratio") {
        return std::make_unique<ByteRatioTokenizer>();
    }
    throw ValidationError("unknown tokenizer \"" + id + "\"");
}

} // namespace polis::corpus
