#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace polis::util {

/// Lowercased word tokens: maximal runs of alphanumeric bytes (non-ASCII
/// UTF-8 bytes count as word characters); punctuation separates.
std::vector<std::string> word_tokens(std::string_view text);

std::string to_lower_ascii(std::string_view s);

} // namespace polis::util
