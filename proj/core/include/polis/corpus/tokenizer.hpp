#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>

namespace polis::corpus {

/// Pluggable token counter. The reference pipeline wants a byte-pair count
/// compatible with the inference model; tests use whitespace counting.
class Tokenizer {
public:
    virtual ~Tokenizer() = default;
    virtual std::size_t count(std::string_view text) const = 0;
    virtual std::string id() const = 0;
};

/// Counts maximal non-whitespace runs.
class WhitespaceTokenizer : public Tokenizer {
public:
    std::size_t count(std::string_view text) const override;
    std::string id() const override { return "whitespace"; }
};

/// Byte-length heuristic (~4 bytes per BPE token) for corpora where the
/// exact model vocabulary is unavailable.
class ByteRatioTokenizer : public Tokenizer {
public:
    explicit ByteRatioTokenizer(double bytes_per_token = 4.0)
        : bytes_per_token_(bytes_per_token) {}
    std::size_t count(std::string_view text) const override;
    std::string id() const override { return "byte-ratio"; }

private:
    double bytes_per_token_;
};

std::unique_ptr<Tokenizer> make_tokenizer(const std::string& id);

} // namespace polis::corpus
