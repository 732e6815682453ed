#include "polis/util/hash.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "polis/util/errors.hpp"

namespace polis::util {

namespace {

std::array<unsigned char, 32> sha256_raw(std::string_view data) {
    std::array<unsigned char, 32> out{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    EVP_DigestUpdate(ctx, data.data(), data.size());
    EVP_DigestFinal_ex(ctx, out.data(), &len);
    EVP_MD_CTX_free(ctx);
    return out;
}

std::string to_hex(const unsigned char* bytes, std::size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string hex;
    hex.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        hex.push_back(digits[bytes[i] >> 4]);
        hex.push_back(digits[bytes[i] & 0xf]);
    }
    return hex;
}

} // namespace

std::string sha256_hex(std::string_view data) {
    auto raw = sha256_raw(data);
    return to_hex(raw.data(), raw.size());
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingArtifactError("cannot read file for hashing: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    std::string material = std::to_string(master);
    material.push_back('/');
    material.append(tag);
    auto raw = sha256_raw(material);
    std::uint64_t seed = 0;
    for (int i = 0; i < 8; ++i) {
        seed = (seed << 8) | raw[static_cast<std::size_t>(i)];
    }
    return seed;
}

} // namespace polis::util
