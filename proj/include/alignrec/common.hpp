#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace alignrec {

using Vec = std::vector<double>;

// Error taxonomy mapped to CLI exit codes: usage=1, data/artifact=2, numerical=3.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// splitmix64: stateless 64-bit mixer, used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

// Seeded FNV-1a over a string. Platform-stable (unlike std::hash).
std::uint64_t hash_string(std::string_view s, std::uint64_t seed = 0);

// FNV-1a over raw bytes; used for artifact checksums.
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 14695981039346656037ULL);

std::string to_hex(std::uint64_t v);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);
double parse_double(std::string_view s);

std::vector<std::string> split_on(std::string_view s, char sep);

// Lowercases ASCII and splits on non-alphanumeric bytes, dropping empties.
std::vector<std::string> tokenize_text(std::string_view text);

}  // namespace alignrec
