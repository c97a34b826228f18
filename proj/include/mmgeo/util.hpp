#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mmgeo {

/// Runs fn(i) for i in [0, n) on a small thread pool. Work is partitioned
/// statically; callers write results by index, so output is identical to the
/// sequential order regardless of thread count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

/// FNV-1a 64-bit hash of a byte string (stable across runs and platforms).
std::uint64_t fnv1a64(const std::string& data);

std::string to_hex16(std::uint64_t v);

std::vector<std::string> split(const std::string& s, char sep);

/// Trims ASCII whitespace from both ends.
std::string trim(const std::string& s);

/// Formats a double with enough digits to round-trip, without locale effects.
std::string fmt_double(double v);

}  // namespace mmgeo
