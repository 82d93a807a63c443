#include "sbmtest/rng.hpp"

#include <cmath>
#include <numbers>

#include "sbmtest/error.hpp"

namespace sbmtest {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::LengthMismatch: return "length_mismatch";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::UndefinedSnr: return "undefined_snr";
    case ErrorCode::NoSignal: return "no_signal";
    case ErrorCode::NotPositiveDefinite: return "not_positive_definite";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::Io: return "io";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::UnknownNode: return "unknown_node";
    case ErrorCode::Config: return "config";
  }
  return "unknown";
}

std::uint64_t hash_string(std::string_view text) {
  // FNV-1a, then mixed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(h);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "Rng::below: bound must be positive");
  // Rejection on the top of the range keeps the draw exactly uniform.
  const std::uint64_t limit = max() - max() % bound;
  for (;;) {
    const std::uint64_t x = (*this)();
    if (x < limit) return x % bound;
  }
}

double Rng::normal() {
  const double u1 = uniform_open_zero();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace sbmtest
