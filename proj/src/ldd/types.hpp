#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ldd {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Length = std::int64_t;
using Capacity = std::uint64_t;
// Sums of capacities. Costs are capped at 2^62, so any realistic volume fits.
using Volume = unsigned __int128;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr Length kUnreachable = std::numeric_limits<Length>::max();

enum class Direction { Out, In };

constexpr Direction opposite(Direction d) {
  return d == Direction::Out ? Direction::In : Direction::Out;
}

// Raised on malformed input (bad ids, zero lengths, self-loops, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by the edge-list / JSON readers.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when the unit-length subdivision would exceed the configured size.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt to_big(Volume v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
}

inline long double to_long_double(Volume v) {
  return static_cast<long double>(static_cast<std::uint64_t>(v >> 64)) * 18446744073709551616.0L +
         static_cast<long double>(static_cast<std::uint64_t>(v));
}

std::string to_string(Volume v);

}  // namespace ldd
