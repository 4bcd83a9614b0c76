#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace nerd {

using NodeId = std::uint32_t;

/// Capacity in which a node takes part in an edge: origin (source) or
/// destination (target).
enum class Role : std::uint8_t { source, target };

constexpr Role opposite(Role r) noexcept {
  return r == Role::source ? Role::target : Role::source;
}

const char* to_string(Role r) noexcept;

/// All randomness in the library flows through this engine. Seeds fully
/// determine output in single-threaded runs.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits, so results do not
/// depend on the standard library's distribution implementation.
inline double uniform01(Rng& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). bound must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) noexcept {
  return static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(bound)) % bound;
}

// Error hierarchy. The CLI maps each type to its own exit code.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list, label or split input; carries the 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Embedding or matrix file whose structure contradicts its header.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration or violated precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Dense computation requested beyond the configured node limit.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Link-prediction split could not be built (too few removable edges or
/// non-edges).
class SplitError : public Error {
 public:
  using Error::Error;
};

/// A walk step was requested from a node with no edge in that direction.
class DeadEndError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nerd
