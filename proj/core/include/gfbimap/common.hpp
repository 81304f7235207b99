#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gfbimap {

using BigInt = boost::multiprecision::cpp_int;

// Error taxonomy shared across modules.  Each error carries a stable
// machine-readable code, used by the CLI for {"error": code} output.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

#define GFBIMAP_ERROR(NAME)                                          \
  class NAME : public Error {                                        \
  public:                                                            \
    explicit NAME(const std::string& detail = "")                    \
        : Error(#NAME, detail) {}                                    \
  }

GFBIMAP_ERROR(NonPrime);
GFBIMAP_ERROR(ReducibleModulus);
GFBIMAP_ERROR(RandomnessExhausted);
GFBIMAP_ERROR(NoRoot);
GFBIMAP_ERROR(DimensionMismatch);
GFBIMAP_ERROR(Degenerate);
GFBIMAP_ERROR(NotSymmetricOrAlternating);
GFBIMAP_ERROR(NotSquare);
GFBIMAP_ERROR(NotAdjoint);
GFBIMAP_ERROR(Singular);
GFBIMAP_ERROR(OrbitCapExceeded);
GFBIMAP_ERROR(ClosureCapExceeded);
GFBIMAP_ERROR(CapExceeded);
GFBIMAP_ERROR(CharTwo);
GFBIMAP_ERROR(NotAlternating);
GFBIMAP_ERROR(DegreeMismatch);
GFBIMAP_ERROR(ZeroMap);
GFBIMAP_ERROR(Unsupported);
GFBIMAP_ERROR(Internal);

#undef GFBIMAP_ERROR

inline void require(bool cond, const char* what) {
  if (!cond) throw Internal(what);
}

// Resource caps for the enumerative steps.  Defaults follow the desk-scale
// budgets used throughout; zero means "use default".
struct Caps {
  std::uint64_t orbit = 1'000'000;    // orbit BFS: max distinct subspaces
  std::uint64_t closure = 1'000'000;  // group closure BFS: max elements
  std::uint64_t filter = 1'000'000;   // brute-force scans: max candidates
};

// Deterministic 64-bit RNG (splitmix64).  Every randomized (Las Vegas)
// routine takes an explicit seed and derives all choices from it.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    require(n > 0, "Rng::below(0)");
    return next() % n;
  }

private:
  std::uint64_t state_;
};

std::string to_decimal(const BigInt& v);

}  // namespace gfbimap
