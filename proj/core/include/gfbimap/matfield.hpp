#pragma once

#include "gfbimap/matlin.hpp"

namespace gfbimap {

// Least-degree monic f with f(M) = 0.
Poly minimal_polynomial(const Mat& M);

// Minimal polynomial of an element of a unital algebra whose identity is
// `unit` (so z^0 := unit).  Needed for idempotent blocks e A e where the
// block identity e differs from the ambient identity matrix.
Poly minimal_polynomial_rel(const Mat& M, const Mat& unit);

// Searches the span of `basis` for tau with f(tau) = 0, where f's constant
// term acts through `unit`.  L is expected to be a commutative matrix field
// over the base field of f; enumeration is deterministic.  Throws NoRoot
// when the span contains no root, RandomnessExhausted past the budget.
Mat root_in_algebra(const Field& F, const Poly& f, const std::vector<Mat>& basis,
                    const Mat& unit, std::uint64_t seed,
                    std::uint64_t budget = 1'000'000);

// A finite field L = k[gen] presented as matrices: elements are polynomials
// in the generator of degree < m, arithmetic mod its minimal polynomial.
struct MatrixField {
  const Field* F = nullptr;  // base field k
  Mat unit;                  // identity element of L
  Mat gen;                   // generator; minpoly irreducible of degree m
  Poly minpoly;
  int m = 0;

  BigInt order() const;  // |L| = q^m

  Mat to_matrix(const Poly& elem) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly inv(const Poly& a) const;
  Poly pow(const Poly& a, const BigInt& e) const;
  Poly one() const;
  // x -> x^q with q = |k|: the Frobenius generating Gal(L/k).
  Poly frobenius_q(const Poly& a) const;
};

// Builds L = k[gen] from a basis of a commutative matrix field: finds a
// primitive element (a generator of the cyclic group L^x) to serve as gen.
// Las Vegas with the given seed.
MatrixField make_matrix_field(const Field& F, const std::vector<Mat>& basis,
                              const Mat& unit, std::uint64_t seed);

// Explicit field isomorphism L1 -> L2 determined by gen(L1) |-> a root of
// L1's minimal polynomial inside L2.  Returned as the image of gen(L1).
// Throws DegreeMismatch when the degrees differ.
Mat field_isomorphism(const MatrixField& L1, const MatrixField& L2,
                      std::uint64_t seed);

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n);

}  // namespace gfbimap
