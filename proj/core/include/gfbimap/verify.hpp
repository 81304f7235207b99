#pragma once

#include "gfbimap/oracle.hpp"
#include "gfbimap/pgroup.hpp"

namespace gfbimap {

// Outcome of one verification suite: exact checks only, so any failure is a
// defect, not noise.
struct SuiteOutcome {
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (ok) {
      ++passed;
    } else {
      ++failed;
      if (failures.size() < 16) failures.push_back(what);
    }
  }
  bool ok() const { return failed == 0; }
};

// Autotopisms land in N(Adj(o)) on seeded random bimaps (containment).
SuiteOutcome verify_main1_containment(int trials, std::uint64_t seed,
                                      const Caps& caps);
// |Aut((x)_S)| = |N(Adj((x)_S))| for random S (equality on tensor products).
SuiteOutcome verify_main1_equality(int trials, std::uint64_t seed,
                                   const Caps& caps);
// Galois closure identities and the factors-through biconditional.
SuiteOutcome verify_galois(int trials, std::uint64_t seed, const Caps& caps);
// Kernel laws of the factor-equivalence lattice.
SuiteOutcome verify_lattice(int trials, std::uint64_t seed, const Caps& caps);
// Wedderburn axioms on random enveloping algebras.
SuiteOutcome verify_wedderburn(int trials, std::uint64_t seed, const Caps& caps);
// normalizer_of order equals the brute normalizer on the pinned desk set
// plus seeded envelopes.
SuiteOutcome verify_norm(std::uint64_t seed, const Caps& caps);
// Stabilizer-step output on the block embedding equals |Aut(o)|.
SuiteOutcome verify_autotopism_correspondence(int trials, std::uint64_t seed,
                                              const Caps& caps);
// heis-3 / heis-5 pseudo-isometries and the exterior equality case.
SuiteOutcome verify_main2(const Caps& caps);
// The *-pipeline: Taft invariance, gg* = 1, orders against brute force.
SuiteOutcome verify_star(std::uint64_t seed, const Caps& caps);
// quadstab_solve equals the brute filter on random W.
SuiteOutcome verify_quadstab(int trials, std::uint64_t seed, const Caps& caps);
// Factorization re-multiplication and verified field isomorphisms.
SuiteOutcome verify_field_layer(int trials, std::uint64_t seed);

// Aggregated named suites for the CLI (galois, lattice, main1, main2, norm,
// starnorm, pgroup, quadstab).
SuiteOutcome run_suite(const std::string& suite, int trials,
                       std::uint64_t seed, const Caps& caps);
std::vector<std::string> suite_names();

}  // namespace gfbimap
