// Acceptance suite: the exit gate.  Every criterion is an exact
// oracle-equivalence or invariant check; one pass/fail line per criterion.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>

#include "gfbimap/verify.hpp"

using namespace gfbimap;

namespace {

bool report(int id, const char* name, const SuiteOutcome& o, double secs) {
  std::printf("[%2d] %s — %s (%d checks, %.1fs)\n", id,
              o.ok() ? "PASS" : "FAIL", name, o.passed + o.failed, secs);
  for (const auto& f : o.failures) std::printf("      %s\n", f.c_str());
  std::fflush(stdout);
  return o.ok();
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

constexpr std::uint64_t kSeed = 20260809;

}  // namespace

TEST_CASE("criterion 1: autotopisms land in N(Adj), 200 random bimaps") {
  Timer t;
  Caps caps;
  SuiteOutcome o = verify_main1_containment(200, kSeed, caps);
  CHECK(report(1, "autotopisms normalize the adjoint ring", o, t.secs()));
}

TEST_CASE("criterion 2: |Aut(tensor_S)| = |N(Adj(tensor_S))|, 50 random S") {
  Timer t;
  Caps caps;
  SuiteOutcome o = verify_main1_equality(50, kSeed + 1, caps);
  CHECK(report(2, "autotopism group = adjoint normalizer on tensor products", o, t.secs()));
}

TEST_CASE("criterion 3: Galois closure identities and biconditional") {
  Timer t;
  Caps caps;
  SuiteOutcome o = verify_galois(200, kSeed + 2, caps);
  CHECK(report(3, "Galois connection of adjoints and tensor products", o, t.secs()));
}

TEST_CASE("criterion 4: lattice kernel laws on 200 random pairs") {
  Timer t;
  Caps caps;
  SuiteOutcome o = verify_lattice(200, kSeed + 3, caps);
  CHECK(report(4, "factor-equivalence lattice kernel laws", o, t.secs()));
}

TEST_CASE("criterion 5: Wedderburn suite on 100 random envelopes") {
  Timer t;
  Caps caps;
  SuiteOutcome o = verify_wedderburn(100, kSeed + 4, caps);
  CHECK(report(5, "Wedderburn axioms", o, t.secs()));
}

TEST_CASE("criterion 6: normalizer_of equals brute force on 20 algebras") {
  Timer t;
  Caps caps;
  SuiteOutcome o = verify_norm(kSeed + 5, caps);
  CHECK(report(6, "normalizer pipeline vs brute force", o, t.secs()));
}

TEST_CASE("criterion 7: stabilizer-step order equals |Aut(o)| on 20 bimaps") {
  Timer t;
  Caps caps;
  SuiteOutcome o = verify_autotopism_correspondence(20, kSeed + 6, caps);
  CHECK(report(7, "block-embedding stabilizer equals Aut(o)", o, t.secs()));
}

TEST_CASE("criterion 8: pseudo-isometries of heis-3 and heis-5") {
  Timer t;
  Caps caps;
  SuiteOutcome o = verify_main2(caps);
  CHECK(report(8, "pseudo-isometry pipeline on Heisenberg bimaps", o, t.secs()));
}

TEST_CASE("criterion 9: star suite on 10 instances") {
  Timer t;
  Caps caps;
  SuiteOutcome o = verify_star(kSeed + 7, caps);
  CHECK(report(9, "Taft, J- unipotents, N* vs brute", o, t.secs()));
}

TEST_CASE("criterion 10: quadratic stabilizer on 10 random W") {
  Timer t;
  Caps caps;
  SuiteOutcome o = verify_quadstab(10, kSeed + 8, caps);
  CHECK(report(10, "quadstab_solve vs brute filter", o, t.secs()));
}

TEST_CASE("criterion 11: field layer, 500 factorizations + isomorphisms") {
  Timer t;
  SuiteOutcome o = verify_field_layer(500, kSeed + 9);
  CHECK(report(11, "poly_factor identity, field isomorphisms", o, t.secs()));
}
