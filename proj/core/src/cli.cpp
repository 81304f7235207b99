#include "gfbimap/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gfbimap/json_io.hpp"
#include "gfbimap/verify.hpp"

namespace gfbimap {

namespace {

constexpr const char* kVersion = "0.1.0";

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Unsupported("cannot open input file: " + path);
  Json j;
  in >> j;
  return j;
}

void emit(const Json& j, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw Unsupported("cannot open output file: " + out_path);
    f << j.dump(2) << "\n";
  }
}

Caps parse_caps(const std::string& spec) {
  Caps caps;
  if (spec.empty()) return caps;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    require(eq != std::string::npos, "caps must be key=value pairs");
    std::string key = item.substr(0, eq);
    std::uint64_t val = std::stoull(item.substr(eq + 1));
    if (key == "orbit")
      caps.orbit = val;
    else if (key == "closure")
      caps.closure = val;
    else if (key == "filter")
      caps.filter = val;
    else
      throw Unsupported("unknown cap: " + key);
  }
  return caps;
}

Json stamp(Json j, std::uint64_t seed, const Caps& caps) {
  j["seed"] = seed;
  j["caps"] = Json{{"orbit", caps.orbit},
                   {"closure", caps.closure},
                   {"filter", caps.filter}};
  j["version"] = kVersion;
  return j;
}

StarAlgebra star_algebra_from_inputs(const Json& jin, const std::string& star_path) {
  if (jin.contains("slices")) {
    return star_algebra_of_bimap(bimap_from_json(jin));
  }
  if (jin.contains("star") && star_path.empty()) {
    return star_algebra_from_json(jin);
  }
  require(!star_path.empty(), "algebra input needs --star");
  Json jstar = load_json(star_path);
  Json merged = jin;
  if (jin.contains("pairs")) {
    // pair-algebra input: take the X sides as the single algebra
    const Field& F = field_from_json(jin.at("field"));
    AlgebraPair A = algebra_from_json(jin);
    require(A.a == A.b, "star algebra needs a = b");
    Json basis = Json::array();
    for (const auto& p : A.basis) basis.push_back(mat_to_json(p.X));
    merged = Json{{"field", field_to_json(F)},
                  {"n", A.a},
                  {"basis", basis},
                  {"star", jstar.contains("star") ? jstar.at("star") : jstar}};
  } else {
    merged["star"] = jstar.contains("star") ? jstar.at("star") : jstar;
  }
  return star_algebra_from_json(merged);
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"exact bimap, adjoint-ring and normalizer toolkit over GF(q)"};
  app.require_subcommand(1);

  std::string in_path, in2_path, out_path, star_path, caps_spec, op = "meet";
  std::string suite = "galois", oracle_kind, kind = "bimap", sign = "-";
  std::uint64_t seed = 0;
  std::uint64_t cap_override = 0;
  int trials = 100;
  int ra = 2, rb = 2, rw = 1, rgens = 1;
  std::int64_t rp = 2, rk = 1;
  bool dump = false, assume_exponent_p = false;

  auto add_common = [&](CLI::App* cmd, bool needs_in) {
    if (needs_in) cmd->add_option("--in", in_path, "input JSON file")->required();
    cmd->add_option("--out", out_path, "output JSON file (default stdout)");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--caps", caps_spec, "caps: orbit=N,closure=M,filter=K");
  };

  auto* c_adjoint = app.add_subcommand("adjoint", "adjoint ring of a bimap");
  add_common(c_adjoint, true);
  auto* c_tensor = app.add_subcommand("tensor", "tensor product over a pair set");
  add_common(c_tensor, true);
  auto* c_ext = app.add_subcommand("exterior", "exterior/symmetric quotient");
  add_common(c_ext, true);
  c_ext->add_option("--sign", sign, "- (alternating) or + (symmetric)");
  auto* c_lat = app.add_subcommand("lattice", "meet/join/factor tests");
  add_common(c_lat, true);
  c_lat->add_option("--with", in2_path, "second bimap")->required();
  c_lat->add_option("--op", op, "meet|join|factors|equivalent");
  auto* c_norm = app.add_subcommand("normalizer", "N(A) generators and order");
  add_common(c_norm, true);
  auto* c_star = app.add_subcommand("star-normalizer", "N*(A) generators");
  add_common(c_star, true);
  c_star->add_option("--star", star_path, "involution matrix JSON");
  auto* c_pseudo = app.add_subcommand("pseudo", "pseudo-isometry group");
  add_common(c_pseudo, true);
  auto* c_pg = app.add_subcommand("pgroup", "Baer correspondence pipeline");
  std::string pg_action = "pseudo";
  c_pg->add_option("action", pg_action, "pseudo");
  add_common(c_pg, true);
  c_pg->add_flag("--assume-exponent-p", assume_exponent_p,
                 "report the Aut(G) candidate count (needs exponent p, G' = Z)");
  auto* c_quad = app.add_subcommand("quadstab", "quadratic stabilizer");
  add_common(c_quad, true);
  auto* c_oracle = app.add_subcommand("oracle", "brute-force ground truth");
  c_oracle->add_option("kind", oracle_kind, "aut|pseudo|isom|normalizer|star-normalizer")
      ->required();
  add_common(c_oracle, true);
  c_oracle->add_option("--cap", cap_override, "filter cap");
  c_oracle->add_flag("--dump", dump, "include the element list");
  auto* c_verify = app.add_subcommand("verify", "theorem-vs-oracle suites");
  c_verify->add_option("--suite", suite, "galois|lattice|main1|main2|norm|starnorm|pgroup|quadstab");
  c_verify->add_option("--trials", trials, "trial count");
  c_verify->add_option("--seed", seed, "random seed");
  c_verify->add_option("--caps", caps_spec, "caps");
  c_verify->add_option("--out", out_path, "output JSON file");
  auto* c_rand = app.add_subcommand("random", "seeded random instances");
  c_rand->add_option("--kind", kind, "bimap|algebra");
  c_rand->add_option("--p", rp, "characteristic");
  c_rand->add_option("--k", rk, "extension degree");
  c_rand->add_option("--a", ra, "dim U");
  c_rand->add_option("--b", rb, "dim V");
  c_rand->add_option("--w", rw, "dim W (bimap)");
  c_rand->add_option("--gens", rgens, "generator count (algebra)");
  c_rand->add_option("--seed", seed, "random seed");
  c_rand->add_option("--out", out_path, "output JSON file");

  std::vector<const char*> argv;
  argv.push_back("gfbimap");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  int exit_code = 0;
  try {
    Caps caps = parse_caps(caps_spec);
    if (cap_override) caps.filter = cap_override;

    if (*c_adjoint) {
      Bimap bm = bimap_from_json(load_json(in_path));
      AlgebraPair adj = adjoint_algebra(bm);
      Json j;
      j["dim"] = adj.dim();
      if (bm.a == bm.b && (bm.symmetric || bm.alternating) &&
          is_nondegenerate(bm)) {
        Involution st = star_involution(bm, adj);
        j["algebra"] = algebra_to_json(adj, &st);
      } else {
        j["algebra"] = algebra_to_json(adj);
      }
      emit(stamp(j, seed, caps), out_path, out);
    } else if (*c_tensor) {
      Json jin = load_json(in_path);
      AlgebraPair S = algebra_from_json(jin);
      TensorPresentation T = tensor_over(*S.F, S.a, S.b, S.basis);
      Json j;
      j["dim"] = T.product.w;
      j["relations_dim"] = T.relations.dim();
      j["bimap"] = bimap_to_json(T.product);
      emit(stamp(j, seed, caps), out_path, out);
    } else if (*c_ext) {
      Json jin = load_json(in_path);
      AlgebraPair S = algebra_from_json(jin);
      require(S.a == S.b, "exterior needs a = b");
      TensorPresentation T = exterior_over(*S.F, S.a, S.basis, sign[0]);
      Json j;
      j["dim"] = T.product.w;
      j["bimap"] = bimap_to_json(T.product);
      emit(stamp(j, seed, caps), out_path, out);
    } else if (*c_lat) {
      Bimap x = bimap_from_json(load_json(in_path));
      Bimap y = bimap_from_json(load_json(in2_path));
      Json j;
      if (op == "meet") {
        j["bimap"] = bimap_to_json(bimap_meet(x, y));
      } else if (op == "join") {
        j["bimap"] = bimap_to_json(bimap_join(x, y));
      } else if (op == "factors") {
        auto tau = factors_through(x, y);
        j["factors_through"] = tau.has_value();
        if (tau.has_value()) j["tau"] = mat_to_json(*tau);
      } else if (op == "equivalent") {
        j["factor_equivalent"] = factor_equivalent(x, y);
      } else {
        throw Unsupported("unknown lattice op: " + op);
      }
      emit(stamp(j, seed, caps), out_path, out);
    } else if (*c_norm) {
      AlgebraPair A = algebra_from_json(load_json(in_path));
      NormalizerResult N = normalizer_of(A, seed, caps);
      Json j = genset_to_json(N.gens);
      j["nsj_order"] = to_decimal(N.nsj_order);
      j["orbit_of_radical"] = to_decimal(N.orbit);
      j["stabilizer_order"] = to_decimal(N.stab_order);
      if (!N.gens.warnings.empty()) exit_code = 2;
      emit(stamp(j, seed, caps), out_path, out);
    } else if (*c_star) {
      StarAlgebra A = star_algebra_from_inputs(load_json(in_path), star_path);
      StarNormalizerResult ns = star_normalizer(A, seed, caps);
      Json j = star_genset_to_json(ns.gens);
      j["orbit_minus"] = to_decimal(ns.orbit_minus);
      j["orbit_plus"] = to_decimal(ns.orbit_plus);
      if (!ns.gens.warnings.empty()) exit_code = 2;
      emit(stamp(j, seed, caps), out_path, out);
    } else if (*c_pseudo) {
      Bimap bm = bimap_from_json(load_json(in_path));
      PseudoIsometryResult r = pseudo_isometry_group(bm, seed, caps);
      Json j = star_genset_to_json(r.gens);
      j["order"] = r.order.has_value() ? Json(to_decimal(*r.order)) : Json(nullptr);
      j["orbit"] = to_decimal(r.orbit);
      if (!r.order.has_value()) exit_code = 2;
      emit(stamp(j, seed, caps), out_path, out);
    } else if (*c_pg) {
      require(pg_action == "pseudo", "pgroup action must be 'pseudo'");
      PGroupData G = pgroup_from_json(load_json(in_path));
      Bimap bm = baer_bimap(G);
      Json j;
      j["bimap"] = bimap_to_json(bm);
      PseudoIsometryResult r = pseudo_isometry_group(bm, seed, caps);
      j["pseudo_order"] =
          r.order.has_value() ? Json(to_decimal(*r.order)) : Json(nullptr);
      // |Hom(V, W)| = p^(n*m): the central part of the candidate count
      BigInt hom = 1;
      for (int i = 0; i < G.n * bm.w; ++i) hom *= G.p;
      j["hom_part"] = to_decimal(hom);
      if (assume_exponent_p && r.order.has_value())
        j["aut_candidate"] = to_decimal(*r.order * hom);
      if (!r.order.has_value()) exit_code = 2;
      emit(stamp(j, seed, caps), out_path, out);
    } else if (*c_quad) {
      StabilizerProblem P = quadstab_from_json(load_json(in_path));
      Json j;
      if (P.hermitian) {
        HStabResult r = hermitian_stab_solve(P, seed, caps);
        j["order"] =
            r.order.has_value() ? Json(to_decimal(*r.order)) : Json(nullptr);
        Json gens = Json::array();
        for (const Mat& g : r.gens) gens.push_back(mat_to_json(g));
        j["generators"] = std::move(gens);
      } else {
        QuadstabResult r = quadstab_solve(P, seed, caps);
        j["order"] =
            r.order.has_value() ? Json(to_decimal(*r.order)) : Json(nullptr);
        Json gens = Json::array();
        for (const auto& g : r.gens)
          gens.push_back(Json{{"x", mat_to_json(g.F)}, {"y", mat_to_json(g.G)}});
        j["generators"] = std::move(gens);
        if (!r.order.has_value()) exit_code = 2;
      }
      emit(stamp(j, seed, caps), out_path, out);
    } else if (*c_oracle) {
      Json jin = load_json(in_path);
      Json j;
      if (oracle_kind == "aut") {
        ElementTable t = brute_autotopisms(bimap_from_json(jin), caps);
        j["order"] = to_decimal(t.order());
        if (dump) {
          Json el = Json::array();
          for (auto& g : t.pairs)
            el.push_back(Json{{"F", mat_to_json(g.F)}, {"G", mat_to_json(g.G)}});
          j["elements"] = std::move(el);
        }
      } else if (oracle_kind == "pseudo") {
        ElementTable t = brute_pseudo_isometries(bimap_from_json(jin), caps);
        j["order"] = to_decimal(t.order());
        if (dump) {
          Json el = Json::array();
          for (auto& g : t.singles) el.push_back(mat_to_json(g));
          j["elements"] = std::move(el);
        }
      } else if (oracle_kind == "isom") {
        ElementTable t = brute_isometries(bimap_from_json(jin), caps);
        j["order"] = to_decimal(t.order());
        if (dump) {
          Json el = Json::array();
          for (auto& g : t.singles) el.push_back(mat_to_json(g));
          j["elements"] = std::move(el);
        }
      } else if (oracle_kind == "normalizer") {
        ElementTable t = brute_normalizer(algebra_from_json(jin), caps);
        j["order"] = to_decimal(t.order());
      } else if (oracle_kind == "star-normalizer") {
        StarAlgebra A = star_algebra_from_inputs(jin, star_path);
        ElementTable t = brute_star_normalizer(A, caps);
        j["order"] = to_decimal(t.order());
      } else {
        throw Unsupported("unknown oracle kind: " + oracle_kind);
      }
      emit(stamp(j, seed, caps), out_path, out);
    } else if (*c_verify) {
      SuiteOutcome o = run_suite(suite, trials, seed, caps);
      Json j;
      j["suite"] = suite;
      j["passed"] = o.passed;
      j["failed"] = o.failed;
      if (!o.failures.empty()) j["failures"] = o.failures;
      emit(stamp(j, seed, caps), out_path, out);
      if (!o.ok()) exit_code = 1;
    } else if (*c_rand) {
      const Field& F = Field::get(rp, rk);
      Rng rng(seed);
      Json j;
      if (kind == "bimap") {
        Bimap bm = random_full_bimap(F, ra, rb, rw, rng);
        j = bimap_to_json(bm);
      } else if (kind == "algebra") {
        std::vector<MatPair> gens;
        for (int t = 0; t < rgens; ++t) {
          MatPair p{Mat(F, ra, ra), Mat(F, rb, rb)};
          for (auto& x : p.X.a) x = static_cast<Fe>(rng.below(F.q()));
          for (auto& x : p.Y.a) x = static_cast<Fe>(rng.below(F.q()));
          gens.push_back(p);
        }
        j = algebra_to_json(envelope(F, ra, rb, gens));
      } else {
        throw Unsupported("unknown random kind: " + kind);
      }
      emit(stamp(j, seed, caps), out_path, out);
    }
  } catch (const OrbitCapExceeded& e) {
    err << Json{{"error", e.code()}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  } catch (const ClosureCapExceeded& e) {
    err << Json{{"error", e.code()}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    err << Json{{"error", e.code()}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    err << Json{{"error", e.code()}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << Json{{"error", "BadInput"}, {"detail", e.what()}}.dump() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace gfbimap
