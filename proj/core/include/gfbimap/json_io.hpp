#pragma once

#include <json.hpp>

#include "gfbimap/normalizer.hpp"
#include "gfbimap/pgroup.hpp"
#include "gfbimap/starnorm.hpp"

namespace gfbimap {

// Ordered JSON keeps output byte-stable for identical inputs.
using Json = nlohmann::ordered_json;

Json field_to_json(const Field& F);
const Field& field_from_json(const Json& j);

// Entries are plain integers over prime fields, coefficient arrays when the
// extension degree exceeds 1.
Json fe_to_json(const Field& F, Fe x);
Fe fe_from_json(const Field& F, const Json& j);
Json mat_to_json(const Mat& M);
Mat mat_from_json(const Field& F, const Json& j);

Json bimap_to_json(const Bimap& bm);
Bimap bimap_from_json(const Json& j);

Json algebra_to_json(const AlgebraPair& A, const Involution* star = nullptr);
AlgebraPair algebra_from_json(const Json& j);

Json star_algebra_to_json(const StarAlgebra& A);
StarAlgebra star_algebra_from_json(const Json& j);

Json subspace_to_json(const Subspace& S);
Subspace subspace_from_json(const Field& F, const Json& j, int ambient);

Json genset_to_json(const GeneratorSet& G);
Json star_genset_to_json(const StarGeneratorSet& G);

Json pgroup_to_json(const PGroupData& G);
PGroupData pgroup_from_json(const Json& j);

Json quadstab_to_json(const StabilizerProblem& P);
StabilizerProblem quadstab_from_json(const Json& j);

std::string order_string(const std::optional<BigInt>& order);

}  // namespace gfbimap
