#pragma once

#include <string>
#include <vector>

#include "strata/cochain.hpp"

namespace strata {

// structure tensor polynomial in deformation parameters t1..tr
using DeformationFamily = StructureFamily;

// true iff [d_t, d_t] = 0 identically in the parameters; checked by exact
// evaluation on a grid large enough for the degree bound
bool family_associative(const DeformationFamily& f, unsigned degree_bound);

struct RelationSet {
  std::vector<Poly> relations;        // in t1..tr, H^3 coordinates
  std::vector<std::string> notes;     // e.g. non-cocycle cubic terms skipped
};

// order-bounded obstruction relations from an H^2 basis (order 2 or 3)
RelationSet obstruction_relations(const Algebra& a,
                                  const std::vector<Cochain>& h2basis,
                                  int order);

struct H2DataReport {
  bool all_cocycles = false;
  bool none_coboundary = false;
  bool independent_basis = false;  // represents_basis verdict
  bool pass() const {
    return all_cocycles && none_coboundary && independent_basis;
  }
};
H2DataReport verify_h2_data(const Algebra& a, const std::vector<Cochain>& cocycles);

// equality of the truncated ideals (degree <= 3 spans) generated by two
// relation sets, plus agreement of quadratic-part spans
bool quadratic_spans_equal(const std::vector<Poly>& a, const std::vector<Poly>& b,
                           const std::vector<std::string>& params);
bool truncated_ideals_equal(const std::vector<Poly>& a, const std::vector<Poly>& b,
                            const std::vector<std::string>& params);

}  // namespace strata
