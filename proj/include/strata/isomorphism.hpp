#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata/algebra.hpp"

namespace strata {

// Basis-change invariants used for fast refutation. Cohomology dims are
// optional (computed on request).
struct Fingerprint {
  int dim = 0;
  bool commutative = false;
  std::vector<int> power_dims;
  int kernel_dim = 0;
  int center_dim = 0;
  std::optional<std::vector<int>> h;

  friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
    return a.dim == b.dim && a.commutative == b.commutative &&
           a.power_dims == b.power_dims && a.kernel_dim == b.kernel_dim &&
           a.center_dim == b.center_dim && a.h == b.h;
  }
  std::string str() const;
};

Fingerprint fingerprint(const Algebra& a, bool with_cohomology = false,
                        int hmax = 3);

struct InvariantDiff {
  std::string name;
  std::string left, right;
};

struct IsoVerdict {
  enum class Tag { Witness, Refuted, Inconclusive } tag = Tag::Inconclusive;
  std::optional<CycMat> g;             // verified: change_of_basis(a, g) == b
  std::vector<InvariantDiff> differing;  // populated on refutation
  std::string detail;
};

struct IsoOptions {
  int budget = 24;          // random restarts for the numeric search
  uint64_t seed = 0;
  bool use_cohomology = true;
  int hmax = 2;             // degrees compared when use_cohomology
};

IsoVerdict are_isomorphic(const Algebra& a, const Algebra& b,
                          const IsoOptions& opts = {});

// exact gate: g invertible and transported structure equals b entry-for-entry
bool verify_iso(const Algebra& a, const Algebra& b, const CycMat& g);

}  // namespace strata
