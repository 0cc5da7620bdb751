#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata/cochain.hpp"
#include "strata/isomorphism.hpp"

namespace strata {

// Extension data on V = M (+) W, M coordinates first. The W-structure delta
// and M-structure mu are given as algebras on their own coordinates and
// embedded into C^2(V) here.
struct ExtensionProblem {
  Algebra m_algebra;  // mu, dim m
  Algebra w_algebra;  // delta, dim w
  int dim_m() const { return m_algebra.dim(); }
  int dim_w() const { return w_algebra.dim(); }
  int dim_v() const { return dim_m() + dim_w(); }

  Cochain embedded_mu() const;
  Cochain embedded_delta() const;
};

// lambda in C^{1,1}, psi and tau in C^{0,2}, all embedded in C^2(V)
struct ExtensionDatum {
  Cochain lambda;
  Cochain psi;
  Cochain tau;
};

struct ExtensionResiduals {
  Cochain maurer_cartan;  // [delta,lambda] + 1/2[lambda,lambda] + [mu,psi_tot]
  Cochain compatibility;  // [mu,lambda]
  Cochain cocycle;        // [delta+lambda, psi_tot]
  bool all_zero() const {
    return maurer_cartan.is_zero() && compatibility.is_zero() &&
           cocycle.is_zero();
  }
};

ExtensionResiduals extension_conditions_residuals(const ExtensionProblem& prob,
                                                  const ExtensionDatum& datum);

Algebra assemble_extension(const ExtensionProblem& prob,
                           const ExtensionDatum& datum);

// membership test for the bigraded pieces: image in M and support on inputs
// with exactly k M-factors and l W-factors
bool is_bigraded(const Cochain& c, int k, int l, int dim_m);
Cochain bigraded_part(const Cochain& c, int k, int l, int dim_m);

struct CentralExtClass {
  Algebra algebra;       // on dim w + 1, ideal coordinate first
  std::string label;     // cocycle class description
  bool zero_cocycle = false;
  std::optional<std::pair<Cyclo, Cyclo>> family_params;
};

struct CentralExtOptions {
  // exact parameter grid for projective families / H-space sampling
  std::vector<std::pair<Cyclo, Cyclo>> param_grid;
  std::vector<Cyclo> coefficient_grid;  // for H-space sampling, delta != 0
  int iso_budget = 16;
  uint64_t seed = 0;
};
CentralExtOptions default_central_options();

// central extensions of delta by a 1-dimensional completely trivial ideal:
// one representative per cocycle class (exact via cogredience classes when
// delta = 0; H-sampling + isomorphism dedup otherwise)
std::vector<CentralExtClass> central_ext_classes(
    const Algebra& delta, const CentralExtOptions& opts = default_central_options());

struct Codim1Options {
  std::vector<Cyclo> lambda_grid;  // coefficients over the reduced basis
  std::vector<Cyclo> psi_grid;     // coefficients over the psi solution space
  bool nilpotent_only = true;
};
Codim1Options default_codim1_options();

struct Codim1Result {
  std::vector<Algebra> algebras;       // assembled, associative (asserted)
  int lambda_space_dim = 0;            // dim Z^{1,1}
  int lambda_coboundary_dim = 0;       // dim B^{1,1}
  int lambda_reduced_dim = 0;          // sampled dimensions
  int lambda_branch_count = 0;         // lambda samples admitting MC solutions
};

// codimension-1 extensions of the trivial 1-dim algebra by mu (3-dim
// nilpotent): lambda from the compatibility kernel modulo coboundaries,
// psi_tot from the stacked MC + cocycle linear system
Codim1Result codim1_ext_enumerate(const Algebra& mu,
                                  const Codim1Options& opts = default_codim1_options());

// does any member of `list` verify isomorphic to `target`?
bool contains_isomorphic(const std::vector<Algebra>& list, const Algebra& target,
                         const IsoOptions& opts = {});

}  // namespace strata
