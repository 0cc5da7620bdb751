#pragma once

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "strata/cyclo.hpp"

namespace strata {

// A square-free least-squares system over complex unknowns with analytic
// jacobian. Unknowns [0, snap_count) are the entries we want as exact field
// elements; the tail (inverses, slack scales) only supports the search.
class LsqProblem {
 public:
  virtual ~LsqProblem() = default;
  virtual int num_unknowns() const = 0;
  virtual int snap_count() const = 0;
  virtual Eigen::VectorXcd residual(const Eigen::VectorXcd& x) const = 0;
  virtual Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const = 0;
};

struct LmOptions {
  int max_iterations = 250;
  double tol = 1e-12;
};

struct LmOutcome {
  Eigen::VectorXcd x;
  double norm = 1e300;
};

// Levenberg-Marquardt on the free (non-frozen) unknowns.
LmOutcome lm_minimize(const LsqProblem& prob, const Eigen::VectorXcd& x0,
                      const std::map<int, std::complex<double>>& frozen,
                      const LmOptions& opts = {});

struct FreezeOptions {
  int restarts = 24;          // random starts of the full system
  int pin_restarts = 1;       // extra random restarts per pin attempt
  double accept_norm = 1e-11;
  double snap_tol = 1e-8;
};

// Freeze-and-refine rationalization: numerically solve, snap converged
// entries into Q(zeta_N), pin remaining manifold freedoms to a ladder of
// simple field values, re-solving after each freeze. Returns exact values
// for unknowns [0, snap_count) or nullopt. Deterministic given the seed.
std::optional<std::vector<Cyclo>> freeze_refine(const LsqProblem& prob,
                                                uint64_t seed,
                                                const FreezeOptions& opts = {});

// the ladder of simple pin candidates (exact + embedding), shared so tests
// can inspect it
const std::vector<Cyclo>& pin_ladder();

}  // namespace strata
