#include "strata/numsearch.hpp"

#include <algorithm>

namespace strata {

namespace {

Eigen::VectorXcd assemble(const LsqProblem& prob,
                          const std::map<int, std::complex<double>>& frozen,
                          const Eigen::VectorXcd& free_vals) {
  Eigen::VectorXcd x(prob.num_unknowns());
  int fi = 0;
  for (int k = 0; k < prob.num_unknowns(); ++k) {
    auto it = frozen.find(k);
    if (it != frozen.end())
      x(k) = it->second;
    else
      x(k) = free_vals(fi++);
  }
  return x;
}

}  // namespace

LmOutcome lm_minimize(const LsqProblem& prob, const Eigen::VectorXcd& x0,
                      const std::map<int, std::complex<double>>& frozen,
                      const LmOptions& opts) {
  const int n = prob.num_unknowns();
  std::vector<int> free;
  for (int k = 0; k < n; ++k)
    if (!frozen.count(k)) free.push_back(k);
  Eigen::VectorXcd xfree(free.size());
  for (size_t i = 0; i < free.size(); ++i) xfree(long(i)) = x0(free[i]);

  auto full = [&](const Eigen::VectorXcd& f) { return assemble(prob, frozen, f); };

  Eigen::VectorXcd x = full(xfree);
  Eigen::VectorXcd r = prob.residual(x);
  double nr = r.norm();
  if (free.empty()) return {x, nr};
  double mu = 1e-3;
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (nr < opts.tol) break;
    Eigen::MatrixXcd J = prob.jacobian(x)(Eigen::all, free);
    Eigen::MatrixXcd JH = J.adjoint();
    Eigen::MatrixXcd A = JH * J;
    Eigen::VectorXcd g = JH * r;
    bool improved = false;
    for (int tries = 0; tries < 45; ++tries) {
      Eigen::MatrixXcd M = A;
      for (long d = 0; d < M.rows(); ++d) M(d, d) += mu;
      Eigen::VectorXcd step = M.ldlt().solve(-g);
      Eigen::VectorXcd xf2 = xfree + step;
      Eigen::VectorXcd x2 = full(xf2);
      Eigen::VectorXcd r2 = prob.residual(x2);
      double nr2 = r2.norm();
      if (nr2 < nr) {
        xfree = xf2;
        x = x2;
        r = r2;
        nr = nr2;
        mu = std::max(mu * 0.3, 1e-13);
        improved = true;
        break;
      }
      mu *= 10;
      if (mu > 1e14) break;
    }
    if (!improved) break;
  }
  return {x, nr};
}

const std::vector<Cyclo>& pin_ladder() {
  static const std::vector<Cyclo> ladder = [] {
    std::vector<Cyclo> v;
    v.push_back(Cyclo(0));
    v.push_back(Cyclo(1));
    v.push_back(Cyclo(-1));
    unsigned n = CycloField::instance().order();
    if (n % 4 == 0) {
      v.push_back(Cyclo::zeta_pow(n / 4));
      v.push_back(-Cyclo::zeta_pow(n / 4));
    }
    v.push_back(Cyclo(2));
    v.push_back(Cyclo(-2));
    v.push_back(Cyclo(Rational(1, 2)));
    v.push_back(Cyclo(Rational(-1, 2)));
    if (n % 6 == 0) {
      v.push_back(Cyclo::zeta_pow(n / 6));
      v.push_back(-Cyclo::zeta_pow(n / 6));
      v.push_back(Cyclo::zeta_pow(n / 3));
    }
    if (n % 8 == 0) {
      v.push_back(Cyclo::zeta_pow(n / 8));
      Cyclo s2 = Cyclo::zeta_pow(n / 8) + Cyclo::zeta_pow(-long(n / 8));
      v.push_back(s2);
      v.push_back(-s2);
    }
    if (n % 12 == 0) {
      Cyclo s3 = Cyclo::zeta_pow(n / 12) + Cyclo::zeta_pow(-long(n / 12));
      v.push_back(s3);
      v.push_back(-s3);
    }
    if (n % 24 == 0) {
      Cyclo s2 = Cyclo::zeta_pow(n / 8) + Cyclo::zeta_pow(-long(n / 8));
      Cyclo s3 = Cyclo::zeta_pow(n / 12) + Cyclo::zeta_pow(-long(n / 12));
      v.push_back(s2 * s3);
      v.push_back(-(s2 * s3));
    }
    v.push_back(Cyclo(3));
    v.push_back(Cyclo(-3));
    return v;
  }();
  return ladder;
}

std::optional<std::vector<Cyclo>> freeze_refine(const LsqProblem& prob,
                                                uint64_t seed,
                                                const FreezeOptions& opts) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = prob.num_unknowns();
  const int ns = prob.snap_count();
  auto random_start = [&] {
    Eigen::VectorXcd x(n);
    for (int k = 0; k < n; ++k) x(k) = std::complex<double>(gauss(rng), gauss(rng));
    return x;
  };

  for (int t = 0; t < opts.restarts; ++t) {
    std::map<int, std::complex<double>> frozen;
    std::map<int, Cyclo> exact;
    LmOutcome cur = lm_minimize(prob, random_start(), frozen);
    if (cur.norm > opts.accept_norm) continue;
    bool dead = false;
    while (int(exact.size()) < ns && !dead) {
      // snap pass
      int newly = 0;
      for (int k = 0; k < ns; ++k) {
        if (exact.count(k)) continue;
        auto s = snap_to_field(cur.x(k), opts.snap_tol);
        if (s) {
          exact.emplace(k, *s);
          frozen[k] = s->to_complex();
          ++newly;
        }
      }
      if (newly) {
        if (int(exact.size()) == ns) break;
        LmOutcome nxt = lm_minimize(prob, cur.x, frozen);
        if (nxt.norm > opts.accept_norm) {
          dead = true;
          break;
        }
        cur = nxt;
        continue;
      }
      // pin pass: smallest magnitude entries first
      std::vector<int> order;
      for (int k = 0; k < ns; ++k)
        if (!exact.count(k)) order.push_back(k);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(cur.x(a)) < std::abs(cur.x(b));
      });
      bool pinned = false;
      for (int k : order) {
        for (const Cyclo& cand : pin_ladder()) {
          frozen[k] = cand.to_complex();
          LmOutcome nxt = lm_minimize(prob, cur.x, frozen);
          if (nxt.norm < opts.accept_norm) {
            exact.emplace(k, cand);
            cur = nxt;
            pinned = true;
            break;
          }
          bool ok = false;
          for (int rr = 0; rr < opts.pin_restarts && !ok; ++rr) {
            nxt = lm_minimize(prob, random_start(), frozen);
            if (nxt.norm < opts.accept_norm) {
              exact.emplace(k, cand);
              cur = nxt;
              pinned = true;
              ok = true;
            }
          }
          if (pinned) break;
          frozen.erase(k);
        }
        if (pinned) break;
      }
      if (!pinned) dead = true;
    }
    if (dead || int(exact.size()) < ns) continue;
    std::vector<Cyclo> out;
    out.reserve(ns);
    for (int k = 0; k < ns; ++k) out.push_back(exact.at(k));
    return out;
  }
  return std::nullopt;
}

}  // namespace strata
