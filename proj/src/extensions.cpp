#include "strata/extensions.hpp"

#include <stdexcept>

#include "strata/bilinear.hpp"

namespace strata {

namespace {

// flat input index decode/encode helpers for arity-2 cochains
size_t in2(int i, int j, int dim) { return size_t(i) * dim + j; }

Cochain embed_algebra(const Algebra& a, int dim_v, int offset) {
  Cochain c(2, dim_v);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        c.coeff(in2(i + offset, j + offset, dim_v), k + offset) = a.at(i, j, k);
  return c;
}

Cochain half(Cochain c) {
  c.scale(Cyclo(Rational(1, 2)));
  return c;
}

}  // namespace

Cochain ExtensionProblem::embedded_mu() const {
  return embed_algebra(m_algebra, dim_v(), 0);
}

Cochain ExtensionProblem::embedded_delta() const {
  return embed_algebra(w_algebra, dim_v(), dim_m());
}

ExtensionResiduals extension_conditions_residuals(const ExtensionProblem& prob,
                                                  const ExtensionDatum& datum) {
  Cochain mu = prob.embedded_mu();
  Cochain delta = prob.embedded_delta();
  Cochain psi_tot = datum.psi;
  psi_tot += datum.tau;
  ExtensionResiduals r{Cochain(3, prob.dim_v()), Cochain(3, prob.dim_v()),
                       Cochain(3, prob.dim_v())};
  r.maurer_cartan = gbracket(delta, datum.lambda);
  r.maurer_cartan += half(gbracket(datum.lambda, datum.lambda));
  r.maurer_cartan += gbracket(mu, psi_tot);
  r.compatibility = gbracket(mu, datum.lambda);
  Cochain dl = delta;
  dl += datum.lambda;
  r.cocycle = gbracket(dl, psi_tot);
  return r;
}

Algebra assemble_extension(const ExtensionProblem& prob,
                           const ExtensionDatum& datum) {
  const int n = prob.dim_v();
  Algebra a(n);
  Cochain total = prob.embedded_mu();
  total += prob.embedded_delta();
  total += datum.lambda;
  total += datum.psi;
  total += datum.tau;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) a.at(i, j, k) = total.coeff(in2(i, j, n), k);
  return a;
}

bool is_bigraded(const Cochain& c, int k, int l, int dim_m) {
  return bigraded_part(c, k, l, dim_m) == c;
}

Cochain bigraded_part(const Cochain& c, int k, int l, int dim_m) {
  Cochain out(c.arity(), c.dim());
  if (c.arity() != k + l) return out;
  const int d = c.dim();
  for (size_t f = 0; f < c.input_count(); ++f) {
    // decode input word; count M-factors (< dim_m)
    int m_count = 0;
    size_t t = f;
    for (int pos = 0; pos < c.arity(); ++pos) {
      int letter = int(t % size_t(d));
      if (letter < dim_m) ++m_count;
      t /= size_t(d);
    }
    if (m_count != k) continue;
    for (int out_k = 0; out_k < dim_m; ++out_k)
      out.coeff(f, out_k) = c.coeff(f, out_k);
  }
  return out;
}

CentralExtOptions default_central_options() {
  CentralExtOptions o;
  auto pair = [](long a, long b) {
    return std::pair<Cyclo, Cyclo>{Cyclo(int(a)), Cyclo(int(b))};
  };
  o.param_grid = {pair(1, 1), pair(1, -1), pair(1, 0), pair(0, 1), pair(0, 0),
                  pair(1, 2), pair(2, 1), pair(1, 3), pair(2, 5)};
  o.coefficient_grid = {Cyclo(0), Cyclo(1), Cyclo(-1)};
  return o;
}

std::vector<CentralExtClass> central_ext_classes(const Algebra& delta,
                                                 const CentralExtOptions& opts) {
  const int w = delta.dim();
  if (w < 1 || w > 3)
    throw std::invalid_argument("central_ext_classes: dim W must be 1..3");
  const int n = w + 1;  // M = <e1>, W = <e2..>
  ExtensionProblem prob{parse_structure("", 1), delta};
  Cochain deltac = prob.embedded_delta();
  // psi basis: p(i,j;1), i,j >= 2
  struct PsiCoord {
    int i, j;
  };
  std::vector<PsiCoord> coords;
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) coords.push_back({i, j});
  auto psi_from = [&](const CycMat& c) {
    Cochain psi(2, n);
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) psi.coeff(in2(i, j, n), 0) = c(i - 1, j - 1);
    return psi;
  };
  auto make_class = [&](const CycMat& cmat, const std::string& label,
                        bool zero) {
    ExtensionDatum datum{Cochain(2, n), psi_from(cmat), Cochain(2, n)};
    Algebra alg = assemble_extension(prob, datum);
    auto rep = is_associative(alg);
    if (!rep.associative)
      throw std::logic_error("central extension assembled non-associative");
    CentralExtClass cls;
    cls.algebra = alg;
    cls.label = label;
    cls.zero_cocycle = zero;
    return cls;
  };

  bool delta_zero = true;
  for (int i = 0; i < w && delta_zero; ++i)
    for (int j = 0; j < w && delta_zero; ++j)
      for (int k = 0; k < w; ++k)
        if (!delta.at(i, j, k).is_zero()) {
          delta_zero = false;
          break;
        }

  std::vector<CentralExtClass> out;
  if (delta_zero) {
    // cocycle condition vacuous; classes = cogredience classes of the
    // coefficient matrix modulo scaling
    out.push_back(make_class(CycMat::Constant(w, w, Cyclo(0)), "zero", true));
    if (w == 1) {
      CycMat c(1, 1);
      c(0, 0) = Cyclo(1);
      out.push_back(make_class(c, "unit", false));
      return out;
    }
    if (w == 2) {
      for (const auto& [p, q] : opts.param_grid) {
        auto norm = canon2(canonical2_matrix(Canon2Tag::Bpq, p, q));
        // skip duplicate grid points mapping to one class
        bool dup = false;
        for (const auto& c : out)
          if (c.family_params && norm.pq &&
              c.family_params->first == norm.pq->first &&
              c.family_params->second == norm.pq->second)
            dup = true;
        if (dup) continue;
        CentralExtClass cls = make_class(
            canonical2_matrix(Canon2Tag::Bpq, p, q),
            "B(" + p.str() + ":" + q.str() + ")", false);
        cls.family_params = norm.pq;
        out.push_back(cls);
      }
      out.push_back(make_class(canonical2_matrix(Canon2Tag::C, Cyclo(0), Cyclo(0)),
                               "C", false));
      return out;
    }
    // w == 3: the six 3x3 canonical types, families sampled on the grid
    for (const auto& [p, q] : opts.param_grid) {
      auto norm = canon3(canonical3_matrix(Canon3Tag::B1, p, q));
      bool dup = false;
      for (const auto& c : out)
        if (c.label.substr(0, 2) == "B1" && c.family_params && norm.pq &&
            c.family_params->first == norm.pq->first &&
            c.family_params->second == norm.pq->second)
          dup = true;
      if (!dup && !(p.is_zero() && q.is_zero())) {
        CentralExtClass cls =
            make_class(canonical3_matrix(Canon3Tag::B1, p, q),
                       "B1(" + p.str() + ":" + q.str() + ")", false);
        cls.family_params = norm.pq;
        out.push_back(cls);
      }
      auto norm2 = canon3(canonical3_matrix(Canon3Tag::B2, p, q));
      dup = false;
      for (const auto& c : out)
        if (c.label.substr(0, 2) == "B2" && c.family_params && norm2.pq &&
            c.family_params->first == norm2.pq->first &&
            c.family_params->second == norm2.pq->second)
          dup = true;
      if (!dup) {
        CentralExtClass cls =
            make_class(canonical3_matrix(Canon3Tag::B2, p, q),
                       "B2(" + p.str() + ":" + q.str() + ")", false);
        cls.family_params = norm2.pq;
        out.push_back(cls);
      }
    }
    for (Canon3Tag t : {Canon3Tag::B3, Canon3Tag::B4, Canon3Tag::B5, Canon3Tag::B6})
      out.push_back(make_class(canonical3_matrix(t, Cyclo(0), Cyclo(0)),
                               canon3_tag_name(t), false));
    return out;
  }

  // delta != 0: cocycle space / coboundaries, then grid + iso dedup
  const int nc = w * w;
  std::vector<Cochain> basis_imgs;
  CycMat cond(long(Cochain(3, n).coeff_count()), nc);
  for (int t = 0; t < nc; ++t) {
    CycMat c = CycMat::Constant(w, w, Cyclo(0));
    c(coords[size_t(t)].i - 1, coords[size_t(t)].j - 1) = Cyclo(1);
    Cochain br = gbracket(deltac, psi_from(c));
    cond.col(t) = br.flatten();
  }
  auto zbasis = kernel_basis(cond);
  // coboundaries [delta, beta], beta : W -> M
  std::vector<CycVec> bimgs;
  for (int i = 1; i < n; ++i) {
    Cochain beta(1, n);
    beta.coeff(size_t(i), 0) = Cyclo(1);
    Cochain br = gbracket(deltac, beta);
    CycVec img(nc);
    for (int t = 0; t < nc; ++t)
      img(t) = br.coeff(in2(coords[size_t(t)].i, coords[size_t(t)].j, n), 0);
    bimgs.push_back(img);
  }
  CycMat brows(long(bimgs.size()), nc);
  for (size_t i = 0; i < bimgs.size(); ++i)
    for (int c = 0; c < nc; ++c) brows(long(i), c) = bimgs[i](c);
  CycMat bred = row_space_basis(brows);
  // complement of B inside Z
  std::vector<CycVec> comp;
  {
    CycMat work = bred;
    for (const auto& z : zbasis) {
      CycMat test(work.rows() + 1, nc);
      test.block(0, 0, work.rows(), nc) = work;
      for (int c = 0; c < nc; ++c) test(work.rows(), c) = z(c);
      if (mat_rank(test) == test.rows()) {
        comp.push_back(z);
        work = test;
      }
    }
  }
  // sample the reduced classes on the coefficient grid, dedupe by iso
  std::vector<std::vector<Cyclo>> combos{{}};
  for (size_t t = 0; t < comp.size(); ++t) {
    std::vector<std::vector<Cyclo>> next;
    for (const auto& base : combos)
      for (const Cyclo& v : opts.coefficient_grid) {
        auto cc = base;
        cc.push_back(v);
        next.push_back(std::move(cc));
      }
    combos = std::move(next);
  }
  std::vector<CentralExtClass> reps;
  for (const auto& combo : combos) {
    CycMat cmat = CycMat::Constant(w, w, Cyclo(0));
    bool zero = true;
    for (size_t t = 0; t < combo.size(); ++t) {
      if (combo[t].is_zero()) continue;
      zero = false;
      for (int s = 0; s < nc; ++s) {
        cmat(coords[size_t(s)].i - 1, coords[size_t(s)].j - 1) +=
            combo[t] * comp[t](s);
      }
    }
    CentralExtClass cls = make_class(cmat, zero ? "zero" : "cocycle", zero);
    bool dup = false;
    for (const auto& r : reps) {
      IsoOptions io;
      io.budget = opts.iso_budget;
      io.seed = opts.seed;
      io.use_cohomology = true;
      io.hmax = 2;
      if (are_isomorphic(r.algebra, cls.algebra, io).tag ==
          IsoVerdict::Tag::Witness) {
        dup = true;
        break;
      }
    }
    if (!dup) reps.push_back(cls);
  }
  return reps;
}

Codim1Options default_codim1_options() {
  Codim1Options o;
  o.lambda_grid = {Cyclo(0), Cyclo(1), Cyclo(-1)};
  o.psi_grid = {Cyclo(0), Cyclo(1), Cyclo(-1)};
  return o;
}

namespace {

// special-case enumeration for mu = 0 (18-dim compatibility kernel): the
// left action is normalized to {0, N} by GL(M), the right action runs over
// rank-1 nilpotents with entries in {0,±1,±i}, psi over {0,1}^3
std::vector<std::array<CycMat, 2>> trivial_mu_lr_pairs() {
  std::vector<CycMat> rights;
  std::vector<Cyclo> vals{Cyclo(0), Cyclo(1), Cyclo(-1)};
  unsigned n = CycloField::instance().order();
  if (n % 4 == 0) {
    vals.push_back(Cyclo::zeta_pow(n / 4));
    vals.push_back(-Cyclo::zeta_pow(n / 4));
  }
  auto mk = [&](const std::array<Cyclo, 3>& u, const std::array<Cyclo, 3>& v) {
    CycMat m = CycMat::Constant(3, 3, Cyclo(0));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m(a, b) = u[size_t(a)] * v[size_t(b)];
    return m;
  };
  std::vector<std::array<Cyclo, 3>> vecs;
  for (const Cyclo& a : vals)
    for (const Cyclo& b : vals)
      for (const Cyclo& c : vals) {
        if (a.is_zero() && b.is_zero() && c.is_zero()) continue;
        vecs.push_back({a, b, c});
      }
  CycMat n0 = CycMat::Constant(3, 3, Cyclo(0));
  n0(0, 1) = Cyclo(1);  // e2 -> e1
  std::vector<std::array<CycMat, 2>> out;
  CycMat zero = CycMat::Constant(3, 3, Cyclo(0));
  out.push_back({zero, zero});
  out.push_back({zero, n0});
  out.push_back({n0, zero});
  for (const auto& u : vecs)
    for (const auto& v : vecs) {
      Cyclo dot(0);
      for (int t = 0; t < 3; ++t) dot += v[size_t(t)] * u[size_t(t)];
      if (!dot.is_zero()) continue;  // R^2 = 0
      CycMat r = mk(u, v);
      CycMat lr = n0 * r, rl = r * n0;
      if (!(lr == rl)) continue;
      out.push_back({n0, r});
    }
  return out;
}

}  // namespace

Codim1Result codim1_ext_enumerate(const Algebra& mu, const Codim1Options& opts) {
  if (mu.dim() != 3)
    throw std::invalid_argument("codim1_ext_enumerate: mu must be 3-dim");
  {
    auto filt = power_subspace_dims(mu);
    if (!filt.nilpotent)
      throw std::invalid_argument("codim1_ext_enumerate: mu must be nilpotent");
  }
  const int n = 4;
  Codim1Result result;
  ExtensionProblem prob{mu, parse_structure("", 1)};
  Cochain muc = prob.embedded_mu();

  // lambda coordinates: p(i,4;k) then p(4,i;k), i,k in 1..3
  struct LC {
    int i, j, k;
  };
  std::vector<LC> lcs;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) lcs.push_back({i, 3, k});
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) lcs.push_back({3, i, k});
  auto lambda_from = [&](const CycVec& coeffs) {
    Cochain l(2, n);
    for (size_t t = 0; t < lcs.size(); ++t)
      l.coeff(in2(lcs[t].i, lcs[t].j, n), lcs[t].k) = coeffs(long(t));
    return l;
  };

  bool mu_zero = true;
  for (int i = 0; i < 3 && mu_zero; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (!mu.at(i, j, k).is_zero()) {
          mu_zero = false;
          break;
        }

  std::vector<std::pair<Cochain, std::vector<Cochain>>> lambda_psis;

  if (mu_zero) {
    result.lambda_space_dim = 18;
    result.lambda_coboundary_dim = 0;
    result.lambda_reduced_dim = 18;
    auto pairs = trivial_mu_lr_pairs();
    for (const auto& [L, R] : pairs) {
      Cochain lam(2, n);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          // x * e4 = L x  and  e4 * x = R x
          lam.coeff(in2(b, 3, n), a) = L(a, b);
          lam.coeff(in2(3, b, n), a) = R(a, b);
        }
      // psi candidates over {0,1}^3 filtered by L psi = R psi
      std::vector<Cochain> psis;
      for (int mask = 0; mask < 8; ++mask) {
        CycVec pv = CycVec::Constant(3, Cyclo(0));
        for (int t = 0; t < 3; ++t)
          if (mask & (1 << t)) pv(t) = Cyclo(1);
        CycVec lp = L * pv, rp = R * pv;
        if (!(lp == rp)) continue;
        Cochain psi(2, n);
        for (int t = 0; t < 3; ++t) psi.coeff(in2(3, 3, n), t) = pv(t);
        psis.push_back(psi);
      }
      lambda_psis.push_back({lam, psis});
    }
  } else {
    // compatibility kernel
    const int nl = 18;
    CycMat cond(long(Cochain(3, n).coeff_count()), nl);
    for (int t = 0; t < nl; ++t) {
      CycVec e = CycVec::Constant(nl, Cyclo(0));
      e(t) = Cyclo(1);
      cond.col(t) = gbracket(muc, lambda_from(e)).flatten();
    }
    auto z = kernel_basis(cond);
    result.lambda_space_dim = int(z.size());
    // coboundaries [mu, beta], beta: e4 -> M
    std::vector<CycVec> bimgs;
    for (int k = 0; k < 3; ++k) {
      Cochain beta(1, n);
      beta.coeff(3, k) = Cyclo(1);
      Cochain br = gbracket(muc, beta);
      CycVec img(nl);
      for (size_t t = 0; t < lcs.size(); ++t)
        img(long(t)) = br.coeff(in2(lcs[t].i, lcs[t].j, n), lcs[t].k);
      // confirm the bracket lives in the lambda coordinates
      Cochain check = lambda_from(img);
      if (!(check == br))
        throw std::logic_error("coboundary leaves the lambda space");
      bimgs.push_back(img);
    }
    CycMat brows(long(bimgs.size()), nl);
    for (size_t i = 0; i < bimgs.size(); ++i)
      for (int c = 0; c < nl; ++c) brows(long(i), c) = bimgs[i](c);
    CycMat bred = row_space_basis(brows);
    result.lambda_coboundary_dim = int(bred.rows());
    std::vector<CycVec> comp;
    CycMat work = bred;
    for (const auto& zz : z) {
      CycMat test(work.rows() + 1, nl);
      test.block(0, 0, work.rows(), nl) = work;
      for (int c = 0; c < nl; ++c) test(work.rows(), c) = zz(c);
      if (mat_rank(test) == test.rows()) {
        comp.push_back(zz);
        work = test;
      }
    }
    result.lambda_reduced_dim = int(comp.size());
    // grid over the reduced lambda space
    std::vector<std::vector<Cyclo>> combos{{}};
    for (size_t t = 0; t < comp.size(); ++t) {
      std::vector<std::vector<Cyclo>> next;
      for (const auto& base : combos)
        for (const Cyclo& v : opts.lambda_grid) {
          auto cc = base;
          cc.push_back(v);
          next.push_back(std::move(cc));
        }
      combos = std::move(next);
    }
    for (const auto& combo : combos) {
      CycVec lv = CycVec::Constant(nl, Cyclo(0));
      for (size_t t = 0; t < combo.size(); ++t)
        if (!combo[t].is_zero())
          for (int s = 0; s < nl; ++s) lv(s) += combo[t] * comp[t](s);
      lambda_psis.push_back({lambda_from(lv), {}});
    }
  }

  // solve for psi_tot per lambda: [mu,psi] = -1/2[lambda,lambda], [lambda,psi]=0
  for (auto& [lam, psis] : lambda_psis) {
    if (psis.empty()) {
      CycMat m1(long(Cochain(3, n).coeff_count()), 3);
      CycMat m2(long(Cochain(3, n).coeff_count()), 3);
      for (int t = 0; t < 3; ++t) {
        Cochain psi(2, n);
        psi.coeff(in2(3, 3, n), t) = Cyclo(1);
        m1.col(t) = gbracket(muc, psi).flatten();
        m2.col(t) = gbracket(lam, psi).flatten();
      }
      Cochain ll = gbracket(lam, lam);
      ll.scale(Cyclo(Rational(-1, 2)));
      CycMat stacked(m1.rows() * 2, 3);
      stacked.block(0, 0, m1.rows(), 3) = m1;
      stacked.block(m1.rows(), 0, m2.rows(), 3) = m2;
      CycVec rhs(m1.rows() * 2);
      rhs.segment(0, m1.rows()) = ll.flatten();
      for (long r = 0; r < m2.rows(); ++r) rhs(m1.rows() + r) = Cyclo(0);
      auto particular = solve_linear(stacked, rhs);
      if (!particular) continue;  // this lambda class admits no extension
      auto kern = kernel_basis(stacked);
      std::vector<std::vector<Cyclo>> combos{{}};
      for (size_t t = 0; t < kern.size(); ++t) {
        std::vector<std::vector<Cyclo>> next;
        for (const auto& base : combos)
          for (const Cyclo& v : opts.psi_grid) {
            auto cc = base;
            cc.push_back(v);
            next.push_back(std::move(cc));
          }
        combos = std::move(next);
      }
      for (const auto& combo : combos) {
        CycVec pv = *particular;
        for (size_t t = 0; t < combo.size(); ++t)
          if (!combo[t].is_zero())
            for (int s = 0; s < 3; ++s) pv(s) += combo[t] * kern[t](s);
        Cochain psi(2, n);
        for (int t = 0; t < 3; ++t) psi.coeff(in2(3, 3, n), t) = pv(t);
        psis.push_back(psi);
      }
    }
    if (!psis.empty()) ++result.lambda_branch_count;
    for (const Cochain& psi : psis) {
      ExtensionDatum datum{lam, psi, Cochain(2, n)};
      Algebra alg = assemble_extension(prob, datum);
      auto rep = is_associative(alg);
      if (!rep.associative)
        throw std::logic_error("codim1 extension assembled non-associative");
      if (opts.nilpotent_only && !power_subspace_dims(alg).nilpotent) continue;
      result.algebras.push_back(std::move(alg));
    }
  }
  return result;
}

bool contains_isomorphic(const std::vector<Algebra>& list, const Algebra& target,
                         const IsoOptions& opts) {
  Fingerprint ft = fingerprint(target);
  for (const Algebra& a : list) {
    if (!(fingerprint(a) == ft)) continue;
    if (are_isomorphic(a, target, opts).tag == IsoVerdict::Tag::Witness)
      return true;
  }
  return false;
}

}  // namespace strata
