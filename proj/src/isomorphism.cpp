#include "strata/isomorphism.hpp"

#include <Eigen/QR>

#include <sstream>

#include "strata/bilinear.hpp"
#include "strata/cochain.hpp"
#include "strata/numsearch.hpp"

namespace strata {

namespace {

std::string ints_str(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

// invariant subspaces as exact row-bases, in a fixed order shared by both
// sides: powers A^2, A^3, ..., then kernel, then center
std::vector<CycMat> invariant_subspaces(const Algebra& a) {
  std::vector<CycMat> out;
  const int n = a.dim();
  CycMat cur = cyc_identity(n);
  for (;;) {
    std::vector<CycVec> prods;
    for (long r = 0; r < cur.rows(); ++r) {
      CycVec v = mat_transpose(cur.row(r));
      for (int i = 0; i < n; ++i) {
        CycVec ei = CycVec::Constant(n, Cyclo(0));
        ei(i) = Cyclo(1);
        prods.push_back(a.multiply(ei, v));
        prods.push_back(a.multiply(v, ei));
      }
    }
    CycMat m(long(prods.size()), n);
    for (size_t r = 0; r < prods.size(); ++r)
      for (int c = 0; c < n; ++c) m(long(r), c) = prods[r](c);
    CycMat basis = row_space_basis(m);
    if (basis.rows() == 0 || basis.rows() == cur.rows()) {
      if (basis.rows() > 0) out.push_back(basis);
      break;
    }
    out.push_back(basis);
    cur = basis;
  }
  out.push_back(annihilator_kernel(a).rows);
  out.push_back(center(a).rows);
  return out;
}

Eigen::MatrixXcd to_complex(const CycMat& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

// bidirectional transport system with invariant-subspace constraints
class IsoLsq final : public LsqProblem {
 public:
  IsoLsq(const Algebra& a, const Algebra& b) : n_(a.dim()) {
    A_.resize(size_t(n_) * n_ * n_);
    B_.resize(size_t(n_) * n_ * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) {
          A_[idx(i, j, k)] = a.at(i, j, k).to_complex();
          B_[idx(i, j, k)] = b.at(i, j, k).to_complex();
        }
    auto subs_a = invariant_subspaces(a);
    auto subs_b = invariant_subspaces(b);
    feasible_ = subs_a.size() == subs_b.size();
    if (feasible_) {
      for (size_t t = 0; t < subs_a.size(); ++t) {
        if (subs_a[t].rows() != subs_b[t].rows()) {
          feasible_ = false;
          break;
        }
        if (subs_a[t].rows() == 0 || subs_a[t].rows() == n_) continue;
        // g maps (V, dB) -> (V, dA): g*S_B inside S_A; h the other way
        Eigen::MatrixXcd sa = to_complex(subs_a[t]).transpose();  // n x k
        Eigen::MatrixXcd sb = to_complex(subs_b[t]).transpose();
        auto perp = [this](const Eigen::MatrixXcd& s) {
          Eigen::HouseholderQR<Eigen::MatrixXcd> qr(s);
          Eigen::MatrixXcd q = qr.householderQ() *
                               Eigen::MatrixXcd::Identity(n_, s.cols());
          return Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n_, n_) -
                                  q * q.adjoint());
        };
        g_pairs_.push_back({sb, perp(sa)});
        h_pairs_.push_back({sa, perp(sb)});
      }
    }
  }

  bool feasible() const { return feasible_; }

  int num_unknowns() const override { return 2 * n_ * n_; }
  int snap_count() const override { return n_ * n_; }

  Eigen::VectorXcd residual(const Eigen::VectorXcd& x) const override {
    const int n = n_;
    Eigen::MatrixXcd g = unpack(x, 0), h = unpack(x, n * n);
    std::vector<std::complex<double>> res;
    res.reserve(size_t(2 * n * n * n + 2 * n * n) + 64);
    transport(g, A_, B_, res);
    transport(h, B_, A_, res);
    Eigen::MatrixXcd gh = g * h - Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd hg = h * g - Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        res.push_back(gh(i, j));
        res.push_back(hg(i, j));
      }
    for (const auto& [s, perp] : g_pairs_) {
      Eigen::MatrixXcd z = perp * g * s;
      for (long t = 0; t < z.size(); ++t) res.push_back(z(t));
    }
    for (const auto& [s, perp] : h_pairs_) {
      Eigen::MatrixXcd z = perp * h * s;
      for (long t = 0; t < z.size(); ++t) res.push_back(z(t));
    }
    return Eigen::Map<Eigen::VectorXcd>(res.data(), long(res.size()));
  }

  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const override {
    const int n = n_;
    Eigen::MatrixXcd g = unpack(x, 0), h = unpack(x, n * n);
    long rows = 2L * n * n * n + 2L * n * n;
    for (const auto& [s, perp] : g_pairs_) rows += long(n) * s.cols();
    for (const auto& [s, perp] : h_pairs_) rows += long(n) * s.cols();
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(rows, 2 * n * n);
    long row = 0;
    row = transport_jac(g, A_, B_, J, row, 0);
    row = transport_jac(h, B_, A_, J, row, n * n);
    // gh - I rows then hg - I rows, interleaved as in residual
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int t = 0; t < n; ++t) {
          J(row, i * n + t) += h(t, j);              // d(gh)/dg(i,t)
          J(row, n * n + t * n + j) += g(i, t);      // d(gh)/dh(t,j)
        }
        ++row;
        for (int t = 0; t < n; ++t) {
          J(row, n * n + i * n + t) += g(t, j);
          J(row, t * n + j) += h(i, t);
        }
        ++row;
      }
    for (const auto& [s, perp] : g_pairs_) {
      for (long rr = 0; rr < n; ++rr)
        for (long cc = 0; cc < s.cols(); ++cc) {
          for (int a2 = 0; a2 < n; ++a2)
            for (int b2 = 0; b2 < n; ++b2)
              J(row, a2 * n + b2) += perp(rr, a2) * s(b2, cc);
          ++row;
        }
    }
    for (const auto& [s, perp] : h_pairs_) {
      for (long rr = 0; rr < n; ++rr)
        for (long cc = 0; cc < s.cols(); ++cc) {
          for (int a2 = 0; a2 < n; ++a2)
            for (int b2 = 0; b2 < n; ++b2)
              J(row, n * n + a2 * n + b2) += perp(rr, a2) * s(b2, cc);
          ++row;
        }
    }
    return J;
  }

 private:
  size_t idx(int i, int j, int k) const {
    return (size_t(i) * n_ + j) * n_ + k;
  }
  Eigen::MatrixXcd unpack(const Eigen::VectorXcd& x, int off) const {
    Eigen::MatrixXcd m(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(i, j) = x(off + i * n_ + j);
    return m;
  }
  // rows: g * dB(ei,ej) - dA(g ei, g ej), all (i,j,l)
  void transport(const Eigen::MatrixXcd& g,
                 const std::vector<std::complex<double>>& A,
                 const std::vector<std::complex<double>>& B,
                 std::vector<std::complex<double>>& out) const {
    const int n = n_;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          std::complex<double> lhs = 0, rhs = 0;
          for (int k = 0; k < n; ++k) lhs += g(l, k) * B[idx(i, j, k)];
          for (int a2 = 0; a2 < n; ++a2)
            for (int b2 = 0; b2 < n; ++b2)
              rhs += g(a2, i) * g(b2, j) * A[idx(a2, b2, l)];
          out.push_back(lhs - rhs);
        }
  }
  long transport_jac(const Eigen::MatrixXcd& g,
                     const std::vector<std::complex<double>>& A,
                     const std::vector<std::complex<double>>& B,
                     Eigen::MatrixXcd& J, long row, int off) const {
    const int n = n_;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          for (int k = 0; k < n; ++k) J(row, off + l * n + k) += B[idx(i, j, k)];
          for (int a2 = 0; a2 < n; ++a2) {
            std::complex<double> s1 = 0, s2 = 0;
            for (int b2 = 0; b2 < n; ++b2) {
              s1 += g(b2, j) * A[idx(a2, b2, l)];
              s2 += g(b2, i) * A[idx(b2, a2, l)];
            }
            J(row, off + a2 * n + i) -= s1;
            J(row, off + a2 * n + j) -= s2;
          }
          ++row;
        }
    return row;
  }

  int n_;
  bool feasible_ = true;
  std::vector<std::complex<double>> A_, B_;
  std::vector<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>> g_pairs_, h_pairs_;
};

// If every product lies on one line, the algebra is a bilinear form with
// values on that line; isomorphism is scaled congruence of the forms.
struct FormAlgebra {
  CycVec z;             // spanning vector of the product line
  CycMat coeffs;        // n x n matrix: d(ei,ej) = coeffs(i,j) * z
};

std::optional<FormAlgebra> as_form_algebra(const Algebra& a) {
  Subspace span = product_span(a);
  if (span.dim() != 1) return std::nullopt;
  FormAlgebra f;
  const int n = a.dim();
  f.z = mat_transpose(span.rows.row(0));
  int lead = -1;
  for (int i = 0; i < n; ++i)
    if (!f.z(i).is_zero()) {
      lead = i;
      break;
    }
  f.coeffs = CycMat::Constant(n, n, Cyclo(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // product is forced proportional to z; coefficient read off the lead
      f.coeffs(i, j) = a.at(i, j, lead) / f.z(lead);
    }
  return f;
}

std::optional<CycMat> form_algebra_witness(const Algebra& a, const Algebra& b) {
  auto fa = as_form_algebra(a);
  auto fb = as_form_algebra(b);
  if (!fa || !fb) return std::nullopt;
  const int n = a.dim();
  // radical splits: columns [complement | radical]
  auto split = [&](const CycMat& m, int& rad) {
    CycMat stack(2 * m.rows(), m.cols());
    stack.block(0, 0, m.rows(), m.cols()) = m;
    stack.block(m.rows(), 0, m.rows(), m.cols()) = mat_transpose(m);
    auto kern = kernel_basis(stack);
    rad = int(kern.size());
    CycMat rows(long(kern.size()), m.cols());
    for (size_t i = 0; i < kern.size(); ++i)
      for (long c = 0; c < m.cols(); ++c) rows(long(i), c) = kern[i](c);
    CycMat red = rows;
    std::vector<int> piv = rref_inplace(red);
    std::vector<bool> isp(size_t(m.cols()), false);
    for (int c : piv) isp[size_t(c)] = true;
    CycMat u(m.cols(), m.cols());
    int col = 0;
    for (long i = 0; i < m.cols(); ++i)
      if (!isp[size_t(i)]) {
        u.col(col) = CycVec::Constant(m.cols(), Cyclo(0));
        u(i, col++) = Cyclo(1);
      }
    for (size_t i = 0; i < kern.size(); ++i) u.col(col++) = kern[i];
    return u;
  };
  int rad_a = 0, rad_b = 0;
  CycMat ua = split(fa->coeffs, rad_a);
  CycMat ub = split(fb->coeffs, rad_b);
  if (rad_a != rad_b) return std::nullopt;
  const int m = n - rad_a;
  if (m == 0) return std::nullopt;  // zero algebras, handled elsewhere
  // z must lie in the radical of its own form (true for nilpotent algebras)
  auto in_radical = [&](const CycMat& u, const CycVec& z) {
    CycMat radrows(long(rad_a), n);
    for (int i = 0; i < rad_a; ++i)
      for (int c = 0; c < n; ++c) radrows(i, c) = u(c, m + i);
    return subspace_contains(radrows, z);
  };
  if (!in_radical(ua, fa->z) || !in_radical(ub, fb->z)) return std::nullopt;
  CycMat ea(m, m), eb(m, m);
  CycMat fa_full = mat_transpose(ua) * fa->coeffs * ua;
  CycMat fb_full = mat_transpose(ub) * fb->coeffs * ub;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      ea(i, j) = fa_full(i, j);
      eb(i, j) = fb_full(i, j);
    }
  auto sc = scaled_congruence(ea, eb);
  if (!sc) return std::nullopt;
  const auto& [pess, scale] = *sc;
  // rebase the radicals so z is the first radical vector on both sides
  auto rebase = [&](const CycMat& u, const CycVec& z) {
    CycMat out = u;
    // coordinates of z in the radical block
    CycMat radcols(n, rad_a);
    for (int i = 0; i < rad_a; ++i) out.col(m + i) = u.col(m + i);
    // solve u * (0,..,0, y) = z on the radical block
    CycMat radmat(n, rad_a);
    for (int i = 0; i < rad_a; ++i) radmat.col(i) = u.col(m + i);
    // find coords by solving radmat * y = z
    auto y = solve_linear(radmat, z);
    if (!y) return std::optional<CycMat>{};
    // place z first, then fill with other radical basis vectors keeping rank
    std::vector<CycVec> chosen{z};
    for (int i = 0; i < rad_a && int(chosen.size()) < rad_a; ++i) {
      CycMat test(long(chosen.size()) + 1, n);
      for (size_t r = 0; r < chosen.size(); ++r)
        for (int c = 0; c < n; ++c) test(long(r), c) = chosen[r](c);
      for (int c = 0; c < n; ++c) test(long(chosen.size()), c) = u(c, m + i);
      if (mat_rank(test) == long(chosen.size()) + 1)
        chosen.push_back(u.col(m + i));
    }
    if (int(chosen.size()) != rad_a) return std::optional<CycMat>{};
    for (int i = 0; i < rad_a; ++i) out.col(m + i) = chosen[size_t(i)];
    return std::optional<CycMat>{out};
  };
  auto ua2 = rebase(ua, fa->z);
  auto ub2 = rebase(ub, fb->z);
  if (!ua2 || !ub2) return std::nullopt;
  // g = U_A * blockdiag(P_ess, diag(c,1..1)) * U_B^{-1}
  CycMat block = cyc_identity(n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) block(i, j) = pess(i, j);
  block(m, m) = scale;  // z_B -> scale * z_A
  auto ubi = mat_inverse(*ub2);
  if (!ubi) return std::nullopt;
  CycMat g = (*ua2) * block * (*ubi);
  return g;
}

}  // namespace

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << "dim=" << dim << " comm=" << (commutative ? "yes" : "no")
     << " powers=" << ints_str(power_dims) << " kernel=" << kernel_dim
     << " center=" << center_dim;
  if (h) os << " h=" << ints_str(*h);
  return os.str();
}

Fingerprint fingerprint(const Algebra& a, bool with_cohomology, int hmax) {
  Fingerprint f;
  f.dim = a.dim();
  f.commutative = is_commutative(a);
  f.power_dims = power_subspace_dims(a).dims;
  f.kernel_dim = annihilator_kernel(a).dim();
  f.center_dim = center(a).dim();
  if (with_cohomology) f.h = cohomology_dims(a, hmax).dims;
  return f;
}

bool verify_iso(const Algebra& a, const Algebra& b, const CycMat& g) {
  if (a.dim() != b.dim()) return false;
  if (g.rows() != a.dim() || g.cols() != a.dim()) return false;
  if (mat_det(g).is_zero()) return false;
  return change_of_basis(a, g) == b;
}

IsoVerdict are_isomorphic(const Algebra& a, const Algebra& b,
                          const IsoOptions& opts) {
  IsoVerdict v;
  if (a.dim() != b.dim()) {
    v.tag = IsoVerdict::Tag::Refuted;
    v.differing.push_back({"dim", std::to_string(a.dim()), std::to_string(b.dim())});
    return v;
  }
  Fingerprint fa = fingerprint(a), fb = fingerprint(b);
  auto note = [&](const std::string& n, const std::string& l, const std::string& r) {
    v.differing.push_back({n, l, r});
  };
  if (fa.commutative != fb.commutative)
    note("commutative", fa.commutative ? "true" : "false",
         fb.commutative ? "true" : "false");
  if (fa.power_dims != fb.power_dims)
    note("power_dims", ints_str(fa.power_dims), ints_str(fb.power_dims));
  if (fa.kernel_dim != fb.kernel_dim)
    note("kernel_dim", std::to_string(fa.kernel_dim), std::to_string(fb.kernel_dim));
  if (fa.center_dim != fb.center_dim)
    note("center_dim", std::to_string(fa.center_dim), std::to_string(fb.center_dim));
  if (opts.use_cohomology) {
    auto ha = cohomology_dims(a, opts.hmax).dims;
    auto hb = cohomology_dims(b, opts.hmax).dims;
    for (size_t i = 0; i < ha.size(); ++i)
      if (ha[i] != hb[i])
        note("h" + std::to_string(i), std::to_string(ha[i]), std::to_string(hb[i]));
  }
  if (!v.differing.empty()) {
    v.tag = IsoVerdict::Tag::Refuted;
    return v;
  }
  if (a == b) {
    v.tag = IsoVerdict::Tag::Witness;
    v.g = cyc_identity(a.dim());
    return v;
  }
  // one-line product algebras reduce to scaled congruence, solved exactly
  if (auto g = form_algebra_witness(a, b)) {
    if (verify_iso(a, b, *g)) {
      v.tag = IsoVerdict::Tag::Witness;
      v.g = *g;
      return v;
    }
  }
  // numeric search with exact rationalization
  IsoLsq prob(a, b);
  if (!prob.feasible()) {
    v.tag = IsoVerdict::Tag::Refuted;
    v.differing.push_back({"invariant_subspace_dims", "-", "-"});
    return v;
  }
  FreezeOptions fo;
  fo.restarts = opts.budget;
  if (auto got = freeze_refine(prob, opts.seed ^ 0x150150, fo)) {
    const int n = a.dim();
    CycMat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = (*got)[size_t(i * n + j)];
    if (verify_iso(a, b, g)) {
      v.tag = IsoVerdict::Tag::Witness;
      v.g = g;
      return v;
    }
  }
  v.tag = IsoVerdict::Tag::Inconclusive;
  v.detail = "no witness within budget";
  return v;
}

}  // namespace strata
