#include "strata/bilinear.hpp"

#include <array>

#include "strata/numsearch.hpp"

namespace strata {

namespace {

Cyclo beta(const CycMat& b, const CycVec& x, const CycVec& y) {
  Cyclo r(0);
  for (long i = 0; i < b.rows(); ++i) {
    if (x(i).is_zero()) continue;
    for (long j = 0; j < b.cols(); ++j) {
      if (y(j).is_zero() || b(i, j).is_zero()) continue;
      r += x(i) * b(i, j) * y(j);
    }
  }
  return r;
}

CycVec unit(int n, int i) {
  CycVec v = CycVec::Constant(n, Cyclo(0));
  v(i) = Cyclo(1);
  return v;
}

bool is_zero_mat(const CycMat& m) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool is_alternating(const CycMat& m) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (m(i, j) != -m(j, i)) return false;
  return true;
}

bool is_symmetric(const CycMat& m) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < i; ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

// columns spanning ker B  cap  ker B^T
std::vector<CycVec> radical(const CycMat& b) {
  CycMat stack(2 * b.rows(), b.cols());
  stack.block(0, 0, b.rows(), b.cols()) = b;
  stack.block(b.rows(), 0, b.rows(), b.cols()) = mat_transpose(b);
  return kernel_basis(stack);
}

// [rad-complement basis | radical basis] as columns; sub-block is radical-free
CycMat radical_split_cols(const CycMat& b, int& rad_dim) {
  auto rad = radical(b);
  rad_dim = int(rad.size());
  const int n = int(b.rows());
  CycMat radrows(long(rad.size()), n);
  for (size_t i = 0; i < rad.size(); ++i)
    for (int c = 0; c < n; ++c) radrows(long(i), c) = rad[i](c);
  CycMat red = radrows;
  std::vector<int> piv = rref_inplace(red);
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  CycMat u(n, n);
  int col = 0;
  for (int i = 0; i < n; ++i)
    if (!is_piv[i]) u.col(col++) = unit(n, i);
  for (size_t i = 0; i < rad.size(); ++i) u.col(col++) = rad[i];
  return u;
}

struct Gen2 {
  CycMat u;  // 2x2, columns (anisotropic, isotropic)
  Cyclo s, p, q;
};
struct Alt2 {
  CycMat u;
  Cyclo e;
};

// radical-free nonzero 2x2 reduction to [[s,p],[q,0]] or alternating; the
// two isotropic directions give the two swap-related parameter readings
struct Reduce2 {
  std::vector<Gen2> gens;
  std::optional<Alt2> alt;
  bool root_left_field = false;
};

Reduce2 reduce2(const CycMat& b) {
  Reduce2 out;
  if (is_alternating(b)) {
    Alt2 a;
    a.u = cyc_identity(2);
    a.e = b(0, 1);
    out.alt = a;
    return out;
  }
  // anisotropic candidates: the represented value s = beta(u,u) varies with
  // u, and downstream scaled matching needs square ratios, so sample a few
  std::vector<CycVec> us;
  {
    CycVec e0 = unit(2, 0), e1 = unit(2, 1);
    std::vector<Cyclo> ts{Cyclo(1), Cyclo(-1), Cyclo(2), Cyclo(-2),
                          Cyclo(3), Cyclo(Rational(1, 2))};
    std::vector<CycVec> cands{e0, e1};
    for (const Cyclo& t : ts) {
      cands.push_back(CycVec(e0 + t * e1));
      cands.push_back(CycVec(e1 + t * e0));
    }
    for (const auto& cand : cands) {
      if (beta(b, cand, cand).is_zero()) continue;
      bool dup = false;
      for (const auto& prev : us)
        if (prev == cand) dup = true;
      if (!dup) us.push_back(cand);
      if (us.size() >= 8) break;
    }
  }
  if (us.empty()) {  // would be alternating
    out.root_left_field = true;
    return out;
  }
  bool any_root_missing = false;
  for (const CycVec& u : us) {
    Cyclo s = beta(b, u, u);
    CycVec v = unit(2, 0);
    // ensure independence from u
    if ((u(0) * v(1) - u(1) * v(0)).is_zero()) v = unit(2, 1);
    std::vector<CycVec> ws;
    Cyclo a = beta(b, v, v);
    Cyclo cross = beta(b, u, v) + beta(b, v, u);
    if (a.is_zero()) {
      ws.push_back(v);
      if (!cross.is_zero()) {
        Cyclo x = -cross / s;
        ws.push_back(CycVec(v + x * u));
      }
    } else {
      Cyclo disc = cross * cross - Cyclo(4) * s * a;
      auto root = sqrt_in_field(disc);
      if (!root) {
        any_root_missing = true;
        continue;
      }
      for (const Cyclo& r : {*root, -*root}) {
        Cyclo x = (-cross + r) / (Cyclo(2) * s);
        CycVec w = v + x * u;
        if (beta(b, w, w).is_zero()) {
          bool dup = false;
          for (const auto& prev : ws)
            if (prev == w) dup = true;
          if (!dup) ws.push_back(w);
        }
      }
    }
    for (const CycVec& w : ws) {
      Gen2 g;
      g.u = CycMat(2, 2);
      g.u.col(0) = u;
      g.u.col(1) = w;
      g.s = s;
      g.p = beta(b, u, w);
      g.q = beta(b, w, u);
      out.gens.push_back(std::move(g));
    }
  }
  if (out.gens.empty() && any_root_missing) out.root_left_field = true;
  return out;
}

// normalized projective pair with swap reduction; returns (p,q) and whether
// the swap representative was chosen
std::pair<std::pair<Cyclo, Cyclo>, bool> normalize_pq(const Cyclo& p0,
                                                      const Cyclo& q0) {
  auto norm = [](Cyclo p, Cyclo q) -> std::pair<Cyclo, Cyclo> {
    if (!p.is_zero()) return {Cyclo(1), q / p};
    if (!q.is_zero()) return {Cyclo(0), Cyclo(1)};
    return {Cyclo(0), Cyclo(0)};
  };
  auto a = norm(p0, q0);
  auto b = norm(q0, p0);
  // lexicographic comparison of (p, q) coefficient sequences
  int c = Cyclo::compare(a.first, b.first);
  if (c == 0) c = Cyclo::compare(a.second, b.second);
  if (c <= 0) return {a, false};
  return {b, true};
}

// the exact 2x2 swap witness: P^T [[1,p],[q,0]] P = [[1,q],[p,0]]
CycMat swap_witness(const Cyclo& p, const Cyclo& q) {
  CycMat m(2, 2);
  m(0, 0) = Cyclo(1);
  m(0, 1) = p + q;
  m(1, 0) = Cyclo(0);
  m(1, 1) = Cyclo(-1);
  return m;
}

// pencil split of a radical-free 3x3: v with B^T v = theta B v for a field
// root theta, beta(v,v) != 0; complement W = (Bv)-perp
struct Split3 {
  CycVec v;
  Cyclo s;
  CycMat w;  // 3x2, columns spanning the complement
};

std::vector<Split3> split3_all(const CycMat& b);

std::optional<Split3> split3(const CycMat& b) {
  auto all = split3_all(b);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<Split3> split3_all(const CycMat& b) {
  // det(B^T - theta B) always has root theta = 1 (odd skew part)
  // candidates: theta = 1 and roots of the remaining quadratic
  std::vector<Cyclo> roots{Cyclo(1)};
  {
    // p(theta) = det(B^T - theta B) = -det(B) theta^3 + c2 theta^2 + c1 theta + det(B^T)
    // evaluate at 4 points and interpolate (degree <= 3)
    std::array<Cyclo, 4> xs{Cyclo(0), Cyclo(2), Cyclo(-1), Cyclo(3)};
    std::array<Cyclo, 4> ys;
    for (int i = 0; i < 4; ++i) {
      CycMat m = mat_transpose(b) - [&] {
        CycMat t = b;
        for (long r = 0; r < 3; ++r)
          for (long c = 0; c < 3; ++c) t(r, c) = b(r, c) * xs[size_t(i)];
        return t;
      }();
      ys[size_t(i)] = mat_det(m);
    }
    // Lagrange interpolation to coefficients
    std::array<Cyclo, 4> coef{Cyclo(0), Cyclo(0), Cyclo(0), Cyclo(0)};
    for (int i = 0; i < 4; ++i) {
      // basis poly numerator coefficients
      std::vector<Cyclo> num{Cyclo(1)};
      Cyclo den(1);
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        std::vector<Cyclo> nxt(num.size() + 1, Cyclo(0));
        for (size_t t = 0; t < num.size(); ++t) {
          nxt[t] -= num[t] * xs[size_t(j)];
          nxt[t + 1] += num[t];
        }
        num = nxt;
        den *= xs[size_t(i)] - xs[size_t(j)];
      }
      Cyclo f = ys[size_t(i)] / den;
      for (size_t t = 0; t < num.size(); ++t) coef[t] += num[t] * f;
    }
    // divide by (theta - 1): coef has root at 1
    // synthetic division
    std::array<Cyclo, 3> quad{Cyclo(0), Cyclo(0), Cyclo(0)};
    Cyclo carry(0);
    for (int t = 3; t >= 1; --t) {
      quad[size_t(t - 1)] = coef[size_t(t)] + carry;
      carry = quad[size_t(t - 1)];
    }
    // roots of quad[2] x^2 + quad[1] x + quad[0]
    if (!quad[2].is_zero()) {
      Cyclo disc = quad[1] * quad[1] - Cyclo(4) * quad[2] * quad[0];
      if (auto r = sqrt_in_field(disc)) {
        roots.push_back((-quad[1] + *r) / (Cyclo(2) * quad[2]));
        roots.push_back((-quad[1] - *r) / (Cyclo(2) * quad[2]));
      }
    } else if (!quad[1].is_zero()) {
      roots.push_back(-quad[0] / quad[1]);
    }
  }
  std::vector<Split3> out;
  for (const Cyclo& th : roots) {
    CycMat m = mat_transpose(b);
    for (long r = 0; r < 3; ++r)
      for (long c = 0; c < 3; ++c) m(r, c) -= th * b(r, c);
    for (const CycVec& v : kernel_basis(m)) {
      Cyclo s = beta(b, v, v);
      if (s.is_zero()) continue;
      // W = {w : (Bv)^T w = 0}
      CycVec bv = b * v;
      CycMat row(1, 3);
      for (int c = 0; c < 3; ++c) row(0, c) = bv(c);
      auto kb = kernel_basis(row);
      if (kb.size() != 2) continue;
      Split3 sp;
      sp.v = v;
      sp.s = s;
      sp.w = CycMat(3, 2);
      sp.w.col(0) = kb[0];
      sp.w.col(1) = kb[1];
      out.push_back(std::move(sp));
    }
  }
  return out;
}

// the (n,a,b) construction for the B5 class (rank 2, no radical, sym rank 2)
std::optional<CycMat> b5_reduce(const CycMat& b) {
  auto kb = kernel_basis(b);
  if (kb.size() != 1) return std::nullopt;
  CycVec n = kb[0];
  CycVec f = mat_transpose(b) * n;  // functional beta(n, .)
  // a0 with beta(n, a0) = 1
  CycMat frow(1, 3);
  for (int c = 0; c < 3; ++c) frow(0, c) = f(c);
  std::optional<CycVec> a0;
  for (int i = 0; i < 3; ++i) {
    if (!f(i).is_zero()) {
      CycVec cand = unit(3, i);
      Cyclo val = f(i);
      a0 = CycVec(cand / val);
      break;
    }
  }
  if (!a0) return std::nullopt;
  CycVec a = *a0 - beta(b, *a0, *a0) * n;
  // c in ker f, independent of n, isotropic
  std::optional<CycVec> cvec;
  for (const CycVec& k : kernel_basis(frow)) {
    CycMat two(2, 3);
    for (int c = 0; c < 3; ++c) {
      two(0, c) = n(c);
      two(1, c) = k(c);
    }
    if (mat_rank(two) != 2) continue;
    if (!beta(b, k, k).is_zero()) continue;
    cvec = k;
    break;
  }
  if (!cvec) return std::nullopt;
  Cyclo bac = beta(b, a, *cvec);
  if (bac.is_zero()) return std::nullopt;
  Cyclo v = bac.inverse();
  Cyclo u = Cyclo(-1) - v * beta(b, *cvec, a);
  CycVec bb = u * n + v * (*cvec);
  CycMat U(3, 3);
  U.col(0) = n;
  U.col(1) = a;
  U.col(2) = bb;
  return U;
}

// symmetric Gram reduction: U with U^T B U = diag(d_1..d_r, 0..)
struct Gram {
  CycMat u;
  std::vector<Cyclo> diag;
};

std::optional<Gram> gram_reduce(const CycMat& b) {
  const int n = int(b.rows());
  std::vector<CycVec> basis;
  CycMat rem = b;
  // work with explicit vectors in the original space
  std::vector<CycVec> pool;
  for (int i = 0; i < n; ++i) pool.push_back(unit(n, i));
  std::vector<CycVec> ortho;
  std::vector<Cyclo> diag;
  for (int step = 0; step < n; ++step) {
    // project pool against current ortho set
    std::vector<CycVec> avail;
    for (auto v : pool) {
      CycVec w = v;
      for (size_t t = 0; t < ortho.size(); ++t) {
        Cyclo coef = beta(b, ortho[t], w) / diag[t];
        w = w - coef * ortho[t];
      }
      avail.push_back(w);
    }
    // find anisotropic among avail and small sums
    std::optional<CycVec> pick;
    for (const auto& w : avail) {
      if (!beta(b, w, w).is_zero()) {
        pick = w;
        break;
      }
    }
    if (!pick) {
      for (size_t i = 0; i < avail.size() && !pick; ++i)
        for (size_t j = i + 1; j < avail.size() && !pick; ++j) {
          CycVec w = avail[i] + avail[j];
          if (!beta(b, w, w).is_zero()) pick = w;
        }
    }
    if (!pick) break;  // remaining space is totally isotropic = radical part
    ortho.push_back(*pick);
    diag.push_back(beta(b, *pick, *pick));
  }
  // require full rank coverage (radical-free input)
  if (int(ortho.size()) != mat_rank(b)) return std::nullopt;
  if (int(ortho.size()) != n) return std::nullopt;
  Gram g;
  g.u = CycMat(n, n);
  for (int i = 0; i < n; ++i) g.u.col(i) = ortho[size_t(i)];
  g.diag = diag;
  return g;
}

// numeric congruence system: unknowns P (snap), then Q with PQ=QP=I
class CongruenceLsq final : public LsqProblem {
 public:
  CongruenceLsq(const CycMat& b, const CycMat& c) : n_(int(b.rows())) {
    B_ = Eigen::MatrixXcd(n_, n_);
    C_ = Eigen::MatrixXcd(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        B_(i, j) = b(i, j).to_complex();
        C_(i, j) = c(i, j).to_complex();
      }
  }
  int num_unknowns() const override { return 2 * n_ * n_; }
  int snap_count() const override { return n_ * n_; }
  Eigen::VectorXcd residual(const Eigen::VectorXcd& x) const override {
    auto [P, Q] = unpack(x);
    Eigen::MatrixXcd r1 = P.transpose() * B_ * P - C_;
    Eigen::MatrixXcd r2 = P * Q - Eigen::MatrixXcd::Identity(n_, n_);
    Eigen::MatrixXcd r3 = Q * P - Eigen::MatrixXcd::Identity(n_, n_);
    Eigen::VectorXcd out(3 * n_ * n_);
    out << Eigen::Map<const Eigen::VectorXcd>(r1.data(), n_ * n_),
        Eigen::Map<const Eigen::VectorXcd>(r2.data(), n_ * n_),
        Eigen::Map<const Eigen::VectorXcd>(r3.data(), n_ * n_);
    return out;
  }
  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const override {
    auto [P, Q] = unpack(x);
    const int n = n_;
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(3 * n * n, 2 * n * n);
    Eigen::MatrixXcd BP = B_ * P;
    Eigen::MatrixXcd PtB = P.transpose() * B_;
    auto ridx1 = [n](int i, int j) { return i + j * n; };  // column-major maps
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int a = 0; a < n; ++a) {
          // residual1[i,j] wrt P(a,b): delta_{b,i} BP(a,j) + delta_{b,j} PtB(i,a)
          J(ridx1(i, j), a * n + i) += BP(a, j);
          J(ridx1(i, j), a * n + j) += PtB(i, a);
        }
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int b2 = 0; b2 < n; ++b2) {
          J(n * n + ridx1(i, j), i * n + b2) += Q(b2, j);            // wrt P(i,b2)
          J(n * n + ridx1(i, j), n * n + b2 * n + j) += P(i, b2);    // wrt Q(b2,j)
        }
        for (int b2 = 0; b2 < n; ++b2) {
          J(2 * n * n + ridx1(i, j), n * n + i * n + b2) += P(b2, j);  // wrt Q(i,b2)
          J(2 * n * n + ridx1(i, j), b2 * n + j) += Q(i, b2);          // wrt P(b2,j)
        }
      }
    return J;
  }
  std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> unpack(const Eigen::VectorXcd& x) const {
    Eigen::MatrixXcd P(n_, n_), Q(n_, n_);
    for (int a = 0; a < n_; ++a)
      for (int b2 = 0; b2 < n_; ++b2) {
        P(a, b2) = x(a * n_ + b2);
        Q(a, b2) = x(n_ * n_ + a * n_ + b2);
      }
    return {P, Q};
  }

 private:
  int n_;
  Eigen::MatrixXcd B_, C_;
};

// scaled variant: unknowns P (snap), scale c (snap), then Q with PQ=QP=I
class ScaledCongruenceLsq final : public LsqProblem {
 public:
  ScaledCongruenceLsq(const CycMat& b, const CycMat& c) : n_(int(b.rows())) {
    B_ = Eigen::MatrixXcd(n_, n_);
    C_ = Eigen::MatrixXcd(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        B_(i, j) = b(i, j).to_complex();
        C_(i, j) = c(i, j).to_complex();
      }
  }
  int num_unknowns() const override { return 2 * n_ * n_ + 1; }
  int snap_count() const override { return n_ * n_ + 1; }
  Eigen::VectorXcd residual(const Eigen::VectorXcd& x) const override {
    auto [P, Q, sc] = unpack(x);
    Eigen::MatrixXcd r1 = P.transpose() * B_ * P - sc * C_;
    Eigen::MatrixXcd r2 = P * Q - Eigen::MatrixXcd::Identity(n_, n_);
    Eigen::MatrixXcd r3 = Q * P - Eigen::MatrixXcd::Identity(n_, n_);
    Eigen::VectorXcd out(3 * n_ * n_);
    out << Eigen::Map<const Eigen::VectorXcd>(r1.data(), n_ * n_),
        Eigen::Map<const Eigen::VectorXcd>(r2.data(), n_ * n_),
        Eigen::Map<const Eigen::VectorXcd>(r3.data(), n_ * n_);
    return out;
  }
  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const override {
    auto [P, Q, sc] = unpack(x);
    (void)sc;
    const int n = n_;
    const int qoff = n * n + 1;
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(3 * n * n, 2 * n * n + 1);
    Eigen::MatrixXcd BP = B_ * P;
    Eigen::MatrixXcd PtB = P.transpose() * B_;
    auto ridx = [n](int i, int j) { return i + j * n; };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int a = 0; a < n; ++a) {
          J(ridx(i, j), a * n + i) += BP(a, j);
          J(ridx(i, j), a * n + j) += PtB(i, a);
        }
        J(ridx(i, j), n * n) -= C_(i, j);
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int b2 = 0; b2 < n; ++b2) {
          J(n * n + ridx(i, j), i * n + b2) += Q(b2, j);
          J(n * n + ridx(i, j), qoff + b2 * n + j) += P(i, b2);
          J(2 * n * n + ridx(i, j), qoff + i * n + b2) += P(b2, j);
          J(2 * n * n + ridx(i, j), b2 * n + j) += Q(i, b2);
        }
      }
    return J;
  }
  std::tuple<Eigen::MatrixXcd, Eigen::MatrixXcd, std::complex<double>> unpack(
      const Eigen::VectorXcd& x) const {
    Eigen::MatrixXcd P(n_, n_), Q(n_, n_);
    for (int a = 0; a < n_; ++a)
      for (int b2 = 0; b2 < n_; ++b2) {
        P(a, b2) = x(a * n_ + b2);
        Q(a, b2) = x(n_ * n_ + 1 + a * n_ + b2);
      }
    return {P, Q, x(n_ * n_)};
  }

 private:
  int n_;
  Eigen::MatrixXcd B_, C_;
};

bool verify_congruence(const CycMat& b, const CycMat& c, const CycMat& p) {
  if (mat_det(p).is_zero()) return false;
  CycMat lhs = mat_transpose(p) * b * p;
  return lhs == c;
}

}  // namespace

FormInvariants form_invariants(const CycMat& b) {
  FormInvariants inv;
  inv.n = int(b.rows());
  inv.rank = mat_rank(b);
  CycMat sym = b + mat_transpose(b);
  CycMat skew = b - mat_transpose(b);
  inv.sym_rank = mat_rank(sym);
  inv.skew_rank = mat_rank(skew);
  inv.radical_dim = long(radical(b).size());
  if (inv.rank == inv.n) {
    CycMat bti = *mat_inverse(mat_transpose(b));
    CycMat cosq = bti * b;
    // characteristic polynomial via Faddeev-LeVerrier
    const int n = inv.n;
    CycMat M = CycMat::Constant(n, n, Cyclo(0));
    std::vector<Cyclo> cpoly(size_t(n) + 1, Cyclo(0));
    cpoly[size_t(n)] = Cyclo(1);
    for (int k = 1; k <= n; ++k) {
      M = cosq * M;
      for (int i = 0; i < n; ++i) M(i, i) += cpoly[size_t(n - k + 1)];
      CycMat am = cosq * M;
      Cyclo tr(0);
      for (int i = 0; i < n; ++i) tr += am(i, i);
      cpoly[size_t(n - k)] = -(tr / Cyclo(k));
    }
    inv.cosquare_charpoly = cpoly;
  }
  return inv;
}

std::optional<std::string> invariant_mismatch(const FormInvariants& a,
                                              const FormInvariants& b) {
  if (a.n != b.n) return "dimension";
  if (a.rank != b.rank) return "rank";
  if (a.sym_rank != b.sym_rank) return "sym_rank";
  if (a.skew_rank != b.skew_rank) return "skew_rank";
  if (a.radical_dim != b.radical_dim) return "radical_dim";
  if (a.cosquare_charpoly.has_value() && b.cosquare_charpoly.has_value() &&
      !(*a.cosquare_charpoly == *b.cosquare_charpoly))
    return "cosquare_charpoly";
  return std::nullopt;
}

CycMat canonical2_matrix(Canon2Tag tag, const Cyclo& p, const Cyclo& q) {
  CycMat m = CycMat::Constant(2, 2, Cyclo(0));
  switch (tag) {
    case Canon2Tag::Zero:
      break;
    case Canon2Tag::Bpq:
      m(0, 0) = Cyclo(1);
      m(0, 1) = p;
      m(1, 0) = q;
      break;
    case Canon2Tag::C:
      m(0, 1) = Cyclo(1);
      m(1, 0) = Cyclo(-1);
      break;
  }
  return m;
}

Canon2 canon2(const CycMat& b) {
  Canon2 out;
  if (b.rows() != 2 || b.cols() != 2)
    throw std::invalid_argument("canon2: matrix must be 2x2");
  if (is_zero_mat(b)) {
    out.tag = Canon2Tag::Zero;
    out.canonical = canonical2_matrix(out.tag, Cyclo(0), Cyclo(0));
    out.witness = cyc_identity(2);
    return out;
  }
  if (is_alternating(b)) {
    out.tag = Canon2Tag::C;
    out.canonical = canonical2_matrix(out.tag, Cyclo(0), Cyclo(0));
    CycMat p = cyc_identity(2);
    p(1, 1) = b(0, 1).inverse();
    out.witness = p;
    return out;
  }
  out.tag = Canon2Tag::Bpq;
  int rad_dim = 0;
  CycMat split = radical_split_cols(b, rad_dim);
  if (rad_dim == 1) {
    // essential 1x1 block [s] on the complement vector
    CycVec u = split.col(0);
    Cyclo s = beta(b, u, u);
    out.pq = {Cyclo(0), Cyclo(0)};
    out.canonical = canonical2_matrix(out.tag, Cyclo(0), Cyclo(0));
    if (auto r = sqrt_in_field(s)) {
      CycMat p(2, 2);
      p.col(0) = CycVec(u / *r);
      p.col(1) = split.col(1);
      out.witness = p;
    } else {
      out.flagged = true;
      out.note = "unit normalization needs a square root outside the field";
    }
    return out;
  }
  Reduce2 red = reduce2(b);
  if (red.gens.empty()) {
    // class decided by invariants only
    out.flagged = true;
    out.note = "isotropic vector needs a root outside the field";
    auto inv = form_invariants(b);
    if (inv.cosquare_charpoly) {
      // trace of cosquare = -coef[n-1]
      out.cosquare_trace = -(*inv.cosquare_charpoly)[1] / (*inv.cosquare_charpoly)[2];
    }
    return out;
  }
  const Gen2& g = red.gens.front();
  // parameters are projective: (p0 : q0) already independent of scalings
  auto [pq, swapped] = normalize_pq(g.p, g.q);
  out.pq = pq;
  out.canonical = canonical2_matrix(out.tag, pq.first, pq.second);
  {
    auto inv = form_invariants(b);
    if (inv.cosquare_charpoly)
      out.cosquare_trace = -(*inv.cosquare_charpoly)[1] / (*inv.cosquare_charpoly)[2];
  }
  // witness: scale u by 1/sqrt(s), optionally swap, then scale w so the
  // leading parameter is 1
  auto su = sqrt_in_field(g.s);
  if (!su) {
    out.flagged = true;
    out.note = "unit normalization needs a square root outside the field";
    return out;
  }
  CycMat P(2, 2);
  P.col(0) = CycVec(g.u.col(0) / *su);
  P.col(1) = g.u.col(1);
  Cyclo p1 = g.p / *su, q1 = g.q / *su;
  if (swapped) {
    P = P * swap_witness(p1, q1);
    std::swap(p1, q1);
  }
  Cyclo scale(1);
  if (!p1.is_zero())
    scale = p1.inverse();
  else if (!q1.is_zero())
    scale = q1.inverse();
  CycMat D = cyc_identity(2);
  D(1, 1) = scale;
  P = P * D;
  if (verify_congruence(b, out.canonical, P)) {
    out.witness = P;
  } else {
    out.flagged = true;
    out.note = "constructive witness failed verification";
  }
  return out;
}

std::string canon3_tag_name(Canon3Tag t) {
  switch (t) {
    case Canon3Tag::Zero: return "Zero";
    case Canon3Tag::B1: return "B1";
    case Canon3Tag::B2: return "B2";
    case Canon3Tag::B3: return "B3";
    case Canon3Tag::B4: return "B4";
    case Canon3Tag::B5: return "B5";
    case Canon3Tag::B6: return "B6";
  }
  return "?";
}

CycMat canonical3_matrix(Canon3Tag tag, const Cyclo& p, const Cyclo& q) {
  CycMat m = CycMat::Constant(3, 3, Cyclo(0));
  switch (tag) {
    case Canon3Tag::Zero:
      break;
    case Canon3Tag::B1:
      m(0, 0) = Cyclo(1);
      m(1, 1) = Cyclo(1);
      m(1, 2) = p;
      m(2, 1) = q;
      break;
    case Canon3Tag::B2:
      m(1, 1) = Cyclo(1);
      m(1, 2) = p;
      m(2, 1) = q;
      break;
    case Canon3Tag::B3:
      m(0, 0) = Cyclo(1);
      m(1, 2) = Cyclo(1);
      m(2, 1) = Cyclo(-1);
      break;
    case Canon3Tag::B4:
      m(1, 2) = Cyclo(1);
      m(2, 1) = Cyclo(-1);
      break;
    case Canon3Tag::B5:
      m(0, 1) = Cyclo(1);
      m(1, 2) = Cyclo(1);
      m(2, 1) = Cyclo(-1);
      break;
    case Canon3Tag::B6:
      m(0, 0) = Cyclo(1);
      m(0, 1) = Cyclo(1);
      m(1, 1) = Cyclo(1);
      m(1, 2) = Cyclo(1);
      m(2, 1) = Cyclo(1);
      break;
  }
  return m;
}

Canon3 canon3(const CycMat& b) {
  if (b.rows() != 3 || b.cols() != 3)
    throw std::invalid_argument("canon3: matrix must be 3x3");
  Canon3 out;
  auto inv = form_invariants(b);
  if (inv.cosquare_charpoly) {
    // trace of cosquare from charpoly, used as a parameter-class invariant
    out.cosquare_trace = -(*inv.cosquare_charpoly)[2];
  }
  if (inv.rank == 0) {
    out.tag = Canon3Tag::Zero;
    out.canonical = canonical3_matrix(out.tag, Cyclo(0), Cyclo(0));
    out.witness = cyc_identity(3);
    return out;
  }
  if (inv.radical_dim > 0) {
    int rad_dim = 0;
    CycMat u = radical_split_cols(b, rad_dim);
    int m = 3 - rad_dim;
    CycMat full = mat_transpose(u) * b * u;
    CycMat sub(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sub(i, j) = full(i, j);
    if (m == 1) {
      out.tag = Canon3Tag::B2;
      out.pq = {Cyclo(0), Cyclo(0)};
      out.canonical = canonical3_matrix(out.tag, Cyclo(0), Cyclo(0));
      out.c_label = "C2(0:0)";
      Cyclo s = sub(0, 0);
      if (auto r = sqrt_in_field(s)) {
        // order basis (rad[0], unit, rad[1]) to hit the B2 literal layout
        CycMat p(3, 3);
        p.col(0) = u.col(1);
        p.col(1) = CycVec(u.col(0) / *r);
        p.col(2) = u.col(2);
        if (verify_congruence(b, out.canonical, p)) out.witness = p;
      }
      if (!out.witness) {
        out.flagged = true;
        out.note = "unit normalization needs a square root outside the field";
      }
      return out;
    }
    // m == 2: classify the essential block
    Canon2 c2 = canon2(sub);
    if (c2.tag == Canon2Tag::C) {
      out.tag = Canon3Tag::B4;
      out.canonical = canonical3_matrix(out.tag, Cyclo(0), Cyclo(0));
      out.c_label = "C6";
      if (c2.witness) {
        CycMat p(3, 3);
        // B4 layout: radical first, then the alternating pair
        CycVec w0 = u.col(0) * (*c2.witness)(0, 0) + u.col(1) * (*c2.witness)(1, 0);
        CycVec w1 = u.col(0) * (*c2.witness)(0, 1) + u.col(1) * (*c2.witness)(1, 1);
        p.col(0) = u.col(2);
        p.col(1) = w0;
        p.col(2) = w1;
        if (verify_congruence(b, out.canonical, p)) out.witness = p;
      }
      if (!out.witness) {
        out.flagged = true;
        out.note = "alternating block witness not constructed";
      }
      return out;
    }
    out.tag = Canon3Tag::B2;
    out.pq = c2.pq;
    out.cosquare_trace = c2.cosquare_trace;
    out.flagged = c2.flagged;
    out.note = c2.note;
    if (c2.pq) {
      out.canonical = canonical3_matrix(out.tag, c2.pq->first, c2.pq->second);
      out.c_label = "C2(" + c2.pq->first.str() + ":" + c2.pq->second.str() + ")";
      if (c2.witness) {
        CycMat p(3, 3);
        CycVec w0 = u.col(0) * (*c2.witness)(0, 0) + u.col(1) * (*c2.witness)(1, 0);
        CycVec w1 = u.col(0) * (*c2.witness)(0, 1) + u.col(1) * (*c2.witness)(1, 1);
        p.col(0) = u.col(2);
        p.col(1) = w0;
        p.col(2) = w1;
        if (verify_congruence(b, out.canonical, p))
          out.witness = p;
        else {
          out.flagged = true;
          out.note = "constructive witness failed verification";
        }
      }
    }
    return out;
  }
  // radical-free from here
  if (is_symmetric(b)) {
    // rank 3 symmetric: the B1(1:1) class
    out.tag = Canon3Tag::B1;
    out.pq = {Cyclo(1), Cyclo(1)};
    out.canonical = canonical3_matrix(out.tag, Cyclo(1), Cyclo(1));
    out.c_label = "C5";
    auto g = gram_reduce(b);
    auto gc = gram_reduce(out.canonical);
    if (g && gc) {
      // normalize both to the identity form, then bridge
      bool ok = true;
      CycMat ub = g->u, uc = gc->u;
      for (int i = 0; i < 3 && ok; ++i) {
        auto rb = sqrt_in_field(g->diag[size_t(i)]);
        auto rc = sqrt_in_field(gc->diag[size_t(i)]);
        if (!rb || !rc) {
          ok = false;
          break;
        }
        ub.col(i) = CycVec(ub.col(i) / *rb);
        uc.col(i) = CycVec(uc.col(i) / *rc);
      }
      if (ok) {
        CycMat p = ub * *mat_inverse(uc);
        if (verify_congruence(b, out.canonical, p)) out.witness = p;
      }
    }
    if (!out.witness) {
      out.flagged = true;
      out.note = "symmetric normalization needs square roots outside the field";
    }
    return out;
  }
  auto sp = split3(b);
  if (sp) {
    // essential = <v> + 2x2 block on W
    CycMat sub(2, 2);
    CycVec w0 = sp->w.col(0), w1 = sp->w.col(1);
    sub(0, 0) = beta(b, w0, w0);
    sub(0, 1) = beta(b, w0, w1);
    sub(1, 0) = beta(b, w1, w0);
    sub(1, 1) = beta(b, w1, w1);
    Canon2 c2 = canon2(sub);
    auto embed = [&](const CycMat& q2) {
      CycVec c0 = sp->w * q2.col(0);
      CycVec c1 = sp->w * q2.col(1);
      CycMat p(3, 3);
      p.col(1) = c0;
      p.col(2) = c1;
      return p;
    };
    if (c2.tag == Canon2Tag::C) {
      out.tag = Canon3Tag::B3;
      out.canonical = canonical3_matrix(out.tag, Cyclo(0), Cyclo(0));
      out.c_label = "C3";
      auto sv = sqrt_in_field(sp->s);
      if (sv && c2.witness) {
        CycMat p = embed(*c2.witness);
        p.col(0) = CycVec(sp->v / *sv);
        if (verify_congruence(b, out.canonical, p)) out.witness = p;
      }
      if (!out.witness) {
        out.flagged = true;
        out.note = "unit normalization needs a square root outside the field";
      }
      return out;
    }
    out.tag = Canon3Tag::B1;
    out.pq = c2.pq;
    out.flagged = c2.flagged;
    out.note = c2.note;
    if (c2.pq) {
      out.canonical = canonical3_matrix(out.tag, c2.pq->first, c2.pq->second);
      bool one_one = (c2.pq->first == Cyclo(1) && c2.pq->second == Cyclo(1));
      out.c_label = one_one ? "C5"
                            : "C1(" + c2.pq->first.str() + ":" +
                                  c2.pq->second.str() + ")";
      auto sv = sqrt_in_field(sp->s);
      if (sv && c2.witness) {
        CycMat p = embed(*c2.witness);
        p.col(0) = CycVec(sp->v / *sv);
        if (verify_congruence(b, out.canonical, p))
          out.witness = p;
        else {
          out.flagged = true;
          out.note = "constructive witness failed verification";
        }
      } else if (!out.flagged) {
        out.flagged = true;
        out.note = "unit normalization needs a square root outside the field";
      }
    }
    return out;
  }
  // no decomposition in the field: B5 (rank 2) or B6 (rank 3)
  if (inv.rank == 2) {
    out.tag = Canon3Tag::B5;
    out.canonical = canonical3_matrix(out.tag, Cyclo(0), Cyclo(0));
    out.c_label = "C4";
    if (auto u = b5_reduce(b)) {
      if (verify_congruence(b, out.canonical, *u)) out.witness = u;
    }
    if (!out.witness) {
      out.flagged = true;
      out.note = "B5 basis construction failed; class by invariants";
    }
    return out;
  }
  out.tag = Canon3Tag::B6;
  out.canonical = canonical3_matrix(out.tag, Cyclo(0), Cyclo(0));
  out.c_label = "C1(1:1)";
  // indecomposable: witness via numeric search + exact verification
  CongruenceLsq prob(b, out.canonical);
  if (auto got = freeze_refine(prob, 0xB6)) {
    CycMat p(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p(i, j) = (*got)[size_t(i * 3 + j)];
    if (verify_congruence(b, out.canonical, p)) out.witness = p;
  }
  if (!out.witness) {
    out.flagged = true;
    out.note = "indecomposable witness not found; class by invariants";
  }
  return out;
}

CogredienceVerdict are_cogredient(const CycMat& b, const CycMat& c, int budget,
                                  uint64_t seed) {
  CogredienceVerdict v;
  if (b.rows() != c.rows() || b.cols() != c.cols())
    throw std::invalid_argument("are_cogredient: size mismatch");
  auto ib = form_invariants(b), ic = form_invariants(c);
  if (auto bad = invariant_mismatch(ib, ic)) {
    v.tag = CogredienceVerdict::Tag::Refuted;
    v.detail = *bad;
    return v;
  }
  // constructive path through canonical forms
  std::optional<CycMat> wb, wc;
  bool same_class = false;
  if (b.rows() == 2) {
    Canon2 cb = canon2(b), cc = canon2(c);
    if (cb.tag != cc.tag) {
      v.tag = CogredienceVerdict::Tag::Refuted;
      v.detail = "canonical_class";
      return v;
    }
    if (cb.tag != Canon2Tag::Bpq) {
      same_class = true;
    } else if (cb.pq && cc.pq) {
      if (cb.pq->first == cc.pq->first && cb.pq->second == cc.pq->second)
        same_class = true;
      else {
        v.tag = CogredienceVerdict::Tag::Refuted;
        v.detail = "canonical_class";
        return v;
      }
    }
    wb = cb.witness;
    wc = cc.witness;
  } else if (b.rows() == 3) {
    Canon3 cb = canon3(b), cc = canon3(c);
    if (cb.tag != cc.tag) {
      v.tag = CogredienceVerdict::Tag::Refuted;
      v.detail = "canonical_class";
      return v;
    }
    if (cb.pq && cc.pq) {
      if (cb.pq->first == cc.pq->first && cb.pq->second == cc.pq->second)
        same_class = true;
      else {
        v.tag = CogredienceVerdict::Tag::Refuted;
        v.detail = "canonical_class";
        return v;
      }
    } else if (!cb.pq && !cc.pq) {
      same_class = true;  // parameterless tags
    }
    wb = cb.witness;
    wc = cc.witness;
  } else {
    throw std::invalid_argument("are_cogredient: only 2x2 and 3x3 supported");
  }
  if (same_class && wb && wc) {
    CycMat p = (*wb) * *mat_inverse(*wc);
    if (verify_congruence(b, c, p)) {
      v.tag = CogredienceVerdict::Tag::Witness;
      v.p = p;
      return v;
    }
  }
  // numeric fallback
  CongruenceLsq prob(b, c);
  FreezeOptions fo;
  fo.restarts = budget;
  if (auto got = freeze_refine(prob, seed ^ 0xC09, fo)) {
    const int n = int(b.rows());
    CycMat p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) = (*got)[size_t(i * n + j)];
    if (verify_congruence(b, c, p)) {
      v.tag = CogredienceVerdict::Tag::Witness;
      v.p = p;
      return v;
    }
  }
  v.tag = CogredienceVerdict::Tag::Inconclusive;
  v.detail = "no witness within budget";
  return v;
}

std::optional<std::pair<CycMat, Cyclo>> scaled_congruence(const CycMat& b,
                                                          const CycMat& c) {
  const int n = int(b.rows());
  if (c.rows() != n) return std::nullopt;
  if (n == 0) return std::pair<CycMat, Cyclo>{CycMat(0, 0), Cyclo(1)};
  if (n == 1) {
    if (b(0, 0).is_zero() != c(0, 0).is_zero()) return std::nullopt;
    if (b(0, 0).is_zero()) return std::pair<CycMat, Cyclo>{cyc_identity(1), Cyclo(1)};
    return std::pair<CycMat, Cyclo>{cyc_identity(1), b(0, 0) / c(0, 0)};
  }
  auto finish = [&](const CycMat& p, const Cyclo& scale)
      -> std::optional<std::pair<CycMat, Cyclo>> {
    CycMat lhs = mat_transpose(p) * b * p;
    CycMat rhs = c;
    for (long i = 0; i < rhs.rows(); ++i)
      for (long j = 0; j < rhs.cols(); ++j) rhs(i, j) = rhs(i, j) * scale;
    if (lhs == rhs && !mat_det(p).is_zero())
      return std::pair<CycMat, Cyclo>{p, scale};
    return std::nullopt;
  };
  // plain congruence (scale 1) through the canonical forms first
  {
    auto plain = are_cogredient(b, c, 12, 0x5CA1E);
    if (plain.tag == CogredienceVerdict::Tag::Witness) {
      if (auto r = finish(*plain.p, Cyclo(1))) return r;
    }
  }
  if (n == 2) {
    if (is_alternating(b) && is_alternating(c)) {
      if (b(0, 1).is_zero() || c(0, 1).is_zero()) {
        if (b(0, 1).is_zero() && c(0, 1).is_zero())
          return std::pair<CycMat, Cyclo>{cyc_identity(2), Cyclo(1)};
        return std::nullopt;
      }
      CycMat p = cyc_identity(2);
      Cyclo scale = b(0, 1) / c(0, 1);
      return finish(p, scale);
    }
    Reduce2 rb = reduce2(b), rc = reduce2(c);
    if (rb.gens.empty() || rc.gens.empty()) return std::nullopt;
    for (const Gen2& gb : rb.gens)
    for (const Gen2& gc : rc.gens) {
      if (!(gb.p * gc.q == gb.q * gc.p)) continue;
      if (gb.p.is_zero() != gc.p.is_zero() || gb.q.is_zero() != gc.q.is_zero())
        continue;
      // D = diag(1, d): d from matching the parameter entries
      Cyclo scale = gb.s / gc.s;
      Cyclo d;
      if (!gb.p.is_zero())
        d = scale * gc.p / gb.p;
      else if (!gb.q.is_zero())
        d = scale * gc.q / gb.q;
      else
        d = Cyclo(1);
      CycMat D = cyc_identity(2);
      D(1, 1) = d;
      CycMat p = gb.u * D * *mat_inverse(gc.u);
      if (auto r = finish(p, scale)) return r;
    }
    return std::nullopt;
  }
  // n == 3
  auto ib = form_invariants(b), ic = form_invariants(c);
  if (invariant_mismatch(ib, ic).has_value() &&
      !(ib.rank == ic.rank && ib.sym_rank == ic.sym_rank &&
        ib.skew_rank == ic.skew_rank && ib.radical_dim == ic.radical_dim))
    return std::nullopt;
  if (is_symmetric(b) && is_symmetric(c)) {
    auto gb = gram_reduce(b), gc = gram_reduce(c);
    if (!gb || !gc) return std::nullopt;
    // a_i^2 d_i = scale * e_i; scale = d_1/e_1 with a_1 = 1
    Cyclo scale = gb->diag[0] / gc->diag[0];
    CycMat D = cyc_identity(3);
    bool ok = true;
    for (int i = 1; i < 3; ++i) {
      Cyclo ratio = scale * gc->diag[size_t(i)] / gb->diag[size_t(i)];
      auto r = sqrt_in_field(ratio);
      if (!r) {
        ok = false;
        break;
      }
      D(i, i) = *r;
    }
    if (ok) {
      CycMat p = gb->u * D * *mat_inverse(gc->u);
      if (auto r = finish(p, scale)) return r;
    }
    return std::nullopt;
  }
  auto splits_b = split3_all(b), splits_c = split3_all(c);
  auto block = [&](const CycMat& m, const Split3& s) {
    CycMat sub(2, 2);
    CycVec w0 = s.w.col(0), w1 = s.w.col(1);
    sub(0, 0) = beta(m, w0, w0);
    sub(0, 1) = beta(m, w0, w1);
    sub(1, 0) = beta(m, w1, w0);
    sub(1, 1) = beta(m, w1, w1);
    return sub;
  };
  for (const Split3& sb : splits_b) {
    for (const Split3& sc : splits_c) {
      CycMat bb = block(b, sb), cc2 = block(c, sc);
      if (is_alternating(bb) != is_alternating(cc2)) continue;
      if (is_alternating(bb)) {
        if (bb(0, 1).is_zero() || cc2(0, 1).is_zero()) continue;
        Cyclo scale = sb.s / sc.s;
        Cyclo d = scale * cc2(0, 1) / bb(0, 1);
        CycMat p(3, 3);
        p.col(0) = sb.v;
        p.col(1) = sb.w.col(0);
        p.col(2) = CycVec(sb.w.col(1) * d);
        CycMat uc(3, 3);
        uc.col(0) = sc.v;
        uc.col(1) = sc.w.col(0);
        uc.col(2) = sc.w.col(1);
        CycMat full = p * *mat_inverse(uc);
        if (auto r = finish(full, scale)) return r;
        continue;
      }
      Reduce2 rb2 = reduce2(bb), rc2 = reduce2(cc2);
      if (rb2.gens.empty() || rc2.gens.empty()) continue;
      for (const Gen2& g1 : rb2.gens)
      for (const Gen2& g2 : rc2.gens) {
        const CycMat& u2 = g2.u;
        if (!(g1.p * g2.q == g1.q * g2.p)) continue;
        if (g1.p.is_zero() != g2.p.is_zero() ||
            g1.q.is_zero() != g2.q.is_zero())
          continue;
        // scales: v-part a, block parts (1, d0):
        // scale = s0_b / s0_c ; a^2 = scale * s_c / s_b
        Cyclo scale = g1.s / g2.s;
        Cyclo ratio = scale * sc.s / sb.s;
        auto a = sqrt_in_field(ratio);
        if (!a) continue;
        Cyclo d0;
        if (!g1.p.is_zero())
          d0 = scale * g2.p / g1.p;
        else if (!g1.q.is_zero())
          d0 = scale * g2.q / g1.q;
        else
          d0 = Cyclo(1);
        CycMat ub(3, 3);
        ub.col(0) = CycVec(sb.v * *a);
        ub.col(1) = sb.w * g1.u.col(0);
        ub.col(2) = CycVec((sb.w * g1.u.col(1)) * d0);
        CycMat uc(3, 3);
        uc.col(0) = sc.v;
        uc.col(1) = sc.w * u2.col(0);
        uc.col(2) = sc.w * u2.col(1);
        CycMat p = ub * *mat_inverse(uc);
        if (auto r = finish(p, scale)) return r;
      }
    }
  }
  if (splits_b.empty() && splits_c.empty() && ib.rank == 2) {
    auto ub = b5_reduce(b), uc = b5_reduce(c);
    if (ub && uc) {
      CycMat p = *ub * *mat_inverse(*uc);
      if (auto r = finish(p, Cyclo(1))) return r;
    }
  }
  // numeric fallback with an explicit scale unknown, rationalized exactly
  {
    ScaledCongruenceLsq prob(b, c);
    FreezeOptions fo;
    fo.restarts = 10;
    if (auto got = freeze_refine(prob, 0x5CA1ED, fo)) {
      CycMat p(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) = (*got)[size_t(i * n + j)];
      Cyclo scale = (*got)[size_t(n * n)];
      if (!scale.is_zero()) {
        if (auto r = finish(p, scale)) return r;
      }
    }
  }
  return std::nullopt;
}

std::optional<Eigen::MatrixXcd> congruence_numeric_search(const CycMat& b,
                                                          const CycMat& c,
                                                          int budget,
                                                          uint64_t seed) {
  const int n = int(b.rows());
  CongruenceLsq prob(b, c);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < budget; ++t) {
    Eigen::VectorXcd x0(prob.num_unknowns());
    for (int k = 0; k < prob.num_unknowns(); ++k)
      x0(k) = std::complex<double>(gauss(rng), gauss(rng));
    auto out = lm_minimize(prob, x0, {});
    if (out.norm < 1e-10) {
      Eigen::MatrixXcd p(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) = out.x(i * n + j);
      return p;
    }
  }
  return std::nullopt;
}

}  // namespace strata
