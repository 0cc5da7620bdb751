#include "strata/cochain.hpp"

#include <stdexcept>

namespace strata {

Cochain Cochain::from_algebra(const Algebra& a) {
  Cochain d(2, a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        d.coeff(size_t(i) * a.dim() + j, k) = a.at(i, j, k);
  return d;
}

Cochain Cochain::parse2(const std::string& text, int dim) {
  return from_algebra(parse_structure(text, dim));
}

bool Cochain::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

Cochain Cochain::operator-() const {
  Cochain r(*this);
  for (auto& v : r.c_) v = -v;
  return r;
}

Cochain& Cochain::operator+=(const Cochain& o) {
  if (arity_ != o.arity_ || dim_ != o.dim_)
    throw std::invalid_argument("cochain shape mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  if (arity_ != o.arity_ || dim_ != o.dim_)
    throw std::invalid_argument("cochain shape mismatch");
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Cochain& Cochain::scale(const Cyclo& s) {
  for (auto& v : c_) v *= s;
  return *this;
}

CycVec Cochain::flatten() const {
  CycVec v(long(c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) v(long(i)) = c_[i];
  return v;
}

Cochain Cochain::unflatten(const CycVec& v, int arity, int dim) {
  Cochain c(arity, dim);
  if (size_t(v.size()) != c.c_.size())
    throw std::invalid_argument("unflatten: length mismatch");
  for (long i = 0; i < v.size(); ++i) c.c_[size_t(i)] = v(i);
  return c;
}

Cochain gcirc(const Cochain& phi, const Cochain& psi) {
  const int m = phi.arity(), n = psi.arity(), d = phi.dim();
  if (d != psi.dim()) throw std::invalid_argument("gcirc: dim mismatch");
  const int N = m + n - 1;
  if (N < 0) throw std::invalid_argument("gcirc: negative arity");
  Cochain out(N, d);
  if (m == 0) return out;  // no insertion slots
  // iterate over all inputs of the result
  std::vector<int> idx(size_t(std::max(N, 1)), 0);
  size_t total = out.input_count();
  for (size_t flat = 0; flat < total; ++flat) {
    // decode flat -> idx (base d, big-endian like flatten order)
    {
      size_t f = flat;
      for (int t = N - 1; t >= 0; --t) {
        idx[size_t(t)] = int(f % d);
        f /= d;
      }
    }
    for (int i = 1; i <= m; ++i) {
      int sg = ((i - 1) * (n - 1)) % 2 ? -1 : 1;
      // inner input = idx[i-1 .. i-1+n-1]
      size_t inner_flat = 0;
      for (int t = 0; t < n; ++t) inner_flat = inner_flat * d + size_t(idx[size_t(i - 1 + t)]);
      for (int k = 0; k < d; ++k) {
        const Cyclo& iv = psi.coeff(inner_flat, k);
        if (iv.is_zero()) continue;
        // outer input: idx[0..i-2], k, idx[i-1+n .. N-1]
        size_t outer_flat = 0;
        for (int t = 0; t < i - 1; ++t) outer_flat = outer_flat * d + size_t(idx[size_t(t)]);
        outer_flat = outer_flat * d + size_t(k);
        for (int t = i - 1 + n; t < N; ++t)
          outer_flat = outer_flat * d + size_t(idx[size_t(t)]);
        for (int l = 0; l < d; ++l) {
          const Cyclo& pv = phi.coeff(outer_flat, l);
          if (pv.is_zero()) continue;
          Cyclo term = iv * pv;
          if (sg < 0) term = -term;
          out.coeff(flat, l) += term;
        }
      }
    }
  }
  return out;
}

Cochain gbracket(const Cochain& phi, const Cochain& psi) {
  const int m = phi.arity(), n = psi.arity();
  Cochain a = gcirc(phi, psi);
  Cochain b = gcirc(psi, phi);
  int sg = ((m - 1) * (n - 1)) % 2 ? -1 : 1;
  if (sg > 0)
    a -= b;
  else
    a += b;
  return a;
}

CycMat differential_matrix(const Algebra& a, int n) {
  const int d = a.dim();
  Cochain dalg = Cochain::from_algebra(a);
  size_t ncols = 1;
  for (int i = 0; i < n + 1; ++i) ncols *= size_t(d);  // d^n inputs * d outputs
  size_t nrows = ncols * size_t(d);                    // d^{n+1} inputs * d outputs
  CycMat M = CycMat::Constant(long(nrows), long(ncols), Cyclo(0));
  Cochain basis(n, d);
  size_t inputs = basis.input_count();
  for (size_t inp = 0; inp < inputs; ++inp) {
    for (int k = 0; k < d; ++k) {
      basis.coeff(inp, k) = Cyclo(1);
      Cochain img = gbracket(dalg, basis);
      basis.coeff(inp, k) = Cyclo(0);
      size_t col = inp * size_t(d) + size_t(k);
      size_t rin = img.input_count();
      for (size_t f = 0; f < rin; ++f)
        for (int l = 0; l < d; ++l) {
          const Cyclo& v = img.coeff(f, l);
          if (!v.is_zero()) M(long(f * size_t(d) + size_t(l)), long(col)) = v;
        }
    }
  }
  return M;
}

CohomologyProfile cohomology_dims(const Algebra& a, int nmax) {
  CohomologyProfile prof;
  const int d = a.dim();
  long prev_rank = 0;
  for (int n = 0; n <= nmax; ++n) {
    CycMat D = differential_matrix(a, n);
    long r = mat_rank(D);
    long dimCn = D.cols();
    prof.dims.push_back(int(dimCn - r - prev_rank));
    prof.ranks.push_back(r);
    prev_rank = r;
  }
  (void)d;
  return prof;
}

bool is_cocycle(const Algebra& a, const Cochain& phi) {
  Cochain d = Cochain::from_algebra(a);
  return gbracket(d, phi).is_zero();
}

bool is_coboundary(const Algebra& a, const Cochain& phi) {
  if (phi.arity() == 0) return phi.is_zero();
  CycMat D = differential_matrix(a, phi.arity() - 1);
  return solve_linear(D, phi.flatten()).has_value();
}

bool represents_basis(const Algebra& a, const std::vector<Cochain>& cochains) {
  if (cochains.empty()) {
    // vacuously a basis iff h_n = 0; caller supplies n via... empty set has
    // no arity; treat as basis of a zero-dimensional cohomology.
    return true;
  }
  const int n = cochains[0].arity();
  for (const auto& c : cochains) {
    if (c.arity() != n || c.dim() != a.dim())
      throw std::invalid_argument("represents_basis: shape mismatch");
    if (!is_cocycle(a, c))
      throw std::invalid_argument("represents_basis: non-cocycle input");
  }
  CycMat Dprev = n >= 1 ? differential_matrix(a, n - 1)
                        : CycMat(long(cochains[0].coeff_count()), 0);
  long rank_b = mat_rank(Dprev);
  // independence mod coboundaries: rank [Dprev | cochains] == rank_b + count
  CycMat M(Dprev.rows(), Dprev.cols() + long(cochains.size()));
  M.block(0, 0, Dprev.rows(), Dprev.cols()) = Dprev;
  for (size_t i = 0; i < cochains.size(); ++i)
    M.col(Dprev.cols() + long(i)) = cochains[i].flatten();
  if (mat_rank(M) != rank_b + long(cochains.size())) return false;
  // count must equal h_n
  CycMat Dn = differential_matrix(a, n);
  long hn = Dn.cols() - mat_rank(Dn) - rank_b;
  return long(cochains.size()) == hn;
}

}  // namespace strata
