#include "strata/algebra.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace strata {

CycVec Algebra::multiply(const CycVec& x, const CycVec& y) const {
  CycVec out = CycVec::Constant(dim_, Cyclo(0));
  for (int i = 0; i < dim_; ++i) {
    if (x(i).is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y(j).is_zero()) continue;
      Cyclo f = x(i) * y(j);
      for (int k = 0; k < dim_; ++k) {
        const Cyclo& c = at(i, j, k);
        if (!c.is_zero()) out(k) += f * c;
      }
    }
  }
  return out;
}

std::string Algebra::render() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        const Cyclo& c = at(i, j, k);
        if (c.is_zero()) continue;
        std::string cs = c.str();
        if (cs == "1") {
          os << (first ? "" : "+");
        } else if (cs == "-1") {
          os << "-";
        } else {
          if (!first && cs[0] != '-') os << "+";
          os << (cs.find_first_of("+-", 1) != std::string::npos &&
                         !c.is_rational()
                     ? "(" + cs + ")"
                     : cs)
             << "*";
        }
        os << "p(" << i + 1 << "," << j + 1 << ";" << k + 1 << ")";
        first = false;
      }
  return os.str();
}

Algebra StructureFamily::evaluate(const std::map<std::string, Cyclo>& values) const {
  Algebra a(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        a.at(i, j, k) = at(i, j, k).evaluate(values);
  return a;
}

std::vector<std::string> StructureFamily::symbols() const {
  std::map<std::string, bool> seen;
  for (const auto& p : c_)
    for (const auto& s : p.symbols()) seen[s] = true;
  std::vector<std::string> out;
  for (auto& [s, b] : seen) out.push_back(s);
  return out;
}

unsigned StructureFamily::max_degree() const {
  unsigned d = 0;
  for (const auto& p : c_) d = std::max(d, p.total_degree());
  return d;
}

namespace {

// splits "a + b - c" at top level (respecting parentheses) keeping signs
std::vector<std::string> split_terms(const std::string& text) {
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if ((ch == '+' || ch == '-') && depth == 0 && !cur.empty()) {
      // not a leading sign of the current term
      bool only_sign = true;
      for (char c2 : cur)
        if (!std::isspace((unsigned char)c2) && c2 != '+' && c2 != '-') {
          only_sign = false;
          break;
        }
      if (!only_sign) {
        terms.push_back(cur);
        cur.clear();
      }
    }
    cur += ch;
  }
  if (!cur.empty()) terms.push_back(cur);
  return terms;
}

}  // namespace

StructureFamily parse_structure_family(const std::string& text, int dim,
                                       const std::vector<std::string>& symbols) {
  StructureFamily F(dim);
  std::string trimmed;
  for (char c : text)
    if (!std::isspace((unsigned char)c)) trimmed += c;
  if (trimmed.empty()) return F;
  for (const std::string& term : split_terms(trimmed)) {
    // term = [sign] [expr *] p(i,j;k)
    size_t ppos = term.rfind("p(");
    if (ppos == std::string::npos)
      throw ParseError("structure term without p(i,j;k): " + term);
    // make sure it's the psi symbol, not e.g. the parameter p inside expr:
    // the psi map is the trailing "p(...)" factor
    std::string tail = term.substr(ppos);
    size_t close = tail.find(')');
    if (close == std::string::npos)
      throw ParseError("unterminated p(...): " + term);
    if (close != tail.size() - 1)
      throw ParseError("p(i,j;k) must be the trailing factor: " + term);
    int i, j, k;
    {
      std::string inside = tail.substr(2, close - 2);
      size_t c1 = inside.find(',');
      size_t c2 = inside.find(';');
      if (c1 == std::string::npos || c2 == std::string::npos || c2 < c1)
        throw ParseError("malformed p(i,j;k): " + term);
      try {
        i = std::stoi(inside.substr(0, c1));
        j = std::stoi(inside.substr(c1 + 1, c2 - c1 - 1));
        k = std::stoi(inside.substr(c2 + 1));
      } catch (const std::exception&) {
        throw ParseError("malformed p(i,j;k): " + term);
      }
    }
    if (i < 1 || i > dim || j < 1 || j > dim || k < 1 || k > dim)
      throw ParseError("psi index out of range in: " + term);
    std::string coef = term.substr(0, ppos);
    // strip a trailing '*' connecting coefficient and psi
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    Poly cp;
    if (coef.empty() || coef == "+") {
      cp = Poly(Cyclo(1));
    } else if (coef == "-") {
      cp = Poly(Cyclo(-1));
    } else {
      cp = parse_expr(coef, symbols);
    }
    F.at(i - 1, j - 1, k - 1) += cp;
  }
  return F;
}

Algebra parse_structure(const std::string& text, int dim,
                        const std::map<std::string, Cyclo>& params) {
  std::vector<std::string> syms;
  for (const auto& [k, v] : params) syms.push_back(k);
  StructureFamily F = parse_structure_family(text, dim, syms);
  return F.evaluate(params);
}

AssociativityReport is_associative(const Algebra& a, int max_violations) {
  AssociativityReport rep;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // (e_i e_j) e_k - e_i (e_j e_k)
        bool bad = false;
        for (int l = 0; l < n && !bad; ++l) {
          Cyclo lhs(0), rhs(0);
          for (int m = 0; m < n; ++m) {
            if (!a.at(i, j, m).is_zero()) lhs += a.at(i, j, m) * a.at(m, k, l);
            if (!a.at(j, k, m).is_zero()) rhs += a.at(j, k, m) * a.at(i, m, l);
          }
          if (lhs != rhs) bad = true;
        }
        if (bad) {
          rep.associative = false;
          if (int(rep.violations.size()) < max_violations)
            rep.violations.push_back({i, j, k});
        }
      }
  return rep;
}

bool is_commutative(const Algebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      for (int k = 0; k < n; ++k)
        if (a.at(i, j, k) != a.at(j, i, k)) return false;
  return true;
}

Algebra opposite(const Algebra& a) {
  Algebra b(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k) b.at(i, j, k) = a.at(j, i, k);
  return b;
}

Algebra change_of_basis(const Algebra& a, const CycMat& g) {
  const int n = a.dim();
  auto gi = mat_inverse(g);
  if (!gi) throw std::invalid_argument("change_of_basis: singular matrix");
  Algebra b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CycVec prod = a.multiply(g.col(i), g.col(j));
      CycVec back = (*gi) * prod;
      for (int k = 0; k < n; ++k) b.at(i, j, k) = back(k);
    }
  }
  return b;
}

PowerFiltration power_subspace_dims(const Algebra& a) {
  PowerFiltration out;
  const int n = a.dim();
  out.dims.push_back(n);
  CycMat cur = cyc_identity(n);  // rows span A^1
  for (;;) {
    // A^{k+1} = span d(A, A^k) + d(A^k, A)
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
    int d = int(basis.rows());
    out.dims.push_back(d);
    if (d == 0) {
      out.nilpotent = true;
      out.index = int(out.dims.size());
      break;
    }
    if (d == out.dims[out.dims.size() - 2]) {
      out.nilpotent = false;
      out.index = 0;
      break;
    }
    cur = basis;
  }
  return out;
}

Subspace product_span(const Algebra& a) {
  const int n = a.dim();
  std::vector<CycVec> prods;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CycVec v = CycVec::Constant(n, Cyclo(0));
      bool nz = false;
      for (int k = 0; k < n; ++k) {
        v(k) = a.at(i, j, k);
        nz = nz || !v(k).is_zero();
      }
      if (nz) prods.push_back(v);
    }
  CycMat m(long(prods.size()), n);
  for (size_t r = 0; r < prods.size(); ++r)
    for (int c = 0; c < n; ++c) m(long(r), c) = prods[r](c);
  return Subspace{row_space_basis(m)};
}

Subspace annihilator_kernel(const Algebra& a) {
  const int n = a.dim();
  // rows of constraints on m: (m e_j)_k = 0 and (e_j m)_k = 0
  CycMat m(2 * n * n, n);
  long r = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) m(r, i) = a.at(i, j, k);
      ++r;
      for (int i = 0; i < n; ++i) m(r, i) = a.at(j, i, k);
      ++r;
    }
  auto kb = kernel_basis(m);
  CycMat rows(long(kb.size()), n);
  for (size_t i = 0; i < kb.size(); ++i)
    for (int c = 0; c < n; ++c) rows(long(i), c) = kb[i](c);
  return Subspace{row_space_basis(rows)};
}

Subspace center(const Algebra& a) {
  const int n = a.dim();
  CycMat m(n * n, n);
  long r = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) m(r, i) = a.at(i, j, k) - a.at(j, i, k);
      ++r;
    }
  auto kb = kernel_basis(m);
  CycMat rows(long(kb.size()), n);
  for (size_t i = 0; i < kb.size(); ++i)
    for (int c = 0; c < n; ++c) rows(long(i), c) = kb[i](c);
  return Subspace{row_space_basis(rows)};
}

Algebra core_of(const Algebra& a) {
  auto filt = power_subspace_dims(a);
  if (!filt.nilpotent)
    throw std::invalid_argument("core_of: algebra is not nilpotent");
  Subspace K = annihilator_kernel(a);
  const int n = a.dim();
  const int m = n - K.dim();
  // echelonized complement: standard basis vectors at non-pivot coordinates
  std::vector<bool> is_pivot(n, false);
  {
    CycMat w = K.rows;
    std::vector<int> piv = rref_inplace(w);
    for (int c : piv) is_pivot[c] = true;
  }
  std::vector<int> comp;
  for (int i = 0; i < n; ++i)
    if (!is_pivot[i]) comp.push_back(i);
  // change-of-coordinates matrix [K basis | complement] as columns
  CycMat U(n, n);
  for (int c = 0; c < K.dim(); ++c)
    for (int r2 = 0; r2 < n; ++r2) U(r2, c) = K.rows(c, r2);
  for (int c = 0; c < m; ++c) {
    for (int r2 = 0; r2 < n; ++r2) U(r2, K.dim() + c) = Cyclo(0);
    U(comp[c], K.dim() + c) = Cyclo(1);
  }
  auto Ui = mat_inverse(U);
  if (!Ui) throw std::logic_error("core_of: complement construction failed");
  Algebra q(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      CycVec ei = CycVec::Constant(n, Cyclo(0));
      ei(comp[i]) = Cyclo(1);
      CycVec ej = CycVec::Constant(n, Cyclo(0));
      ej(comp[j]) = Cyclo(1);
      CycVec prod = a.multiply(ei, ej);
      CycVec coords = (*Ui) * prod;
      for (int k = 0; k < m; ++k) q.at(i, j, k) = coords(K.dim() + k);
    }
  return q;
}

}  // namespace strata
