#include "strata/linalg.hpp"

#include <sstream>

#include "strata/expr.hpp"

namespace strata {

namespace {

// echelon form, eliminating only below the pivot; enough for rank/det
struct Echelon {
  long rank = 0;
  int swaps = 0;
  Cyclo pivot_product = Cyclo(1);
};

Echelon echelon_inplace(CycMat& m) {
  Echelon e;
  const long rows = m.rows(), cols = m.cols();
  long rpos = 0;
  for (long col = 0; col < cols && rpos < rows; ++col) {
    long piv = -1;
    for (long r = rpos; r < rows; ++r) {
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != rpos) {
      m.row(piv).swap(m.row(rpos));
      ++e.swaps;
    }
    const Cyclo p = m(rpos, col);
    e.pivot_product *= p;
    for (long r = rpos + 1; r < rows; ++r) {
      if (m(r, col).is_zero()) continue;
      Cyclo f = m(r, col) / p;
      m(r, col) = Cyclo(0);
      for (long c = col + 1; c < cols; ++c) {
        if (!m(rpos, c).is_zero()) m(r, c) -= f * m(rpos, c);
      }
    }
    ++e.rank;
    ++rpos;
  }
  return e;
}

}  // namespace

std::vector<int> rref_inplace(CycMat& m) {
  const long rows = m.rows(), cols = m.cols();
  std::vector<int> pivots;
  long rpos = 0;
  for (long col = 0; col < cols && rpos < rows; ++col) {
    long piv = -1;
    for (long r = rpos; r < rows; ++r) {
      if (!m(r, col).is_zero()) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != rpos) m.row(piv).swap(m.row(rpos));
    Cyclo inv = m(rpos, col).inverse();
    for (long c = col; c < cols; ++c) {
      if (!m(rpos, c).is_zero()) m(rpos, c) *= inv;
    }
    for (long r = 0; r < rows; ++r) {
      if (r == rpos || m(r, col).is_zero()) continue;
      Cyclo f = m(r, col);
      m(r, col) = Cyclo(0);
      for (long c = col + 1; c < cols; ++c) {
        if (!m(rpos, c).is_zero()) m(r, c) -= f * m(rpos, c);
      }
    }
    pivots.push_back(int(col));
    ++rpos;
  }
  return pivots;
}

long mat_rank(const CycMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  CycMat w = m;
  return echelon_inplace(w).rank;
}

std::vector<CycVec> kernel_basis(const CycMat& m) {
  const long cols = m.cols();
  if (cols == 0) return {};
  CycMat w = m;
  std::vector<int> pivots = rref_inplace(w);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<CycVec> basis;
  for (long fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    CycVec v = CycVec::Constant(cols, Cyclo(0));
    v(fc) = Cyclo(1);
    for (size_t i = 0; i < pivots.size(); ++i) {
      v(pivots[i]) = -w(long(i), fc);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<CycVec> solve_linear(const CycMat& m, const CycVec& b) {
  const long rows = m.rows(), cols = m.cols();
  CycMat aug(rows, cols + 1);
  aug.block(0, 0, rows, cols) = m;
  aug.col(cols) = b;
  std::vector<int> pivots = rref_inplace(aug);
  if (!pivots.empty() && pivots.back() == int(cols)) return std::nullopt;
  CycVec x = CycVec::Constant(cols, Cyclo(0));
  for (size_t i = 0; i < pivots.size(); ++i) x(pivots[i]) = aug(long(i), cols);
  return x;
}

std::optional<CycMat> mat_inverse(const CycMat& m) {
  const long n = m.rows();
  if (m.cols() != n) return std::nullopt;
  CycMat aug(n, 2 * n);
  aug.block(0, 0, n, n) = m;
  aug.block(0, n, n, n) = cyc_identity(int(n));
  std::vector<int> pivots = rref_inplace(aug);
  if (long(pivots.size()) != n || (n > 0 && pivots.back() != int(n - 1)))
    return std::nullopt;
  return CycMat(aug.block(0, n, n, n));
}

Cyclo mat_det(const CycMat& m) {
  const long n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("det of non-square matrix");
  if (n == 0) return Cyclo(1);
  CycMat w = m;
  Echelon e = echelon_inplace(w);
  if (e.rank < n) return Cyclo(0);
  Cyclo d = e.pivot_product;
  if (e.swaps % 2) d = -d;
  return d;
}

CycMat cyc_identity(int n) {
  CycMat m = CycMat::Constant(n, n, Cyclo(0));
  for (int i = 0; i < n; ++i) m(i, i) = Cyclo(1);
  return m;
}

CycMat mat_transpose(const CycMat& m) {
  CycMat t(m.cols(), m.rows());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

CycMat row_space_basis(const CycMat& m) {
  CycMat w = m;
  std::vector<int> pivots = rref_inplace(w);
  CycMat out(long(pivots.size()), m.cols());
  for (size_t i = 0; i < pivots.size(); ++i) out.row(long(i)) = w.row(long(i));
  return out;
}

bool subspace_contains(const CycMat& span_rows, const CycVec& v) {
  CycMat m(span_rows.rows() + 1, span_rows.cols());
  m.block(0, 0, span_rows.rows(), span_rows.cols()) = span_rows;
  for (long c = 0; c < span_rows.cols(); ++c) m(span_rows.rows(), c) = v(c);
  return mat_rank(m) == mat_rank(span_rows);
}

bool subspaces_equal(const CycMat& a_rows, const CycMat& b_rows) {
  if (a_rows.cols() != b_rows.cols()) return false;
  long ra = mat_rank(a_rows), rb = mat_rank(b_rows);
  if (ra != rb) return false;
  CycMat m(a_rows.rows() + b_rows.rows(), a_rows.cols());
  m.block(0, 0, a_rows.rows(), a_rows.cols()) = a_rows;
  m.block(a_rows.rows(), 0, b_rows.rows(), b_rows.cols()) = b_rows;
  return mat_rank(m) == ra;
}

CycMat parse_matrix(const std::string& text) {
  std::vector<std::vector<Cyclo>> rows;
  std::stringstream ss(text);
  std::string rowtext;
  while (std::getline(ss, rowtext, ';')) {
    std::vector<Cyclo> row;
    std::stringstream rs(rowtext);
    std::string cell;
    while (std::getline(rs, cell, ',')) row.push_back(cyclo_eval(cell));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) return CycMat(0, 0);
  size_t cols = rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != cols) throw ParseError("ragged matrix rows");
  }
  CycMat m(long(rows.size()), long(cols));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j) m(long(i), long(j)) = rows[i][j];
  return m;
}

std::string matrix_str(const CycMat& m) {
  std::ostringstream os;
  for (long i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (long j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j).str();
    }
  }
  return os.str();
}

}  // namespace strata
