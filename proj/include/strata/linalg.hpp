#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "strata/cyclo.hpp"

namespace Eigen {
template <>
struct NumTraits<strata::Cyclo> : GenericNumTraits<strata::Cyclo> {
  typedef strata::Cyclo Real;
  typedef strata::Cyclo NonInteger;
  typedef strata::Cyclo Nested;
  typedef strata::Cyclo Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 80,
  };
  static inline Real epsilon() { return strata::Cyclo(0); }
  static inline Real dummy_precision() { return strata::Cyclo(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace strata {

using CycMat = Eigen::Matrix<Cyclo, Eigen::Dynamic, Eigen::Dynamic>;
using CycVec = Eigen::Matrix<Cyclo, Eigen::Dynamic, 1>;

// Exact Gaussian elimination, deterministic pivoting (first nonzero in
// column order). All results are exact over Q(zeta_N).
long mat_rank(const CycMat& m);
std::vector<CycVec> kernel_basis(const CycMat& m);
std::optional<CycVec> solve_linear(const CycMat& m, const CycVec& b);
std::optional<CycMat> mat_inverse(const CycMat& m);
Cyclo mat_det(const CycMat& m);

// row-reduce `m` returning pivot columns; `m` becomes its RREF
std::vector<int> rref_inplace(CycMat& m);

CycMat cyc_identity(int n);
CycMat mat_transpose(const CycMat& m);

// independent rows spanning the same row space (RREF nonzero rows)
CycMat row_space_basis(const CycMat& m);

// dim of span(rows of a) as a subspace test helper
bool subspace_contains(const CycMat& span_rows, const CycVec& v);
bool subspaces_equal(const CycMat& a_rows, const CycMat& b_rows);

// CLI matrix grammar: rows separated by ';', entries by ',', each entry a
// scalar expression ("a,b;c,d").
CycMat parse_matrix(const std::string& text);
std::string matrix_str(const CycMat& m);

}  // namespace strata
