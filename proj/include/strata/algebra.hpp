#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strata/expr.hpp"
#include "strata/linalg.hpp"

namespace strata {

// A subspace of the ambient coordinate space, stored as an RREF row basis.
struct Subspace {
  CycMat rows;  // basis vectors as rows, reduced
  int ambient_dim() const { return int(rows.cols()); }
  int dim() const { return int(rows.rows()); }
};

// Finite-dimensional algebra by structure constants:
// e_i * e_j = sum_k c[i][j][k] e_k.
class Algebra {
 public:
  Algebra() = default;
  explicit Algebra(int dim) : dim_(dim), c_(size_t(dim) * dim * dim, Cyclo(0)) {}

  int dim() const { return dim_; }
  const Cyclo& at(int i, int j, int k) const {
    return c_[(size_t(i) * dim_ + j) * dim_ + k];
  }
  Cyclo& at(int i, int j, int k) {
    return c_[(size_t(i) * dim_ + j) * dim_ + k];
  }

  CycVec multiply(const CycVec& x, const CycVec& y) const;

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.dim_ == b.dim_ && a.c_ == b.c_;
  }

  std::string render() const;  // psi-grammar text; parse(render()) == *this

 private:
  int dim_ = 0;
  std::vector<Cyclo> c_;
};

// Structure with polynomial coefficients (catalog families, deformations).
class StructureFamily {
 public:
  StructureFamily() = default;
  explicit StructureFamily(int dim)
      : dim_(dim), c_(size_t(dim) * dim * dim) {}

  int dim() const { return dim_; }
  const Poly& at(int i, int j, int k) const {
    return c_[(size_t(i) * dim_ + j) * dim_ + k];
  }
  Poly& at(int i, int j, int k) { return c_[(size_t(i) * dim_ + j) * dim_ + k]; }

  Algebra evaluate(const std::map<std::string, Cyclo>& values) const;
  std::vector<std::string> symbols() const;
  unsigned max_degree() const;

 private:
  int dim_ = 0;
  std::vector<Poly> c_;
};

// psi-notation: sum of terms `[scalar-expr *] p(i,j;k)`, meaning the map
// e_i (x) e_j -> e_k. Free symbols listed in `symbols` stay polynomial.
StructureFamily parse_structure_family(const std::string& text, int dim,
                                       const std::vector<std::string>& symbols);
Algebra parse_structure(const std::string& text, int dim,
                        const std::map<std::string, Cyclo>& params = {});

struct AssociativityReport {
  bool associative = true;
  std::vector<std::array<int, 3>> violations;  // basis triples (i,j,k)
};
AssociativityReport is_associative(const Algebra& a, int max_violations = 8);

bool is_commutative(const Algebra& a);
Algebra opposite(const Algebra& a);

// transported structure d'(x,y) = g^{-1} d(gx, gy); throws on singular g
Algebra change_of_basis(const Algebra& a, const CycMat& g);

struct PowerFiltration {
  std::vector<int> dims;  // dims of A, A^2, ... until stabilization
  bool nilpotent = false;
  int index = 0;  // smallest k with A^k = 0 (nilpotent case)
};
PowerFiltration power_subspace_dims(const Algebra& a);

// span of all products A*A
Subspace product_span(const Algebra& a);

// the maximal completely trivial ideal {m : mA = Am = 0}
Subspace annihilator_kernel(const Algebra& a);

Subspace center(const Algebra& a);

// quotient by the kernel on the echelonized complement; nilpotent input only
Algebra core_of(const Algebra& a);

}  // namespace strata
