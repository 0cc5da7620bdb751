#pragma once

#include <string>
#include <vector>

#include "strata/algebra.hpp"

namespace strata {

// Element of C^n = Hom(V^{(x)n}, V) as a dense coefficient tensor.
// Index layout: coeff(input multi-index flattened base-dim, output k).
class Cochain {
 public:
  Cochain() = default;
  Cochain(int arity, int dim)
      : arity_(arity), dim_(dim), c_(input_count() * size_t(dim), Cyclo(0)) {}

  static Cochain from_algebra(const Algebra& a);
  // psi-grammar for arity 2; arity-n term grammar would generalize, only
  // arity 2 texts appear in the catalog
  static Cochain parse2(const std::string& text, int dim);

  int arity() const { return arity_; }
  int dim() const { return dim_; }
  size_t input_count() const {
    size_t n = 1;
    for (int i = 0; i < arity_; ++i) n *= size_t(dim_);
    return n;
  }
  size_t coeff_count() const { return c_.size(); }

  const Cyclo& coeff(size_t input_flat, int k) const {
    return c_[input_flat * dim_ + k];
  }
  Cyclo& coeff(size_t input_flat, int k) { return c_[input_flat * dim_ + k]; }

  bool is_zero() const;

  Cochain operator-() const;
  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  Cochain& scale(const Cyclo& s);
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.arity_ == b.arity_ && a.dim_ == b.dim_ && a.c_ == b.c_;
  }

  CycVec flatten() const;  // coefficient vector, length dim^{arity+1}
  static Cochain unflatten(const CycVec& v, int arity, int dim);

 private:
  int arity_ = 0;
  int dim_ = 0;
  std::vector<Cyclo> c_;
};

// Gerstenhaber circle product and bracket:
//   phi o psi = sum_i (-1)^{(i-1)(n-1)} phi o_i psi
//   [phi, psi] = phi o psi - (-1)^{(m-1)(n-1)} psi o phi
Cochain gcirc(const Cochain& phi, const Cochain& psi);
Cochain gbracket(const Cochain& phi, const Cochain& psi);

// matrix of D_n = [d, .] : C^n -> C^{n+1} in the coefficient bases
CycMat differential_matrix(const Algebra& a, int n);

struct CohomologyProfile {
  std::vector<int> dims;      // h_0 .. h_nmax
  std::vector<long> ranks;    // rank D_0 .. rank D_nmax
};
CohomologyProfile cohomology_dims(const Algebra& a, int nmax = 3);

bool is_cocycle(const Algebra& a, const Cochain& phi);
bool is_coboundary(const Algebra& a, const Cochain& phi);

// true iff all are cocycles, classes independent mod coboundaries, and the
// count equals h_n; throws on non-cocycle input
bool represents_basis(const Algebra& a, const std::vector<Cochain>& cochains);

}  // namespace strata
