#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "strata/cyclo.hpp"

namespace strata {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sparse polynomial over Q(zeta_N) in named symbols. Monomials are exponent
// maps keyed by symbol name; the reserved symbol "z" never appears here (it
// folds into the coefficients).
class Poly {
 public:
  using Monomial = std::map<std::string, unsigned>;

  Poly() = default;
  Poly(Cyclo c) {
    if (!c.is_zero()) terms_[{}] = std::move(c);
  }

  static Poly symbol(const std::string& name) {
    Poly p;
    p.terms_[{{name, 1}}] = Cyclo(1);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  Cyclo constant_value() const;  // throws if not constant

  const std::map<Monomial, Cyclo>& terms() const { return terms_; }
  unsigned total_degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.terms_ == b.terms_;
  }

  Cyclo evaluate(const std::map<std::string, Cyclo>& values) const;
  Poly substitute(const std::map<std::string, Cyclo>& values) const;
  std::vector<std::string> symbols() const;
  std::string str() const;

 private:
  void prune();
  std::map<Monomial, Cyclo> terms_;
};

// Parses the scalar expression grammar: integers, + - * / ^, parentheses,
// the reserved symbol `z` (the field generator), and free symbols from
// `allowed` (e.g. p, q, t1..t3). Division only by constant subexpressions.
Poly parse_expr(const std::string& text, const std::vector<std::string>& allowed = {});

// Constant-only wrapper: the spec's scalar expression evaluator.
Cyclo cyclo_eval(const std::string& text);

}  // namespace strata
