#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace strata {

using Rational = mpq_class;

// The coefficient field Q(zeta_N). One field per process; configure before
// creating any Cyclo values. Default N = 24, which contains i, sqrt2, sqrt3,
// sqrt6 and all roots of unity the catalog needs.
class CycloField {
 public:
  static CycloField& instance();
  // Re-initialises the process-wide field. Only safe while no Cyclo values
  // are alive; intended for CLI startup and tests.
  static void configure(unsigned order);

  unsigned order() const { return n_; }
  unsigned degree() const { return phi_; }

  // reduction of z^k (0 <= k < 2*phi-1) onto the power basis
  const std::vector<Rational>& power(unsigned k) const { return powers_[k]; }

  std::complex<double> root(unsigned k) const;  // numeric zeta^k

 private:
  explicit CycloField(unsigned order);
  unsigned n_ = 0;
  unsigned phi_ = 0;
  std::vector<Rational> cyclotomic_;             // Phi_N, monic, low->high
  std::vector<std::vector<Rational>> powers_;    // z^k reduced, k < 2*phi-1
};

// Exact element of Q(zeta_N) on the power basis 1, z, ..., z^{phi-1}.
// Representation is canonical: rational values are stored inline with no
// extension part, so equality is plain coefficient comparison.
class Cyclo {
 public:
  Cyclo() : rat_(0) {}
  Cyclo(int v) : rat_(v) {}
  Cyclo(long v) : rat_((long)v) {}
  Cyclo(const Rational& v) : rat_(v) {}
  explicit Cyclo(std::vector<Rational> coeffs);  // reduces + normalises

  static Cyclo zeta_pow(long k);  // zeta^k (k may be negative)

  bool is_zero() const;
  bool is_rational() const { return ext_.empty(); }
  const Rational& rational_part() const { return rat_; }  // coeff of z^0
  // full coefficient vector of length degree()
  std::vector<Rational> coefficients() const;

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator/=(const Cyclo& o);  // throws on division by zero

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }

  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  Cyclo inverse() const;
  std::complex<double> to_complex() const;

  // deterministic total order on coefficient vectors (lex); used for
  // canonical representative choices, not a field order
  static int compare(const Cyclo& a, const Cyclo& b);

  // max |numerator|,|denominator| over coefficients; snap-quality metric
  double height() const;

  std::string str() const;  // "z"-expression text, round-trips through parse

 private:
  void normalize();
  // rational part = coefficient of z^0; ext_ holds coefficients of
  // z^1..z^{phi-1} and is empty iff the value is rational.
  Rational rat_;
  std::vector<Rational> ext_;
};

// sqrt within the field: exact y with y*y == s, if one exists (rational
// squarefree-part route plus numeric snap for the rest). nullopt otherwise.
std::optional<Cyclo> sqrt_in_field(const Cyclo& s);

// snap a complex number to a small-height field element (a + b*sigma over a
// basis of surds and roots of unity); verified to |approx - x| < tol only,
// callers must verify exactly.
std::optional<Cyclo> snap_to_field(std::complex<double> x, double tol = 1e-8);

std::string rational_str(const Rational& q);

std::ostream& operator<<(std::ostream& os, const Cyclo& v);

}  // namespace strata
