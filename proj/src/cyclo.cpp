#include "strata/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace strata {

namespace {

using Poly = std::vector<Rational>;  // dense, low -> high

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  poly_trim(r);
  return r;
}

// quotient of exact division (remainder must vanish)
Poly poly_divexact(Poly num, const Poly& den) {
  Poly q(num.size() > den.size() - 1 ? num.size() - den.size() + 1 : 0,
         Rational(0));
  while (num.size() >= den.size() && !num.empty()) {
    Rational c = num.back() / den.back();
    size_t shift = num.size() - den.size();
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    poly_trim(num);
  }
  if (!num.empty()) throw std::logic_error("poly_divexact: nonzero remainder");
  return q;
}

// remainder of division
Poly poly_mod(Poly num, const Poly& den) {
  while (num.size() >= den.size() && !num.empty()) {
    Rational c = num.back() / den.back();
    size_t shift = num.size() - den.size();
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    poly_trim(num);
  }
  return num;
}

Poly cyclotomic_poly(unsigned n) {
  // x^n - 1 divided by Phi_d for proper divisors d
  Poly xn1(n + 1, Rational(0));
  xn1[0] = -1;
  xn1[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) xn1 = poly_divexact(std::move(xn1), cyclotomic_poly(d));
  }
  return xn1;
}

unsigned euler_phi(unsigned n) {
  unsigned r = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

std::unique_ptr<CycloField> g_field;
std::once_flag g_field_once;

}  // namespace

CycloField::CycloField(unsigned order) : n_(order) {
  if (order < 3) throw std::invalid_argument("field order must be >= 3");
  phi_ = euler_phi(order);
  cyclotomic_ = cyclotomic_poly(order);
  // z^k mod Phi for every exponent the arithmetic can produce directly
  unsigned maxk = std::max(2 * phi_ - 1, n_);
  powers_.resize(maxk);
  for (unsigned k = 0; k < maxk; ++k) {
    Poly zk(k + 1, Rational(0));
    zk[k] = 1;
    Poly red = poly_mod(std::move(zk), cyclotomic_);
    red.resize(phi_, Rational(0));
    powers_[k] = std::move(red);
  }
}

CycloField& CycloField::instance() {
  std::call_once(g_field_once, [] { g_field.reset(new CycloField(24)); });
  return *g_field;
}

void CycloField::configure(unsigned order) {
  std::call_once(g_field_once, [] {});  // ensure flag consumed
  g_field.reset(new CycloField(order));
}

std::complex<double> CycloField::root(unsigned k) const {
  double ang = 2.0 * std::numbers::pi * double(k % n_) / double(n_);
  return {std::cos(ang), std::sin(ang)};
}

Cyclo::Cyclo(std::vector<Rational> coeffs) : rat_(0) {
  const auto& F = CycloField::instance();
  std::vector<Rational> acc(F.degree(), Rational(0));
  const size_t table = std::max<size_t>(2 * F.degree() - 1, F.order());
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    size_t kk = k;
    if (kk >= table) kk %= F.order();  // z^n = 1
    const auto& row = F.power(unsigned(kk));
    for (unsigned t = 0; t < F.degree(); ++t) acc[t] += coeffs[k] * row[t];
  }
  rat_ = acc[0];
  ext_.assign(acc.begin() + 1, acc.end());
  normalize();
}

void Cyclo::normalize() {
  bool all0 = true;
  for (const auto& c : ext_)
    if (c != 0) {
      all0 = false;
      break;
    }
  if (all0) ext_.clear();
}

Cyclo Cyclo::zeta_pow(long k) {
  const auto& F = CycloField::instance();
  long n = F.order();
  long kk = ((k % n) + n) % n;
  std::vector<Rational> c(kk + 1, Rational(0));
  c[kk] = 1;
  return Cyclo(std::move(c));
}

bool Cyclo::is_zero() const { return ext_.empty() && rat_ == 0; }

std::vector<Rational> Cyclo::coefficients() const {
  const auto& F = CycloField::instance();
  std::vector<Rational> c(F.degree(), Rational(0));
  c[0] = rat_;
  for (size_t i = 0; i < ext_.size(); ++i) c[i + 1] = ext_[i];
  return c;
}

Cyclo Cyclo::operator-() const {
  Cyclo r(*this);
  r.rat_ = -r.rat_;
  for (auto& c : r.ext_) c = -c;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  rat_ += o.rat_;
  if (!o.ext_.empty()) {
    if (ext_.empty()) {
      ext_ = o.ext_;
    } else {
      for (size_t i = 0; i < ext_.size(); ++i) ext_[i] += o.ext_[i];
    }
    normalize();
  }
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  rat_ -= o.rat_;
  if (!o.ext_.empty()) {
    if (ext_.empty()) {
      ext_.resize(o.ext_.size(), Rational(0));
    }
    for (size_t i = 0; i < ext_.size(); ++i) ext_[i] -= o.ext_[i];
    normalize();
  }
  return *this;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  if (ext_.empty() && o.ext_.empty()) {  // rational fast path
    rat_ *= o.rat_;
    return *this;
  }
  if (o.ext_.empty()) {  // scale by rational
    if (o.rat_ == 0) {
      rat_ = 0;
      ext_.clear();
      return *this;
    }
    rat_ *= o.rat_;
    for (auto& c : ext_) c *= o.rat_;
    return *this;
  }
  if (ext_.empty()) {
    if (rat_ == 0) return *this;
    Rational s = rat_;
    rat_ = s * o.rat_;
    ext_ = o.ext_;
    for (auto& c : ext_) c *= s;
    return *this;
  }
  const auto& F = CycloField::instance();
  unsigned phi = F.degree();
  std::vector<Rational> a = coefficients();
  std::vector<Rational> b = o.coefficients();
  std::vector<Rational> conv(2 * phi - 1, Rational(0));
  for (unsigned i = 0; i < phi; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < phi; ++j) {
      if (b[j] == 0) continue;
      conv[i + j] += a[i] * b[j];
    }
  }
  std::vector<Rational> acc(phi, Rational(0));
  for (unsigned k = 0; k < conv.size(); ++k) {
    if (conv[k] == 0) continue;
    const auto& row = F.power(k);
    for (unsigned t = 0; t < phi; ++t) acc[t] += conv[k] * row[t];
  }
  rat_ = acc[0];
  ext_.assign(acc.begin() + 1, acc.end());
  normalize();
  return *this;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw std::domain_error("Cyclo: division by zero");
  if (ext_.empty()) return Cyclo(Rational(1) / rat_);
  const auto& F = CycloField::instance();
  // extended Euclid in Q[z]: u*this + v*Phi = gcd = const
  Poly a = coefficients();
  poly_trim(a);
  Poly b(F.degree() + 1, Rational(0));
  {
    // rebuild Phi_N
    Poly phi_poly;
    // Phi stored in field: reconstruct from powers: z^phi = -Phi_lower...
    // simpler: recompute from the reduction row of z^phi:
    // z^phi - power(phi) = 0 => Phi = z^phi - power(phi) (monic)
    const auto& row = F.power(F.degree());
    for (unsigned t = 0; t < F.degree(); ++t) b[t] = -row[t];
    b[F.degree()] = 1;
  }
  // maintain r0 = a, r1 = b with u-coefficients only
  Poly r0 = a, r1 = b;
  Poly u0 = {Rational(1)}, u1 = {};
  while (!r1.empty()) {
    // q = r0 / r1
    Poly q(r0.size() > r1.size() - 1 ? r0.size() - r1.size() + 1 : 0,
           Rational(0));
    Poly rem = r0;
    while (rem.size() >= r1.size() && !rem.empty()) {
      Rational c = rem.back() / r1.back();
      size_t shift = rem.size() - r1.size();
      q[shift] += c;
      for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
      poly_trim(rem);
    }
    Poly qu1 = poly_mul(q, u1);
    Poly nu(std::max(u0.size(), qu1.size()), Rational(0));
    for (size_t i = 0; i < u0.size(); ++i) nu[i] += u0[i];
    for (size_t i = 0; i < qu1.size(); ++i) nu[i] -= qu1[i];
    poly_trim(nu);
    u0 = std::move(u1);
    u1 = std::move(nu);
    r0 = std::move(r1);
    r1 = std::move(rem);
  }
  // r0 = gcd (degree 0 since Phi irreducible and a nonzero of lower degree)
  if (r0.size() != 1) throw std::logic_error("Cyclo::inverse: gcd not const");
  Rational g = r0[0];
  std::vector<Rational> res(F.degree(), Rational(0));
  for (size_t i = 0; i < u0.size() && i < res.size(); ++i) res[i] = u0[i] / g;
  return Cyclo(std::move(res));
}

Cyclo& Cyclo::operator/=(const Cyclo& o) {
  if (o.ext_.empty()) {
    if (o.rat_ == 0) throw std::domain_error("Cyclo: division by zero");
    rat_ /= o.rat_;
    for (auto& c : ext_) c /= o.rat_;
    return *this;
  }
  return *this *= o.inverse();
}

bool operator==(const Cyclo& a, const Cyclo& b) {
  if (a.rat_ != b.rat_) return false;
  if (a.ext_.size() != b.ext_.size()) {
    // one rational, one not -> unequal (normalized reps)
    return false;
  }
  return a.ext_ == b.ext_;
}

std::complex<double> Cyclo::to_complex() const {
  const auto& F = CycloField::instance();
  std::complex<double> r(rat_.get_d(), 0.0);
  for (size_t i = 0; i < ext_.size(); ++i) {
    if (ext_[i] == 0) continue;
    r += ext_[i].get_d() * F.root(unsigned(i + 1));
  }
  return r;
}

int Cyclo::compare(const Cyclo& a, const Cyclo& b) {
  auto ca = a.coefficients(), cb = b.coefficients();
  for (size_t i = 0; i < ca.size(); ++i) {
    int c = cmp(ca[i], cb[i]);
    if (c != 0) return c;
  }
  return 0;
}

double Cyclo::height() const {
  double h = 0;
  auto upd = [&h](const Rational& q) {
    h = std::max(h, std::abs(q.get_num().get_d()));
    h = std::max(h, std::abs(q.get_den().get_d()));
  };
  upd(rat_);
  for (const auto& c : ext_) upd(c);
  return h;
}

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q.get_num();
  if (q.get_den() != 1) os << "/" << q.get_den();
  return os.str();
}

std::string Cyclo::str() const {
  if (ext_.empty()) return rational_str(rat_);
  std::ostringstream os;
  bool first = true;
  auto c = coefficients();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Rational v = c[i];
    if (first) {
      if (v < 0) {
        os << "-";
        v = -v;
      }
      first = false;
    } else {
      os << (v < 0 ? "-" : "+");
      if (v < 0) v = -v;
    }
    if (i == 0) {
      os << rational_str(v);
    } else {
      if (v != 1) os << rational_str(v) << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// surd constants available in Q(zeta_N) for suitable N
std::vector<std::pair<std::string, Cyclo>> surd_table() {
  const auto& F = CycloField::instance();
  unsigned n = F.order();
  std::vector<std::pair<std::string, Cyclo>> out;
  out.emplace_back("1", Cyclo(1));
  for (unsigned k = 1; k < n; ++k)
    out.emplace_back("z^" + std::to_string(k), Cyclo::zeta_pow(k));
  if (n % 8 == 0) {
    Cyclo s2 = Cyclo::zeta_pow(n / 8) + Cyclo::zeta_pow(-long(n / 8));
    out.emplace_back("sqrt2", s2);
  }
  if (n % 12 == 0) {
    Cyclo s3 = Cyclo::zeta_pow(n / 12) + Cyclo::zeta_pow(-long(n / 12));
    out.emplace_back("sqrt3", s3);
  }
  if (n % 24 == 0) {
    Cyclo s2 = Cyclo::zeta_pow(n / 8) + Cyclo::zeta_pow(-long(n / 8));
    Cyclo s3 = Cyclo::zeta_pow(n / 12) + Cyclo::zeta_pow(-long(n / 12));
    out.emplace_back("sqrt6", s2 * s3);
  }
  if (n % 4 == 0) {
    Cyclo i = Cyclo::zeta_pow(n / 4);
    if (n % 8 == 0)
      out.emplace_back("isqrt2",
                       i * (Cyclo::zeta_pow(n / 8) + Cyclo::zeta_pow(-long(n / 8))));
    if (n % 12 == 0)
      out.emplace_back("isqrt3",
                       i * (Cyclo::zeta_pow(n / 12) + Cyclo::zeta_pow(-long(n / 12))));
    if (n % 24 == 0) {
      Cyclo s2 = Cyclo::zeta_pow(n / 8) + Cyclo::zeta_pow(-long(n / 8));
      Cyclo s3 = Cyclo::zeta_pow(n / 12) + Cyclo::zeta_pow(-long(n / 12));
      out.emplace_back("isqrt6", i * s2 * s3);
    }
  }
  return out;
}

std::optional<Rational> rational_approx(double x, long max_den, double tol) {
  // continued fractions with bounded denominator
  if (!std::isfinite(x)) return std::nullopt;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 40; ++it) {
    double fl = std::floor(v);
    if (fl > 1e15 || fl < -1e15) break;
    long a = (long)fl;
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = v - double(a);
    if (std::abs(rem) < 1e-14) break;
    v = 1.0 / rem;
  }
  if (q1 == 0) return std::nullopt;
  Rational r(p1, q1);
  r.canonicalize();
  if (std::abs(r.get_d() - x) < tol) return r;
  return std::nullopt;
}

}  // namespace

std::optional<Cyclo> snap_to_field(std::complex<double> x, double tol) {
  static const std::vector<std::pair<std::string, Cyclo>> surds = surd_table();
  struct Best {
    double h;
    Cyclo v;
  };
  std::optional<Best> best;
  auto consider = [&](const Cyclo& v) {
    if (std::abs(v.to_complex() - x) >= tol) return;
    double h = v.height();
    if (!best || h < best->h) best = Best{h, v};
  };
  const long MAXDEN = 24;
  // pairs (sigma, tau): x ~ a*sigma + b*tau with a,b rational
  for (size_t si = 0; si < surds.size(); ++si) {
    const auto s = surds[si].second.to_complex();
    // single term a*sigma
    if (std::abs(s.imag()) < 1e-12) {
      if (std::abs(x.imag()) < tol) {
        if (auto a = rational_approx(x.real() / s.real(), MAXDEN, 1e-6))
          consider(Cyclo(*a) * surds[si].second);
      }
    } else {
      // b from imaginary part with sigma alone: x = b*sigma requires
      // proportionality; solve via 2x2 with tau = 1 below instead.
    }
    for (size_t ti = 0; ti < si; ++ti) {
      const auto t = surds[ti].second.to_complex();
      // solve [Re s, Re t; Im s, Im t][a;b] = [Re x; Im x]
      double det = s.real() * t.imag() - s.imag() * t.real();
      if (std::abs(det) < 1e-9) continue;
      double a = (x.real() * t.imag() - x.imag() * t.real()) / det;
      double b = (s.real() * x.imag() - s.imag() * x.real()) / det;
      auto ra = rational_approx(a, MAXDEN, 1e-6);
      auto rb = rational_approx(b, MAXDEN, 1e-6);
      if (!ra || !rb) continue;
      consider(Cyclo(*ra) * surds[si].second + Cyclo(*rb) * surds[ti].second);
    }
  }
  if (!best) return std::nullopt;
  return best->v;
}

std::ostream& operator<<(std::ostream& os, const Cyclo& v) {
  return os << v.str();
}

std::optional<Cyclo> sqrt_in_field(const Cyclo& s) {
  if (s.is_zero()) return Cyclo(0);
  if (s.is_rational()) {
    // exact route: s = sign * (a/b); sqrt(a/b) = sqrt(a*b)/b
    Rational v = s.rational_part();
    bool neg = v < 0;
    if (neg) v = -v;
    mpz_class ab = v.get_num() * v.get_den();
    // split square part
    mpz_class sq = 1, rem = 1;
    mpz_class m = ab;
    for (mpz_class p = 2; p * p <= m; ++p) {
      while (m % (p * p) == 0) {
        sq *= p;
        m /= p * p;
      }
      if (m % p == 0) {
        rem *= p;
        m /= p;
      }
    }
    rem *= m;
    // rem is squarefree; representable iff rem in {1,2,3,6} (given field
    // contains those surds) and, for negative s, i is in the field
    const auto& F = CycloField::instance();
    unsigned n = F.order();
    Cyclo surd;
    if (rem == 1)
      surd = Cyclo(1);
    else if (rem == 2 && n % 8 == 0)
      surd = Cyclo::zeta_pow(n / 8) + Cyclo::zeta_pow(-long(n / 8));
    else if (rem == 3 && n % 12 == 0)
      surd = Cyclo::zeta_pow(n / 12) + Cyclo::zeta_pow(-long(n / 12));
    else if (rem == 6 && n % 24 == 0)
      surd = (Cyclo::zeta_pow(n / 8) + Cyclo::zeta_pow(-long(n / 8))) *
             (Cyclo::zeta_pow(n / 12) + Cyclo::zeta_pow(-long(n / 12)));
    else {
      // fall through to numeric snap below
      surd = Cyclo(0);
    }
    if (!surd.is_zero()) {
      Cyclo y = Cyclo(Rational(sq, v.get_den())) * surd;
      if (neg) {
        if (n % 4 != 0) return std::nullopt;
        y = y * Cyclo::zeta_pow(n / 4);
      }
      if (y * y == s) return y;
    }
  }
  // numeric: principal sqrt, snap, verify exactly
  std::complex<double> w = std::sqrt(s.to_complex());
  for (auto cand : {w, -w}) {
    if (auto y = snap_to_field(cand)) {
      if ((*y) * (*y) == s) return y;
    }
  }
  return std::nullopt;
}

}  // namespace strata
