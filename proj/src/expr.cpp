#include "strata/expr.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace strata {

Cyclo Poly::constant_value() const {
  if (terms_.empty()) return Cyclo(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty())
    return terms_.begin()->second;
  throw ParseError("expression is not constant");
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned t = 0;
    for (const auto& [s, e] : m) t += e;
    d = std::max(d, t);
  }
  return d;
}

void Poly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) terms_[m] += c;
  prune();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) terms_[m] -= c;
  prune();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Poly::Monomial m = ma;
      for (const auto& [s, e] : mb) m[s] += e;
      r.terms_[m] += ca * cb;
    }
  }
  r.prune();
  return r;
}

Cyclo Poly::evaluate(const std::map<std::string, Cyclo>& values) const {
  Cyclo r(0);
  for (const auto& [m, c] : terms_) {
    Cyclo t = c;
    for (const auto& [s, e] : m) {
      auto it = values.find(s);
      if (it == values.end()) throw ParseError("unresolved symbol: " + s);
      for (unsigned k = 0; k < e; ++k) t *= it->second;
    }
    r += t;
  }
  return r;
}

Poly Poly::substitute(const std::map<std::string, Cyclo>& values) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Cyclo coeff = c;
    Monomial rest;
    for (const auto& [s, e] : m) {
      auto it = values.find(s);
      if (it == values.end()) {
        rest[s] = e;
      } else {
        for (unsigned k = 0; k < e; ++k) coeff *= it->second;
      }
    }
    Poly t;
    if (!coeff.is_zero()) t.terms_[rest] = coeff;
    r += t;
  }
  return r;
}

std::vector<std::string> Poly::symbols() const {
  std::set<std::string> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [n, e] : m) s.insert(n);
  return {s.begin(), s.end()};
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.str();
    if (!first) os << " + ";
    first = false;
    os << "(" << cs << ")";
    for (const auto& [s, e] : m) {
      os << "*" << s;
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& allowed)
      : s_(text), allowed_(allowed.begin(), allowed.end()) {}

  Poly parse() {
    skip();
    if (eof()) return Poly(Cyclo(0));  // empty expression = 0
    Poly p = expr();
    skip();
    if (!eof()) fail("trailing input");
    return p;
  }

 private:
  Poly expr() {
    Poly p = term();
    for (;;) {
      skip();
      if (peek() == '+') {
        ++pos_;
        p += term();
      } else if (peek() == '-') {
        ++pos_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  Poly term() {
    Poly p = factor();
    for (;;) {
      skip();
      if (peek() == '*') {
        ++pos_;
        p *= factor();
      } else if (peek() == '/') {
        ++pos_;
        Poly d = factor();
        if (!d.is_constant()) fail("division by non-constant");
        Cyclo dv = d.constant_value();
        if (dv.is_zero()) fail("division by zero");
        p *= Poly(dv.inverse());
      } else {
        return p;
      }
    }
  }

  Poly factor() {
    skip();
    bool neg = false;
    while (peek() == '-' || peek() == '+') {
      if (peek() == '-') neg = !neg;
      ++pos_;
      skip();
    }
    Poly b = base();
    skip();
    if (peek() == '^') {
      ++pos_;
      skip();
      bool eneg = false;
      if (peek() == '-') {
        eneg = true;
        ++pos_;
      }
      long e = integer();
      if (eneg) {
        if (!b.is_constant()) fail("negative power of non-constant");
        Cyclo v = b.constant_value();
        if (v.is_zero()) fail("negative power of zero");
        b = Poly(v.inverse());
        // fallthrough: raise to +e
      }
      Poly r(Cyclo(1));
      for (long k = 0; k < e; ++k) r *= b;
      b = r;
    }
    return neg ? -b : b;
  }

  Poly base() {
    skip();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      skip();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long v = integer();
      return Poly(Cyclo(Rational(v)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = ident();
      if (name == "z") return Poly(Cyclo::zeta_pow(1));
      if (allowed_.count(name)) return Poly::symbol(name);
      fail("unknown symbol: " + name);
    }
    fail("unexpected character");
    return Poly();  // unreachable
  }

  std::string ident() {
    size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                      s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  long integer() {
    skip();
    size_t start = pos_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(s_.substr(start, pos_ - start));
  }

  char peek() const { return eof() ? '\0' : s_[pos_]; }
  bool eof() const { return pos_ >= s_.size(); }
  void skip() {
    while (!eof() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("parse error at offset " + std::to_string(pos_) + ": " +
                     msg + " in \"" + s_ + "\"");
  }

  const std::string& s_;
  std::set<std::string> allowed_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_expr(const std::string& text, const std::vector<std::string>& allowed) {
  return Parser(text, allowed).parse();
}

Cyclo cyclo_eval(const std::string& text) {
  return parse_expr(text).constant_value();
}

}  // namespace strata
