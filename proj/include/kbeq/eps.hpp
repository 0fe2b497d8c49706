// Copyright 2026 The kbeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The ordered field Q(eps) of rational functions in a positive infinitesimal.
//
// An element is num(eps)/den(eps). Its sign is the sign of the limit behaviour
// as eps -> 0+, i.e. the sign of the lowest-degree nonzero coefficient of num
// once den has been normalized so that its lowest-degree coefficient is
// positive. Under this order 0 < eps < r for every positive rational r.

#ifndef KBEQ_EPS_HPP
#define KBEQ_EPS_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kbeq/rational.hpp"

namespace kbeq {

/// Polynomial in eps with rational coefficients; `coeff(k)` multiplies eps^k.
class EpsPoly {
 public:
  EpsPoly() = default;
  EpsPoly(Rational c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  explicit EpsPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static EpsPoly monomial(Rational c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = std::move(c);
    return EpsPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  /// Degree of the highest nonzero term. Zero polynomial: 0.
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(); }
  const Rational& leading() const { return c_.back(); }

  /// Degree of the lowest nonzero term. Undefined for the zero polynomial.
  std::size_t valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (!c_[k].is_zero()) return k;
    return 0;
  }
  const Rational& lowest() const { return c_[valuation()]; }

  EpsPoly operator-() const {
    EpsPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend EpsPoly operator+(const EpsPoly& a, const EpsPoly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
    return EpsPoly(std::move(v));
  }
  friend EpsPoly operator-(const EpsPoly& a, const EpsPoly& b) { return a + (-b); }
  friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return EpsPoly(std::move(v));
  }
  EpsPoly scaled(const Rational& s) const {
    if (s.is_zero()) return {};
    EpsPoly r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
  }

  /// Euclidean division: returns (quotient, remainder) with deg(rem) < deg(d).
  static std::pair<EpsPoly, EpsPoly> divmod(const EpsPoly& n, const EpsPoly& d) {
    if (d.is_zero()) throw DivisionByZero();
    if (n.is_zero() || n.degree() < d.degree()) return {EpsPoly(), n};
    std::vector<Rational> rem = n.c_;
    std::vector<Rational> quot(n.degree() - d.degree() + 1);
    const Rational& lead = d.leading();
    for (std::size_t k = quot.size(); k-- > 0;) {
      const Rational& top = rem[k + d.degree()];
      if (top.is_zero()) continue;
      Rational q = top / lead;
      for (std::size_t j = 0; j <= d.degree(); ++j) rem[k + j] -= q * d.c_[j];
      quot[k] = std::move(q);
    }
    return {EpsPoly(std::move(quot)), EpsPoly(std::move(rem))};
  }

  /// Monic greatest common divisor; gcd(0, 0) = 0.
  static EpsPoly gcd(EpsPoly a, EpsPoly b) {
    while (!b.is_zero()) {
      EpsPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(a.leading().inverse());
  }

  friend bool operator==(const EpsPoly&, const EpsPoly&) = default;

  /// Human-readable form accepted back by the literal parser, e.g.
  /// `1 - 2*eps + eps^2`.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      const Rational& c = c_[k];
      if (c.is_zero()) continue;
      Rational mag = c.abs();
      if (first) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? " - " : " + ";
      }
      first = false;
      if (k == 0) {
        out += mag.to_string();
        continue;
      }
      if (mag != Rational(1)) out += mag.to_string() + "*";
      out += "eps";
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Element of the ordered field of rational functions in eps.
class EpsNum {
 public:
  EpsNum() : den_(Rational(1)) {}
  EpsNum(Rational r) : num_(std::move(r)), den_(Rational(1)) {}  // NOLINT
  EpsNum(int n) : EpsNum(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  EpsNum(EpsPoly num, EpsPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero();
    normalize();
  }

  /// The positive infinitesimal itself.
  static EpsNum eps() { return EpsNum(EpsPoly::monomial(Rational(1), 1), Rational(1)); }
  static EpsNum eps_pow(std::size_t k) {
    return EpsNum(EpsPoly::monomial(Rational(1), k), Rational(1));
  }

  const EpsPoly& num() const { return num_; }
  const EpsPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  /// True when the value has no eps-dependence at all.
  bool is_standard() const { return num_.is_constant() && den_.is_constant(); }
  /// The value as a Rational; only valid when is_standard().
  Rational to_rational() const { return num_.coeff(0) / den_.coeff(0); }

  /// -1, 0 or +1 under the field order.
  int sign() const { return num_.is_zero() ? 0 : num_.lowest().sign(); }

  /// Finite means bounded by some standard real, i.e. no pole at eps = 0.
  bool is_finite() const { return num_.is_zero() || num_.valuation() >= den_.valuation(); }
  bool is_infinitesimal() const { return num_.is_zero() || num_.valuation() > den_.valuation(); }

  EpsNum operator-() const {
    EpsNum r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend EpsNum operator+(const EpsNum& a, const EpsNum& b) {
    if (a.den_ == b.den_) return EpsNum(a.num_ + b.num_, a.den_);
    return EpsNum(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend EpsNum operator-(const EpsNum& a, const EpsNum& b) { return a + (-b); }
  friend EpsNum operator*(const EpsNum& a, const EpsNum& b) {
    return EpsNum(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend EpsNum operator/(const EpsNum& a, const EpsNum& b) {
    if (b.is_zero()) throw DivisionByZero();
    return EpsNum(a.num_ * b.den_, a.den_ * b.num_);
  }
  EpsNum& operator+=(const EpsNum& o) { return *this = *this + o; }
  EpsNum& operator-=(const EpsNum& o) { return *this = *this - o; }
  EpsNum& operator*=(const EpsNum& o) { return *this = *this * o; }
  EpsNum& operator/=(const EpsNum& o) { return *this = *this / o; }

  /// Equality by cross-multiplication of the normalized forms.
  friend bool operator==(const EpsNum& a, const EpsNum& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend std::strong_ordering operator<=>(const EpsNum& a, const EpsNum& b) {
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const {
    if (den_ == EpsPoly(Rational(1))) return num_.to_string();
    auto wrap = [](const EpsPoly& p) {
      std::string s = p.to_string();
      bool atomic = p.coeffs().size() <= 1 && s.find_first_of("/ ") == std::string::npos &&
                    s.front() != '-';
      return atomic ? s : "(" + s + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
  }

  friend std::ostream& operator<<(std::ostream& os, const EpsNum& e) {
    return os << e.to_string();
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = EpsPoly(Rational(1));
      return;
    }
    if (!den_.is_constant()) {
      EpsPoly g = EpsPoly::gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = EpsPoly::divmod(num_, g).first;
        den_ = EpsPoly::divmod(den_, g).first;
      }
    }
    Rational scale = den_.lowest().inverse();
    if (scale != Rational(1)) {
      num_ = num_.scaled(scale);
      den_ = den_.scaled(scale);
    }
  }

  EpsPoly num_;
  EpsPoly den_;
};

/// Thrown when the standard part of an infinite value is requested.
class NoStandardPart : public Error {
 public:
  NoStandardPart() : Error("no standard part: value is infinite") {}
};

/// The standard real infinitely close to a finite value.
inline Rational standard_part(const EpsNum& a) {
  if (!a.is_finite()) throw NoStandardPart();
  if (a.is_infinitesimal()) return Rational();
  std::size_t v = a.den().valuation();
  return a.num().coeff(v) / a.den().coeff(v);
}

inline Rational standard_part(const Rational& a) { return a; }

}  // namespace kbeq

#endif  // KBEQ_EPS_HPP
