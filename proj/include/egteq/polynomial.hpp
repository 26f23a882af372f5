#pragma once

// Dense univariate polynomials, lowest-degree coefficient first.
//
// Polynomial<Rational> is the exact path (error-free add, multiply,
// derivative and division); Polynomial<double> is the float path used by
// samplers and evaluation-heavy oracles.

#include "egteq/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace egteq {

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

using SignSeq = std::vector<Sign>;

template <class T>
Sign sign_of(const T& v) {
  return static_cast<Sign>(sign(v));
}

/// Number of sign alternations in `seq` once zeros are deleted.
inline int sign_changes(std::span<const Sign> seq) {
  int changes = 0;
  Sign last = Sign::zero;
  for (Sign s : seq) {
    if (s == Sign::zero) continue;
    if (last != Sign::zero && s != last) ++changes;
    last = s;
  }
  return changes;
}

template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;

  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { normalize(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }

  static Polynomial monomial(const T& c, std::size_t k) {
    std::vector<T> v(k + 1, T(0));
    v[k] = c;
    return Polynomial(std::move(v));
  }

  /// x - root
  static Polynomial linear_factor(const T& root) { return Polynomial({T(-root), T(1)}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  std::span<const T> coeffs() const { return coeffs_; }

  /// Coefficient of x^k; zero past the degree.
  T coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : T(0); }

  const T& leading() const {
    if (is_zero()) throw std::domain_error("zero polynomial has no leading coefficient");
    return coeffs_.back();
  }

  template <class U>
    requires std::is_constructible_v<U, int>
  U operator()(const U& x) const {
    U acc = U(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * x + U(*it);
    }
    return acc;
  }

  T operator()(const T& x) const { return this->template operator()<T>(x); }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * T(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  SignSeq signs() const {
    SignSeq s;
    s.reserve(coeffs_.size());
    for (const T& c : coeffs_) s.push_back(sign_of(c));
    return s;
  }

  /// Largest j with x^j dividing p (0 for the zero polynomial).
  std::size_t trailing_zeros() const {
    std::size_t j = 0;
    while (j < coeffs_.size() && sign(coeffs_[j]) == 0) ++j;
    return j == coeffs_.size() ? 0 : j;
  }

  /// p / x^j
  Polynomial shift_down(std::size_t j) const {
    if (j >= coeffs_.size()) return {};
    return Polynomial(std::vector<T>(coeffs_.begin() + static_cast<std::ptrdiff_t>(j), coeffs_.end()));
  }

  Polynomial operator-() const {
    std::vector<T> v(coeffs_);
    for (T& c : v) c = -c;
    return Polynomial(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    normalize();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), T(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    normalize();
    return *this;
  }

  Polynomial& operator*=(const T& s) {
    for (T& c : coeffs_) c *= s;
    normalize();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (sign(a.coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Converts coefficients with `f` (e.g. exact -> double).
  template <class U, class F>
  Polynomial<U> map(F&& f) const {
    std::vector<U> v;
    v.reserve(coeffs_.size());
    for (const T& c : coeffs_) v.push_back(f(c));
    return Polynomial<U>(std::move(v));
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t k = 0; k < p.coeffs_.size(); ++k) {
      if (sign(p.coeffs_[k]) == 0) continue;
      if (!first) os << " + ";
      os << "(" << p.coeffs_[k] << ")";
      if (k > 0) os << "*t^" << k;
      first = false;
    }
    return os;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && sign(coeffs_.back()) == 0) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RationalPoly = Polynomial<Rational>;
using DoublePoly = Polynomial<double>;

/// Quotient and remainder over a field.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& num, const Polynomial<T>& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<T> r(num.coeffs().begin(), num.coeffs().end());
  const int dd = den.degree();
  const int nd = num.degree();
  if (nd < dd) return {Polynomial<T>{}, num};
  std::vector<T> q(static_cast<std::size_t>(nd - dd + 1), T(0));
  const T& lead = den.leading();
  for (int k = nd; k >= dd; --k) {
    T factor = r[static_cast<std::size_t>(k)] / lead;
    q[static_cast<std::size_t>(k - dd)] = factor;
    if (sign(factor) == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      r[static_cast<std::size_t>(k - dd + j)] -= factor * den.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  r.resize(static_cast<std::size_t>(dd));
  return {Polynomial<T>(std::move(q)), Polynomial<T>(std::move(r))};
}

template <class T>
Polynomial<T> remainder(const Polynomial<T>& num, const Polynomial<T>& den) {
  return divmod(num, den).second;
}

/// Division known to be exact; throws if a remainder is left.
template <class T>
Polynomial<T> exact_div(const Polynomial<T>& num, const Polynomial<T>& den) {
  auto [q, r] = divmod(num, den);
  if (!r.is_zero()) throw std::logic_error("polynomial division is not exact");
  return q;
}

/// Scales p so its leading coefficient is +1.
template <class T>
Polynomial<T> monic(const Polynomial<T>& p) {
  if (p.is_zero()) return p;
  T inv = T(1) / p.leading();
  return p * inv;
}

/// Monic greatest common divisor (zero if both inputs are zero).
template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    Polynomial<T> r = remainder(a, b);
    a = std::move(b);
    b = monic(r);
  }
  return monic(a);
}

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, computed without division.
template <class T>
Polynomial<T> pseudo_remainder(const Polynomial<T>& a, const Polynomial<T>& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<T> r(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  const T& lb = b.leading();
  // One multiplication by lc(b) per elimination step.
  for (int k = a.degree(); k >= db; --k) {
    T lead = r[static_cast<std::size_t>(k)];
    for (auto& c : r) c *= lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= lead * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return Polynomial<T>(std::move(r));
}

/// (t + 1)^n * p by n-fold convolution with (1, 1).
template <class T>
Polynomial<T> times_one_plus_t_pow(const Polynomial<T>& p, std::size_t n) {
  std::vector<T> v(p.coeffs().begin(), p.coeffs().end());
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(T(0));
    for (std::size_t k = v.size() - 1; k > 0; --k) v[k] += v[k - 1];
  }
  return Polynomial<T>(std::move(v));
}

/// (1 - x)^m * p(x / (1 - x)) expanded in x; maps a polynomial in t = x/(1-x)
/// of degree <= m back to the x variable.
template <class T>
Polynomial<T> homogenize_to_x(const Polynomial<T>& p, std::size_t m) {
  if (p.degree() > static_cast<int>(m)) throw std::invalid_argument("homogenization degree too small");
  Polynomial<T> result;
  const Polynomial<T> x = Polynomial<T>::monomial(T(1), 1);
  const Polynomial<T> one_minus_x({T(1), T(-1)});
  std::vector<Polynomial<T>> xs{Polynomial<T>::constant(T(1))};
  std::vector<Polynomial<T>> ys{Polynomial<T>::constant(T(1))};
  for (std::size_t k = 1; k <= m; ++k) {
    xs.push_back(xs.back() * x);
    ys.push_back(ys.back() * one_minus_x);
  }
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    if (sign(p.coeffs()[k]) == 0) continue;
    result += (xs[k] * ys[m - k]) * p.coeffs()[k];
  }
  return result;
}

/// Exact rational polynomial from a float one (binary-fraction embedding).
inline RationalPoly exactify(const DoublePoly& p) {
  return p.map<Rational>([](double c) { return exact_from_double(c); });
}

inline DoublePoly approximate(const RationalPoly& p) {
  return p.map<double>([](const Rational& c) { return c.get_d(); });
}

}  // namespace egteq
