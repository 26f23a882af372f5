#pragma once

// Sturm sequences, square-free decomposition and exact real-root isolation
// for polynomials with rational coefficients.

#include "egteq/polynomial.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace egteq {

/// Canonical chain p, p', -rem(...), ... ; every member is rescaled by a
/// positive constant so its leading coefficient is +-1, which keeps the
/// rationals small without touching any sign.
class SturmChain {
 public:
  explicit SturmChain(const RationalPoly& p) {
    if (p.is_zero()) throw std::domain_error("Sturm chain of the zero polynomial");
    chain_.push_back(unit_scaled(p));
    RationalPoly next = unit_scaled(p.derivative());
    while (!next.is_zero()) {
      chain_.push_back(std::move(next));
      const auto& n = chain_.size();
      next = unit_scaled(-remainder(chain_[n - 2], chain_[n - 1]));
    }
  }

  std::size_t size() const { return chain_.size(); }
  const RationalPoly& operator[](std::size_t i) const { return chain_[i]; }

  /// Sign variations of the chain evaluated at x (zeros dropped).
  int variations_at(const Rational& x) const {
    SignSeq s;
    s.reserve(chain_.size());
    for (const auto& q : chain_) s.push_back(sign_of(q(x)));
    return sign_changes(s);
  }

  int variations_at_zero() const {
    SignSeq s;
    for (const auto& q : chain_) s.push_back(sign_of(q.coeff(0)));
    return sign_changes(s);
  }

  /// Sign at +infinity is the sign of the leading coefficient.
  int variations_at_pos_inf() const {
    SignSeq s;
    for (const auto& q : chain_) s.push_back(sign_of(q.leading()));
    return sign_changes(s);
  }

  int variations_at_neg_inf() const {
    SignSeq s;
    for (const auto& q : chain_) {
      int sg = sign(q.leading());
      if (q.degree() % 2 == 1) sg = -sg;
      s.push_back(static_cast<Sign>(sg));
    }
    return sign_changes(s);
  }

 private:
  static RationalPoly unit_scaled(const RationalPoly& p) {
    if (p.is_zero()) return p;
    Rational s = abs(p.leading());
    Rational inv = 1 / s;
    return p * inv;
  }

  std::vector<RationalPoly> chain_;
};

/// p / gcd(p, p')
inline RationalPoly square_free_part(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("square-free part of the zero polynomial");
  if (p.degree() <= 1) return p;
  RationalPoly g = gcd(p, p.derivative());
  if (g.degree() == 0) return p;
  return exact_div(p, g);
}

struct SquareFreeFactor {
  RationalPoly factor;
  int multiplicity;
};

/// Yun's algorithm: p = lc * prod f_i^i with f_i square-free and pairwise
/// coprime. Constant factors are omitted.
inline std::vector<SquareFreeFactor> square_free_decomposition(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("square-free decomposition of the zero polynomial");
  std::vector<SquareFreeFactor> out;
  if (p.degree() == 0) return out;
  RationalPoly f = monic(p);
  RationalPoly df = f.derivative();
  RationalPoly a = gcd(f, df);
  RationalPoly b = exact_div(f, a);
  RationalPoly c = exact_div(df, a);
  RationalPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RationalPoly g = gcd(b, d);
    if (g.degree() > 0) out.push_back({g, i});
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

/// Distinct real roots in (0, +inf), computed on the square-free part.
inline int sturm_count_positive(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("cannot count roots of the zero polynomial");
  // The chain of p ends in gcd(p, p'); a constant tail means p is already
  // square-free and the chain can be used as is.
  SturmChain chain(p);
  if (chain[chain.size() - 1].degree() > 0) chain = SturmChain(square_free_part(p));
  // For square-free p the variation count at a root equals the count just
  // to its right, so a root at t = 0 is excluded automatically.
  return chain.variations_at_zero() - chain.variations_at_pos_inf();
}

/// Positive roots counted with multiplicity (Sturm on each Yun factor).
inline int sturm_count_positive_with_multiplicity(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("cannot count roots of the zero polynomial");
  int total = 0;
  for (const auto& [f, mult] : square_free_decomposition(p)) {
    SturmChain chain(f);
    total += mult * (chain.variations_at_zero() - chain.variations_at_pos_inf());
  }
  return total;
}

/// Distinct real roots of p in the open interval (lo, hi). Endpoint roots
/// are divided out exactly before counting.
inline int sturm_count_interval(const RationalPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw std::domain_error("cannot count roots of the zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("sturm_count_interval requires lo < hi");
  RationalPoly sf = square_free_part(p);
  if (sign(sf(lo)) == 0) sf = exact_div(sf, RationalPoly::linear_factor(lo));
  if (sign(sf(hi)) == 0) sf = exact_div(sf, RationalPoly::linear_factor(hi));
  if (sf.degree() <= 0) return 0;
  SturmChain chain(sf);
  return chain.variations_at(lo) - chain.variations_at(hi);
}

/// A real root known to lie in [lo, hi]; lo == hi when it is exact.
struct RootBracket {
  Rational lo;
  Rational hi;

  bool exact() const { return lo == hi; }
  double approx() const {
    Rational mid = (lo + hi) / 2;
    return mid.get_d();
  }
};

/// The rational with the smallest denominator in [lo, hi].
inline Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) return simplest_rational_between(hi, lo);
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_rational_between(-hi, -lo);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (fl == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  Rational frac = simplest_rational_between(1 / (hi - fl), 1 / (lo - fl));
  Rational r = Rational(fl) + 1 / frac;
  r.canonicalize();
  return r;
}

/// Shrinks a bracket holding exactly one root of `p`, with
/// sign(p(lo)) == -sign(p(hi)) != 0, to width <= `width`.
inline RootBracket refine_bracket(const RationalPoly& p, Rational lo, Rational hi, const Rational& width) {
  int s_lo = sign(p(lo));
  // Float guess first; the exact sign test certifies it.
  if (hi - lo > width) {
    DoublePoly pd = approximate(p);
    double a = lo.get_d(), b = hi.get_d();
    double fa = pd(a);
    double x = 0.5 * (a + b);
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
      x = 0.5 * (a + b);
      double fx = pd(x);
      if (fx == 0.0) break;
      if ((fx < 0) == (fa < 0)) {
        a = x;
        fa = fx;
      } else {
        b = x;
      }
      if (b - a < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    double half = 0.25 * width.get_d();
    Rational clo = exact_from_double(x - half);
    Rational chi = exact_from_double(x + half);
    if (clo > lo && chi < hi && clo < chi) {
      int sc_lo = sign(p(clo));
      int sc_hi = sign(p(chi));
      if (sc_lo == 0) return {clo, clo};
      if (sc_hi == 0) return {chi, chi};
      if (sc_lo == s_lo && sc_hi == -s_lo) {
        lo = clo;
        hi = chi;
      }
    }
  }
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int s = sign(p(mid));
    if (s == 0) return {mid, mid};
    if (s == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Rational roots with a modest denominator are reported exactly.
  if (Rational r = simplest_rational_between(lo, hi); sign(p(r)) == 0) return {r, r};
  return {lo, hi};
}

namespace detail {

inline void isolate_rec(const RationalPoly& p, const SturmChain& chain, const Rational& lo, const Rational& hi,
                        int v_lo, int v_hi, bool hi_is_root, const Rational& width, std::vector<RootBracket>& out) {
  int count = v_lo - v_hi - (hi_is_root ? 1 : 0);
  if (count <= 0) return;
  if (count == 1 && sign(p(lo)) != 0 && !hi_is_root) {
    out.push_back(refine_bracket(p, lo, hi, width));
    return;
  }
  Rational mid = (lo + hi) / 2;
  bool mid_root = sign(p(mid)) == 0;
  int v_mid = chain.variations_at(mid);
  isolate_rec(p, chain, lo, mid, v_lo, v_mid, mid_root, width, out);
  if (mid_root) out.push_back({mid, mid});
  isolate_rec(p, chain, mid, hi, v_mid, v_hi, hi_is_root, width, out);
}

}  // namespace detail

/// Brackets every distinct root of p in the open interval (lo, hi), sorted,
/// each of width <= `width` (exact when a bisection point hits the root).
inline std::vector<RootBracket> isolate_roots(const RationalPoly& p, const Rational& lo, const Rational& hi,
                                              const Rational& width) {
  if (p.is_zero()) throw std::domain_error("cannot isolate roots of the zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("isolate_roots requires lo < hi");
  std::vector<RootBracket> out;
  RationalPoly sf = square_free_part(p);
  if (sf.degree() <= 0) return out;
  SturmChain chain(sf);
  detail::isolate_rec(sf, chain, lo, hi, chain.variations_at(lo), chain.variations_at(hi), sign(sf(hi)) == 0, width,
                      out);
  return out;
}

/// Default isolation width 2^-40.
inline Rational default_root_width() {
  Rational w(1);
  mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), 40);
  return w;
}

}  // namespace egteq
