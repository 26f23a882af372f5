#pragma once

// Descartes-type bounds on positive roots: the plain sign-change count,
// the sequence s_n = S((t+1)^n p) that decreases to the exact count, and the
// a-priori exponent n0 that certifies the absence of positive roots.

#include "egteq/polynomial.hpp"
#include "egteq/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace egteq {

/// S(p): sign changes of the coefficient sequence; an upper bound on the
/// positive roots counted with multiplicity, of the same parity.
template <class T>
int descartes_bound(const Polynomial<T>& p) {
  if (p.is_zero()) throw std::domain_error("Descartes bound of the zero polynomial");
  SignSeq s = p.signs();
  return sign_changes(s);
}

namespace detail {

/// Integer coefficients with the same signs as p up to a positive scale.
inline std::vector<Integer> clear_denominators(const RationalPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    Integer v = c.get_num() * (l / c.get_den());
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// s_n = S((t+1)^n p).
///
/// The k-th coefficient sum_i c_i C(n, k-i) is multiplied by the positive
/// weight k! (n-k+m)! / n!, which turns every binomial into the short
/// integer product k^(i falling) * prod_{j=i+1..m} (n-k+j). Signs are
/// unchanged and no big binomials are formed.
inline int shifted_sign_count(const RationalPoly& p, std::uint64_t n) {
  if (p.is_zero()) throw std::domain_error("shifted sign count of the zero polynomial");
  if (n == 0) return descartes_bound(p);
  const std::vector<Integer> c = detail::clear_denominators(p);
  const long m = p.degree();
  const std::uint64_t top = n + static_cast<std::uint64_t>(m);

  std::vector<Integer> falling(static_cast<std::size_t>(m + 1));
  std::vector<Integer> tail(static_cast<std::size_t>(m + 1));
  Integer acc, term;
  int changes = 0;
  int last = 0;
  for (std::uint64_t k = 0; k <= top; ++k) {
    // falling[i] = k (k-1) ... (k-i+1)
    falling[0] = 1;
    for (long i = 1; i <= m; ++i) {
      long double f = static_cast<long double>(k) - static_cast<long double>(i - 1);
      if (f <= 0) {
        falling[static_cast<std::size_t>(i)] = 0;
      } else {
        mpz_mul_ui(falling[static_cast<std::size_t>(i)].get_mpz_t(), falling[static_cast<std::size_t>(i - 1)].get_mpz_t(),
                   static_cast<unsigned long>(k - static_cast<std::uint64_t>(i - 1)));
      }
    }
    // tail[i] = prod_{j=i+1..m} (n - k + j); n - k + m >= 0 always.
    tail[static_cast<std::size_t>(m)] = 1;
    for (long i = m - 1; i >= 0; --i) {
      long long factor = static_cast<long long>(n) - static_cast<long long>(k) + (i + 1);
      Integer& dst = tail[static_cast<std::size_t>(i)];
      const Integer& src = tail[static_cast<std::size_t>(i + 1)];
      if (factor >= 0) {
        mpz_mul_ui(dst.get_mpz_t(), src.get_mpz_t(), static_cast<unsigned long>(factor));
      } else {
        mpz_mul_ui(dst.get_mpz_t(), src.get_mpz_t(), static_cast<unsigned long>(-factor));
        mpz_neg(dst.get_mpz_t(), dst.get_mpz_t());
      }
    }
    acc = 0;
    for (long i = 0; i <= m; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (sgn(c[ui]) == 0 || sgn(falling[ui]) == 0 || sgn(tail[ui]) == 0) continue;
      // A negative tail only occurs when k - i > n, where the binomial is 0
      // and a zero factor is present; guarded above.
      mpz_mul(term.get_mpz_t(), falling[ui].get_mpz_t(), tail[ui].get_mpz_t());
      mpz_addmul(acc.get_mpz_t(), c[ui].get_mpz_t(), term.get_mpz_t());
    }
    int s = sgn(acc);
    if (s != 0) {
      if (last != 0 && s != last) ++changes;
      last = s;
    }
  }
  return changes;
}

enum class SnStop {
  matched_root_count,  ///< s_n equals the exact multiplicity count
  stable,              ///< unchanged over 4 doublings with Descartes parity (no oracle)
  cap_reached,
};

struct SnLimit {
  int value = 0;            ///< last s_n computed
  bool converged = false;   ///< value is accepted as R(p)
  std::uint64_t n_star = 0; ///< smallest n reaching `value` (exact search when matched)
  SnStop stop = SnStop::cap_reached;
  int root_count = -1;      ///< multiplicity count used as the oracle, -1 if unused
  std::vector<std::pair<std::uint64_t, int>> trace;
};

struct SnLimitOptions {
  /// Stop as soon as s_n equals the Sturm multiplicity count. Without it the
  /// heuristic "stable across 4 doublings, parity matches S(p)" is used.
  bool use_root_count = true;
  /// Binary-search the first n achieving the limit after a match.
  bool exact_n_star = true;
};

/// Evaluates s_n at n = 0, 1, 2, 4, ... (and finally n_cap) until it reaches
/// the limit R(p).
inline SnLimit sn_limit(const RationalPoly& p, std::uint64_t n_cap, SnLimitOptions opt = {}) {
  if (p.is_zero()) throw std::domain_error("s_n limit of the zero polynomial");
  if (n_cap < 1) throw std::invalid_argument("sn_limit requires n_cap >= 1");
  SnLimit res;
  const int s0 = descartes_bound(p);
  if (opt.use_root_count) res.root_count = sturm_count_positive_with_multiplicity(p);

  auto matched = [&](int s) { return opt.use_root_count && s == res.root_count; };

  res.trace.emplace_back(0, s0);
  res.value = s0;
  if (matched(s0) || s0 == 0) {
    // Zero sign changes already proves the absence of positive roots.
    res.converged = true;
    res.stop = SnStop::matched_root_count;
    return res;
  }

  std::uint64_t prev_n = 0;
  int stable_runs = 0;
  std::uint64_t first_at_value = 0;
  std::uint64_t n = 1;
  while (true) {
    const int s = shifted_sign_count(p, n);
    res.trace.emplace_back(n, s);
    if (s == res.value) {
      ++stable_runs;
    } else {
      stable_runs = 0;
      first_at_value = n;
    }
    res.value = s;
    if (matched(s) || s == 0) {
      res.converged = true;
      res.stop = SnStop::matched_root_count;
      res.n_star = n;
      if (opt.exact_n_star) {
        // s_n is non-increasing, so the first n with s_n == s lies in (prev_n, n].
        std::uint64_t lo = prev_n, hi = n;
        while (hi - lo > 1) {
          std::uint64_t mid = lo + (hi - lo) / 2;
          if (shifted_sign_count(p, mid) == s) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        res.n_star = hi;
      }
      return res;
    }
    if (!opt.use_root_count && stable_runs >= 4 && (s0 - s) % 2 == 0) {
      res.converged = true;
      res.stop = SnStop::stable;
      res.n_star = first_at_value;
      return res;
    }
    if (n >= n_cap) break;
    prev_n = n;
    n = std::min(n * 2, n_cap);
  }
  res.stop = SnStop::cap_reached;
  res.converged = false;
  res.n_star = first_at_value;
  return res;
}

/// Bernstein-form value (1 - lambda)^m p(lambda / (1 - lambda)) = sum c_i lambda^i (1-lambda)^(m-i).
inline double homogenized_value(const DoublePoly& p, int m, double lambda) {
  double acc = 0.0;
  const double mu = 1.0 - lambda;
  // Horner in the ratio is unstable near the ends; accumulate powers directly.
  for (int i = 0; i <= m; ++i) {
    acc += p.coeff(static_cast<std::size_t>(i)) * std::pow(lambda, i) * std::pow(mu, m - i);
  }
  return acc;
}

struct N0Bound {
  std::uint64_t n0 = 0;     ///< ceiling expression, clamped below at 0
  double max_ratio = 0.0;   ///< max_i c_i / C(m, i)
  double min_value = 0.0;   ///< min over lambda in [0,1]
  double argmin = 0.0;
};

/// Exponent n0 with S((t+1)^n0 p) = 0 whenever p has no positive roots.
/// p is first scaled so its leading coefficient is positive; the minimum
/// of the homogenized form is found by a 10^4-point grid followed by a
/// golden-section refinement.
inline N0Bound n0_bound(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("n0 bound of the zero polynomial");
  RationalPoly q = sign(p.leading()) < 0 ? -p : p;
  const int m = q.degree();
  if (m == 0) return {0, q.leading().get_d(), q.leading().get_d(), 0.0};

  Rational best = q.coeff(0) / Rational(binomial(m, 0));
  for (int i = 1; i <= m; ++i) {
    Rational r = q.coeff(static_cast<std::size_t>(i)) / Rational(binomial(m, i));
    if (r > best) best = r;
  }
  const DoublePoly qd = approximate(q);
  auto h = [&](double lambda) { return homogenized_value(qd, m, lambda); };

  constexpr int kGrid = 10000;
  int best_i = 0;
  double best_v = h(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    double v = h(static_cast<double>(i) / kGrid);
    if (v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  double a = std::max(0.0, static_cast<double>(best_i - 1) / kGrid);
  double b = std::min(1.0, static_cast<double>(best_i + 1) / kGrid);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = h(x1), f2 = h(x2);
  while (b - a > 1e-12 * std::max(1e-300, std::abs(a) + std::abs(b)) && b - a > 1e-300) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = h(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = h(x2);
    }
  }
  double argmin = static_cast<double>(best_i) / kGrid;
  double min_v = best_v;
  const double refined = h(0.5 * (a + b));
  if (refined < min_v) {
    min_v = refined;
    argmin = 0.5 * (a + b);
  }
  if (!(min_v > 0.0)) {
    throw std::domain_error("n0 bound requires a polynomial positive on [0, inf]; minimum is " + std::to_string(min_v));
  }
  const double max_ratio = best.get_d();
  const double pairs = static_cast<double>(m) * (m - 1) / 2.0;
  const double raw = std::ceil(pairs * max_ratio / min_v - m);
  if (!(raw < 9.0e18)) throw std::overflow_error("n0 bound exceeds 64-bit range");
  N0Bound out;
  out.n0 = raw <= 0 ? 0 : static_cast<std::uint64_t>(raw);
  out.max_ratio = max_ratio;
  out.min_value = min_v;
  out.argmin = argmin;
  return out;
}

}  // namespace egteq
