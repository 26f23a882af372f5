#pragma once

// Reference computations used by the tests. They deliberately avoid the
// library's own algorithms (no Sturm chains, no scaled binomial products).

#include "egteq/egteq.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using egteq::Integer;
using egteq::Rational;
using egteq::RationalGame;
using egteq::RationalPoly;

inline Rational binom(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return Rational(r);
}

/// The t-polynomial coefficients written case by case (k = 0, 1, middle, d, d+1).
inline std::vector<Rational> printed_coefficients(const RationalGame& g, const Rational& q) {
  const long d = g.d;
  auto a = [&](long k) { return g.a[static_cast<std::size_t>(k)]; };
  auto b = [&](long k) { return g.b[static_cast<std::size_t>(k)]; };
  std::vector<Rational> c(static_cast<std::size_t>(d + 2));
  for (long k = 0; k <= d + 1; ++k) {
    Rational v;
    if (k == 0) {
      v = -q * b(0);
    } else if (k == 1) {
      v = (q - 1) * (a(0) - b(0)) - q * (d - 1) * b(1);
    } else if (k == d + 1) {
      v = q * a(d - 1);
    } else if (k == d) {
      v = (q - 1) * (a(d - 1) - b(d - 1)) + q * a(d - 2) * (d - 1);
    } else {
      v = q * a(k - 2) * binom(d - 1, k - 2) + (q - 1) * (a(k - 1) - b(k - 1)) * binom(d - 1, k - 1) -
          q * b(k) * binom(d - 1, k);
    }
    c[static_cast<std::size_t>(k)] = v;
  }
  return c;
}

/// Sign changes of (1+t)^n p computed by n explicit multiplications.
inline int sign_changes_by_convolution(const RationalPoly& p, std::uint64_t n) {
  std::vector<Rational> c(p.coeffs().begin(), p.coeffs().end());
  for (std::uint64_t i = 0; i < n; ++i) {
    std::vector<Rational> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] += c[k];
    }
    c = std::move(next);
  }
  int changes = 0, last = 0;
  for (const auto& v : c) {
    int s = egteq::sign(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Sign of p(x) from a double Horner pass, falling back to exact
/// arithmetic when the value is within the rounding-error bound.
/// The evaluation point is i / N.
inline int certified_sign(const RationalPoly& p, const egteq::DoublePoly& pd, long i, long N) {
  const double x = static_cast<double>(i) / static_cast<double>(N);
  double v = 0.0, mag = 0.0;
  const auto cs = pd.coeffs();
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
    v = v * x + *it;
    mag = mag * std::abs(x) + std::abs(*it);
  }
  const double bound = 4.0 * (static_cast<double>(cs.size()) + 2.0) * 1.2e-16 * mag;
  if (std::abs(v) > bound) return v > 0 ? 1 : -1;
  Rational x_exact(i, N);
  x_exact.canonicalize();
  return egteq::sign(p(x_exact));
}

/// Distinct roots of p in (0, 1) seen as sign changes on the grid i/N,
/// i = 0..N. A root at an endpoint is not counted.
inline int grid_roots_unit_interval(const RationalPoly& p, int N) {
  const egteq::DoublePoly pd = egteq::approximate(p);
  int changes = 0, last = 0;
  for (int i = 0; i <= N; ++i) {
    int s = certified_sign(p, pd, i, N);
    if (s == 0 && (i == 0 || i == N)) continue;
    if (s == 0) {
      ++changes;  // grid point is a root
      last = 0;
      continue;
    }
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Payoffs with numerator up to 10^6 and denominator up to 10^3, q in (0, 1/2)
/// with denominator up to 997.
struct RandomRationalGames {
  std::mt19937_64 gen;
  explicit RandomRationalGames(std::uint64_t seed) : gen(seed) {}

  Rational value() {
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000);
    Rational r(num(gen), den(gen));
    r.canonicalize();
    return r;
  }
  RationalGame game(int d) {
    RationalGame g;
    g.d = d;
    for (int k = 0; k < d; ++k) g.a.push_back(value());
    for (int k = 0; k < d; ++k) g.b.push_back(value());
    return g;
  }
  Rational q() {
    std::uniform_int_distribution<long> den(3, 997);
    long D = den(gen);
    std::uniform_int_distribution<long> num(1, (D - 1) / 2);
    Rational r(num(gen), D);
    r.canonicalize();
    return r;
  }
  Rational x01() {
    std::uniform_int_distribution<long> num(1, 999999);
    Rational r(num(gen), 1000000);
    r.canonicalize();
    return r;
  }
};

/// Empirical mean and covariance of sampled coefficient vectors, together
/// with the standard error of every covariance entry.
struct EmpiricalCovariance {
  int dim = 0;
  std::vector<double> cov;  ///< row-major dim x dim
  std::vector<double> se;

  double at(int i, int j) const { return cov[static_cast<std::size_t>(i * dim + j)]; }
  double se_at(int i, int j) const { return se[static_cast<std::size_t>(i * dim + j)]; }
};

/// coeffs(sample) -> vector<double> of length dim.
template <class Sampler>
EmpiricalCovariance empirical_covariance(int dim, std::uint64_t n, Sampler&& sample) {
  std::vector<double> s1(static_cast<std::size_t>(dim), 0.0);
  std::vector<double> s2(static_cast<std::size_t>(dim * dim), 0.0);
  std::vector<double> s4(static_cast<std::size_t>(dim * dim), 0.0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::vector<double> c = sample(i);
    for (int a = 0; a < dim; ++a) {
      s1[static_cast<std::size_t>(a)] += c[static_cast<std::size_t>(a)];
      for (int b = 0; b < dim; ++b) {
        const double p = c[static_cast<std::size_t>(a)] * c[static_cast<std::size_t>(b)];
        s2[static_cast<std::size_t>(a * dim + b)] += p;
        s4[static_cast<std::size_t>(a * dim + b)] += p * p;
      }
    }
  }
  EmpiricalCovariance out;
  out.dim = dim;
  const double N = static_cast<double>(n);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const double ma = s1[static_cast<std::size_t>(a)] / N, mb = s1[static_cast<std::size_t>(b)] / N;
      const double m2 = s2[static_cast<std::size_t>(a * dim + b)] / N;
      const double m4 = s4[static_cast<std::size_t>(a * dim + b)] / N;
      out.cov.push_back(m2 - ma * mb);
      // Var of the product c_a c_b estimated from its second moment; the
      // means are zero in every ensemble tested.
      out.se.push_back(std::sqrt(std::max(m4 - m2 * m2, 0.0) / N));
    }
  }
  return out;
}

}  // namespace oracle
