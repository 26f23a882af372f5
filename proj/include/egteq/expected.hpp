#pragma once

// Expected number of equilibria for Gaussian payoffs: covariance of the
// coefficient vector of P(t) and the Edelman-Kostlan integral
//   E = (1/pi) int_0^inf sqrt(A M - B^2) / M dt,
// with H(x, y) = sum C_ij x^i y^j, M = H(t, t), B = d_x H, A = d_xy H on the diagonal.

#include "egteq/game.hpp"
#include "egteq/rational.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace egteq {

/// Symmetric tridiagonal covariance; every entry off the first
/// super/sub-diagonal is zero.
struct CovMatrix {
  int dim = 0;
  std::vector<double> diag;     ///< C_kk, k = 0..dim-1
  std::vector<double> offdiag;  ///< C_{k,k+1}, k = 0..dim-2

  double at(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= dim) throw std::out_of_range("covariance index out of range");
    if (i == j) return diag[static_cast<std::size_t>(i)];
    if (j == i + 1) return offdiag[static_cast<std::size_t>(i)];
    return 0.0;
  }

  /// Drops leading and trailing rows whose variance is zero (the matching
  /// coefficients vanish identically, which only shifts P by a power of t).
  CovMatrix stripped() const {
    int lo = 0, hi = dim;
    while (lo < hi && diag[static_cast<std::size_t>(lo)] == 0.0) ++lo;
    while (hi > lo && diag[static_cast<std::size_t>(hi - 1)] == 0.0) --hi;
    CovMatrix out;
    out.dim = hi - lo;
    out.diag.assign(diag.begin() + lo, diag.begin() + hi);
    if (out.dim > 1) out.offdiag.assign(offdiag.begin() + lo, offdiag.begin() + hi - 1);
    return out;
  }
};

/// Covariance of P(t)'s coefficients when a_k, b_k are iid N(0, 1).
/// q = 1/2 is redirected to covariance_half.
inline CovMatrix covariance_half(int d);

inline CovMatrix covariance(int d, const Rational& q) {
  if (d < 2) throw std::invalid_argument("group size d must be at least 2");
  if (q < 0 || q > Rational(1, 2)) throw std::invalid_argument("q must lie in [0, 1/2]");
  if (q == Rational(1, 2)) return covariance_half(d);
  auto B2 = [d](long k) {
    Integer b = binomial(d - 1, k);
    return Rational(b * b);
  };
  const Rational qm1 = q - 1;
  CovMatrix c;
  c.dim = d + 2;
  for (long k = 0; k <= d + 1; ++k) {
    Rational v = q * q * B2(k - 2) + 2 * qm1 * qm1 * B2(k - 1) + q * q * B2(k);
    c.diag.push_back(v.get_d());
    if (k <= d) {
      Rational o = q * qm1 * (B2(k - 1) + B2(k));
      c.offdiag.push_back(o.get_d());
    }
  }
  return c;
}

/// Diagonal covariance of the mean-fitness coefficients
/// c_k = a_{k-1} C(d-1,k-1) + b_k C(d-1,k), k = 0..d.
inline CovMatrix covariance_half(int d) {
  if (d < 2) throw std::invalid_argument("group size d must be at least 2");
  CovMatrix c;
  c.dim = d + 1;
  for (long k = 0; k <= d; ++k) {
    Integer lo = binomial(d - 1, k - 1), hi = binomial(d - 1, k);
    Integer v = lo * lo + hi * hi;
    c.diag.push_back(v.get_d());
  }
  c.offdiag.assign(static_cast<std::size_t>(d), 0.0);
  return c;
}

struct EkTerms {
  double M = 0.0;
  double A = 0.0;
  double B = 0.0;
};

/// M, A, B at t, summed directly (reference form; overflows for large d).
inline EkTerms ek_terms(const CovMatrix& C, double t) {
  EkTerms r;
  for (int i = 0; i < C.dim; ++i) {
    for (int j = std::max(0, i - 1); j <= std::min(C.dim - 1, i + 1); ++j) {
      const double c = C.at(i, j);
      if (c == 0.0) continue;
      r.M += c * std::pow(t, i + j);
      if (i > 0) r.B += c * i * std::pow(t, i + j - 1);
      if (i > 0 && j > 0) r.A += c * i * j * std::pow(t, i + j - 2);
    }
  }
  return r;
}

struct QuadratureSpec {
  double rel_tol = 1e-10;  ///< tolerance handed to the adaptive rule
  double abs_tol = 1e-8;   ///< required bound on the error estimate
  unsigned max_depth = 15;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate) : std::runtime_error(what), error_estimate(estimate) {}
  double error_estimate;
};

class CovarianceDefect : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct EkResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// sqrt(A M - B^2) / M at t = e^{log_t}, in centred form: with weights
/// w_ij = C_ij t^(i+j) and mu = sum i w / M,
///   (A M - B^2) / M^2 = sum (i - mu)(j - mu) w / (M t^2).
inline double ek_integrand_log(const CovMatrix& C, double log_t) {
  double emax = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < C.dim; ++k) {
    if (C.diag[static_cast<std::size_t>(k)] != 0.0) emax = std::max(emax, 2 * k * log_t);
    if (k + 1 < C.dim && C.offdiag[static_cast<std::size_t>(k)] != 0.0) emax = std::max(emax, (2 * k + 1) * log_t);
  }
  double M = 0.0, first = 0.0;
  for (int k = 0; k < C.dim; ++k) {
    const double wd = C.diag[static_cast<std::size_t>(k)] * std::exp(2 * k * log_t - emax);
    M += wd;
    first += k * wd;
    if (k + 1 < C.dim) {
      const double wo = C.offdiag[static_cast<std::size_t>(k)] * std::exp((2 * k + 1) * log_t - emax);
      M += 2 * wo;
      first += (2 * k + 1) * wo;
    }
  }
  if (!(M > 0.0)) throw CovarianceDefect("M(t) is not positive; covariance is degenerate");
  const double mu = first / M;
  double centred = 0.0, raw = 0.0;
  for (int k = 0; k < C.dim; ++k) {
    const double wd = C.diag[static_cast<std::size_t>(k)] * std::exp(2 * k * log_t - emax);
    centred += (k - mu) * (k - mu) * wd;
    raw += static_cast<double>(k) * k * wd;
    if (k + 1 < C.dim) {
      const double wo = C.offdiag[static_cast<std::size_t>(k)] * std::exp((2 * k + 1) * log_t - emax);
      centred += 2 * (k - mu) * (k + 1 - mu) * wo;
      raw += 2.0 * k * (k + 1) * wo;
    }
  }
  if (centred < 0.0) {
    if (centred < -1e-9 * std::abs(raw)) {
      throw CovarianceDefect("A M - B^2 is negative beyond rounding; covariance is not positive semidefinite");
    }
    centred = 0.0;
  }
  return std::sqrt(centred / M) / std::exp(log_t);
}

/// Expected number of positive roots of sum c_k t^k with Cov(c) = C.
/// Integrated over s in (0, 1) with t = s / (1 - s).
inline EkResult ek_expected_positive_roots(const CovMatrix& C_in, const QuadratureSpec& quad = {}) {
  const CovMatrix C = C_in.stripped();
  if (C.dim < 2) return {0.0, 0.0};
  auto f = [&](double s) {
    const double log_t = std::log(s) - std::log1p(-s);
    return ek_integrand_log(C, log_t) / ((1.0 - s) * (1.0 - s));  // dt = ds / (1 - s)^2
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  double value = GK::integrate(f, 0.0, 1.0, quad.max_depth, quad.rel_tol, &err);
  if (!(err <= quad.abs_tol) || !std::isfinite(value)) {
    double e1 = 0.0, e2 = 0.0;
    const unsigned deeper = quad.max_depth + 5;
    const double v1 = GK::integrate(f, 0.0, 0.5, deeper, quad.rel_tol, &e1);
    const double v2 = GK::integrate(f, 0.5, 1.0, deeper, quad.rel_tol, &e2);
    value = v1 + v2;
    err = e1 + e2;
    if (!(err <= quad.abs_tol) || !std::isfinite(value)) {
      throw QuadratureError("quadrature did not converge; achieved error estimate " + std::to_string(err / std::numbers::pi),
                            err / std::numbers::pi);
    }
  }
  return {value / std::numbers::pi, err / std::numbers::pi};
}

/// Expected number of interior equilibria. At q = 1/2 the forced
/// equilibrium x = 1/2 adds 1 to the mean-fitness roots.
inline EkResult expected_count(int d, const Rational& q, const QuadratureSpec& quad = {}) {
  if (q == Rational(1, 2)) {
    EkResult r = ek_expected_positive_roots(covariance_half(d), quad);
    r.value += 1.0;
    return r;
  }
  return ek_expected_positive_roots(covariance(d, q), quad);
}

struct ScalingRow {
  int d = 0;
  double E = 0.0;
  double ratio = 0.0;  ///< ln E / ln(d + 1)
};

inline std::vector<ScalingRow> scaling_curve(int d_max, const Rational& q, const QuadratureSpec& quad = {}) {
  if (d_max < 3) throw std::invalid_argument("scaling_curve needs d_max >= 3");
  std::vector<ScalingRow> rows;
  for (int d = 2; d <= d_max; ++d) {
    const double E = expected_count(d, q, quad).value;
    rows.push_back({d, E, std::log(E) / std::log(d + 1.0)});
  }
  return rows;
}

}  // namespace egteq
