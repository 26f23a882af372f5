#pragma once

// Games and the polynomials they induce under replicator-mutator dynamics
// with two strategies and symmetric mutation strength q.

#include "egteq/polynomial.hpp"
#include "egteq/rational.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace egteq {

/// Payoffs of a symmetric d-player two-strategy game: a[k] (resp. b[k]) is
/// the payoff of an S1 (resp. S2) player facing k S1 co-players.
template <class T>
struct PayoffTable {
  int d = 2;
  std::vector<T> a;
  std::vector<T> b;

  PayoffTable() = default;
  PayoffTable(int group_size, std::vector<T> a_payoffs, std::vector<T> b_payoffs)
      : d(group_size), a(std::move(a_payoffs)), b(std::move(b_payoffs)) {
    validate();
  }

  void validate() const {
    if (d < 2) throw std::invalid_argument("group size d must be at least 2");
    if (a.size() != static_cast<std::size_t>(d) || b.size() != static_cast<std::size_t>(d)) {
      throw std::invalid_argument("payoff lists must have exactly d = " + std::to_string(d) + " entries");
    }
  }

  /// a[k] with a[k] = 0 outside 0 <= k < d.
  T a_at(long k) const { return k >= 0 && k < d ? a[static_cast<std::size_t>(k)] : T(0); }
  T b_at(long k) const { return k >= 0 && k < d ? b[static_cast<std::size_t>(k)] : T(0); }
  T beta(long k) const { return a_at(k) - b_at(k); }
};

using RationalGame = PayoffTable<Rational>;
using DoubleGame = PayoffTable<double>;

inline RationalGame exactify(const DoubleGame& g) {
  RationalGame out;
  out.d = g.d;
  for (double v : g.a) out.a.push_back(exact_from_double(v));
  for (double v : g.b) out.b.push_back(exact_from_double(v));
  return out;
}

/// Row player's 2x2 payoffs: a11 = R (S1 vs S1), a12 = S1 vs S2, a21 = S2 vs S1, a22 = S2 vs S2.
template <class T>
struct TwoPlayerMatrix {
  T a11, a12, a21, a22;

  /// S1 against zero S1 co-players earns a12, against one earns a11.
  PayoffTable<T> to_payoff_table() const { return PayoffTable<T>(2, {a12, a11}, {a22, a21}); }
};

enum class DilemmaClass { PD, SD, SH, H };

inline std::string_view to_string(DilemmaClass c) {
  switch (c) {
    case DilemmaClass::PD: return "PD";
    case DilemmaClass::SD: return "SD";
    case DilemmaClass::SH: return "SH";
    case DilemmaClass::H: return "H";
  }
  return "?";
}

inline DilemmaClass parse_dilemma_class(std::string_view s) {
  if (s == "PD") return DilemmaClass::PD;
  if (s == "SD") return DilemmaClass::SD;
  if (s == "SH") return DilemmaClass::SH;
  if (s == "H") return DilemmaClass::H;
  throw std::invalid_argument("unknown social dilemma class '" + std::string(s) + "' (expected PD, SD, SH or H)");
}

/// Two-player social dilemma with R = 1, P = 0, sucker's payoff S and temptation T.
struct SocialDilemma {
  Rational S;
  Rational T;
  DilemmaClass cls;

  SocialDilemma(Rational s, Rational t, DilemmaClass c) : S(std::move(s)), T(std::move(t)), cls(c) { validate(); }

  /// Class rectangles: PD 2>=T>1>0>S>=-1, SD 2>=T>1>S>0, SH 1>T>0>S>=-1, H 1>T>=0, 1>=S>0.
  static bool in_class(const Rational& s, const Rational& t, DilemmaClass c) {
    switch (c) {
      case DilemmaClass::PD: return t <= 2 && t > 1 && s < 0 && s >= -1;
      case DilemmaClass::SD: return t <= 2 && t > 1 && s < 1 && s > 0;
      case DilemmaClass::SH: return t < 1 && t > 0 && s < 0 && s >= -1;
      case DilemmaClass::H: return t < 1 && t >= 0 && s <= 1 && s > 0;
    }
    return false;
  }

  void validate() const {
    if (!in_class(S, T, cls)) {
      throw std::invalid_argument("(S, T) = (" + to_string(S) + ", " + to_string(T) + ") is not a " +
                                  std::string(egteq::to_string(cls)) + " game");
    }
  }

  TwoPlayerMatrix<Rational> to_matrix() const { return {Rational(1), S, T, Rational(0)}; }
};

/// Mutation strength q, validated against 0 <= q <= 1 - 1/n.
class MutationRate {
 public:
  explicit MutationRate(Rational q, int n_strategies = 2) : q_(std::move(q)) {
    if (n_strategies < 2) throw std::invalid_argument("need at least two strategies");
    Rational upper = 1 - Rational(1, n_strategies);
    if (q_ < 0 || q_ > upper) {
      throw std::invalid_argument("mutation strength q = " + to_string(q_) + " outside [0, " + to_string(upper) + "]");
    }
  }

  const Rational& exact() const { return q_; }
  double value() const { return q_.get_d(); }
  bool is_zero() const { return q_ == 0; }
  bool is_half() const { return q_ == Rational(1, 2); }

 private:
  Rational q_;
};

namespace detail {

template <class T>
T binom_as(long n, long k) {
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(binomial(n, k));
  } else {
    return static_cast<T>(binomial_d(n, k));
  }
}

}  // namespace detail

/// f1(x) = sum_k a_k C(d-1,k) x^k (1-x)^(d-1-k), f2 likewise with b_k.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> fitness_polys(const PayoffTable<T>& g) {
  g.validate();
  std::vector<T> fa, fb;
  for (int k = 0; k < g.d; ++k) {
    T c = detail::binom_as<T>(g.d - 1, k);
    fa.push_back(g.a[static_cast<std::size_t>(k)] * c);
    fb.push_back(g.b[static_cast<std::size_t>(k)] * c);
  }
  const auto m = static_cast<std::size_t>(g.d - 1);
  return {homogenize_to_x(Polynomial<T>(std::move(fa)), m), homogenize_to_x(Polynomial<T>(std::move(fb)), m)};
}

/// g(x) = q [(1-x) f2 - x f1] + x (1-x) (f1 - f2), degree <= d+1.
template <class T>
Polynomial<T> rm_vector_field(const PayoffTable<T>& g, const T& q) {
  auto [f1, f2] = fitness_polys(g);
  const Polynomial<T> x = Polynomial<T>::monomial(T(1), 1);
  const Polynomial<T> one_minus_x({T(1), T(-1)});
  return q * (one_minus_x * f2 - x * f1) + x * one_minus_x * (f1 - f2);
}

/// P(t) = sum_{k=0}^{d+1} c_k t^k whose positive roots t = x/(1-x) are the
/// interior equilibria; g(x) = -(1-x)^(d+1) P(x/(1-x)).
///
/// c_k = q a_{k-2} C(d-1,k-2) + (q-1)(a_{k-1}-b_{k-1}) C(d-1,k-1) - q b_k C(d-1,k)
/// with out-of-range payoffs and binomials taken as zero; this single form
/// covers the k = 0, 1, d, d+1 special cases.
template <class T>
Polynomial<T> equilibrium_poly_t(const PayoffTable<T>& g, const T& q) {
  g.validate();
  const long d = g.d;
  std::vector<T> c(static_cast<std::size_t>(d + 2), T(0));
  const T qm1 = q - T(1);
  for (long k = 0; k <= d + 1; ++k) {
    T v = q * g.a_at(k - 2) * detail::binom_as<T>(d - 1, k - 2);
    v += qm1 * g.beta(k - 1) * detail::binom_as<T>(d - 1, k - 1);
    v -= q * g.b_at(k) * detail::binom_as<T>(d - 1, k);
    c[static_cast<std::size_t>(k)] = v;
  }
  return Polynomial<T>(std::move(c));
}

/// At q = 1/2 the vector field factors as (1/2 - x) * mean fitness; this is
/// the mean fitness in the t variable, c_k = a_{k-1} C(d-1,k-1) + b_k C(d-1,k), k = 0..d.
template <class T>
Polynomial<T> mean_fitness_poly_t(const PayoffTable<T>& g) {
  g.validate();
  const long d = g.d;
  std::vector<T> c(static_cast<std::size_t>(d + 1), T(0));
  for (long k = 0; k <= d; ++k) {
    c[static_cast<std::size_t>(k)] =
        g.a_at(k - 1) * detail::binom_as<T>(d - 1, k - 1) + g.b_at(k) * detail::binom_as<T>(d - 1, k);
  }
  return Polynomial<T>(std::move(c));
}

/// Bernstein coefficients of the vector field:
/// g(x) = 1/(d(d+1)) sum_k rho_k C(d+1,k) x^k (1-x)^(d+1-k).
template <class T>
std::vector<T> bernstein_coeffs(const PayoffTable<T>& g, const T& q) {
  g.validate();
  const long d = g.d;
  std::vector<T> rho;
  rho.reserve(static_cast<std::size_t>(d + 2));
  for (long k = 0; k <= d + 1; ++k) {
    T v = q * T((d + 1 - k) * (d - k)) * g.b_at(k);
    v += (T(1) - q) * T((d + 1 - k) * k) * g.beta(k - 1);
    v -= q * T(k * (k - 1)) * g.a_at(k - 2);
    rho.push_back(v);
  }
  return rho;
}

/// Right-hand side of the two-player replicator-mutator equation as a cubic in x.
template <class T>
Polynomial<T> two_player_cubic_x(const TwoPlayerMatrix<T>& m, const T& q) {
  const T c3 = m.a12 + m.a21 - m.a11 - m.a22;
  const T c2 = m.a11 - m.a21 - T(2) * (m.a12 - m.a22) + q * (m.a22 + m.a12 - m.a11 - m.a21);
  const T c1 = m.a12 - m.a22 + q * (m.a21 - m.a12 - T(2) * m.a22);
  const T c0 = q * m.a22;
  return Polynomial<T>({c0, c1, c2, c3});
}

/// Supplies f_i(x) for every strategy given the frequency vector x.
using FitnessOracle = std::function<std::vector<double>(std::span<const double>)>;

/// max_i |g_i(1/n, ..., 1/n)| for the n-strategy replicator-mutator field
/// with q_ii = 1 - q and q_ij = q/(n-1). Requires q = (n-1)/n.
inline double uniform_equilibrium_residual(const FitnessOracle& fitness, int n, double q) {
  if (n < 2) throw std::invalid_argument("need at least two strategies");
  const double uniform_q = static_cast<double>(n - 1) / n;
  if (std::abs(q - uniform_q) > 1e-15) {
    throw std::invalid_argument("uniform equilibrium needs q = (n-1)/n = " + std::to_string(uniform_q));
  }
  std::vector<double> x(static_cast<std::size_t>(n), 1.0 / n);
  std::vector<double> f = fitness(x);
  if (f.size() != x.size()) throw std::invalid_argument("fitness oracle returned the wrong number of entries");
  double fbar = 0.0;
  for (int j = 0; j < n; ++j) fbar += x[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(j)];
  double residual = 0.0;
  for (int i = 0; i < n; ++i) {
    double gi = 0.0;
    for (int j = 0; j < n; ++j) {
      const double qji = (i == j) ? 1.0 - q : q / (n - 1);
      gi += x[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(j)] * qji;
    }
    gi -= x[static_cast<std::size_t>(i)] * fbar;
    residual = std::max(residual, std::abs(gi));
  }
  return residual;
}

/// Fitness oracle of a two-player n-strategy matrix game, f_i = sum_k A_ik x_k.
inline FitnessOracle matrix_fitness(std::vector<std::vector<double>> A) {
  return [A = std::move(A)](std::span<const double> x) {
    std::vector<double> f(A.size(), 0.0);
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t k = 0; k < x.size(); ++k) f[i] += A[i][k] * x[k];
    return f;
  };
}

}  // namespace egteq
