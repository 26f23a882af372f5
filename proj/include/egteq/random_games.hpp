#pragma once

// Random social dilemmas and Gaussian d-player games, with Monte Carlo
// estimators for equilibrium-count distributions and expected counts.

#include "egteq/dilemma.hpp"
#include "egteq/equilibria.hpp"
#include "egteq/game.hpp"
#include "egteq/parallel.hpp"
#include "egteq/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace egteq {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  ///< sample standard deviation / sqrt(n_samples)
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

struct CountDistribution {
  DilemmaClass cls = DilemmaClass::PD;
  Rational q;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::array<std::uint64_t, 5> counts{};  ///< counts[k] = games with k equilibria

  double p(int k) const {
    if (k < 0 || k >= static_cast<int>(counts.size()) || n_samples == 0) return 0.0;
    return static_cast<double>(counts[static_cast<std::size_t>(k)]) / static_cast<double>(n_samples);
  }
};

/// (S, T) uniform on the open class rectangle.
inline SocialDilemma sample_dilemma(DilemmaClass cls, CounterRng& rng) {
  double s = 0.0, t = 0.0;
  switch (cls) {
    case DilemmaClass::PD:
      s = rng.uniform(-1.0, 0.0);
      t = rng.uniform(1.0, 2.0);
      break;
    case DilemmaClass::SD:
      s = rng.uniform(0.0, 1.0);
      t = rng.uniform(1.0, 2.0);
      break;
    case DilemmaClass::SH:
      s = rng.uniform(-1.0, 0.0);
      t = rng.uniform(0.0, 1.0);
      break;
    case DilemmaClass::H:
      s = rng.uniform(0.0, 1.0);
      t = rng.uniform(0.0, 1.0);
      break;
  }
  return SocialDilemma(exact_from_double(s), exact_from_double(t), cls);
}

/// Sample i uses stream i of `seed`, so the table is independent of the
/// number of worker threads.
inline CountDistribution mc_count_distribution(DilemmaClass cls, const MutationRate& q, std::uint64_t n_samples,
                                               std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
  if (q.exact() > Rational(1, 2)) throw std::invalid_argument("q must lie in [0, 1/2] for two strategies");
  CountDistribution out;
  out.cls = cls;
  out.q = q.exact();
  out.n_samples = n_samples;
  out.seed = seed;
  std::vector<std::array<std::uint64_t, 5>> partial(worker_count());
  parallel_chunks(n_samples, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& local = partial[w];
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      const SocialDilemma game = sample_dilemma(cls, rng);
      const auto res = classify_dilemma(game, q, {.locate = false, .cross_check = false});
      ++local[static_cast<std::size_t>(res.report.count)];
    }
  });
  for (const auto& local : partial)
    for (std::size_t k = 0; k < local.size(); ++k) out.counts[k] += local[k];
  return out;
}

/// Probability of exactly two equilibria for uniformly drawn (S, T), q in (0, 1/2].
inline Rational closed_form_p2(DilemmaClass cls, const Rational& q) {
  if (!(q > 0) || q > Rational(1, 2)) throw std::invalid_argument("closed_form_p2 needs q in (0, 1/2]");
  switch (cls) {
    case DilemmaClass::SH:
      return q / (2 * (1 - q));
    case DilemmaClass::PD:
      if (q <= Rational(1, 3)) return 3 * q / (2 * (1 - q));
      return 3 - 1 / (2 * q * (1 - q));
    case DilemmaClass::SD:
    case DilemmaClass::H:
      return Rational(1);
  }
  throw std::invalid_argument("unknown class");
}

/// 2d independent standard normal payoffs.
inline DoubleGame sample_gaussian_game(int d, CounterRng& rng) {
  if (d < 2) throw std::invalid_argument("group size d must be at least 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  DoubleGame g;
  g.d = d;
  g.a.resize(static_cast<std::size_t>(d));
  g.b.resize(static_cast<std::size_t>(d));
  for (auto& v : g.a) v = normal(rng);
  for (auto& v : g.b) v = normal(rng);
  return g;
}

/// Distinct equilibria in (0, 1): the distinct positive roots of P(t).
inline int count_interior_equilibria(const RationalGame& game, const Rational& q) {
  const RationalPoly P = equilibrium_poly_t(game, q);
  if (P.is_zero()) throw DegenerateGame("the replicator-mutator vector field vanishes identically");
  const RationalPoly interior = P.shift_down(P.trailing_zeros());
  if (interior.degree() <= 0) return 0;
  return sturm_count_positive(interior);
}

/// Mean number of interior equilibria of Gaussian games (x = 1/2 included
/// at q = 1/2, where it is always an equilibrium).
inline McEstimate mc_expected_equilibria(int d, const MutationRate& q, std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
  if (d < 2) throw std::invalid_argument("group size d must be at least 2");
  struct Sums {
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
  };
  std::vector<Sums> partial(worker_count());
  parallel_chunks(n_samples, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    auto& local = partial[w];
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      const RationalGame game = exactify(sample_gaussian_game(d, rng));
      const auto k = static_cast<std::uint64_t>(count_interior_equilibria(game, q.exact()));
      local.sum += k;
      local.sum_sq += k * k;
    }
  });
  Sums total;
  for (const auto& s : partial) {
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
  }
  McEstimate est;
  est.n_samples = n_samples;
  est.seed = seed;
  const double n = static_cast<double>(n_samples);
  est.mean = static_cast<double>(total.sum) / n;
  if (n_samples > 1) {
    const double var = (static_cast<double>(total.sum_sq) - n * est.mean * est.mean) / (n - 1.0);
    est.std_error = std::sqrt(std::max(var, 0.0) / n);
  }
  return est;
}

}  // namespace egteq
