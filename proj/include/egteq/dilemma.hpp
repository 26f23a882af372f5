#pragma once

// Closed-form equilibrium analysis of two-player social dilemmas
// (R = 1, P = 0, sucker's payoff S, temptation T) under mutation q.
//
// Equilibria are x = 0 plus the roots in (0, 1) of
//   h(x) = (T+S-1) x^2 + (1-T-2S+q(S-1-T)) x + S + q(T-S),
// with h(1) = -q. Each branch below follows the case analysis per class;
// the result is cross-checked against a Sturm count on the full cubic.

#include "egteq/equilibria.hpp"
#include "egteq/game.hpp"
#include "egteq/sturm.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace egteq {

struct DilemmaDiagnostics {
  Rational Delta;              ///< discriminant of h
  std::optional<Rational> m;   ///< vertex -b/(2a) of h, absent when h is linear
  Rational h0;                 ///< h(0) = S + q(T-S)
  Rational h1;                 ///< h(1) = -q
  std::string case_id;
};

struct ClassifyOptions {
  bool locate = true;      ///< bracket and label every equilibrium
  bool cross_check = true; ///< compare the branch count with Sturm on the cubic
};

struct DilemmaResult {
  EquilibriumReport report;
  DilemmaDiagnostics diagnostics;
};

namespace detail {

/// Equilibria produced by a branch: exact points or brackets around a
/// single simple root of h.
struct BranchRoot {
  RootBracket where;
  int multiplicity = 1;
  std::optional<Stability> stated;  ///< stability asserted by the case analysis
};

inline BranchRoot exact_root(const Rational& x, int mult = 1, std::optional<Stability> st = std::nullopt) {
  return {{x, x}, mult, st};
}

}  // namespace detail

/// Counts, locates and labels the equilibria of a social dilemma.
inline DilemmaResult classify_dilemma(const SocialDilemma& game, const MutationRate& rate, ClassifyOptions opt = {}) {
  game.validate();
  const Rational& S = game.S;
  const Rational& T = game.T;
  const Rational& q = rate.exact();
  if (q > Rational(1, 2)) throw std::invalid_argument("two-strategy mutation strength must satisfy q <= 1/2");

  const Rational a = T + S - 1;
  const Rational b = 1 - T - 2 * S + q * (S - 1 - T);
  const Rational c = S + q * (T - S);
  const RationalPoly h({c, b, a});

  DilemmaResult out;
  DilemmaDiagnostics& diag = out.diagnostics;
  diag.Delta = b * b - 4 * a * c;
  diag.h0 = c;
  diag.h1 = -q;
  if (a != 0) diag.m = -b / (2 * a);

  using detail::BranchRoot;
  using detail::exact_root;
  const Rational zero(0), one(1), half(1, 2);
  const auto S_ = Stability::stable;
  const auto U_ = Stability::unstable;
  const auto N_ = Stability::undetermined;
  std::vector<BranchRoot> roots;

  // Bracket(s) of the roots of h inside (0, 1), for the branches that know
  // how many there are. Exact whenever the root is rational and hit exactly.
  auto one_root_in_unit = [&](std::optional<Stability> st) {
    // h(0) and h(1) have opposite signs here.
    roots.push_back({{zero, one}, 1, st});
  };
  auto two_roots_in_unit = [&](std::optional<Stability> lower, std::optional<Stability> upper) {
    const Rational& vertex = *diag.m;
    if (diag.Delta == 0) {
      roots.push_back(exact_root(vertex, 1, N_));  // double root of h
    } else {
      roots.push_back({{zero, vertex}, 1, lower});
      roots.push_back({{vertex, one}, 1, upper});
    }
  };
  // h(0) = 0: x = 0 is a double root of g; the other root of h is -b/a (or none).
  auto degenerate_h0 = [&]() {
    diag.case_id += ":h0=0";
    roots.push_back(exact_root(zero, 2, N_));
    if (a != 0) {
      Rational other = -b / a;
      if (other == 0) {
        roots.back().multiplicity = 3;
      } else if (other > 0 && other < 1) {
        roots.push_back(exact_root(other));
      }
    } else if (b == 0) {
      throw DegenerateGame("h vanishes identically");
    }
  };

  if (q == 0) {
    // g = x (1 - x) (S - (T+S-1) x)
    diag.case_id = "q=0";
    const bool sd_like = a > 0;
    if (a != 0) {
      Rational x2 = S / a;
      if (x2 > 0 && x2 < 1) {
        diag.case_id += ":three";
        roots.push_back(exact_root(zero, 1, sd_like ? U_ : S_));
        roots.push_back(exact_root(x2, 1, sd_like ? S_ : U_));
        roots.push_back(exact_root(one, 1, sd_like ? U_ : S_));
      }
    }
    if (roots.empty()) {
      diag.case_id += ":two";
      // PD: 0 stable, 1 unstable; H: 0 unstable, 1 stable.
      const bool pd_like = S < 0;
      roots.push_back(exact_root(zero, 1, pd_like ? S_ : U_));
      roots.push_back(exact_root(one, 1, pd_like ? U_ : S_));
    }
  } else if (q == half) {
    // h has the root 1/2 and, when T+S != 1, x2 = (T+S)/(T+S-1).
    diag.case_id = "q=1/2";
    const Rational u = T + S;
    std::optional<Rational> x2;
    if (a != 0) x2 = u / a;
    if (x2 && *x2 == 0) {
      diag.case_id += ":x2=0";
      roots.push_back(exact_root(zero, 2, N_));
      roots.push_back(exact_root(half));
    } else if (x2 && *x2 == half) {
      diag.case_id += ":x2=1/2";
      roots.push_back(exact_root(zero));
      roots.push_back(exact_root(half, 2, N_));
    } else if (x2 && *x2 > 0 && *x2 < 1) {
      diag.case_id += ":three";
      roots.push_back(exact_root(zero));
      if (*x2 < half) {
        roots.push_back(exact_root(*x2));
        roots.push_back(exact_root(half));
      } else {
        roots.push_back(exact_root(half));
        roots.push_back(exact_root(*x2));
      }
    } else {
      diag.case_id += ":two";
      roots.push_back(exact_root(zero));
      roots.push_back(exact_root(half));
    }
  } else {
    switch (game.cls) {
      case DilemmaClass::SD:
        // T+S-1 > 0 and h(0) > 0: roots 0 < x1 < 1 < x2.
        diag.case_id = "SD";
        roots.push_back(exact_root(zero, 1, U_));
        one_root_in_unit(S_);
        break;

      case DilemmaClass::H:
        if (a == 0) {
          const Rational K = 2 * T * q + 1 - T;
          if (q * (1 - 2 * T) < 1 - T) {
            diag.case_id = "H(i):interior";
            roots.push_back(exact_root(zero, 1, U_));
            roots.push_back(exact_root(1 - q / K, 1, S_));
          } else {
            // Complement of the interior condition: the root is <= 0.
            diag.case_id = "H(i):outside";
            if (K != 0 && 1 - q / K == 0) {
              roots.push_back(exact_root(zero, 2, N_));
            } else {
              roots.push_back(exact_root(zero));
            }
          }
        } else {
          diag.case_id = a > 0 ? "H(ii)" : "H(iii)";
          roots.push_back(exact_root(zero, 1, U_));
          one_root_in_unit(S_);
        }
        break;

      case DilemmaClass::SH:
        if (c == 0) {
          diag.case_id = "SH";
          degenerate_h0();
        } else if (diag.Delta < 0) {
          diag.case_id = "SH(i)";
          roots.push_back(exact_root(zero, 1, c < 0 ? S_ : U_));
        } else if (c > 0) {
          diag.case_id = "SH(ii)";
          roots.push_back(exact_root(zero, 1, U_));
          one_root_in_unit(S_);
        } else if (*diag.m > 0) {
          diag.case_id = "SH(iii)";
          roots.push_back(exact_root(zero, 1, S_));
          two_roots_in_unit(U_, S_);
        } else {
          diag.case_id = "SH(iv)";
          roots.push_back(exact_root(zero, 1, S_));
        }
        break;

      case DilemmaClass::PD:
        if (a == 0) {
          diag.case_id = "PD(S+T=1)";
          const Rational K = 2 * T * q + 1 - T;
          if (c == 0) {
            degenerate_h0();
          } else if (K != 0 && 1 - q / K > 0 && 1 - q / K < 1) {
            roots.push_back(exact_root(zero));
            roots.push_back(exact_root(1 - q / K));
          } else {
            roots.push_back(exact_root(zero));
          }
        } else if (c == 0) {
          diag.case_id = "PD";
          degenerate_h0();
        } else if (diag.Delta < 0) {
          diag.case_id = "PD(i)";
          roots.push_back(exact_root(zero));
        } else if (c > 0) {
          diag.case_id = "PD(ii)";
          roots.push_back(exact_root(zero));
          one_root_in_unit(std::nullopt);
        } else if (*diag.m > 0 && *diag.m < 1 && sign(a) * sign(c) > 0 && sign(a) * sign(diag.h1) > 0) {
          diag.case_id = "PD(iii)";
          roots.push_back(exact_root(zero));
          two_roots_in_unit(std::nullopt, std::nullopt);
        } else {
          diag.case_id = "PD(iv)";
          roots.push_back(exact_root(zero));
        }
        break;
    }
  }

  EquilibriumReport& rep = out.report;
  rep.method = CountMethod::closed_form;
  rep.count = static_cast<int>(roots.size());
  for (const auto& r : roots) {
    const bool boundary = r.where.exact() && (r.where.lo == 0 || r.where.lo == 1);
    if (!boundary) {
      ++rep.interior_count;
      rep.interior_count_multiplicity += r.multiplicity;
    }
  }

  const RationalPoly g = two_player_cubic_x(game.to_matrix(), q);
  if (opt.cross_check) {
    int expected = sturm_count_interval(g, zero, one) + (sign(g(zero)) == 0 ? 1 : 0) + (sign(g(one)) == 0 ? 1 : 0);
    if (expected != rep.count) {
      throw std::logic_error("social dilemma branch " + diag.case_id + " gives " + std::to_string(rep.count) +
                             " equilibria, Sturm gives " + std::to_string(expected));
    }
  }

  if (opt.locate) {
    std::vector<LocatedRoot> located;
    for (const auto& r : roots) {
      RootBracket br = r.where;
      if (!br.exact()) br = refine_bracket(h, br.lo, br.hi, default_root_width());
      located.push_back({br, r.multiplicity});
    }
    const auto labels = stability_labels(g, located);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (roots[i].stated && *roots[i].stated != labels[i]) {
        throw std::logic_error("case " + diag.case_id + ": stated stability disagrees with the sign of g'");
      }
      const bool boundary = located[i].location.exact() && (located[i].location.lo == 0 || located[i].location.lo == 1);
      rep.equilibria.push_back({located[i].location, boundary, located[i].multiplicity, labels[i]});
    }
    rep.located = true;
  }
  return out;
}

}  // namespace egteq
