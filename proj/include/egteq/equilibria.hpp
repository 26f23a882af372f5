#pragma once

// Exact equilibrium counting, location and stability for d-player
// two-strategy replicator-mutator dynamics.

#include "egteq/descartes.hpp"
#include "egteq/game.hpp"
#include "egteq/polynomial.hpp"
#include "egteq/sturm.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace egteq {

/// Raised when the vector field vanishes identically (e.g. a == b == 0).
class DegenerateGame : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Stability { stable, unstable, undetermined };
enum class CountMethod { closed_form, sturm, sn_limit };

inline std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::undetermined: return "undetermined";
  }
  return "?";
}

inline std::string_view to_string(CountMethod m) {
  switch (m) {
    case CountMethod::closed_form: return "closed_form";
    case CountMethod::sturm: return "sturm";
    case CountMethod::sn_limit: return "sn_limit";
  }
  return "?";
}

struct Equilibrium {
  RootBracket location;
  bool boundary = false;
  int multiplicity = 1;
  Stability stability = Stability::undetermined;

  double x() const { return location.approx(); }
};

struct EquilibriumReport {
  int count = 0;  ///< distinct equilibria in [0, 1]
  std::vector<Equilibrium> equilibria;  ///< sorted; empty when location was skipped
  bool located = false;
  CountMethod method = CountMethod::sturm;
  int descartes_bound = 0;              ///< S(P) after removing the t = 0 root
  int interior_count = 0;               ///< distinct equilibria in (0, 1)
  int interior_count_multiplicity = 0;  ///< the same counted with multiplicity
  std::optional<SnLimit> sn;            ///< s_n trace when requested
};

enum class QuadraticRootLocation { one_inside, both_greater, both_less, both_inside, none_real, other };

inline std::string_view to_string(QuadraticRootLocation l) {
  switch (l) {
    case QuadraticRootLocation::one_inside: return "one_inside";
    case QuadraticRootLocation::both_greater: return "both_greater";
    case QuadraticRootLocation::both_less: return "both_less";
    case QuadraticRootLocation::both_inside: return "both_inside";
    case QuadraticRootLocation::none_real: return "none_real";
    case QuadraticRootLocation::other: return "other";
  }
  return "?";
}

/// Locates the roots of f = a x^2 + b x + c relative to (m1, m2). "Greater"
/// is relative to m2 and "less" to m1, so m1 == m2 == m gives the
/// single-threshold tests.
inline QuadraticRootLocation quadratic_root_location(const Rational& a, const Rational& b, const Rational& c,
                                                     const Rational& m1, const Rational& m2) {
  if (a == 0) throw std::invalid_argument("quadratic_root_location requires a != 0");
  if (m1 > m2) throw std::invalid_argument("quadratic_root_location requires m1 <= m2");
  auto f = [&](const Rational& x) -> Rational { return (a * x + b) * x + c; };
  const Rational disc = b * b - 4 * a * c;
  const Rational vertex = -b / (2 * a);
  const Rational f1 = f(m1), f2 = f(m2);
  if (disc < 0) return QuadraticRootLocation::none_real;
  if (sign(f1) * sign(f2) < 0) return QuadraticRootLocation::one_inside;
  if (m1 < vertex && vertex < m2 && sign(a) * sign(f1) > 0 && sign(a) * sign(f2) > 0) {
    return QuadraticRootLocation::both_inside;
  }
  if (vertex > m2 && sign(a) * sign(f2) > 0) return QuadraticRootLocation::both_greater;
  if (vertex < m1 && sign(a) * sign(f1) > 0) return QuadraticRootLocation::both_less;
  return QuadraticRootLocation::other;
}

/// Positive roots of a t^3 + b t^2 + c t + d from the closed-form Sturm
/// sequences {d, c, (bc-9ad)/a, D} and {a, (b^2-3ac)/a, D} with
/// D = a (18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2).
inline int cubic_positive_roots(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  if (a == 0) throw std::invalid_argument("cubic_positive_roots requires a != 0");
  const Rational disc = a * (18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c - 27 * a * a * d * d);
  const Rational at_zero = (b * c - 9 * a * d) / a;
  const Rational at_inf = (b * b - 3 * a * c) / a;
  const SignSeq s1{sign_of(d), sign_of(c), sign_of(at_zero), sign_of(disc)};
  const SignSeq s2{sign_of(a), sign_of(at_inf), sign_of(disc)};
  const int count = sign_changes(s1) - sign_changes(s2);
#ifndef NDEBUG
  if (count != sturm_count_positive(RationalPoly({d, c, b, a}))) {
    throw std::logic_error("closed-form cubic Sturm count disagrees with the general Sturm chain");
  }
#endif
  return count;
}

/// Root of g with its multiplicity, as produced by the isolation step.
struct LocatedRoot {
  RootBracket location;
  int multiplicity = 1;
};

/// Stable where g' < 0, unstable where g' > 0, undetermined at multiple
/// roots. `roots` must be every root of g inside the region of interest,
/// sorted. When all roots are simple the labels must alternate; a violation
/// throws std::logic_error.
inline std::vector<Stability> stability_labels(const RationalPoly& g, const std::vector<LocatedRoot>& roots) {
  std::vector<Stability> labels;
  labels.reserve(roots.size());
  const RationalPoly dg = g.derivative();
  bool all_simple = true;
  for (const auto& r : roots) {
    if (r.multiplicity > 1) {
      labels.push_back(Stability::undetermined);
      all_simple = false;
      continue;
    }
    int slope;
    if (r.location.exact()) {
      slope = sign(dg(r.location.lo));
    } else {
      // A simple root is the only root in its bracket, so g changes sign
      // across it in the direction of g'.
      slope = sign(g(r.location.hi));
      if (slope == 0 || sign(g(r.location.lo)) != -slope) {
        throw std::logic_error("bracket does not isolate a simple sign change");
      }
    }
    if (slope < 0) {
      labels.push_back(Stability::stable);
    } else if (slope > 0) {
      labels.push_back(Stability::unstable);
    } else {
      labels.push_back(Stability::undetermined);
      all_simple = false;
    }
  }
  if (all_simple) {
    for (std::size_t i = 1; i < labels.size(); ++i) {
      if (labels[i] == labels[i - 1]) throw std::logic_error("stability does not alternate between simple roots");
    }
  }
  return labels;
}

struct CountOptions {
  bool locate = true;          ///< isolate and label every equilibrium
  bool trace_sn = false;       ///< record the s_n sequence
  std::uint64_t sn_cap = 10000;
};

/// Roots of g in [0, 1] with multiplicities, sorted, from the square-free
/// decomposition of g.
inline std::vector<LocatedRoot> locate_unit_interval_roots(const RationalPoly& g, const Rational& width) {
  std::vector<LocatedRoot> roots;
  const Rational zero(0), one(1);
  for (const auto& [f, mult] : square_free_decomposition(g)) {
    if (sign(f(zero)) == 0) roots.push_back({{zero, zero}, mult});
    if (sign(f(one)) == 0) roots.push_back({{one, one}, mult});
    for (auto& br : isolate_roots(f, zero, one, width)) roots.push_back({br, mult});
  }
  std::sort(roots.begin(), roots.end(), [](const LocatedRoot& l, const LocatedRoot& r) {
    return l.location.lo < r.location.lo;
  });
  return roots;
}

/// Counts (and optionally locates and labels) all equilibria x in [0, 1].
///
/// Interior equilibria are the positive roots of P(t); they are counted
/// exactly by Sturm. x = 0 is an equilibrium iff c_0 = 0 and x = 1 iff
/// c_{d+1} = 0.
inline EquilibriumReport count_equilibria(const RationalGame& game, const MutationRate& q, CountOptions opt = {}) {
  const RationalPoly P = equilibrium_poly_t(game, q.exact());
  if (P.is_zero()) throw DegenerateGame("the replicator-mutator vector field vanishes identically");

  EquilibriumReport rep;
  rep.method = CountMethod::sturm;
  const std::size_t zeros_at_origin = P.trailing_zeros();
  const bool at_zero = zeros_at_origin > 0;
  const bool at_one = sign(P.coeff(static_cast<std::size_t>(game.d + 1))) == 0;
  const RationalPoly interior = P.shift_down(zeros_at_origin);

  rep.interior_count = sturm_count_positive(interior);
  rep.interior_count_multiplicity = sturm_count_positive_with_multiplicity(interior);
  rep.descartes_bound = descartes_bound(interior);
  if (rep.descartes_bound < rep.interior_count_multiplicity ||
      (rep.descartes_bound - rep.interior_count_multiplicity) % 2 != 0) {
    throw std::logic_error("Descartes bound and exact root count are inconsistent");
  }
  rep.count = rep.interior_count + (at_zero ? 1 : 0) + (at_one ? 1 : 0);

  if (opt.locate) {
    const RationalPoly g = rm_vector_field(game, q.exact());
    const auto roots = locate_unit_interval_roots(g, default_root_width());
    const auto labels = stability_labels(g, roots);
    int interior_seen = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const auto& r = roots[i];
      const bool boundary = r.location.exact() && (r.location.lo == 0 || r.location.lo == 1);
      if (!boundary) ++interior_seen;
      rep.equilibria.push_back({r.location, boundary, r.multiplicity, labels[i]});
    }
    if (interior_seen != rep.interior_count || static_cast<int>(rep.equilibria.size()) != rep.count) {
      throw std::logic_error("root isolation in x disagrees with the Sturm count in t");
    }
    rep.located = true;
  }

  if (opt.trace_sn && !interior.is_zero()) rep.sn = sn_limit(interior, opt.sn_cap);
  return rep;
}

}  // namespace egteq
