#pragma once

// JSON game files and report serialization.
//
// Accepted game files:
//   {"d": 3, "a": [...], "b": [...]}              d-player payoff table
//   {"matrix": [[a11, a12], [a21, a22]]}          two-player matrix game
//   {"S": -0.5, "T": 1.5, "class": "PD"}         social dilemma (class optional)
// Entries may be JSON numbers or strings such as "-3/7" or "0.125".
// An optional "q" member is used when no q is given on the command line.

#include "egteq/dilemma.hpp"
#include "egteq/equilibria.hpp"
#include "egteq/game.hpp"
#include "egteq/rational.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace egteq {

using GameSpec = std::variant<RationalGame, SocialDilemma>;

struct GameFile {
  GameSpec game;
  std::optional<Rational> q;
};

/// Numbers go through their shortest round-trip decimal form, so 0.1 reads as 1/10.
inline Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(v.dump()));
  if (v.is_number_float()) {
    const double x = v.get<double>();
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) throw ParseError("cannot format number");
    return parse_rational(std::string_view(buf.data(), static_cast<std::size_t>(end - buf.data())));
  }
  throw ParseError("expected a number or a rational string, got " + v.dump());
}

inline std::vector<Rational> rational_list_from_json(const nlohmann::json& v, const char* name) {
  if (!v.is_array()) throw ParseError(std::string("'") + name + "' must be an array");
  std::vector<Rational> out;
  for (const auto& e : v) out.push_back(rational_from_json(e));
  return out;
}

inline std::optional<DilemmaClass> infer_dilemma_class(const Rational& S, const Rational& T) {
  for (auto c : {DilemmaClass::PD, DilemmaClass::SD, DilemmaClass::SH, DilemmaClass::H}) {
    if (SocialDilemma::in_class(S, T, c)) return c;
  }
  return std::nullopt;
}

inline GameFile parse_game_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("game file must contain a JSON object");
  GameFile out{RationalGame{}, std::nullopt};
  if (j.contains("q")) out.q = rational_from_json(j.at("q"));
  try {
    if (j.contains("a") || j.contains("b")) {
      if (!j.contains("a") || !j.contains("b")) throw ParseError("payoff table needs both 'a' and 'b'");
      auto a = rational_list_from_json(j.at("a"), "a");
      auto b = rational_list_from_json(j.at("b"), "b");
      int d = j.contains("d") ? j.at("d").get<int>() : static_cast<int>(a.size());
      out.game = RationalGame(d, std::move(a), std::move(b));
    } else if (j.contains("matrix")) {
      const auto& m = j.at("matrix");
      if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
          m[1].size() != 2) {
        throw ParseError("'matrix' must be a 2x2 array");
      }
      TwoPlayerMatrix<Rational> A{rational_from_json(m[0][0]), rational_from_json(m[0][1]),
                                  rational_from_json(m[1][0]), rational_from_json(m[1][1])};
      out.game = A.to_payoff_table();
    } else if (j.contains("S") && j.contains("T")) {
      Rational S = rational_from_json(j.at("S")), T = rational_from_json(j.at("T"));
      std::optional<DilemmaClass> cls;
      if (j.contains("class")) {
        cls = parse_dilemma_class(j.at("class").get<std::string>());
      } else {
        cls = infer_dilemma_class(S, T);
        if (!cls) throw ParseError("(S, T) lies in none of the PD, SD, SH, H regions");
      }
      out.game = SocialDilemma(S, T, *cls);
    } else {
      throw ParseError("game file needs {d, a, b}, {matrix} or {S, T[, class]}");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return out;
}

inline GameFile read_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open game file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
  return parse_game_json(j);
}

inline nlohmann::json to_json(const Equilibrium& e) {
  return {{"x", e.x()},
          {"lo", to_string(e.location.lo)},
          {"hi", to_string(e.location.hi)},
          {"exact", e.location.exact()},
          {"boundary", e.boundary},
          {"multiplicity", e.multiplicity},
          {"stability", std::string(to_string(e.stability))}};
}

inline nlohmann::json to_json(const EquilibriumReport& r) {
  nlohmann::json j{{"count", r.count},
                   {"interior_count", r.interior_count},
                   {"interior_count_multiplicity", r.interior_count_multiplicity},
                   {"method", std::string(to_string(r.method))},
                   {"descartes_bound", r.descartes_bound}};
  j["equilibria"] = nlohmann::json::array();
  for (const auto& e : r.equilibria) j["equilibria"].push_back(to_json(e));
  if (r.sn) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& [n, s] : r.sn->trace) trace.push_back({{"n", n}, {"s_n", s}});
    j["sn"] = {{"value", r.sn->value}, {"converged", r.sn->converged}, {"n_star", r.sn->n_star}, {"trace", trace}};
  }
  return j;
}

}  // namespace egteq
