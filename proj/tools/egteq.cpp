// egteq: equilibrium counts, dilemma probabilities and expected counts
// for replicator-mutator games.
//
// Exit codes: 0 ok, 2 bad input, 3 degenerate game, 4 quadrature failure.

#include "egteq/egteq.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace egteq;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string format = "csv";
  std::string output;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

/// "start:stop:step" (inclusive of stop when hit exactly) or "v1,v2,...".
std::vector<Rational> parse_grid(const std::string& text, const Rational& default_step) {
  std::vector<Rational> out;
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw ParseError("grid must be start:stop[:step]");
    Rational start = parse_rational(parts[0]);
    Rational stop = parse_rational(parts[1]);
    Rational step = parts.size() == 3 ? parse_rational(parts[2]) : default_step;
    if (!(step > 0)) throw ParseError("grid step must be positive");
    if (stop < start) throw ParseError("grid stop is below start");
    for (Rational v = start; v <= stop; v += step) out.push_back(v);
  } else {
    for (const auto& p : split(text, ',')) out.push_back(parse_rational(p));
  }
  if (out.empty()) throw ParseError("empty grid '" + text + "'");
  return out;
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_rational(p));
  return out;
}

MutationRate two_strategy_rate(const Rational& q) {
  if (q < 0 || q > Rational(1, 2)) throw UsageError("q = " + to_string(q) + " outside [0, 1/2]");
  return MutationRate(q);
}

/// Shortest decimal that round-trips.
std::string fmt(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw UsageError("cannot write '" + opt.output + "'");
  out << text;
}

std::string render(const Options& opt, const json& meta, const std::vector<std::string>& columns,
                   const std::vector<std::vector<json>>& rows) {
  if (opt.format == "json") {
    json doc{{"meta", meta}, {"rows", json::array()}};
    for (const auto& r : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = r[i];
      doc["rows"].push_back(obj);
    }
    return doc.dump(2) + "\n";
  }
  std::ostringstream o;
  for (std::size_t i = 0; i < columns.size(); ++i) o << (i ? "," : "") << columns[i];
  o << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      o << (i ? "," : "");
      if (r[i].is_string()) {
        o << r[i].get<std::string>();
      } else if (r[i].is_number_float()) {
        o << fmt(r[i].get<double>());
      } else if (!r[i].is_null()) {
        o << r[i].dump();
      }
    }
    o << "\n";
  }
  return o.str();
}

// ---- count ----

struct CountArgs {
  std::string game_path;
  int d = 0;
  std::string a, b, q;
  bool trace_sn = false;
  std::uint64_t sn_cap = 10000;
};

int run_count(const CountArgs& args, const Options& opt) {
  std::optional<GameFile> file;
  if (!args.game_path.empty()) {
    file = read_game_file(args.game_path);
  } else {
    if (args.a.empty() || args.b.empty()) throw ParseError("give --game or both --a and --b");
    auto a = parse_list(args.a);
    auto b = parse_list(args.b);
    int d = args.d > 0 ? args.d : static_cast<int>(a.size());
    try {
      file = GameFile{RationalGame(d, std::move(a), std::move(b)), std::nullopt};
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  Rational qv;
  if (!args.q.empty()) {
    qv = parse_rational(args.q);
  } else if (file->q) {
    qv = *file->q;
  } else {
    throw ParseError("no mutation strength: pass --q or put \"q\" in the game file");
  }
  const MutationRate rate = two_strategy_rate(qv);

  EquilibriumReport rep;
  RationalGame table;
  if (const auto* dil = std::get_if<SocialDilemma>(&file->game)) {
    rep = classify_dilemma(*dil, rate).report;
    table = dil->to_matrix().to_payoff_table();
    if (args.trace_sn) {
      rep.sn = count_equilibria(table, rate, {.locate = false, .trace_sn = true, .sn_cap = args.sn_cap}).sn;
    }
  } else {
    table = std::get<RationalGame>(file->game);
    rep = count_equilibria(table, rate, {.locate = true, .trace_sn = args.trace_sn, .sn_cap = args.sn_cap});
  }

  json meta{{"version", kVersion},
            {"seed", nullptr},
            {"config", {{"subcommand", "count"}, {"q", to_string(qv)}, {"d", table.d}, {"trace_sn", args.trace_sn}}}};
  if (opt.format == "json") {
    json doc{{"meta", meta}, {"report", to_json(rep)}};
    emit(opt, doc.dump(2) + "\n");
    return 0;
  }
  std::ostringstream o;
  o << "count,method,index,x,lo,hi,multiplicity,boundary,stability\n";
  for (std::size_t i = 0; i < rep.equilibria.size(); ++i) {
    const auto& e = rep.equilibria[i];
    o << rep.count << "," << to_string(rep.method) << "," << i << "," << fmt(e.x()) << "," << to_string(e.location.lo)
      << "," << to_string(e.location.hi) << "," << e.multiplicity << "," << (e.boundary ? 1 : 0) << ","
      << to_string(e.stability) << "\n";
  }
  if (rep.sn) {
    o << "\nn,s_n\n";
    for (const auto& [n, s] : rep.sn->trace) o << n << "," << s << "\n";
  }
  emit(opt, o.str());
  return 0;
}

// ---- prob ----

struct ProbArgs {
  std::string cls = "all";
  std::string q, q_grid;
  std::uint64_t n = 100000;
  std::uint64_t seed = 1;
};

std::vector<Rational> q_values(const std::string& q, const std::string& grid) {
  if (!q.empty() && !grid.empty()) throw UsageError("give either --q or --q-grid, not both");
  if (!grid.empty()) return parse_grid(grid, Rational(1, 20));
  if (!q.empty()) return {parse_rational(q)};
  throw UsageError("missing --q or --q-grid");
}

int run_prob(const ProbArgs& args, const Options& opt) {
  std::vector<DilemmaClass> classes;
  if (args.cls == "all") {
    classes = {DilemmaClass::PD, DilemmaClass::SD, DilemmaClass::SH, DilemmaClass::H};
  } else {
    try {
      classes = {parse_dilemma_class(args.cls)};
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (args.n < 1) throw UsageError("--n must be at least 1");
  const auto qs = q_values(args.q, args.q_grid);
  for (const auto& q : qs) two_strategy_rate(q);

  const std::vector<std::string> columns{"class", "q", "k", "p_k", "n_samples", "seed", "p2_closed_form"};
  std::vector<std::vector<json>> rows;
  for (auto cls : classes) {
    for (const auto& q : qs) {
      const auto dist = mc_count_distribution(cls, MutationRate(q), args.n, args.seed);
      for (int k = 1; k <= 3; ++k) {
        json closed = nullptr;
        if (k == 2 && q > 0) closed = closed_form_p2(cls, q).get_d();
        rows.push_back({std::string(to_string(cls)), fmt(q.get_d()), k, dist.p(k), args.n, args.seed, closed});
      }
    }
  }
  json meta{{"version", kVersion},
            {"seed", args.seed},
            {"config", {{"subcommand", "prob"}, {"class", args.cls}, {"q", args.q}, {"q_grid", args.q_grid}, {"n", args.n}}}};
  emit(opt, render(opt, meta, columns, rows));
  return 0;
}

// ---- expected ----

struct ExpectedArgs {
  std::string d, d_grid, q, q_grid;
  std::uint64_t n = 0;
  std::uint64_t seed = 1;
  bool scaling = false;
  int d_max = 50;
  double rel_tol = 1e-10;
  double abs_tol = 1e-8;
};

int run_expected(const ExpectedArgs& args, const Options& opt) {
  QuadratureSpec quad;
  quad.rel_tol = args.rel_tol;
  quad.abs_tol = args.abs_tol;
  const auto qs = q_values(args.q, args.q_grid);
  for (const auto& q : qs) two_strategy_rate(q);
  json config{{"subcommand", "expected"}, {"q", args.q},       {"q_grid", args.q_grid},   {"n", args.n},
              {"scaling", args.scaling},  {"d_max", args.d_max}, {"rel_tol", args.rel_tol}, {"abs_tol", args.abs_tol}};
  json meta{{"version", kVersion}, {"seed", args.seed}, {"config", config}};

  if (args.scaling) {
    if (args.d_max < 3) throw UsageError("--d-max must be at least 3");
    const std::vector<std::string> columns{"d", "q", "E", "ratio"};
    std::vector<std::vector<json>> rows;
    for (const auto& q : qs) {
      for (const auto& r : scaling_curve(args.d_max, q, quad)) rows.push_back({r.d, fmt(q.get_d()), r.E, r.ratio});
    }
    emit(opt, render(opt, meta, columns, rows));
    return 0;
  }

  if (!args.d.empty() && !args.d_grid.empty()) throw UsageError("give either --d or --d-grid, not both");
  std::vector<Rational> ds = !args.d_grid.empty() ? parse_grid(args.d_grid, Rational(1))
                             : !args.d.empty()    ? parse_list(args.d)
                                                  : throw UsageError("missing --d or --d-grid");
  std::vector<int> dvals;
  for (const auto& d : ds) {
    if (d.get_den() != 1 || d < 2 || d > 1000) throw UsageError("group sizes must be integers in [2, 1000]");
    dvals.push_back(static_cast<int>(d.get_num().get_si()));
  }

  const std::vector<std::string> columns{"d", "q", "E_analytic", "err_estimate", "E_mc", "std_error", "n_samples", "seed"};
  std::vector<std::vector<json>> rows;
  for (int d : dvals) {
    for (const auto& q : qs) {
      const EkResult ek = expected_count(d, q, quad);
      json mc_mean = nullptr, mc_se = nullptr;
      if (args.n > 0) {
        const McEstimate mc = mc_expected_equilibria(d, MutationRate(q), args.n, args.seed);
        mc_mean = mc.mean;
        mc_se = mc.std_error;
      }
      rows.push_back({d, fmt(q.get_d()), ek.value, ek.error_estimate, mc_mean, mc_se, args.n, args.seed});
    }
  }
  emit(opt, render(opt, meta, columns, rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria of replicator-mutator games"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", opt.output, "write to this file instead of stdout");
  };

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "count, locate and label the equilibria of one game");
  count->add_option("--game", count_args.game_path, "JSON game file");
  count->add_option("--d", count_args.d, "group size");
  count->add_option("--a", count_args.a, "payoffs a_0..a_{d-1}, comma separated");
  count->add_option("--b", count_args.b, "payoffs b_0..b_{d-1}, comma separated");
  count->add_option("--q", count_args.q, "mutation strength in [0, 1/2]");
  count->add_flag("--trace-sn", count_args.trace_sn, "print the sign-change sequence s_n");
  count->add_option("--sn-cap", count_args.sn_cap, "largest n tried for s_n");
  add_common(count);

  ProbArgs prob_args;
  auto* prob = app.add_subcommand("prob", "Monte Carlo equilibrium-count distribution of social dilemmas");
  prob->add_option("--class", prob_args.cls, "PD, SD, SH, H or all");
  prob->add_option("--q", prob_args.q, "mutation strength");
  prob->add_option("--q-grid", prob_args.q_grid, "start:stop:step or comma list");
  prob->add_option("--n", prob_args.n, "samples per (class, q)");
  prob->add_option("--seed", prob_args.seed, "RNG seed");
  add_common(prob);

  ExpectedArgs exp_args;
  auto* expected = app.add_subcommand("expected", "expected number of interior equilibria for Gaussian payoffs");
  expected->add_option("--d", exp_args.d, "group size(s), comma separated");
  expected->add_option("--d-grid", exp_args.d_grid, "start:stop[:step] or comma list");
  expected->add_option("--q", exp_args.q, "mutation strength");
  expected->add_option("--q-grid", exp_args.q_grid, "start:stop:step or comma list");
  expected->add_option("--n", exp_args.n, "Monte Carlo samples per (d, q); 0 skips the simulation");
  expected->add_option("--seed", exp_args.seed, "RNG seed");
  expected->add_flag("--scaling", exp_args.scaling, "emit d, q, E, ln E / ln(d+1) for d = 2..d-max");
  expected->add_option("--d-max", exp_args.d_max, "largest d for --scaling");
  expected->add_option("--rel-tol", exp_args.rel_tol, "relative tolerance of the adaptive rule");
  expected->add_option("--abs-tol", exp_args.abs_tol, "required bound on the error estimate");
  add_common(expected);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (count->parsed()) return run_count(count_args, opt);
    if (prob->parsed()) return run_prob(prob_args, opt);
    if (expected->parsed()) return run_expected(exp_args, opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateGame& e) {
    std::cerr << "degenerate game: " << e.what() << "\n";
    return 3;
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature failure: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
