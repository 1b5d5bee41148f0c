/*
 *   Copyright 2026 The wcr Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */

#pragma once

// Batch front end. Exit status: 0 success, 1 budget refusal, 2 usage error
// (bad flags, descriptors, parameters outside a command's domain).

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wcr/attack.hpp"
#include "wcr/auth.hpp"
#include "wcr/compose.hpp"
#include "wcr/descriptor.hpp"
#include "wcr/measure.hpp"
#include "wcr/protocol.hpp"
#include "wcr/report.hpp"
#include "wcr/ucsim.hpp"

namespace wcr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBudget = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string family;
  std::uint64_t rounds = 0;  // 0 = command default
  std::string qkd_eps = "0";
  std::uint64_t r = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = Budget::kDefaultCells;
  std::string out;
  std::string format;  // empty = command default

  // epsilon
  std::string kind = "axu2";
  std::uint64_t sample = 0;
  // uc-distance / impersonate
  bool recycle = false;
  bool worst_case = false;
  std::uint64_t x = 0;
  std::uint64_t x_prime = 1;
  std::uint32_t delta = 0;
  std::string protocol = "wc";
  unsigned protocol_m = 2;
  std::string y;
  // attack
  std::uint64_t trials = 0;
  // compose
  std::string simulate;
  // roundtrip
  std::uint64_t k1 = 0;
  std::uint32_t k2 = 0;
  std::uint64_t message = 0;
  // fieldtab
  unsigned m = 2;
};

namespace detail {

inline HashFamily need_family(const RunConfig& c) {
  if (c.family.empty()) throw UsageError("--family is required for this command");
  return parse_family(c.family);
}

inline std::string resolve_format(const RunConfig& c, const char* fallback) {
  const std::string f = c.format.empty() ? fallback : c.format;
  if (f != "json" && f != "csv") throw UsageError("--format must be json or csv");
  return f;
}

inline std::string dump(const report::Json& j) { return j.dump(2) + "\n"; }

inline TaggedMessage parse_y(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--y expects 'x,t'");
  try {
    std::size_t used = 0;
    const auto x = std::stoull(text.substr(0, comma), &used);
    if (used != comma) throw UsageError("--y expects 'x,t'");
    const auto rest = text.substr(comma + 1);
    const auto t = std::stoul(rest, &used);
    if (used != rest.size()) throw UsageError("--y expects 'x,t'");
    return TaggedMessage{x, FieldElem(static_cast<std::uint32_t>(t))};
  } catch (const std::logic_error&) {
    throw UsageError("--y expects 'x,t'");
  }
}

inline std::string cmd_epsilon(const RunConfig& c) {
  const HashFamily fam = need_family(c);
  const Budget budget{c.budget};
  const std::string fmt = resolve_format(c, "json");
  report::Json j{{"family", fam.descriptor()}};
  std::string eps;
  if (c.kind == "axu2" && c.sample > 0) {
    const auto s = sample_axu2(fam, c.sample, c.seed);
    j.update(report::to_json(s));
    j["seed"] = c.seed;
    eps = report::fmt_double(s.estimate);
  } else if (c.kind == "axu2") {
    const auto m = measure_axu2(fam, budget);
    j.update(report::to_json(m));
    eps = to_string(m.epsilon);
  } else if (c.kind == "asu2") {
    if (c.sample > 0) throw UsageError("--sample applies to --kind axu2 only");
    const auto m = measure_asu2(fam, budget);
    j.update(report::to_json(m));
    eps = to_string(m.epsilon);
  } else {
    throw UsageError("--kind must be axu2 or asu2");
  }
  if (fmt == "json") return dump(j);
  return "family,kind,epsilon\n" + fam.descriptor() + "," + j["kind"].get<std::string>() + "," + eps + "\n";
}

template <AuthProtocol P>
report::Json uc_distance_for(const P& p, const RunConfig& c, const Budget& budget) {
  report::Json j{{"protocol", p.name()}};
  if (c.worst_case) {
    j.update(report::to_json(worst_case_distance(p, budget)));
    return j;
  }
  if (c.x >= p.message_count() || c.x_prime >= p.message_count() || c.delta >= p.tag_count())
    throw UsageError("--x, --x-prime or --delta outside the encoding space");
  const auto env = EnvStrategy::fixed_substitution(p.message_count(), p.tag_count(), c.x, c.x_prime, FieldElem(c.delta));
  j["distance"] = to_string(run_distance(p, env, budget));
  j["strategy"] = report::to_json(env);
  return j;
}

inline std::string cmd_uc_distance(const RunConfig& c) {
  const Budget budget{c.budget};
  const std::string fmt = resolve_format(c, "json");
  report::Json j;
  if (c.protocol == "counterexample") {
    j = uc_distance_for(counterexample_protocol(c.protocol_m), c, budget);
  } else if (c.protocol == "wc") {
    const HashFamily fam = need_family(c);
    j = c.recycle ? uc_distance_for(RecyclingAuth(fam), c, budget) : uc_distance_for(StandardAuth(fam), c, budget);
    j["recycle"] = c.recycle;
  } else {
    throw UsageError("--protocol must be wc or counterexample");
  }
  if (fmt == "json") return dump(j);
  std::string csv = "quantity,distance\n";
  for (const char* key : {"distance", "substitution_distance", "impersonation_distance"})
    if (j.contains(key)) csv += std::string(key) + "," + j[key].get<std::string>() + "\n";
  return csv;
}

template <AuthProtocol P>
report::Json impersonate_for(const P& p, const RunConfig& c, const Budget& budget) {
  report::Json j{{"protocol", p.name()}};
  if (c.y.empty()) {
    budget.require(saturating_mul(p.key_count(), saturating_mul(p.message_count(), p.tag_count())),
                   "impersonation search over " + p.name());
    const auto [d, y] = max_impersonation_distance(p, budget);
    j["y_prime"] = report::to_json(y);
    j["distance"] = to_string(d);
    j["maximized"] = true;
  } else {
    const TaggedMessage y = parse_y(c.y);
    if (y.x >= p.message_count() || y.t.value >= p.tag_count()) throw UsageError("--y outside the encoding space");
    j["y_prime"] = report::to_json(y);
    j["distance"] = to_string(impersonation_distance(p, y, budget));
    j["maximized"] = false;
  }
  return j;
}

inline std::string cmd_impersonate(const RunConfig& c) {
  const Budget budget{c.budget};
  const std::string fmt = resolve_format(c, "json");
  report::Json j;
  if (c.protocol == "counterexample") {
    j = impersonate_for(counterexample_protocol(c.protocol_m), c, budget);
  } else if (c.protocol == "wc") {
    const HashFamily fam = need_family(c);
    j = c.recycle ? impersonate_for(RecyclingAuth(fam), c, budget) : impersonate_for(StandardAuth(fam), c, budget);
    j["recycle"] = c.recycle;
  } else {
    throw UsageError("--protocol must be wc or counterexample");
  }
  if (fmt == "json") return dump(j);
  const auto& yp = j["y_prime"];
  return "x,t,distance\n" + std::to_string(yp["x"].get<std::uint64_t>()) + "," +
         std::to_string(yp["t"].get<std::uint32_t>()) + "," + j["distance"].get<std::string>() + "\n";
}

inline std::string cmd_attack(const RunConfig& c) {
  const HashFamily fam = need_family(c);
  const Budget budget{c.budget};
  const std::string fmt = resolve_format(c, "csv");
  const std::uint64_t rounds = c.rounds == 0 ? fam.tag_count() : c.rounds;
  if (rounds > fam.tag_count()) throw UsageError("--rounds exceeds the tag count");
  std::vector<AttackReport> reports;
  for (std::uint64_t l = 0; l <= rounds; ++l) reports.push_back(run_attack_exact(fam, l, budget));
  std::optional<MonteCarloResult> mc;
  if (c.trials > 0) mc = run_attack_montecarlo(fam, rounds, c.trials, c.seed);

  if (fmt == "csv") {
    std::string csv = report::attack_csv_header();
    for (const auto& r : reports) csv += report::attack_csv_row(r);
    if (mc) {
      csv += "\ntrials,successes,rate,expected,lower,upper,within_three_sigma\n";
      csv += std::to_string(mc->trials) + "," + std::to_string(mc->successes) + "," + report::fmt_double(mc->rate) +
             "," + to_string(mc->expected) + "," + report::fmt_double(mc->lower) + "," + report::fmt_double(mc->upper) +
             "," + (mc->within_three_sigma() ? "true" : "false") + "\n";
    }
    return csv;
  }
  report::Json arr = report::Json::array();
  for (const auto& r : reports) arr.push_back(report::to_json(r));
  report::Json j{{"family", fam.descriptor()}, {"reports", arr}};
  if (mc) {
    j["montecarlo"] = report::to_json(*mc);
    j["seed"] = c.seed;
  }
  return dump(j);
}

inline std::string cmd_compose(const RunConfig& c) {
  const HashFamily fam = need_family(c);
  const Budget budget{c.budget};
  const std::string fmt = resolve_format(c, "csv");
  const std::uint64_t l = c.rounds == 0 ? 1 : c.rounds;
  Rational eps_prime;
  try {
    eps_prime = parse_rational(c.qkd_eps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--qkd-eps: ") + e.what());
  }
  const ToyQkdFunctionality qkd(0, eps_prime);
  const ComposeResult res = compose_run(fam, c.r, l, qkd, budget);
  std::optional<ComposeSimulation> sim;
  if (!c.simulate.empty()) {
    ComposeEnv env;
    if (c.simulate == "list") env = ComposeEnv::list_elimination;
    else if (c.simulate == "identity") env = ComposeEnv::identity;
    else throw UsageError("--simulate must be list or identity");
    sim = compose_simulate_exact(fam, c.r, l, env, budget);
  }
  if (fmt == "csv") {
    std::string csv = report::ledger_csv(res);
    if (sim) csv += "simulated_distance,,," + to_string(sim->distance) + "\n";
    return csv;
  }
  report::Json j{{"family", fam.descriptor()}, {"r", c.r}, {"l", l}, {"qkd_eps", to_string(eps_prime)}};
  j.update(report::to_json(res));
  if (sim) {
    j["simulation"] = report::to_json(*sim);
    j["simulation"]["environment"] = c.simulate;
  }
  return dump(j);
}

inline std::string hex(const std::vector<std::uint8_t>& bytes) {
  std::ostringstream os;
  for (auto b : bytes) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<unsigned>(b);
  return os.str();
}

inline std::string cmd_roundtrip(const RunConfig& c) {
  const HashFamily fam = need_family(c);
  const std::string fmt = resolve_format(c, "json");
  const AuthKey key{c.k1, FieldElem(c.k2)};
  const TaggedMessage y = authenticate(fam, key, c.message);
  const auto wire = encode_wire(fam, y);
  const TaggedMessage back = decode_wire(fam, wire);
  const auto out = verify(fam, key, back);
  if (fmt == "csv")
    return "x,t,wire,accepted\n" + std::to_string(y.x) + "," + std::to_string(y.t.value) + "," + hex(wire) + "," +
           (out ? "true" : "false") + "\n";
  report::Json j{{"family", fam.descriptor()},
                 {"k1", c.k1},
                 {"k2", c.k2},
                 {"y", report::to_json(y)},
                 {"wire", hex(wire)},
                 {"decoded", report::to_json(back)}};
  j["output"] = out ? report::Json(*out) : report::Json(nullptr);
  return dump(j);
}

inline std::string cmd_fieldtab(const RunConfig& c) {
  const FieldCtx ctx(c.m);
  const std::string fmt = resolve_format(c, "csv");
  Budget{c.budget}.require(saturating_mul(ctx.size(), ctx.size()), "multiplication table of GF(2^" +
                                                                       std::to_string(c.m) + ")");
  if (fmt == "csv") {
    std::string csv = "a,b,product\n";
    for (std::uint32_t a = 0; a < ctx.size(); ++a)
      for (std::uint32_t b = 0; b < ctx.size(); ++b)
        csv += std::to_string(a) + "," + std::to_string(b) + "," +
               std::to_string(ctx.mul(FieldElem(a), FieldElem(b)).value) + "\n";
    return csv;
  }
  report::Json rows = report::Json::array();
  for (std::uint32_t a = 0; a < ctx.size(); ++a) {
    report::Json row = report::Json::array();
    for (std::uint32_t b = 0; b < ctx.size(); ++b) row.push_back(ctx.mul(FieldElem(a), FieldElem(b)).value);
    rows.push_back(row);
  }
  return dump(report::Json{{"m", c.m}, {"modulus", ctx.modulus()}, {"table", rows}});
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Wegman-Carter authentication with key recycling: exact measurements and experiments", "wcr"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--family", c.family, "mul:m=<m> | poly:m=<m>,L=<L> | toeplitz:n=<n>,m=<m> | "
                                       "counterexample:m=<m> | table:@<file> | lift:<descriptor>");
  app.add_option("--rounds", c.rounds, "authentications l (attack: up to l; compose: per key-distribution round)");
  app.add_option("--qkd-eps", c.qkd_eps, "declared key-distribution error as num/den");
  app.add_option("--r", c.r, "key-distribution rounds")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "seed for sampling and Monte Carlo");
  app.add_option("--budget", c.budget, "enumeration budget in cells")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "write output here instead of stdout");
  app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* eps = app.add_subcommand("epsilon", "exact AXU_2 / ASU_2 parameter of a family");
  eps->add_option("--kind", c.kind, "axu2 or asu2")->check(CLI::IsMember({"axu2", "asu2"}));
  eps->add_option("--sample", c.sample, "sample this many keys instead of enumerating");

  auto* uc = app.add_subcommand("uc-distance", "real/ideal distance for a substitution strategy or the worst case");
  uc->add_flag("--recycle", c.recycle, "recycle k1 and hand it to the environment");
  uc->add_flag("--worst-case", c.worst_case, "maximize over all environment strategies");
  uc->add_option("--x", c.x, "message sent");
  uc->add_option("--x-prime", c.x_prime, "substituted message");
  uc->add_option("--delta", c.delta, "tag offset of the substitution");
  uc->add_option("--protocol", c.protocol, "wc or counterexample")->check(CLI::IsMember({"wc", "counterexample"}));
  uc->add_option("--m", c.protocol_m, "tag bits of the counterexample protocol");

  auto* imp = app.add_subcommand("impersonate", "distance of an injected y' (maximized when --y is omitted)");
  imp->add_option("--y", c.y, "forged encoding as x,t");
  imp->add_flag("--recycle", c.recycle, "recycle k1 and hand it to the environment");
  imp->add_option("--protocol", c.protocol, "wc or counterexample")->check(CLI::IsMember({"wc", "counterexample"}));
  imp->add_option("--m", c.protocol_m, "tag bits of the counterexample protocol");

  auto* atk = app.add_subcommand("attack", "list-elimination attack: exact success and key entropy per round");
  atk->add_option("--trials", c.trials, "also run this many Monte Carlo trials");

  auto* comp = app.add_subcommand("compose", "error ledger of r key-distribution rounds with l authentications each");
  comp->add_option("--simulate", c.simulate, "also enumerate the multi-round execution: list or identity")
      ->check(CLI::IsMember({"list", "identity"}));

  auto* rt = app.add_subcommand("roundtrip", "authenticate, encode, decode and verify one message");
  rt->add_option("--k1", c.k1, "hash key index");
  rt->add_option("--k2", c.k2, "pad");
  rt->add_option("--message", c.message, "message index");

  auto* ft = app.add_subcommand("fieldtab", "multiplication table of GF(2^m)");
  ft->add_option("--m", c.m, "field bits");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  std::string text;
  try {
    if (eps->parsed()) text = detail::cmd_epsilon(c);
    else if (uc->parsed()) text = detail::cmd_uc_distance(c);
    else if (imp->parsed()) text = detail::cmd_impersonate(c);
    else if (atk->parsed()) text = detail::cmd_attack(c);
    else if (comp->parsed()) text = detail::cmd_compose(c);
    else if (rt->parsed()) text = detail::cmd_roundtrip(c);
    else text = detail::cmd_fieldtab(c);
  } catch (const BudgetExceeded& e) {
    err << "budget refused: " << e.what() << "\n";
    return kExitBudget;
  } catch (const DescriptorError& e) {
    err << "error: " << e.what() << "\nfamily grammar: " << app.get_option("--family")->get_description() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    // DomainError, HypothesisError, UsageError, out_of_range and friends.
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (c.out.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) {
    err << "error: cannot write " << c.out << "\n";
    return kExitUsage;
  }
  file << text;
  return kExitOk;
}

}  // namespace wcr::cli
