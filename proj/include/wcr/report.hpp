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

// JSON and CSV renderings. Exact values are emitted as "num/den" strings so
// output is byte-stable; doubles appear only next to their exact source.

#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wcr/attack.hpp"
#include "wcr/compose.hpp"
#include "wcr/measure.hpp"
#include "wcr/ucsim.hpp"

namespace wcr::report {

using Json = nlohmann::ordered_json;

/// Fixed 12-significant-digit rendering, independent of the stream locale.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline Json to_json(const TaggedMessage& y) { return Json{{"x", y.x}, {"t", y.t.value}}; }

inline Json to_json(const AxuMeasurement& m) {
  Json j{{"kind", "axu2"}, {"epsilon", to_string(m.epsilon)}};
  if (m.witness) j["witness"] = Json{{"x1", m.witness->x1}, {"x2", m.witness->x2}, {"t", m.witness->t.value}};
  else j["witness"] = nullptr;
  return j;
}

inline Json to_json(const AsuMeasurement& m) {
  Json j{{"kind", "asu2"}, {"epsilon", to_string(m.epsilon)}};
  if (m.witness)
    j["witness"] = Json{{"x1", m.witness->x1}, {"x2", m.witness->x2}, {"t1", m.witness->t1.value},
                        {"t2", m.witness->t2.value}};
  else j["witness"] = nullptr;
  return j;
}

inline Json to_json(const SampledEpsilon& s) {
  return Json{{"kind", "axu2-sampled"},
              {"estimate", fmt_double(s.estimate)},
              {"lower", fmt_double(s.lower)},
              {"upper", fmt_double(s.upper)},
              {"key_samples", s.key_samples},
              {"pairs_tested", s.pairs_tested}};
}

inline Json to_json(const EnvStrategy& env) {
  if (env.mode == EnvStrategy::Mode::impersonation)
    return Json{{"mode", "impersonation"}, {"y_prime", to_json(env.forged)}};
  Json msgs = Json::array();
  for (const auto& [x, w] : env.messages) msgs.push_back(Json{{"x", x}, {"p", to_string(w)}});
  Json subst = Json::array();
  for (const auto& [y, yp] : env.subst.changes()) subst.push_back(Json{{"y", to_json(y)}, {"y_prime", to_json(yp)}});
  return Json{{"mode", "substitution"}, {"messages", msgs}, {"substitutions", subst}};
}

inline Json to_json(const WorstCase& w) {
  return Json{{"distance", to_string(w.distance)},
              {"witness", to_json(w.witness)},
              {"substitution_distance", to_string(w.substitution_distance)},
              {"substitution_witness", to_json(w.substitution_witness)},
              {"impersonation_distance", to_string(w.impersonation_distance)},
              {"impersonation_witness", to_json(w.impersonation_witness)}};
}

inline Json to_json(const AttackReport& r) {
  Json cond = Json::array();
  for (const auto& c : r.per_round_conditional) cond.push_back(to_string(c));
  return Json{{"rounds", r.rounds},
              {"key_count", r.key_count},
              {"tag_count", r.tag_count},
              {"x", r.x},
              {"x_prime", r.x_prime},
              {"success", to_string(r.success_prob)},
              {"per_round_conditional", cond},
              {"entropy_exact", r.entropy_bits.to_string()},
              {"entropy_exact_bits", fmt_double(r.entropy_bits.value())},
              {"entropy_formula", r.entropy_formula_bits.to_string()},
              {"entropy_formula_bits", fmt_double(r.entropy_formula_bits.value())},
              {"regular_classes", r.regular_classes}};
}

inline Json to_json(const MonteCarloResult& m) {
  return Json{{"trials", m.trials},     {"successes", m.successes},         {"rate", fmt_double(m.rate)},
              {"expected", to_string(m.expected)}, {"sigma", fmt_double(m.sigma)},
              {"lower", fmt_double(m.lower)},      {"upper", fmt_double(m.upper)},
              {"within_three_sigma", m.within_three_sigma()}};
}

inline Json to_json(const ComposeResult& c) {
  Json entries = Json::array();
  for (const auto& e : c.ledger.entries())
    entries.push_back(Json{{"round", e.round},
                           {"component", e.component},
                           {"label", e.label},
                           {"epsilon", to_string(e.epsilon)},
                           {"cumulative", to_string(e.cumulative)}});
  return Json{{"auth_epsilon", to_string(c.auth_epsilon)}, {"ledger", entries}, {"bound", to_string(c.bound)}};
}

inline Json to_json(const ComposeSimulation& s) {
  return Json{{"rounds", s.rounds},
              {"distance", to_string(s.distance)},
              {"forgery_probability", to_string(s.forgery_probability)},
              {"real_support", s.real.size()},
              {"ideal_support", s.ideal.size()}};
}

/// round,component,epsilon,cumulative rows followed by a bound row.
inline std::string ledger_csv(const ComposeResult& c) {
  std::ostringstream os;
  os << "round,component,epsilon,cumulative\n";
  for (const auto& e : c.ledger.entries())
    os << e.round << ',' << e.component << ',' << to_string(e.epsilon) << ',' << to_string(e.cumulative) << '\n';
  os << "bound,,," << to_string(c.bound) << '\n';
  return os.str();
}

inline std::string attack_csv_header() { return "l,success_exact,success_formula,entropy_exact,entropy_formula\n"; }

inline std::string attack_csv_row(const AttackReport& r) {
  const Rational formula(BigInt(r.rounds), BigInt(r.tag_count));
  std::ostringstream os;
  os << r.rounds << ',' << to_string(r.success_prob) << ',' << to_string(formula) << ','
     << fmt_double(r.entropy_bits.value()) << ',' << fmt_double(r.entropy_formula_bits.value()) << '\n';
  return os.str();
}

}  // namespace wcr::report
