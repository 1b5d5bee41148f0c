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

// Family descriptor grammar:
//
//   mul:m=<bits>
//   poly:m=<bits>,L=<blocks>
//   toeplitz:n=<input bits>,m=<bits>
//   counterexample:m=<bits>
//   table:@<path to json>
//   lift:<descriptor>
//
// Table files: {"keys": K, "messages": [...], "table": [[tag, ...], ...],
// "m": bits (optional)}; one row of |X| tags per key.

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wcr/hash_family.hpp"

namespace wcr {

class DescriptorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::map<std::string, unsigned, std::less<>> parse_params(std::string_view body, std::string_view desc) {
  std::map<std::string, unsigned, std::less<>> out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const auto item = body.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw DescriptorError("malformed parameter '" + std::string(item) + "' in '" + std::string(desc) + "'");
    unsigned value = 0;
    const auto digits = item.substr(eq + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty())
      throw DescriptorError("parameter '" + std::string(item) + "' is not an unsigned integer");
    if (!out.emplace(std::string(item.substr(0, eq)), value).second)
      throw DescriptorError("duplicate parameter in '" + std::string(desc) + "'");
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

inline unsigned take(std::map<std::string, unsigned, std::less<>>& params, std::string_view name,
                     std::string_view desc) {
  auto it = params.find(name);
  if (it == params.end())
    throw DescriptorError("missing parameter '" + std::string(name) + "' in '" + std::string(desc) + "'");
  const unsigned v = it->second;
  params.erase(it);
  return v;
}

inline void expect_empty(const std::map<std::string, unsigned, std::less<>>& params, std::string_view desc) {
  if (!params.empty())
    throw DescriptorError("unknown parameter '" + params.begin()->first + "' in '" + std::string(desc) + "'");
}

}  // namespace detail

/// Builds a table family from the JSON file schema. `source` is kept for the
/// descriptor round trip.
inline HashFamily table_from_json(const nlohmann::json& doc, std::string source = {}) {
  if (!doc.is_object()) throw DescriptorError("table file must hold a JSON object");
  for (const char* field : {"keys", "messages", "table"}) {
    if (!doc.contains(field)) throw DescriptorError(std::string("table file is missing '") + field + "'");
  }
  const auto keys = doc.at("keys").get<std::uint64_t>();
  std::vector<std::string> labels;
  for (const auto& msg : doc.at("messages")) labels.push_back(msg.is_string() ? msg.get<std::string>() : msg.dump());
  const auto& rows = doc.at("table");
  if (!rows.is_array() || rows.size() != keys)
    throw DescriptorError("table must have exactly 'keys' rows");
  std::vector<std::uint32_t> tags;
  tags.reserve(keys * labels.size());
  std::uint32_t max_tag = 0;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != labels.size())
      throw DescriptorError("every table row must have one tag per message");
    for (const auto& tag : row) {
      if (!tag.is_number_unsigned()) throw DescriptorError("tags must be unsigned integers");
      const auto t = tag.get<std::uint64_t>();
      if (t >= (std::uint64_t{1} << FieldCtx::kMaxBits)) throw DescriptorError("tag exceeds 16 bits");
      tags.push_back(static_cast<std::uint32_t>(t));
      max_tag = std::max(max_tag, static_cast<std::uint32_t>(t));
    }
  }
  unsigned m = std::max(1u, static_cast<unsigned>(std::bit_width(max_tag)));
  if (doc.contains("m")) m = doc.at("m").get<unsigned>();
  try {
    return HashFamily::table(m, keys, std::move(labels), std::move(tags), std::move(source));
  } catch (const DomainError& e) {
    throw DescriptorError(e.what());
  }
}

inline HashFamily load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DescriptorError("cannot open table file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DescriptorError("table file '" + path + "' is not valid JSON: " + e.what());
  }
  return table_from_json(doc, path);
}

inline nlohmann::json table_to_json(const HashFamily& fam) {
  nlohmann::ordered_json doc;
  doc["keys"] = fam.key_count();
  doc["m"] = fam.tag_bits();
  auto messages = nlohmann::ordered_json::array();
  for (MessageId x = 0; x < fam.message_count(); ++x) messages.push_back(fam.message_label(x));
  doc["messages"] = messages;
  auto rows = nlohmann::ordered_json::array();
  for (KeyIndex k = 0; k < fam.key_count(); ++k) {
    auto row = nlohmann::ordered_json::array();
    for (MessageId x = 0; x < fam.message_count(); ++x) row.push_back(fam.eval_unchecked(k, x).value);
    rows.push_back(row);
  }
  doc["table"] = rows;
  return nlohmann::json(doc);
}

/// Parses a family descriptor. Throws DescriptorError on grammar errors and
/// on parameters the family constructors reject.
inline HashFamily parse_family(std::string_view desc) {
  const auto colon = desc.find(':');
  if (colon == std::string_view::npos)
    throw DescriptorError("family descriptor '" + std::string(desc) + "' has no ':'");
  const auto name = desc.substr(0, colon);
  const auto body = desc.substr(colon + 1);
  try {
    if (name == "lift") return lift_to_asu2(parse_family(body));
    if (name == "table") {
      if (body.empty() || body.front() != '@') throw DescriptorError("table descriptor must be 'table:@<file>'");
      return load_table_file(std::string(body.substr(1)));
    }
    auto params = detail::parse_params(body, desc);
    if (name == "mul") {
      const unsigned m = detail::take(params, "m", desc);
      detail::expect_empty(params, desc);
      return HashFamily::mul(m);
    }
    if (name == "poly") {
      const unsigned m = detail::take(params, "m", desc);
      const unsigned blocks = detail::take(params, "L", desc);
      detail::expect_empty(params, desc);
      return HashFamily::poly(m, blocks);
    }
    if (name == "toeplitz") {
      const unsigned n = detail::take(params, "n", desc);
      const unsigned m = detail::take(params, "m", desc);
      detail::expect_empty(params, desc);
      return HashFamily::toeplitz(n, m);
    }
    if (name == "counterexample") {
      const unsigned m = detail::take(params, "m", desc);
      detail::expect_empty(params, desc);
      return HashFamily::counterexample(m);
    }
  } catch (const DomainError& e) {
    throw DescriptorError(std::string(e.what()) + " (in '" + std::string(desc) + "')");
  }
  throw DescriptorError("unknown family kind '" + std::string(name) +
                        "'; expected mul, poly, toeplitz, counterexample, table or lift");
}

}  // namespace wcr
