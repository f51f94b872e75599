// Copyright 2026 The infoagg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INFOAGG_JSON_IO_H_
#define INFOAGG_JSON_IO_H_

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "infoagg/extended.hpp"
#include "infoagg/game.hpp"

namespace infoagg {

using Json = nlohmann::ordered_json;

// Either flavor of game a file can carry; "model" selects, default "base".
using AnyGame = std::variant<Game, ExtendedGame>;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValueError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Stable digest of raw input bytes, echoed in every command's output so a
// result can be tied to the exact files that produced it.
inline std::string digest(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4)
    out += hex[(h >> shift) & 0xF];
  return out;
}

namespace internal {

inline const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    throw ValueError(std::string("missing field \"") + name + "\"");
  return *it;
}

inline Rational rational_field(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ValueError("expected a rational encoded as a string");
}

inline UtilityPair utility_pair(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ValueError("a utility entry must be a pair [u(action 0), "
                     "u(action 1)]");
  return UtilityPair{rational_field(j[0]), rational_field(j[1])};
}

inline Game parse_base_game(const Json& j) {
  const Json& jstates = field(j, "states");
  if (!jstates.is_array()) throw ValueError("\"states\" must be an array");
  std::vector<std::string> states;
  for (const Json& s : jstates) {
    if (!s.is_string()) throw ValueError("state names must be strings");
    states.push_back(s.get<std::string>());
  }

  const Json& jprior = field(j, "prior");
  if (!jprior.is_array()) throw ValueError("\"prior\" must be an array");
  std::vector<Rational> prior;
  for (const Json& p : jprior) prior.push_back(rational_field(p));

  const Json& jsenders = field(j, "senders");
  if (!jsenders.is_number_integer())
    throw ValueError("\"senders\" must be an integer");
  const long long n = jsenders.get<long long>();

  auto utility_row = [&](const Json& row) {
    if (!row.is_object())
      throw ValueError("a utility table must map state names to pairs");
    std::vector<UtilityPair> out;
    for (const std::string& w : states) {
      auto it = row.find(w);
      if (it == row.end())
        throw ValueError("utility table misses state " + w);
      out.push_back(utility_pair(*it));
    }
    if (row.size() != states.size())
      throw ValueError("utility table mentions an unknown state");
    return out;
  };

  std::vector<UtilityPair> receiver_u = utility_row(field(j, "receiver_utility"));
  const Json& jsender_u = field(j, "sender_utility");
  if (!jsender_u.is_array())
    throw ValueError("\"sender_utility\" must be an array");
  if (static_cast<long long>(jsender_u.size()) != n)
    throw ValueError("\"senders\" is " + std::to_string(n) + " but " +
                     std::to_string(jsender_u.size()) +
                     " sender utility tables were given");
  std::vector<std::vector<UtilityPair>> sender_u;
  for (const Json& row : jsender_u) sender_u.push_back(utility_row(row));

  return Game(std::move(states), std::move(prior), std::move(receiver_u),
              std::move(sender_u));
}

inline ExtendedGame parse_extended_game(const Json& j) {
  const Json& jsignals = field(j, "signals");
  if (!jsignals.is_array())
    throw ValueError("\"signals\" must be an array of alphabets");
  std::vector<std::vector<std::string>> alphabets;
  for (const Json& a : jsignals) {
    if (!a.is_array()) throw ValueError("each alphabet must be an array");
    std::vector<std::string> names;
    for (const Json& s : a) {
      if (!s.is_string()) throw ValueError("signal names must be strings");
      names.push_back(s.get<std::string>());
    }
    alphabets.push_back(std::move(names));
  }

  auto signal_index = [&](int sender, const std::string& name) {
    const std::vector<std::string>& alphabet = alphabets[sender];
    for (size_t v = 0; v < alphabet.size(); ++v)
      if (alphabet[v] == name) return static_cast<int>(v);
    throw ValueError("unknown signal \"" + name + "\" for sender " +
                     std::to_string(sender + 1));
  };

  const Json& jsupport = field(j, "support");
  if (!jsupport.is_array()) throw ValueError("\"support\" must be an array");
  std::vector<SupportEntry> support;
  for (const Json& je : jsupport) {
    SupportEntry e;
    const Json& jprofile = field(je, "profile");
    if (!jprofile.is_array() || jprofile.size() != alphabets.size())
      throw ValueError("a support profile must list one signal per sender");
    for (size_t i = 0; i < jprofile.size(); ++i) {
      if (!jprofile[i].is_string())
        throw ValueError("support profiles must use signal names");
      e.profile.push_back(
          signal_index(static_cast<int>(i), jprofile[i].get<std::string>()));
    }
    e.prob = rational_field(field(je, "prob"));
    e.receiver_u = utility_pair(field(je, "receiver_utility"));
    const Json& jutil = field(je, "sender_utility");
    if (!jutil.is_array() || jutil.size() != alphabets.size())
      throw ValueError("support utilities must list one pair per sender");
    for (const Json& u : jutil) e.sender_u.push_back(utility_pair(u));
    support.push_back(std::move(e));
  }
  return ExtendedGame(std::move(alphabets), std::move(support));
}

}  // namespace internal

inline AnyGame parse_game(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ValueError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValueError("a game file must hold a JSON object");
  std::string model = "base";
  if (auto it = j.find("model"); it != j.end()) {
    if (!it->is_string()) throw ValueError("\"model\" must be a string");
    model = it->get<std::string>();
  }
  if (model == "base") return internal::parse_base_game(j);
  if (model == "extended") return internal::parse_extended_game(j);
  throw ValueError("unknown model \"" + model +
                   "\"; expected \"base\" or \"extended\"");
}

// Key identifying a support entry in outcome files and reports: the signal
// names of its profile, comma-joined.
inline std::string profile_key(const ExtendedGame& xg,
                               const std::vector<int>& profile) {
  std::string key;
  for (int i = 0; i < xg.num_senders(); ++i) {
    if (i) key += ",";
    key += xg.alphabets()[i][profile[i]];
  }
  return key;
}

inline Outcome parse_outcome(const std::string& text, const Game& g) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ValueError(std::string("invalid JSON: ") + e.what());
  }
  const Json& jmap = internal::field(j, "o_star");
  if (!jmap.is_object())
    throw ValueError("\"o_star\" must map state names to rationals");
  Outcome o;
  o.o_star.resize(g.num_states());
  for (const auto& [key, value] : jmap.items()) {
    const int w = g.state_index(key);
    if (w < 0) throw ValueError("outcome mentions unknown state " + key);
    o.o_star[w] = internal::rational_field(value);
  }
  if (jmap.size() != static_cast<size_t>(g.num_states()))
    throw ValueError("outcome does not assign a value to every state");
  validate_outcome(g, o);
  return o;
}

inline Outcome parse_outcome_extended(const std::string& text,
                                      const ExtendedGame& xg) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ValueError(std::string("invalid JSON: ") + e.what());
  }
  const Json& jmap = internal::field(j, "o_star");
  if (!jmap.is_object())
    throw ValueError("\"o_star\" must map support profiles to rationals");
  Outcome o;
  o.o_star.resize(xg.support_size());
  std::vector<bool> seen(xg.support_size(), false);
  for (const auto& [key, value] : jmap.items()) {
    int entry = -1;
    for (int t = 0; t < xg.support_size(); ++t)
      if (profile_key(xg, xg.support()[t].profile) == key) { entry = t; break; }
    if (entry < 0)
      throw ValueError("outcome mentions unknown support profile " + key);
    seen[entry] = true;
    o.o_star[entry] = internal::rational_field(value);
  }
  for (int t = 0; t < xg.support_size(); ++t)
    if (!seen[t])
      throw ValueError("outcome does not assign a value to every support "
                       "entry");
  validate_outcome_extended(xg, o);
  return o;
}

inline Json outcome_to_json(const Game& g, const Outcome& o) {
  Json map = Json::object();
  for (int w = 0; w < g.num_states(); ++w)
    map[g.states()[w]] = format_rational(o.o_star[w]);
  return Json{{"o_star", map}};
}

inline Json outcome_to_json(const ExtendedGame& xg, const Outcome& o) {
  Json map = Json::object();
  for (int t = 0; t < xg.support_size(); ++t)
    map[profile_key(xg, xg.support()[t].profile)] =
        format_rational(o.o_star[t]);
  return Json{{"o_star", map}};
}

inline Json game_to_json(const Game& g) {
  Json j;
  j["model"] = "base";
  j["states"] = g.states();
  Json prior = Json::array();
  for (const Rational& p : g.prior()) prior.push_back(format_rational(p));
  j["prior"] = prior;
  j["senders"] = g.num_senders();
  auto row = [&](int player) {
    Json out = Json::object();
    for (int w = 0; w < g.num_states(); ++w) {
      const UtilityPair& u = g.utility(player, w);
      out[g.states()[w]] =
          Json::array({format_rational(u.act0), format_rational(u.act1)});
    }
    return out;
  };
  j["receiver_utility"] = row(kReceiver);
  Json senders = Json::array();
  for (int i = 0; i < g.num_senders(); ++i) senders.push_back(row(i));
  j["sender_utility"] = senders;
  return j;
}

inline Json game_to_json(const ExtendedGame& xg) {
  Json j;
  j["model"] = "extended";
  j["signals"] = xg.alphabets();
  Json support = Json::array();
  for (const SupportEntry& e : xg.support()) {
    Json je;
    Json profile = Json::array();
    for (int i = 0; i < xg.num_senders(); ++i)
      profile.push_back(xg.alphabets()[i][e.profile[i]]);
    je["profile"] = profile;
    je["prob"] = format_rational(e.prob);
    je["receiver_utility"] = Json::array(
        {format_rational(e.receiver_u.act0), format_rational(e.receiver_u.act1)});
    Json senders = Json::array();
    for (const UtilityPair& u : e.sender_u)
      senders.push_back(
          Json::array({format_rational(u.act0), format_rational(u.act1)}));
    je["sender_utility"] = senders;
    support.push_back(std::move(je));
  }
  j["support"] = support;
  return j;
}

}  // namespace infoagg

#endif  // INFOAGG_JSON_IO_H_
