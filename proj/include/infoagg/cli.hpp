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

#ifndef INFOAGG_CLI_H_
#define INFOAGG_CLI_H_

#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "infoagg/extended.hpp"
#include "infoagg/game.hpp"
#include "infoagg/json_io.hpp"
#include "infoagg/mediator.hpp"
#include "infoagg/optimize.hpp"
#include "infoagg/order.hpp"
#include "infoagg/simulate.hpp"
#include "infoagg/verify.hpp"

namespace infoagg {
namespace cli {

// Exit codes: 0 success / feasible / pass, 1 infeasible / violation /
// not separable, 2 usage or input error.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

namespace internal {

inline Mode parse_mode(const std::string& s) {
  if (s == "weak") return Mode::kResilient;
  if (s == "strong") return Mode::kStrong;
  throw ValueError("unknown mode \"" + s + "\"; expected weak or strong");
}

inline Objective parse_objective(const std::string& s, int num_senders) {
  if (s == "receiver") return Objective::receiver();
  if (s.rfind("sender:", 0) == 0) {
    const std::string arg = s.substr(7);
    try {
      size_t used = 0;
      const int i = std::stoi(arg, &used);
      if (used != arg.size() || i < 1) throw std::invalid_argument(arg);
      return Objective::for_sender(i - 1);
    } catch (const std::exception&) {
      throw ValueError("objective sender index must be a positive integer, "
                       "got \"" + arg + "\"");
    }
  }
  if (s == "welfare") return Objective::welfare({});
  if (s.rfind("welfare:", 0) == 0) {
    std::vector<Rational> weights;
    std::string rest = s.substr(8);
    size_t start = 0;
    while (start <= rest.size()) {
      const size_t comma = rest.find(',', start);
      const std::string tok =
          rest.substr(start, comma == std::string::npos ? std::string::npos
                                                        : comma - start);
      weights.push_back(parse_rational(tok));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(weights.size()) != num_senders + 1)
      throw ValueError("welfare weights must list the receiver and every "
                       "sender");
    return Objective::welfare(std::move(weights));
  }
  throw ValueError("unknown objective \"" + s +
                   "\"; expected receiver, sender:i or welfare[:weights]");
}

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    const size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma == std::string::npos
                                      ? std::string::npos
                                      : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline Json separability_witness_json(const ExtendedGame& xg,
                                      const SeparabilityWitness& w) {
  auto one_based = [](const std::vector<int>& members) {
    Json arr = Json::array();
    for (int i : members) arr.push_back(i + 1);
    return arr;
  };
  Json profile = Json::array();
  const std::vector<int>& p = xg.support()[w.entry].profile;
  for (int i = 0; i < xg.num_senders(); ++i)
    profile.push_back(xg.alphabets()[i][p[i]]);
  return Json{{"sender", w.sender + 1},
              {"profile", profile},
              {"coalition_a", one_based(w.coalition_a)},
              {"coalition_b", one_based(w.coalition_b)},
              {"pref_a", pref_name(w.pref_a)},
              {"pref_b", pref_name(w.pref_b)}};
}

// Shared preamble: command echo plus digests of the inputs that fed it.
inline Json result_header(const std::string& command,
                          const std::vector<std::pair<std::string,
                                                      std::string>>& inputs) {
  Json in = Json::object();
  for (const auto& [name, d] : inputs) in[name] = d;
  return Json{{"command", command}, {"inputs", in}};
}

inline void emit(std::ostream& out, const Json& payload) {
  out << payload.dump() << "\n";
}

struct CommonArgs {
  std::string game_path;
  std::string outcome_path;
  int k = 0;
  std::string mode = "weak";
};

inline int cmd_order(const CommonArgs& args, std::ostream& out) {
  const std::string bytes = read_file(args.game_path);
  const AnyGame any = parse_game(bytes);
  const Mode mode = parse_mode(args.mode);
  Json j = result_header("order", {{"game", digest(bytes)}});
  j["k"] = args.k;
  j["mode"] = args.mode;

  if (std::holds_alternative<Game>(any)) {
    const Game& g = std::get<Game>(any);
    const OrderRelation rel = build_order(g, args.k, mode);
    Json nodes = Json::array();
    for (const std::string& w : g.states()) nodes.push_back(w);
    j["nodes"] = nodes;
    Json edges = Json::array();
    for (const auto& [a, b] : rel.edges)
      edges.push_back(Json::array({g.states()[a], g.states()[b]}));
    j["edges"] = edges;
    Json reach = Json::array();
    for (const std::vector<bool>& row : rel.reach) {
      Json r = Json::array();
      for (bool v : row) r.push_back(v);
      reach.push_back(r);
    }
    j["reach"] = reach;
    Json witnesses = Json::object();
    for (const auto& [edge, w] : rel.witnesses) {
      const std::string key =
          g.states()[edge.first] + "->" + g.states()[edge.second];
      if (w.direct) {
        witnesses[key] = Json{{"type", "direct"}};
      } else {
        Json profile = Json::array();
        for (int s : w.via) profile.push_back(g.states()[s]);
        witnesses[key] = Json{{"type", "chain"}, {"profile", profile}};
      }
    }
    j["witnesses"] = witnesses;
    emit(out, j);
    return kOk;
  }

  const ExtendedGame& xg = std::get<ExtendedGame>(any);
  const SeparabilityReport sep = check_separability(xg, args.k);
  if (!sep.separable) {
    j["error"] = "not-separable";
    j["witness"] = separability_witness_json(xg, *sep.witness);
    emit(out, j);
    return kError;
  }
  const ExtendedOrderRelation rel =
      infoagg::internal::build_order_extended_unchecked(xg, args.k, mode);
  auto key_of = [&](int t) { return profile_key(xg, xg.support()[t].profile); };
  Json nodes = Json::array();
  for (int t = 0; t < xg.support_size(); ++t) nodes.push_back(key_of(t));
  j["nodes"] = nodes;
  Json edges = Json::array();
  for (const auto& [a, b] : rel.edges)
    edges.push_back(Json::array({key_of(a), key_of(b)}));
  j["edges"] = edges;
  Json reach = Json::array();
  for (const std::vector<bool>& row : rel.reach) {
    Json r = Json::array();
    for (bool v : row) r.push_back(v);
    reach.push_back(r);
  }
  j["reach"] = reach;
  Json witnesses = Json::object();
  for (const auto& [edge, w] : rel.witnesses) {
    const std::string key = key_of(edge.first) + "->" + key_of(edge.second);
    if (w.direct) {
      witnesses[key] = Json{{"type", "direct"}};
    } else {
      Json profile = Json::array();
      for (int i = 0; i < xg.num_senders(); ++i)
        profile.push_back(xg.alphabets()[i][w.via[i]]);
      witnesses[key] = Json{{"type", "chain"}, {"profile", profile}};
    }
  }
  j["witnesses"] = witnesses;
  emit(out, j);
  return kOk;
}

inline int cmd_check(const CommonArgs& args, std::ostream& out) {
  const std::string game_bytes = read_file(args.game_path);
  const std::string outcome_bytes = read_file(args.outcome_path);
  const AnyGame any = parse_game(game_bytes);
  const Mode mode = parse_mode(args.mode);
  Json j = result_header("check", {{"game", digest(game_bytes)},
                                   {"outcome", digest(outcome_bytes)}});
  j["k"] = args.k;
  j["mode"] = args.mode;

  FeasibilityReport report;
  Json violated_order = Json::array();
  Json violated_receiver = Json::array();
  if (std::holds_alternative<Game>(any)) {
    const Game& g = std::get<Game>(any);
    const Outcome o = parse_outcome(outcome_bytes, g);
    report = check_outcome(g, args.k, mode, o);
    for (const OrderViolation& v : report.violated_order)
      violated_order.push_back(Json{{"from", g.states()[v.from]},
                                    {"to", g.states()[v.to]},
                                    {"o_from", format_rational(v.value_from)},
                                    {"o_to", format_rational(v.value_to)}});
  } else {
    const ExtendedGame& xg = std::get<ExtendedGame>(any);
    const SeparabilityReport sep = check_separability(xg, args.k);
    if (!sep.separable) {
      j["error"] = "not-separable";
      j["witness"] = separability_witness_json(xg, *sep.witness);
      emit(out, j);
      return kError;
    }
    const Outcome o = parse_outcome_extended(outcome_bytes, xg);
    const ExtendedOrderRelation rel =
        infoagg::internal::build_order_extended_unchecked(xg, args.k, mode);
    report = check_outcome_extended(xg, rel, o);
    for (const OrderViolation& v : report.violated_order)
      violated_order.push_back(
          Json{{"from", profile_key(xg, xg.support()[v.from].profile)},
               {"to", profile_key(xg, xg.support()[v.to].profile)},
               {"o_from", format_rational(v.value_from)},
               {"o_to", format_rational(v.value_to)}});
  }
  for (const ReceiverICViolation& v : report.violated_receiver)
    violated_receiver.push_back(Json{{"action", v.action},
                                     {"expected", format_rational(v.expected)},
                                     {"baseline",
                                      format_rational(v.baseline)}});
  j["feasible"] = report.feasible;
  j["violated_order"] = violated_order;
  j["violated_receiver"] = violated_receiver;
  emit(out, j);
  return report.feasible ? kOk : kNegative;
}

inline int cmd_optimize(const CommonArgs& args, const std::string& objective,
                        std::ostream& out) {
  const std::string bytes = read_file(args.game_path);
  const AnyGame any = parse_game(bytes);
  if (!std::holds_alternative<Game>(any))
    throw ValueError("optimize expects a base-model game file");
  const Game& g = std::get<Game>(any);
  const Mode mode = parse_mode(args.mode);
  const Objective obj = parse_objective(objective, g.num_senders());
  const OptimizeResult result = optimize(g, args.k, mode, obj);

  Json j = result_header("optimize", {{"game", digest(bytes)}});
  j["k"] = args.k;
  j["mode"] = args.mode;
  j["objective"] = objective;
  j["value"] = format_rational(result.value);
  Json outcome = Json::object();
  for (int w = 0; w < g.num_states(); ++w)
    outcome[g.states()[w]] = format_rational(result.outcome.o_star[w]);
  j["outcome"] = outcome;
  emit(out, j);
  return kOk;
}

inline int cmd_mechanism(const CommonArgs& args, const std::string& messages,
                         std::ostream& out) {
  const std::string game_bytes = read_file(args.game_path);
  const std::string outcome_bytes = read_file(args.outcome_path);
  const AnyGame any = parse_game(game_bytes);
  const Mode mode = parse_mode(args.mode);
  const std::vector<std::string> names = split_csv(messages);

  Json j = result_header("mechanism", {{"game", digest(game_bytes)},
                                       {"outcome", digest(outcome_bytes)}});
  j["k"] = args.k;
  j["mode"] = args.mode;
  j["messages"] = names;

  if (std::holds_alternative<Game>(any)) {
    const Game& g = std::get<Game>(any);
    if (static_cast<int>(names.size()) != g.num_senders())
      throw ValueError("expected one message per sender");
    MessageProfile profile;
    for (const std::string& name : names) {
      const int w = g.state_index(name);
      if (w < 0) throw ValueError("unknown state in messages: " + name);
      profile.push_back(w);
    }
    const Outcome o = parse_outcome(outcome_bytes, g);
    const MediatorSpec spec = MediatorSpec::create(g, args.k, mode, o);
    j["q"] = format_rational(eval_mediator(spec, profile));
    if (!pure_state(profile).has_value()) {
      Json upper = Json::array(), lower = Json::array();
      for (int w : upper_pure_set(spec, profile))
        upper.push_back(g.states()[w]);
      for (int w : lower_pure_set(spec, profile))
        lower.push_back(g.states()[w]);
      j["upper_set"] = upper;
      j["lower_set"] = lower;
    }
  } else {
    const ExtendedGame& xg = std::get<ExtendedGame>(any);
    if (static_cast<int>(names.size()) != xg.num_senders())
      throw ValueError("expected one message per sender");
    std::vector<int> profile(xg.num_senders());
    for (int i = 0; i < xg.num_senders(); ++i) {
      const std::vector<std::string>& alphabet = xg.alphabets()[i];
      int v = -1;
      for (size_t t = 0; t < alphabet.size(); ++t)
        if (alphabet[t] == names[i]) { v = static_cast<int>(t); break; }
      if (v < 0)
        throw ValueError("unknown signal in messages: " + names[i]);
      profile[i] = v;
    }
    const Outcome o = parse_outcome_extended(outcome_bytes, xg);
    const ExtendedMediatorSpec spec =
        ExtendedMediatorSpec::create(xg, args.k, mode, o);
    j["q"] = format_rational(eval_mediator_extended(spec, profile));
    if (xg.support_index(profile) < 0) {
      auto labels = [&](const std::vector<int>& entries) {
        Json arr = Json::array();
        for (int t : entries)
          arr.push_back(profile_key(xg, xg.support()[t].profile));
        return arr;
      };
      j["upper_set"] = labels(upper_entries(spec, profile));
      j["lower_set"] = labels(lower_entries(spec, profile));
    }
  }
  emit(out, j);
  return kOk;
}

inline int cmd_verify(const CommonArgs& args, long long caps,
                      std::ostream& out) {
  const std::string game_bytes = read_file(args.game_path);
  const std::string outcome_bytes = read_file(args.outcome_path);
  const AnyGame any = parse_game(game_bytes);
  const Mode mode = parse_mode(args.mode);
  VerifyCaps vcaps;
  vcaps.max_pairs = caps;

  Json j = result_header("verify", {{"game", digest(game_bytes)},
                                    {"outcome", digest(outcome_bytes)}});
  j["k"] = args.k;
  j["mode"] = args.mode;

  bool passed = true;
  if (std::holds_alternative<Game>(any)) {
    const Game& g = std::get<Game>(any);
    const Outcome o = parse_outcome(outcome_bytes, g);
    const MediatorSpec spec = MediatorSpec::create_unchecked(g, args.k, mode, o);
    const VerificationReport receiver = verify_receiver(g, o);
    const VerificationReport coalitions =
        verify_coalitions(g, args.k, mode, spec, vcaps);
    passed = receiver.passed && coalitions.passed;
    j["passed"] = passed;
    if (receiver.receiver_violation) {
      const StrategyViolation& v = *receiver.receiver_violation;
      j["receiver_violation"] =
          Json{{"strategy", v.strategy}, {"gain", format_rational(v.gain)}};
    }
    if (coalitions.coalition_violation) {
      const CoalitionViolation& v = *coalitions.coalition_violation;
      Json members = Json::array();
      for (int i : v.members) members.push_back(i + 1);
      Json deviation = Json::object();
      for (int w = 0; w < g.num_states(); ++w) {
        Json row = Json::array();
        for (int msg : v.deviation[w]) row.push_back(g.states()[msg]);
        deviation[g.states()[w]] = row;
      }
      Json gains = Json::array();
      for (const Rational& gain : v.gains)
        gains.push_back(format_rational(gain));
      j["coalition_violation"] = Json{
          {"members", members}, {"deviation", deviation}, {"gains", gains}};
    }
    j["stats"] = Json{{"coalitions", coalitions.stats.coalitions},
                      {"deviations", coalitions.stats.deviations}};
  } else {
    const ExtendedGame& xg = std::get<ExtendedGame>(any);
    const Outcome o = parse_outcome_extended(outcome_bytes, xg);
    const ExtendedMediatorSpec spec =
        ExtendedMediatorSpec::create_unchecked(xg, args.k, mode, o);
    const VerificationReport receiver = verify_receiver_extended(xg, o);
    const ExtendedVerificationReport coalitions =
        verify_coalitions_extended(xg, args.k, mode, spec, vcaps);
    passed = receiver.passed && coalitions.passed;
    j["passed"] = passed;
    if (receiver.receiver_violation) {
      const StrategyViolation& v = *receiver.receiver_violation;
      j["receiver_violation"] =
          Json{{"strategy", v.strategy}, {"gain", format_rational(v.gain)}};
    }
    if (coalitions.coalition_violation) {
      const ExtendedCoalitionViolation& v = *coalitions.coalition_violation;
      Json members = Json::array();
      for (int i : v.members) members.push_back(i + 1);
      Json deviation = Json::array();
      for (size_t t = 0; t < v.members.size(); ++t) {
        const std::vector<std::string>& alphabet =
            xg.alphabets()[v.members[t]];
        Json reports = Json::object();
        for (size_t x = 0; x < alphabet.size(); ++x)
          reports[alphabet[x]] = alphabet[v.reports[t][x]];
        deviation.push_back(
            Json{{"member", v.members[t] + 1}, {"reports", reports}});
      }
      Json gains = Json::array();
      for (const Rational& gain : v.gains)
        gains.push_back(format_rational(gain));
      j["coalition_violation"] = Json{
          {"members", members}, {"deviation", deviation}, {"gains", gains}};
    }
    j["stats"] = Json{{"coalitions", coalitions.stats.coalitions},
                      {"deviations", coalitions.stats.deviations}};
  }
  emit(out, j);
  return passed ? kOk : kNegative;
}

inline int cmd_simulate(const CommonArgs& args, long long rounds,
                        unsigned long long seed, std::ostream& out) {
  const std::string game_bytes = read_file(args.game_path);
  const std::string outcome_bytes = read_file(args.outcome_path);
  const AnyGame any = parse_game(game_bytes);
  const Mode mode = parse_mode(args.mode);

  Json j = result_header("simulate", {{"game", digest(game_bytes)},
                                      {"outcome", digest(outcome_bytes)}});
  j["k"] = args.k;
  j["mode"] = args.mode;
  j["rounds"] = rounds;
  j["seed"] = seed;

  Json frequencies = Json::object();
  Json counts = Json::object();
  if (std::holds_alternative<Game>(any)) {
    const Game& g = std::get<Game>(any);
    const Outcome o = parse_outcome(outcome_bytes, g);
    const MediatorSpec spec = MediatorSpec::create(g, args.k, mode, o);
    const SimulationResult r = simulate(g, spec, rounds, seed);
    for (int w = 0; w < g.num_states(); ++w) {
      frequencies[g.states()[w]] = format_rational(r.frequency(w));
      counts[g.states()[w]] = Json{{"rounds", r.state_rounds[w]},
                                   {"action0", r.action0_counts[w]}};
    }
  } else {
    const ExtendedGame& xg = std::get<ExtendedGame>(any);
    const Outcome o = parse_outcome_extended(outcome_bytes, xg);
    const ExtendedMediatorSpec spec =
        ExtendedMediatorSpec::create(xg, args.k, mode, o);
    const SimulationResultX r = simulate_extended(xg, spec, rounds, seed);
    for (int t = 0; t < xg.support_size(); ++t) {
      const std::string key = profile_key(xg, xg.support()[t].profile);
      frequencies[key] = format_rational(r.frequency(t));
      counts[key] = Json{{"rounds", r.entry_rounds[t]},
                         {"action0", r.action0_counts[t]}};
    }
  }
  j["frequencies"] = frequencies;
  j["counts"] = counts;
  emit(out, j);
  return kOk;
}

inline int cmd_separability(const std::string& game_path, int k,
                            std::ostream& out) {
  const std::string bytes = read_file(game_path);
  const AnyGame any = parse_game(bytes);
  // Base games embed as everyone observing the state, which is separable;
  // accepting them keeps the command total over valid game files.
  const ExtendedGame xg = std::holds_alternative<ExtendedGame>(any)
                              ? std::get<ExtendedGame>(any)
                              : embed_base(std::get<Game>(any));
  const SeparabilityReport report = check_separability(xg, k);

  Json j = result_header("separability", {{"game", digest(bytes)}});
  j["k"] = k;
  j["separable"] = report.separable;
  if (report.witness)
    j["witness"] = separability_witness_json(xg, *report.witness);
  emit(out, j);
  return report.separable ? kOk : kNegative;
}

}  // namespace internal

// Entry point shared by the binary and in-process tests. Streams take the
// place of stdout/stderr; the return value is the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Truthful information-aggregation mechanisms: deviation "
               "orders, feasibility, optimal outcomes, mediators and "
               "brute-force verification"};
  app.require_subcommand(1);

  internal::CommonArgs common;
  std::string objective = "receiver";
  std::string messages;
  long long caps = 1'000'000;
  long long rounds = 10'000;
  unsigned long long seed = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_outcome) {
    cmd->add_option("game", common.game_path, "game file (JSON)")
        ->required();
    if (needs_outcome)
      cmd->add_option("outcome", common.outcome_path, "outcome file (JSON)")
          ->required();
    cmd->add_option("--k", common.k, "max coalition size")->required();
    cmd->add_option("--mode", common.mode, "weak|strong (default weak)");
  };

  CLI::App* order = app.add_subcommand(
      "order", "deviation order: edges, reachability, witnesses");
  add_common(order, false);

  CLI::App* check = app.add_subcommand(
      "check", "test an outcome for order and receiver feasibility");
  add_common(check, true);

  CLI::App* optimize = app.add_subcommand(
      "optimize", "best feasible outcome for an objective");
  add_common(optimize, false);
  optimize->add_option("--objective", objective,
                       "receiver|sender:i|welfare[:w_r,w_1,...,w_n]");

  CLI::App* mechanism = app.add_subcommand(
      "mechanism", "mediator recommendation for one message profile");
  add_common(mechanism, true);
  mechanism->add_option("--messages", messages,
                        "comma-joined message per sender")
      ->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "exhaustive receiver and coalition deviation search");
  add_common(verify, true);
  verify->add_option("--caps", caps,
                     "max (coalition, deviation) pairs to enumerate");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "honest playout; reports empirical action frequencies");
  add_common(simulate, true);
  simulate->add_option("--rounds", rounds, "rounds to play");
  simulate->add_option("--seed", seed, "RNG seed");

  CLI::App* separability = app.add_subcommand(
      "separability", "test strict k-separability of an extended game");
  separability->add_option("game", common.game_path, "game file (JSON)")
      ->required();
  separability->add_option("--k", common.k, "max coalition size")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help lands here; CLI11 treats it as a successful parse abort.
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kError;
  }

  try {
    if (order->parsed()) return internal::cmd_order(common, out);
    if (check->parsed()) return internal::cmd_check(common, out);
    if (optimize->parsed())
      return internal::cmd_optimize(common, objective, out);
    if (mechanism->parsed())
      return internal::cmd_mechanism(common, messages, out);
    if (verify->parsed()) return internal::cmd_verify(common, caps, out);
    if (simulate->parsed())
      return internal::cmd_simulate(common, rounds, seed, out);
    if (separability->parsed())
      return internal::cmd_separability(common.game_path, common.k, out);
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const ValueError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kError;
  }
  err << "error: no command given\n";
  return kError;
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace cli
}  // namespace infoagg

#endif  // INFOAGG_CLI_H_
