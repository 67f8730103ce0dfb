// One line per acceptance criterion. `--only N` runs a single criterion.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "copland/dataflow.hpp"
#include "copland/epp.hpp"
#include "copland/evidence.hpp"
#include "copland/syntax.hpp"
#include "copland/tamper.hpp"
#include "fixtures.hpp"
#include "generator.hpp"
#include "oracle.hpp"

using namespace copland;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> check;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

// Number of paths leaving each event, saturating.
std::size_t path_count(const DataFlowGraph& d) {
  std::vector<std::size_t> from(d.size(), 1);
  for (EventId v = d.size(); v-- > 0;) {
    for (EventId w : d.successors(v)) from[v] = std::min<std::size_t>(from[v] + from[w], 1u << 30);
  }
  std::size_t total = 0;
  for (auto n : from) total = std::min<std::size_t>(total + n, 1u << 30);
  return total;
}

// With `nul` off, phrases avoid `{}`: it discards its input while keeping the
// incoming flow edge, which the path-based properties do not account for.
std::vector<TopPhrase> random_tops(std::uint64_t seed, int n, bool nul = true) {
  testgen::PhraseGen gen(seed, 6, 4, nul);
  std::vector<TopPhrase> out;
  for (int i = 0; i < n; ++i) out.push_back(gen.top());
  return out;
}

// Graphs with at most 12 events: small phrase graphs plus random DAGs.
std::vector<DataFlowGraph> small_graphs(std::uint64_t seed, int phrase_graphs, int dags) {
  testgen::PhraseGen gen(seed, 6, 4);
  std::vector<DataFlowGraph> out;
  while (static_cast<int>(out.size()) < phrase_graphs) {
    DataFlowGraph d = graph_of(gen.top());
    if (d.size() <= 12) out.push_back(std::move(d));
  }
  for (int i = 0; i < dags; ++i) out.push_back(testgen::random_dag(gen.rng(), 2 + gen.pick(0, 10)));
  return out;
}

std::string ids_text(const std::vector<EventId>& ids) {
  std::string s = "<";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return s + ">";
}

std::string set_text(const EventSet& s) { return ids_text({s.begin(), s.end()}); }

Outcome golden_transformation() {
  const std::string got = print_top(epp_top(fixtures::ex1()));
  const std::string want = print_top(fixtures::ex3());
  if (got != want) return fail("got " + got + " expected " + want);
  return {true, got};
}

Outcome flow_graph_top() {
  int n = 0;
  for (const TopPhrase& t : random_tops(101, 600)) {
    const DataFlowGraph d = graph_of(t);
    if (!(evidence_of(d.event(d.output())) == eval_top(t))) return fail(print_top(t));
    ++n;
  }
  return {true, std::to_string(n) + " phrases"};
}

Outcome tamper_set_equivalence() {
  std::size_t samples = 0;
  for (const DataFlowGraph& d : small_graphs(102, 400, 300)) {
    for (EventId v = 0; v < d.size(); ++v) {
      if (!is_measurement(d.event(v))) continue;
      for (const auto& p : oracle::paths_from(d, v)) {
        ++samples;
        if (permits_tampering(d, Path{p}) != oracle::permits(d, p)) {
          return fail("disagree on " + ids_text(p));
        }
      }
    }
  }
  if (samples < 500) return fail("only " + std::to_string(samples) + " samples");
  return {true, std::to_string(samples) + " paths"};
}

Outcome opportunities_oracle() {
  std::size_t graphs = 0, targets = 0;
  for (const DataFlowGraph& d : small_graphs(103, 500, 500)) {
    ++graphs;
    for (EventId v = 0; v < d.size(); ++v) {
      ++targets;
      const EventSet got = tamper_opportunities(d, v);
      const auto want = oracle::opps(d, v);
      if (got != EventSet(want.begin(), want.end())) {
        return fail("event " + std::to_string(v) + ": " + set_text(got) + " vs " +
                    set_text(EventSet(want.begin(), want.end())));
      }
    }
  }
  return {true, std::to_string(graphs) + " graphs, " + std::to_string(targets) + " targets"};
}

Outcome strategies_oracle() {
  std::size_t targets = 0, strategies = 0;
  for (const DataFlowGraph& d : small_graphs(104, 400, 400)) {
    for (EventId v = 0; v < d.size(); ++v) {
      if (!is_measurement(d.event(v))) continue;
      ++targets;
      const auto got = minimal_tamper_strategies(d, v);
      const auto want = oracle::minimal_strategies(d, v);
      std::vector<std::set<EventId>> got_sets;
      for (const auto& s : got) got_sets.push_back(s.members);
      if (got_sets != want) return fail("event " + std::to_string(v) + " strategies differ");
      for (const auto& s : got) {
        ++strategies;
        if (!is_tamper_strategy(d, v, s.members)) return fail(set_text(s.members) + " not a strategy");
        for (EventId w : s.members) {
          EventSet smaller = s.members;
          smaller.erase(w);
          if (is_tamper_strategy(d, v, smaller)) return fail(set_text(s.members) + " not minimal");
        }
      }
    }
  }
  return {true, std::to_string(targets) + " targets, " + std::to_string(strategies) + " strategies"};
}

Outcome strategy_exists() {
  std::size_t graphs = 0, targets = 0;
  testgen::PhraseGen gen(105, 6, 4);
  std::vector<DataFlowGraph> all;
  for (const TopPhrase& t : random_tops(105, 500)) all.push_back(graph_of(t));
  for (int i = 0; i < 100; ++i) all.push_back(testgen::random_dag(gen.rng(), 2 + gen.pick(0, 14)));
  for (const DataFlowGraph& d : all) {
    ++graphs;
    for (EventId v = 0; v < d.size(); ++v) {
      if (!is_measurement(d.event(v)) || v == d.output()) continue;
      ++targets;
      const EventSet opps = tamper_opportunities(d, v);
      if (!is_tamper_strategy(d, v, opps)) return fail("Opps(" + std::to_string(v) + ") not a strategy");
      // Descent walks every strategy below Opps(v); past a handful of
      // opportunities the branching search is the practical one.
      const auto search = opps.size() <= 12 ? StrategySearch::Descent : StrategySearch::PathBranching;
      if (minimal_tamper_strategies(d, v, search).empty()) {
        return fail("no minimal strategy for " + std::to_string(v));
      }
    }
  }
  return {true, std::to_string(graphs) + " graphs, " + std::to_string(targets) + " measurements"};
}

Outcome protected_paths_local() {
  std::size_t protected_graphs = 0, paths = 0;
  for (const TopPhrase& t : random_tops(106, 600)) {
    for (const DataFlowGraph& d : {graph_of(t), graph_of(epp_top(t))}) {
      if (!is_protected_graph(d) || path_count(d) > 200000) continue;
      ++protected_graphs;
      for (EventId v = 0; v < d.size(); ++v) {
        if (!is_measurement(d.event(v))) continue;
        for (const auto& p : oracle::paths_from(d, v)) {
          if (!permits_tampering(d, Path{p})) continue;
          ++paths;
          if (!is_local_path(d, Path{p}, sending_place(d.event(v)))) {
            return fail(print_top(t) + " path " + ids_text(p));
          }
        }
      }
    }
  }
  if (protected_graphs == 0) return fail("no protected graphs generated");
  return {true, std::to_string(protected_graphs) + " protected graphs, " + std::to_string(paths) +
                    " tamper-permitting paths"};
}

Outcome tamper_set_within_places() {
  std::size_t paths = 0;
  for (const TopPhrase& t : random_tops(107, 600, false)) {
    const DataFlowGraph d = graph_of(t);
    if (path_count(d) > 200000) continue;
    for (EventId v = 0; v < d.size(); ++v) {
      if (!is_measurement(d.event(v))) continue;
      for (const auto& p : oracle::paths_from(d, v)) {
        ++paths;
        if (!tamper_set(d, Path{p}).subset_of(tamper_places(evidence_of(d.event(p.back()))))) {
          return fail(print_top(t) + " path " + ids_text(p));
        }
      }
    }
  }
  return {true, std::to_string(paths) + " paths, phrases without {}"};
}

Outcome protection_program() {
  int n = 0;
  for (const TopPhrase& x : random_tops(108, 600, false)) {
    const TopPhrase y = epp_top(x);
    const DataFlowGraph d = graph_of(y);
    for (const Event& v : d.events()) {
      if (is_cross_place(v) &&
          !tamper_places(evidence_of(v)).subset_of(PlaceSet::singleton(sending_place(v)))) {
        return fail("(a) " + print_top(x) + " event " + std::to_string(v.id));
      }
    }
    if (!is_protected_graph(d)) return fail("(b) " + print_top(x));
    if (!(epp_top(y) == y)) return fail("(c) " + print_top(x));
    if (!check_evidence_preservation(x, y)) return fail("(d) " + print_top(x));
    ++n;
  }
  return {true, std::to_string(n) + " phrases without {}"};
}

Outcome parsimony() {
  const TopPhrase x = fixtures::ex3();
  const EppResult r = epp_top_with_diff(x);
  if (!(r.phrase == x) || !r.diff.inserted.empty()) {
    return fail("got " + print_top(r.phrase) + " with " + std::to_string(r.diff.inserted.size()) +
                " inserted signature(s)");
  }
  return {true, "unchanged"};
}

Outcome example_analyses() {
  const DataFlowGraph d1 = graph_of(fixtures::ex1());
  const EventId v1 = fixtures::find_event(d1, "ks:msp(vcm,us,vc,<1,1>)");
  const EventSet downstream = {fixtures::find_event(d1, "ks:req(us)"),
                               fixtures::find_event(d1, "us:msp(vc,us,sys,<1,2,1>)"),
                               fixtures::find_event(d1, "us:rpy(ks)"), fixtures::find_event(d1, "ks:rpy(app)")};
  const EventSet opps1 = tamper_opportunities(d1, v1);
  const auto oracle1 = oracle::opps(d1, v1);
  if (opps1 != downstream || opps1 != EventSet(oracle1.begin(), oracle1.end())) {
    return fail("Opps on the unsigned phrase: " + set_text(opps1));
  }
  std::vector<std::set<EventId>> singles;
  for (EventId w : downstream) singles.push_back({w});
  std::vector<std::set<EventId>> got;
  for (const auto& s : minimal_tamper_strategies(d1, v1)) got.push_back(s.members);
  if (got != singles || got != oracle::minimal_strategies(d1, v1)) return fail("strategies on the unsigned phrase");

  const DataFlowGraph d3 = graph_of(fixtures::ex3());
  const EventId v3 = fixtures::find_event(d3, "ks:msp(vcm,us,vc,<1,1>)");
  const EventSet opps3 = tamper_opportunities(d3, v3);
  const auto oracle3 = oracle::opps(d3, v3);
  if (opps3 != EventSet(oracle3.begin(), oracle3.end())) return fail("signed phrase disagrees with oracle");
  for (EventId w : opps3) {
    if (sending_place(d3.event(w)) != Place{"ks"}) return fail("non-ks opportunity " + std::to_string(w));
  }
  const EventSet want3 = {fixtures::find_event(d3, "ks:sig"), fixtures::find_event(d3, "ks:req(us)")};
  if (opps3 != want3) return fail("Opps on the signed phrase: " + set_text(opps3));
  return {true, "Opps " + set_text(opps1) + " / " + set_text(opps3)};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--only N]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "protection of the unsigned phrase gives the hand-signed phrase", 1, golden_transformation},
      {2, "output evidence equals evaluated evidence", 30, flow_graph_top},
      {3, "tamper-set test agrees with the direct signing check", 0, tamper_set_equivalence},
      {4, "tamper opportunities agree with path enumeration", 0, opportunities_oracle},
      {5, "minimal strategies agree with subset enumeration", 0, strategies_oracle},
      {6, "every measurement has a tamper strategy", 0, strategy_exists},
      {7, "tampering in protected graphs stays local", 0, protected_paths_local},
      {8, "tamper set within tamper places", 0, tamper_set_within_places},
      {9, "protection program: signed, protected, idempotent, preserving", 120, protection_program},
      {10, "hand-signed phrase is left unchanged", 0, parsimony},
      {11, "example analyses", 0, example_analyses},
  };

  int failures = 0, ran = 0;
  for (const Criterion& c : criteria) {
    if (only && c.number != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && c.limit_seconds > 0 && secs > c.limit_seconds) {
      o = fail("took longer than " + std::to_string(static_cast<int>(c.limit_seconds)) + " s");
    }
    if (!o.pass) ++failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (c.number < 10 ? " " : "") << c.number << "  "
              << c.name << "  [" << timing << "]  " << o.detail << std::endl;
  }
  if (ran == 0) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
