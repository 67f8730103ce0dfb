#include "copland/tamper.hpp"

#include <algorithm>
#include <functional>
#include <utility>

namespace copland {

namespace {

PlaceSet initial_tamper_set(const Event& v) {
  return is_measurement(v) ? PlaceSet::all() : PlaceSet::none();
}

// Tamper set of `path § v` given the tamper set of `path`.
PlaceSet extend_tamper_set(const PlaceSet& ts, const Event& v) {
  if (is_signature(v)) return PlaceSet::singleton(sending_place(v)).intersect(ts);
  return ts;
}

// With `ts` the tamper set of a path from a measurement, can the next event
// `v` tamper with that measurement?
bool can_tamper(const PlaceSet& ts, const Event& v) {
  return ts.contains(sending_place(v)) || ts.contains(receiving_place(v));
}

// Tamper sets already explored from each event. There are few distinct
// values (every place, one place, none) so a linear scan is enough.
class SeenStates {
 public:
  explicit SeenStates(std::size_t n) : seen_(n) {}

  // Returns false if (v, ts) was already recorded.
  bool insert(EventId v, const PlaceSet& ts) {
    auto& bucket = seen_[v];
    if (std::find(bucket.begin(), bucket.end(), ts) != bucket.end()) return false;
    bucket.push_back(ts);
    return true;
  }

 private:
  std::vector<std::vector<PlaceSet>> seen_;
};

void check_event(const DataFlowGraph& d, EventId v) {
  if (v >= d.size()) throw UnknownEvent(v);
}

}  // namespace

void validate_path(const DataFlowGraph& d, const Path& p) {
  if (p.events.empty()) throw InvalidGraph("path is empty");
  for (EventId v : p.events) check_event(d, v);
  for (std::size_t i = 0; i + 1 < p.events.size(); ++i) {
    if (!d.has_edge(p.events[i], p.events[i + 1])) {
      throw InvalidGraph("no edge " + std::to_string(p.events[i]) + " -> " +
                         std::to_string(p.events[i + 1]));
    }
  }
}

std::vector<Path> paths_between(const DataFlowGraph& d, EventId from, EventId to) {
  check_event(d, from);
  check_event(d, to);

  // Prune branches that cannot reach `to`.
  std::vector<char> reaches(d.size(), 0);
  reaches[to] = 1;
  // Ids are not topologically ordered in general, so iterate to a fixpoint.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : d.edges()) {
      if (reaches[b] && !reaches[a]) {
        reaches[a] = 1;
        changed = true;
      }
    }
  }

  std::vector<Path> out;
  if (!reaches[from]) return out;
  Path current{{from}};
  std::function<void(EventId)> walk = [&](EventId v) {
    if (v == to) {
      out.push_back(current);
      return;
    }
    for (EventId w : d.successors(v)) {
      if (!reaches[w]) continue;
      current.events.push_back(w);
      walk(w);
      current.events.pop_back();
    }
  };
  walk(from);
  return out;
}

PlaceSet tamper_set(const DataFlowGraph& d, const Path& p) {
  validate_path(d, p);
  PlaceSet ts = initial_tamper_set(d.event(p.front()));
  for (std::size_t i = 1; i < p.events.size(); ++i) ts = extend_tamper_set(ts, d.event(p.events[i]));
  return ts;
}

bool permits_tampering(const DataFlowGraph& d, const Path& p) {
  validate_path(d, p);
  if (p.length() < 2 || !is_measurement(d.event(p.front()))) return false;
  Path prefix{{p.events.begin(), p.events.end() - 1}};
  return can_tamper(tamper_set(d, prefix), d.event(p.back()));
}

namespace {

EventSet opportunities_by_enumeration(const DataFlowGraph& d, EventId v,
                                      std::map<EventId, Path>* witnesses) {
  EventSet found;
  const Event& start = d.event(v);
  if (!is_measurement(start)) return found;

  // A work item is a path together with the tamper set of the path minus its
  // last event. Successors are pushed in reverse so paths are taken in
  // lexicographic order.
  struct Item {
    Path path;
    PlaceSet before_last;
  };
  std::vector<Item> work;
  work.push_back({Path{{v}}, PlaceSet::none()});
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    const Event& last = d.event(item.path.back());
    PlaceSet ts = initial_tamper_set(last);
    if (item.path.length() > 1) {
      if (can_tamper(item.before_last, last) && found.insert(last.id).second && witnesses) {
        witnesses->emplace(last.id, item.path);
      }
      ts = extend_tamper_set(item.before_last, last);
    }
    const auto& succ = d.successors(last.id);
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) {
      Path next = item.path;
      next.events.push_back(*it);
      work.push_back({std::move(next), ts});
    }
  }
  return found;
}

EventSet opportunities_by_propagation(const DataFlowGraph& d, EventId v) {
  EventSet found;
  const Event& start = d.event(v);
  if (!is_measurement(start)) return found;

  SeenStates seen(d.size());
  std::vector<std::pair<EventId, PlaceSet>> work;
  work.emplace_back(v, initial_tamper_set(start));
  seen.insert(v, work.back().second);
  while (!work.empty()) {
    auto [u, ts] = std::move(work.back());
    work.pop_back();
    for (EventId w : d.successors(u)) {
      const Event& ev = d.event(w);
      if (can_tamper(ts, ev)) found.insert(w);
      PlaceSet next = extend_tamper_set(ts, ev);
      if (seen.insert(w, next)) work.emplace_back(w, std::move(next));
    }
  }
  return found;
}

}  // namespace

EventSet tamper_opportunities(const DataFlowGraph& d, EventId v, OppsMode mode) {
  check_event(d, v);
  return mode == OppsMode::Enumerate ? opportunities_by_enumeration(d, v, nullptr)
                                     : opportunities_by_propagation(d, v);
}

std::map<EventId, Path> tamper_witnesses(const DataFlowGraph& d, EventId v) {
  check_event(d, v);
  std::map<EventId, Path> out;
  opportunities_by_enumeration(d, v, &out);
  return out;
}

namespace {

// A path from v to the output event none of whose tamper-permitting prefixes
// ends in a member of `s`.
std::optional<Path> find_uncovered_path(const DataFlowGraph& d, EventId v, const EventSet& s) {
  Path current{{v}};
  if (v == d.output()) return current;

  // (event, tamper set) pairs already known to lead to no uncovered path.
  SeenStates dead(d.size());
  std::function<bool(EventId, const PlaceSet&)> search = [&](EventId u, const PlaceSet& ts) {
    for (EventId w : d.successors(u)) {
      const Event& ev = d.event(w);
      if (s.count(w) && can_tamper(ts, ev)) continue;
      current.events.push_back(w);
      if (w == d.output()) return true;
      PlaceSet next = extend_tamper_set(ts, ev);
      if (dead.insert(w, next) && search(w, next)) return true;
      current.events.pop_back();
    }
    return false;
  };
  if (search(v, initial_tamper_set(d.event(v)))) return current;
  return std::nullopt;
}

}  // namespace

bool is_tamper_strategy(const DataFlowGraph& d, EventId v, const EventSet& s) {
  check_event(d, v);
  for (EventId w : s) check_event(d, w);
  return !find_uncovered_path(d, v, s).has_value();
}

namespace {

std::set<EventSet> strategies_by_descent(const DataFlowGraph& d, EventId v) {
  const EventSet opps = tamper_opportunities(d, v);
  if (!is_tamper_strategy(d, v, opps)) return {};

  // A superset of a strategy is a strategy, so a set none of whose one-smaller
  // subsets is a strategy is minimal, and every minimal strategy is reached.
  std::set<EventSet> minimal;
  std::set<EventSet> visited{opps};
  std::vector<EventSet> work{opps};
  while (!work.empty()) {
    EventSet s = std::move(work.back());
    work.pop_back();
    bool shrinks = false;
    for (EventId x : s) {
      EventSet smaller = s;
      smaller.erase(x);
      if (!is_tamper_strategy(d, v, smaller)) continue;
      shrinks = true;
      if (visited.insert(smaller).second) work.push_back(std::move(smaller));
    }
    if (!shrinks) minimal.insert(std::move(s));
  }
  return minimal;
}

std::set<EventSet> strategies_by_branching(const DataFlowGraph& d, EventId v) {
  // Every minimal strategy M is a leaf: starting from a subset of M, M covers
  // any uncovered path through one of the events branched on, so some branch
  // stays inside M until the set is a strategy, at which point it equals M.
  std::set<EventSet> leaves;
  std::set<EventSet> visited;
  std::function<void(const EventSet&)> grow = [&](const EventSet& t) {
    if (!visited.insert(t).second) return;
    auto path = find_uncovered_path(d, v, t);
    if (!path) {
      leaves.insert(t);
      return;
    }
    PlaceSet ts = initial_tamper_set(d.event(path->front()));
    for (std::size_t i = 1; i < path->length(); ++i) {
      const Event& ev = d.event(path->events[i]);
      if (can_tamper(ts, ev)) {
        EventSet bigger = t;
        bigger.insert(ev.id);
        grow(bigger);
      }
      ts = extend_tamper_set(ts, ev);
    }
  };
  grow({});

  std::set<EventSet> minimal;
  for (const auto& leaf : leaves) {
    bool is_minimal = true;
    for (EventId x : leaf) {
      EventSet smaller = leaf;
      smaller.erase(x);
      if (!find_uncovered_path(d, v, smaller)) {
        is_minimal = false;
        break;
      }
    }
    if (is_minimal) minimal.insert(leaf);
  }
  return minimal;
}

}  // namespace

std::vector<Strategy> minimal_tamper_strategies(const DataFlowGraph& d, EventId v,
                                                StrategySearch search) {
  check_event(d, v);
  const std::set<EventSet> minimal = search == StrategySearch::Descent
                                         ? strategies_by_descent(d, v)
                                         : strategies_by_branching(d, v);
  std::vector<Strategy> out;
  out.reserve(minimal.size());
  for (const auto& m : minimal) out.push_back(Strategy{m});
  return out;
}

TamperReport analyze(const DataFlowGraph& d, EventId v, bool with_witnesses,
                     StrategySearch search) {
  TamperReport report;
  report.target = v;
  if (with_witnesses) {
    report.witness_paths = tamper_witnesses(d, v);
    for (const auto& [w, p] : report.witness_paths) report.opportunities.insert(w);
  } else {
    report.opportunities = tamper_opportunities(d, v);
  }
  report.minimal_strategies = minimal_tamper_strategies(d, v, search);
  return report;
}

bool is_local_path(const DataFlowGraph& d, const Path& p, const Place& place) {
  validate_path(d, p);
  const std::size_t n = p.length();
  for (std::size_t i = 0; i < n; ++i) {
    const Event& v = d.event(p.events[i]);
    const bool sends = sending_place(v) == place;
    const bool receives = receiving_place(v) == place;
    if (i == 0 || i + 1 == n) {
      if (!sends && !receives) return false;
    } else if (!sends || !receives) {
      return false;
    }
  }
  return true;
}

std::optional<Path> find_unprotected_path(const DataFlowGraph& d) {
  for (const Event& start : d.events()) {
    if (!is_measurement(start)) continue;
    Path current{{start.id}};
    SeenStates seen(d.size());
    std::function<bool(EventId, const PlaceSet&)> search = [&](EventId u, const PlaceSet& ts) {
      for (EventId w : d.successors(u)) {
        const Event& ev = d.event(w);
        PlaceSet next = extend_tamper_set(ts, ev);
        current.events.push_back(w);
        if (is_cross_place(ev) && !next.subset_of(PlaceSet::singleton(sending_place(ev)))) {
          return true;
        }
        if (seen.insert(w, next) && search(w, next)) return true;
        current.events.pop_back();
      }
      return false;
    };
    if (search(start.id, initial_tamper_set(start))) return current;
  }
  return std::nullopt;
}

bool is_protected_graph(const DataFlowGraph& d) { return !find_unprotected_path(d).has_value(); }

bool protected_sufficient(const DataFlowGraph& d) {
  for (const Event& v : d.events()) {
    if (!is_cross_place(v)) continue;
    if (!tamper_places(evidence_of(v)).subset_of(PlaceSet::singleton(sending_place(v)))) {
      return false;
    }
  }
  return true;
}

}  // namespace copland
