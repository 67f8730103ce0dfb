#ifndef COPLAND_TAMPER_HPP
#define COPLAND_TAMPER_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "copland/dataflow.hpp"
#include "copland/evidence.hpp"

namespace copland {

// A nonempty sequence of events, each joined to the next by a flow edge.
struct Path {
  std::vector<EventId> events;

  EventId front() const { return events.front(); }
  EventId back() const { return events.back(); }
  std::size_t length() const { return events.size(); }

  friend auto operator<=>(const Path&, const Path&) = default;
};

using EventSet = std::set<EventId>;

struct Strategy {
  EventSet members;
  friend auto operator<=>(const Strategy&, const Strategy&) = default;
};

struct TamperReport {
  EventId target;
  EventSet opportunities;
  // One tamper-permitting path per opportunity; empty unless requested.
  std::map<EventId, Path> witness_paths;
  std::vector<Strategy> minimal_strategies;
};

// Throws InvalidGraph when `p` is empty or steps along a missing edge.
void validate_path(const DataFlowGraph& d, const Path& p);

// All paths from `from` to `to`, in lexicographic order of their id sequences.
std::vector<Path> paths_between(const DataFlowGraph& d, EventId from, EventId to);

// Places still able to tamper with the measurement at the head of `p` once it
// has traversed the whole path. Always every place, one place, or none.
PlaceSet tamper_set(const DataFlowGraph& d, const Path& p);

// Whether the last event of `p` can undetectably alter the evidence produced
// by its first event.
bool permits_tampering(const DataFlowGraph& d, const Path& p);

enum class OppsMode {
  // Extend every path from the target one event at a time.
  Enumerate,
  // Propagate the reachable tamper-set values per event instead of whole paths.
  Propagate,
};

EventSet tamper_opportunities(const DataFlowGraph& d, EventId v,
                              OppsMode mode = OppsMode::Enumerate);

// Lexicographically least tamper-permitting path to each opportunity.
std::map<EventId, Path> tamper_witnesses(const DataFlowGraph& d, EventId v);

bool is_tamper_strategy(const DataFlowGraph& d, EventId v, const EventSet& s);

enum class StrategySearch {
  // Start from Opps(v) and remove one event at a time while the set remains a
  // strategy. Visits every strategy subset, so it is exponential on long chains.
  Descent,
  // Repeatedly pick a path to the output that is not yet covered and branch on
  // which of its tamper opportunities covers it.
  PathBranching,
};

// Inclusion-minimal strategies, sorted. Empty when no strategy exists, which
// for a measurement only happens when it is the output event.
std::vector<Strategy> minimal_tamper_strategies(
    const DataFlowGraph& d, EventId v, StrategySearch search = StrategySearch::Descent);

TamperReport analyze(const DataFlowGraph& d, EventId v, bool with_witnesses,
                     StrategySearch search = StrategySearch::Descent);

bool is_local_path(const DataFlowGraph& d, const Path& p, const Place& place);

// A path that starts at a measurement and reaches some cross-place event
// whose sending place does not cover the tamper set so far.
std::optional<Path> find_unprotected_path(const DataFlowGraph& d);
bool is_protected_graph(const DataFlowGraph& d);

// Sufficient condition for protection: every cross-place event emits evidence
// whose tamper places lie within its sending place.
bool protected_sufficient(const DataFlowGraph& d);

}  // namespace copland

#endif  // COPLAND_TAMPER_HPP
