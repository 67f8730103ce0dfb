#ifndef COPLAND_DATAFLOW_HPP
#define COPLAND_DATAFLOW_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "copland/evidence.hpp"
#include "copland/syntax.hpp"

namespace copland {

using EventId = std::size_t;

namespace lbl {

struct Msp {
  Symbol probe;
  Place target_place;
  Symbol target;
  Position pos;
  friend bool operator==(const Msp&, const Msp&) = default;
};
struct Cpy {
  friend bool operator==(const Cpy&, const Cpy&) = default;
};
struct Sig {
  friend bool operator==(const Sig&, const Sig&) = default;
};
struct Hsh {
  friend bool operator==(const Hsh&, const Hsh&) = default;
};
struct Nul {
  friend bool operator==(const Nul&, const Nul&) = default;
};
struct Req {
  Place to;
  friend bool operator==(const Req&, const Req&) = default;
};
struct Rpy {
  Place to;
  friend bool operator==(const Rpy&, const Rpy&) = default;
};
struct Split {
  SplitSpec left;
  SplitSpec right;
  friend bool operator==(const Split&, const Split&) = default;
};
struct Join {
  BranchKind kind;
  friend bool operator==(const Join&, const Join&) = default;
};

}  // namespace lbl

using LabelKind = std::variant<lbl::Msp, lbl::Cpy, lbl::Sig, lbl::Hsh, lbl::Nul, lbl::Req,
                               lbl::Rpy, lbl::Split, lbl::Join>;

// `place:kind(args..., evidence)`; `evidence` is what the event emits.
struct Label {
  Place place;
  LabelKind kind;
  Evidence evidence;
  friend bool operator==(const Label&, const Label&) = default;
};

// Short kind name: msp, cpy, sig, hsh, nul, req, rpy, split, join.
std::string kind_name(const LabelKind& k);
// Kind with its non-evidence arguments, e.g. `req(us)` or `msp(vcm,us,vc,<1,1>)`.
std::string kind_text(const LabelKind& k);

struct Event {
  EventId id;
  Label label;
  friend bool operator==(const Event&, const Event&) = default;
};

// Labeled DAG with distinguished input and output events. Ids are dense
// (0..n-1) and equal the event's index in events().
class DataFlowGraph {
 public:
  // Validates acyclicity, id ranges and the input/output edge constraints.
  DataFlowGraph(std::vector<Label> labels, EventId input, EventId output,
                std::vector<std::pair<EventId, EventId>> edges);

  static DataFlowGraph singleton(Label label);

  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  const Event& event(EventId id) const;
  EventId input() const { return input_; }
  EventId output() const { return output_; }
  // Sorted, duplicate-free.
  const std::vector<std::pair<EventId, EventId>>& edges() const { return edges_; }
  // Ascending successor ids.
  const std::vector<EventId>& successors(EventId id) const;
  bool has_edge(EventId from, EventId to) const;

  friend bool operator==(const DataFlowGraph&, const DataFlowGraph&) = default;

 private:
  struct Unchecked {};
  DataFlowGraph(Unchecked, std::vector<Label> labels, EventId input, EventId output,
                std::vector<std::pair<EventId, EventId>> edges);

  friend DataFlowGraph combine(const DataFlowGraph&, const DataFlowGraph&, bool);

  std::vector<Event> events_;
  EventId input_;
  EventId output_;
  std::vector<std::pair<EventId, EventId>> edges_;
  std::vector<std::vector<EventId>> succ_;
};

class InvalidGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownEvent : public std::out_of_range {
 public:
  explicit UnknownEvent(EventId id);
  EventId id() const { return id_; }

 private:
  EventId id_;
};

// d1's events keep their ids; d2's are shifted by d1.size(). The result runs
// from d1's input to d2's output. before_copy also adds the edge from d1's
// output to d2's input.
DataFlowGraph before_copy(const DataFlowGraph& d1, const DataFlowGraph& d2);
DataFlowGraph before_nil(const DataFlowGraph& d1, const DataFlowGraph& d2);

DataFlowGraph graph_of(const Phrase& t, const Place& p, const Position& pos, const Evidence& e);
DataFlowGraph graph_of(const TopPhrase& t);

// Place before the colon.
const Place& sending_place(const Event& v);
// The destination of a request or reply; the sending place otherwise.
const Place& receiving_place(const Event& v);
bool is_cross_place(const Event& v);
const Evidence& evidence_of(const Event& v);
bool is_measurement(const Event& v);
bool is_signature(const Event& v);

}  // namespace copland

#endif  // COPLAND_DATAFLOW_HPP
