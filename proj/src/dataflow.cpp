#include "copland/dataflow.hpp"

#include <algorithm>

namespace copland {

std::string kind_name(const LabelKind& k) {
  static constexpr const char* kNames[] = {"msp", "cpy", "sig", "hsh", "nul",
                                           "req", "rpy", "split", "join"};
  return kNames[k.index()];
}

std::string kind_text(const LabelKind& k) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, lbl::Msp>) {
          return "msp(" + n.probe.name + ',' + n.target_place.name + ',' + n.target.name + ',' +
                 n.pos.to_string() + ')';
        } else if constexpr (std::is_same_v<T, lbl::Req>) {
          return "req(" + n.to.name + ')';
        } else if constexpr (std::is_same_v<T, lbl::Rpy>) {
          return "rpy(" + n.to.name + ')';
        } else if constexpr (std::is_same_v<T, lbl::Split>) {
          return std::string("split(") + to_char(n.left) + ',' + to_char(n.right) + ')';
        } else if constexpr (std::is_same_v<T, lbl::Join>) {
          return std::string("join(") + to_char(n.kind) + ')';
        } else if constexpr (std::is_same_v<T, lbl::Cpy>) {
          return "cpy";
        } else if constexpr (std::is_same_v<T, lbl::Sig>) {
          return "sig";
        } else if constexpr (std::is_same_v<T, lbl::Hsh>) {
          return "hsh";
        } else {
          return "nul";
        }
      },
      k);
}

UnknownEvent::UnknownEvent(EventId id)
    : std::out_of_range("unknown event id " + std::to_string(id)), id_(id) {}

DataFlowGraph::DataFlowGraph(Unchecked, std::vector<Label> labels, EventId input,
                             EventId output, std::vector<std::pair<EventId, EventId>> edges)
    : input_(input), output_(output), edges_(std::move(edges)) {
  events_.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) events_.push_back({i, std::move(labels[i])});
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  succ_.assign(events_.size(), {});
  for (const auto& [from, to] : edges_) succ_[from].push_back(to);
}

DataFlowGraph::DataFlowGraph(std::vector<Label> labels, EventId input, EventId output,
                             std::vector<std::pair<EventId, EventId>> edges) {
  const std::size_t n = labels.size();
  if (n == 0) throw InvalidGraph("data flow graph has no events");
  if (input >= n || output >= n) throw InvalidGraph("input or output event out of range");
  for (const auto& [from, to] : edges) {
    if (from >= n || to >= n) throw InvalidGraph("edge endpoint out of range");
    if (to == input) throw InvalidGraph("edge into the input event");
    if (from == output) throw InvalidGraph("edge out of the output event");
  }
  *this = DataFlowGraph(Unchecked{}, std::move(labels), input, output, std::move(edges));

  // Kahn's algorithm; leftover events sit on a cycle.
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& e : edges_) ++indegree[e.second];
  std::vector<EventId> ready;
  for (EventId v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    EventId v = ready.back();
    ready.pop_back();
    ++seen;
    for (EventId w : succ_[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (seen != n) throw InvalidGraph("data flow graph has a cycle");
}

DataFlowGraph DataFlowGraph::singleton(Label label) {
  std::vector<Label> labels;
  labels.push_back(std::move(label));
  return DataFlowGraph(Unchecked{}, std::move(labels), 0, 0, {});
}

const Event& DataFlowGraph::event(EventId id) const {
  if (id >= events_.size()) throw UnknownEvent(id);
  return events_[id];
}

const std::vector<EventId>& DataFlowGraph::successors(EventId id) const {
  if (id >= succ_.size()) throw UnknownEvent(id);
  return succ_[id];
}

bool DataFlowGraph::has_edge(EventId from, EventId to) const {
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(from, to));
}

DataFlowGraph combine(const DataFlowGraph& d1, const DataFlowGraph& d2, bool link) {
  const std::size_t shift = d1.size();
  std::vector<Label> labels;
  labels.reserve(d1.size() + d2.size());
  for (const auto& e : d1.events()) labels.push_back(e.label);
  for (const auto& e : d2.events()) labels.push_back(e.label);
  std::vector<std::pair<EventId, EventId>> edges = d1.edges();
  for (const auto& [from, to] : d2.edges()) edges.emplace_back(from + shift, to + shift);
  if (link) edges.emplace_back(d1.output(), d2.input() + shift);
  return DataFlowGraph(DataFlowGraph::Unchecked{}, std::move(labels), d1.input(),
                       d2.output() + shift, std::move(edges));
}

DataFlowGraph before_copy(const DataFlowGraph& d1, const DataFlowGraph& d2) {
  return combine(d1, d2, true);
}

DataFlowGraph before_nil(const DataFlowGraph& d1, const DataFlowGraph& d2) {
  return combine(d1, d2, false);
}

namespace {

DataFlowGraph event_graph(const Place& p, LabelKind kind, Evidence out) {
  return DataFlowGraph::singleton(Label{p, std::move(kind), std::move(out)});
}

}  // namespace

DataFlowGraph graph_of(const Phrase& t, const Place& p, const Position& pos, const Evidence& e) {
  return std::visit(
      [&](const auto& n) -> DataFlowGraph {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Meas>) {
          return event_graph(p, lbl::Msp{n.probe, n.place, n.target, pos},
                             Evidence::meas(n.probe, n.place, n.target, p, pos, e));
        } else if constexpr (std::is_same_v<T, At>) {
          const Position inner = pos.cons(1);
          DataFlowGraph req = event_graph(p, lbl::Req{n.place}, e);
          DataFlowGraph body = graph_of(n.body, n.place, inner, e);
          DataFlowGraph rpy = event_graph(n.place, lbl::Rpy{p}, eval(n.body, n.place, inner, e));
          return before_copy(before_copy(req, body), rpy);
        } else if constexpr (std::is_same_v<T, Copy>) {
          return event_graph(p, lbl::Cpy{}, e);
        } else if constexpr (std::is_same_v<T, Sign>) {
          return event_graph(p, lbl::Sig{}, Evidence::sig(e, p));
        } else if constexpr (std::is_same_v<T, Hash>) {
          return event_graph(p, lbl::Hsh{}, Evidence::hash(e, p));
        } else if constexpr (std::is_same_v<T, Nul>) {
          return event_graph(p, lbl::Nul{}, Evidence::empty());
        } else if constexpr (std::is_same_v<T, Seq>) {
          const Position lpos = pos.cons(1);
          return before_copy(graph_of(n.left, p, lpos, e),
                             graph_of(n.right, p, pos.cons(2), eval(n.left, p, lpos, e)));
        } else {
          // split, left side, right side, join. A side is linked to the split
          // only when its spec forwards evidence.
          DataFlowGraph split = event_graph(p, lbl::Split{n.left_spec, n.right_spec}, e);
          DataFlowGraph left =
              graph_of(n.left, p, pos.cons(1), split_filter(n.left_spec, e));
          DataFlowGraph right =
              graph_of(n.right, p, pos.cons(2), split_filter(n.right_spec, e));
          DataFlowGraph join = event_graph(p, lbl::Join{n.kind}, eval(t, p, pos, e));

          const EventId left_base = 1;
          const EventId right_base = left_base + left.size();
          const EventId join_id = right_base + right.size();
          std::vector<Label> labels;
          labels.reserve(join_id + 1);
          labels.push_back(split.event(0).label);
          for (const auto& ev : left.events()) labels.push_back(ev.label);
          for (const auto& ev : right.events()) labels.push_back(ev.label);
          labels.push_back(join.event(0).label);

          std::vector<std::pair<EventId, EventId>> edges;
          for (const auto& [a, b] : left.edges()) edges.emplace_back(a + left_base, b + left_base);
          for (const auto& [a, b] : right.edges())
            edges.emplace_back(a + right_base, b + right_base);
          if (n.left_spec == SplitSpec::Plus) edges.emplace_back(0, left.input() + left_base);
          if (n.right_spec == SplitSpec::Plus) edges.emplace_back(0, right.input() + right_base);
          edges.emplace_back(left.output() + left_base, join_id);
          edges.emplace_back(right.output() + right_base, join_id);
          return DataFlowGraph(std::move(labels), 0, join_id, std::move(edges));
        }
      },
      t.node().value);
}

DataFlowGraph graph_of(const TopPhrase& t) {
  return graph_of(t.body, t.place, Position{}, Evidence::empty());
}

const Place& sending_place(const Event& v) { return v.label.place; }

const Place& receiving_place(const Event& v) {
  if (const auto* r = std::get_if<lbl::Req>(&v.label.kind)) return r->to;
  if (const auto* r = std::get_if<lbl::Rpy>(&v.label.kind)) return r->to;
  return v.label.place;
}

bool is_cross_place(const Event& v) { return sending_place(v) != receiving_place(v); }

const Evidence& evidence_of(const Event& v) { return v.label.evidence; }

bool is_measurement(const Event& v) { return std::holds_alternative<lbl::Msp>(v.label.kind); }

bool is_signature(const Event& v) { return std::holds_alternative<lbl::Sig>(v.label.kind); }

}  // namespace copland
