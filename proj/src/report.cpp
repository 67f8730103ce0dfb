#include "copland/report.hpp"

#include <sstream>

namespace copland {

using nlohmann::json;

namespace {

std::string spec_text(SplitSpec s) { return std::string(1, to_char(s)); }
std::string branch_text(BranchKind k) { return std::string(1, to_char(k)); }

json ids(const EventSet& s) {
  json out = json::array();
  for (EventId v : s) out.push_back(v);
  return out;
}

json label_args(const LabelKind& k) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, lbl::Msp>) {
          return {{"probe", n.probe.name},
                  {"targetPlace", n.target_place.name},
                  {"target", n.target.name},
                  {"pos", n.pos.path()}};
        } else if constexpr (std::is_same_v<T, lbl::Req> || std::is_same_v<T, lbl::Rpy>) {
          return {{"to", n.to.name}};
        } else if constexpr (std::is_same_v<T, lbl::Split>) {
          return {{"left", spec_text(n.left)}, {"right", spec_text(n.right)}};
        } else if constexpr (std::is_same_v<T, lbl::Join>) {
          return {{"kind", branch_text(n.kind)}};
        } else {
          return json::object();
        }
      },
      k);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

json to_json(const Evidence& e) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ev::Empty>) {
          return {{"tag", "empty"}};
        } else if constexpr (std::is_same_v<T, ev::Meas>) {
          return {{"tag", "meas"},
                  {"probe", n.probe.name},
                  {"targetPlace", n.target_place.name},
                  {"target", n.target.name},
                  {"place", n.at_place.name},
                  {"pos", n.pos.path()},
                  {"input", to_json(n.input)}};
        } else if constexpr (std::is_same_v<T, ev::Sig>) {
          return {{"tag", "sig"}, {"place", n.place.name}, {"body", to_json(n.body)}};
        } else if constexpr (std::is_same_v<T, ev::Hash>) {
          return {{"tag", "hash"}, {"place", n.place.name}, {"body", to_json(n.body)}};
        } else if constexpr (std::is_same_v<T, ev::Seq>) {
          return {{"tag", "seq"}, {"left", to_json(n.left)}, {"right", to_json(n.right)}};
        } else {
          return {{"tag", "par"}, {"left", to_json(n.left)}, {"right", to_json(n.right)}};
        }
      },
      e.node().value);
}

json to_json(const Phrase& t) {
  return std::visit(
      [](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Meas>) {
          return {{"tag", "meas"},
                  {"probe", n.probe.name},
                  {"place", n.place.name},
                  {"target", n.target.name}};
        } else if constexpr (std::is_same_v<T, At>) {
          return {{"tag", "at"}, {"place", n.place.name}, {"body", to_json(n.body)}};
        } else if constexpr (std::is_same_v<T, Copy>) {
          return {{"tag", "copy"}};
        } else if constexpr (std::is_same_v<T, Sign>) {
          return {{"tag", "sign"}};
        } else if constexpr (std::is_same_v<T, Hash>) {
          return {{"tag", "hash"}};
        } else if constexpr (std::is_same_v<T, Nul>) {
          return {{"tag", "nul"}};
        } else if constexpr (std::is_same_v<T, Seq>) {
          return {{"tag", "seq"}, {"left", to_json(n.left)}, {"right", to_json(n.right)}};
        } else {
          return {{"tag", "branch"},
                  {"kind", branch_text(n.kind)},
                  {"leftSpec", spec_text(n.left_spec)},
                  {"rightSpec", spec_text(n.right_spec)},
                  {"left", to_json(n.left)},
                  {"right", to_json(n.right)}};
        }
      },
      t.node().value);
}

json to_json(const TopPhrase& t) { return {{"place", t.place.name}, {"body", to_json(t.body)}}; }

json to_json(const DataFlowGraph& d) {
  json events = json::array();
  for (const Event& v : d.events()) {
    events.push_back({{"id", v.id},
                      {"place", v.label.place.name},
                      {"kind", kind_name(v.label.kind)},
                      {"args", label_args(v.label.kind)},
                      {"evidence", to_json(v.label.evidence)}});
  }
  json edges = json::array();
  for (const auto& [a, b] : d.edges()) edges.push_back({a, b});
  return {{"events", events}, {"edges", edges}, {"input", d.input()}, {"output", d.output()}};
}

json to_json(const TamperReport& r, bool with_witnesses) {
  json out = {{"target", r.target}, {"opportunities", ids(r.opportunities)}};
  if (with_witnesses) {
    json w = json::object();
    for (const auto& [v, p] : r.witness_paths) w[std::to_string(v)] = p.events;
    out["witnesses"] = w;
  }
  json strategies = json::array();
  for (const auto& s : r.minimal_strategies) strategies.push_back(ids(s.members));
  out["minimalStrategies"] = strategies;
  return out;
}

json to_json(const EppDiff& diff) {
  json out = json::array();
  for (const auto& ins : diff.inserted) {
    out.push_back({{"path", ins.path},
                   {"side", ins.side == InsertionSide::BeforeAt ? "before-at" : "inside-at-end"}});
  }
  return out;
}

std::string to_dot(const DataFlowGraph& d, bool show_evidence) {
  std::ostringstream os;
  os << "digraph dataflow {\n  node [shape=box];\n";
  for (const Event& v : d.events()) {
    std::string label = dot_escape(std::to_string(v.id) + ": " + v.label.place.name + ':' +
                                   kind_text(v.label.kind));
    if (show_evidence) label += "\\n" + dot_escape(to_string(v.label.evidence));
    os << "  e" << v.id << " [label=\"" << label << '"';
    if (v.id == d.input()) os << ", peripheries=2";
    if (v.id == d.output()) os << ", style=bold";
    os << "];\n";
  }
  for (const auto& [a, b] : d.edges()) os << "  e" << a << " -> e" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace copland
