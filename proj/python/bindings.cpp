#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "copland/dataflow.hpp"
#include "copland/epp.hpp"
#include "copland/report.hpp"
#include "copland/syntax.hpp"
#include "copland/tamper.hpp"

namespace py = pybind11;
using namespace copland;

namespace {

std::vector<EventId> sorted(const EventSet& s) { return {s.begin(), s.end()}; }

py::dict event_dict(const Event& v) {
  py::dict d;
  d["id"] = v.id;
  d["place"] = v.label.place.name;
  d["kind"] = kind_name(v.label.kind);
  d["label"] = kind_text(v.label.kind);
  d["receiving_place"] = receiving_place(v).name;
  d["evidence"] = to_string(v.label.evidence);
  return d;
}

}  // namespace

PYBIND11_MODULE(_copland, m) {
  m.doc() = "Copland tamper analysis and evidence protection";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UnknownEvent>(m, "UnknownEvent", PyExc_IndexError);

  py::class_<DataFlowGraph>(m, "Graph")
      .def("__len__", &DataFlowGraph::size)
      .def_property_readonly("input", &DataFlowGraph::input)
      .def_property_readonly("output", &DataFlowGraph::output)
      .def_property_readonly("edges", &DataFlowGraph::edges)
      .def("event", [](const DataFlowGraph& d, EventId v) { return event_dict(d.event(v)); })
      .def("events", [](const DataFlowGraph& d) {
        py::list out;
        for (const auto& v : d.events()) out.append(event_dict(v));
        return out;
      })
      .def("to_json", [](const DataFlowGraph& d) { return to_json(d).dump(); })
      .def("to_dot", &to_dot, py::arg("show_evidence") = false)
      .def(
          "opportunities",
          [](const DataFlowGraph& d, EventId v, const std::string& mode) {
            if (mode != "enumerate" && mode != "propagate") {
              throw py::value_error("mode must be 'enumerate' or 'propagate'");
            }
            return sorted(tamper_opportunities(
                d, v, mode == "enumerate" ? OppsMode::Enumerate : OppsMode::Propagate));
          },
          py::arg("event"), py::arg("mode") = "enumerate")
      .def("witnesses",
           [](const DataFlowGraph& d, EventId v) {
             std::map<EventId, std::vector<EventId>> out;
             for (const auto& [w, p] : tamper_witnesses(d, v)) out[w] = p.events;
             return out;
           })
      .def(
          "minimal_strategies",
          [](const DataFlowGraph& d, EventId v, const std::string& search) {
            if (search != "descent" && search != "branch") {
              throw py::value_error("search must be 'descent' or 'branch'");
            }
            std::vector<std::vector<EventId>> out;
            for (const auto& s : minimal_tamper_strategies(
                     d, v,
                     search == "descent" ? StrategySearch::Descent : StrategySearch::PathBranching)) {
              out.push_back(sorted(s.members));
            }
            return out;
          },
          py::arg("event"), py::arg("search") = "descent")
      .def("is_tamper_strategy",
           [](const DataFlowGraph& d, EventId v, const std::vector<EventId>& members) {
             return is_tamper_strategy(d, v, EventSet(members.begin(), members.end()));
           })
      .def("permits_tampering",
           [](const DataFlowGraph& d, const std::vector<EventId>& path) {
             return permits_tampering(d, Path{path});
           })
      .def("is_protected", &is_protected_graph)
      .def("unprotected_path",
           [](const DataFlowGraph& d) -> std::optional<std::vector<EventId>> {
             auto p = find_unprotected_path(d);
             if (!p) return std::nullopt;
             return p->events;
           })
      .def("protected_sufficient", &protected_sufficient);

  py::class_<TopPhrase>(m, "Phrase")
      .def_static("parse", [](const std::string& text) { return parse_top(text); })
      .def_property_readonly("place", [](const TopPhrase& t) { return t.place.name; })
      .def("__str__", &print_top)
      .def("__repr__", [](const TopPhrase& t) { return "Phrase('" + print_top(t) + "')"; })
      .def("__eq__", [](const TopPhrase& a, const TopPhrase& b) { return a == b; })
      .def("to_json", [](const TopPhrase& t) { return to_json(t).dump(); })
      .def("evidence", [](const TopPhrase& t) { return to_string(eval_top(t)); })
      .def("evidence_json", [](const TopPhrase& t) { return to_json(eval_top(t)).dump(); })
      .def("graph", [](const TopPhrase& t) { return graph_of(t); })
      .def("protect", &epp_top)
      .def("protect_diff",
           [](const TopPhrase& t) {
             EppResult r = epp_top_with_diff(t);
             std::vector<std::pair<std::vector<int>, std::string>> diff;
             for (const auto& ins : r.diff.inserted) {
               diff.emplace_back(ins.path, ins.side == InsertionSide::BeforeAt ? "before-at"
                                                                               : "inside-at-end");
             }
             return std::make_pair(r.phrase, diff);
           })
      .def("preserved_by", [](const TopPhrase& original, const TopPhrase& transformed) {
        return check_evidence_preservation(original, transformed);
      });
}
