#ifndef COPLAND_REPORT_HPP
#define COPLAND_REPORT_HPP

#include <json.hpp>
#include <string>

#include "copland/dataflow.hpp"
#include "copland/epp.hpp"
#include "copland/evidence.hpp"
#include "copland/syntax.hpp"
#include "copland/tamper.hpp"

namespace copland {

// Canonical JSON forms used by the command-line reports. Object keys are
// emitted in sorted order so output is byte-stable.
nlohmann::json to_json(const Evidence& e);
nlohmann::json to_json(const Phrase& t);
nlohmann::json to_json(const TopPhrase& t);
nlohmann::json to_json(const DataFlowGraph& d);
nlohmann::json to_json(const TamperReport& r, bool with_witnesses);
nlohmann::json to_json(const EppDiff& diff);

// Graphviz digraph. Node labels are `id: place:kind`, followed by the
// evidence text when `show_evidence` is set.
std::string to_dot(const DataFlowGraph& d, bool show_evidence);

}  // namespace copland

#endif  // COPLAND_REPORT_HPP
