#ifndef COPLAND_TESTS_FIXTURES_HPP
#define COPLAND_TESTS_FIXTURES_HPP

#include <stdexcept>
#include <string>

#include "copland/dataflow.hpp"
#include "copland/syntax.hpp"

namespace fixtures {

inline const char* const kEx1 = "*app: @ks [vcm us vc -> @us [vc us sys]]";
inline const char* const kEx2 = "*app: @ks [vcm us vc -> @us [(aim us ai +~+ vc us sys)]]";
inline const char* const kEx3 = "*app: @ks [vcm us vc -> ! -> @us [vc us sys -> !]]";

inline copland::TopPhrase ex1() { return copland::parse_top(kEx1); }
inline copland::TopPhrase ex2() { return copland::parse_top(kEx2); }
inline copland::TopPhrase ex3() { return copland::parse_top(kEx3); }

// Id of the unique event printed as `place:kind(args)`.
inline copland::EventId find_event(const copland::DataFlowGraph& d, const std::string& text) {
  copland::EventId found = d.size();
  for (const auto& v : d.events()) {
    if (v.label.place.name + ':' + copland::kind_text(v.label.kind) == text) {
      if (found != d.size()) throw std::logic_error("ambiguous event " + text);
      found = v.id;
    }
  }
  if (found == d.size()) throw std::logic_error("no event " + text);
  return found;
}

}  // namespace fixtures

#endif
