#ifndef COPLAND_EPP_HPP
#define COPLAND_EPP_HPP

#include <optional>
#include <vector>

#include "copland/evidence.hpp"
#include "copland/syntax.hpp"

namespace copland {

enum class InsertionSide {
  // `! -> @q [...]`
  BeforeAt,
  // `@q [... -> !]`
  InsideAtEnd,
};

// One signature added by the transformation. `path` locates the inserted
// Sign node in the transformed body, root first: 1 selects the body of an At
// or the left child of a Seq or Branch, 2 the right child.
struct SignInsertion {
  std::vector<int> path;
  InsertionSide side;
  friend bool operator==(const SignInsertion&, const SignInsertion&) = default;
};

struct EppDiff {
  std::vector<SignInsertion> inserted;
  friend bool operator==(const EppDiff&, const EppDiff&) = default;
};

// Adds the signatures needed so that every cross-place request or reply
// carries evidence only its sender could tamper with. Idempotent.
Phrase epp(const Phrase& t, const Place& p, const Evidence& e);
TopPhrase epp_top(const TopPhrase& t);

struct EppResult {
  TopPhrase phrase;
  EppDiff diff;
};
EppResult epp_top_with_diff(const TopPhrase& t);

// Explains `transformed` as `original` plus signatures placed where the
// transformation may put them (around At nodes that change place). Returns
// nullopt if no such explanation exists.
std::optional<EppDiff> align_insertions(const TopPhrase& original, const TopPhrase& transformed);

// Removes the recorded signatures again.
TopPhrase erase_insertions(const TopPhrase& transformed, const EppDiff& diff);

// True iff `transformed` is `original` plus signature insertions and every
// event and data flow of the original graph survives in the transformed one.
bool check_evidence_preservation(const TopPhrase& original, const TopPhrase& transformed);

}  // namespace copland

#endif  // COPLAND_EPP_HPP
