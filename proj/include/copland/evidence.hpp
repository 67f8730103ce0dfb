#ifndef COPLAND_EVIDENCE_HPP
#define COPLAND_EVIDENCE_HPP

#include <memory>
#include <set>
#include <string>
#include <variant>

#include "copland/syntax.hpp"

namespace copland {

struct EvidenceNode;

// Symbolic evidence. The raw measurement value is not materialized; a
// measurement is identified by its metadata and position.
class Evidence {
 public:
  static Evidence empty();
  static Evidence meas(Symbol probe, Place target_place, Symbol target, Place at_place,
                       Position pos, Evidence input);
  static Evidence sig(Evidence body, Place place);
  static Evidence hash(Evidence body, Place place);
  static Evidence seq(Evidence left, Evidence right);
  static Evidence par(Evidence left, Evidence right);

  const EvidenceNode& node() const { return *node_; }

  template <class T>
  const T* as() const;

  template <class T>
  bool is() const { return as<T>() != nullptr; }

  friend bool operator==(const Evidence& a, const Evidence& b);

 private:
  explicit Evidence(std::shared_ptr<const EvidenceNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const EvidenceNode> node_;
};

namespace ev {

struct Empty {
  friend bool operator==(const Empty&, const Empty&) = default;
};
struct Meas {
  Symbol probe;
  Place target_place;
  Symbol target;
  Place at_place;
  Position pos;
  Evidence input;
  friend bool operator==(const Meas&, const Meas&) = default;
};
struct Sig {
  Evidence body;
  Place place;
  friend bool operator==(const Sig&, const Sig&) = default;
};
struct Hash {
  Evidence body;
  Place place;
  friend bool operator==(const Hash&, const Hash&) = default;
};
struct Seq {
  Evidence left;
  Evidence right;
  friend bool operator==(const Seq&, const Seq&) = default;
};
struct Par {
  Evidence left;
  Evidence right;
  friend bool operator==(const Par&, const Par&) = default;
};

}  // namespace ev

struct EvidenceNode {
  std::variant<ev::Empty, ev::Meas, ev::Sig, ev::Hash, ev::Seq, ev::Par> value;
  friend bool operator==(const EvidenceNode&, const EvidenceNode&) = default;
};

template <class T>
const T* Evidence::as() const {
  return std::get_if<T>(&node_->value);
}

// Canonical one-line rendering, e.g. `sig(m(vcm,us,vc,ks,<1,1>,mt),ks)`.
std::string to_string(const Evidence& e);

// A set of places that is either every place or an explicit finite set.
// The universal set is kept symbolic.
class PlaceSet {
 public:
  static PlaceSet all() { return PlaceSet(true, {}); }
  static PlaceSet none() { return PlaceSet(false, {}); }
  static PlaceSet of(std::set<Place> places) { return PlaceSet(false, std::move(places)); }
  static PlaceSet singleton(Place p) { return of({std::move(p)}); }

  bool is_all() const { return all_; }
  bool is_empty() const { return !all_ && places_.empty(); }
  const std::set<Place>& places() const { return places_; }

  bool contains(const Place& p) const { return all_ || places_.count(p) != 0; }
  bool subset_of(const PlaceSet& other) const;

  PlaceSet intersect(const PlaceSet& other) const;
  PlaceSet unite(const PlaceSet& other) const;

  std::string to_string() const;

  friend bool operator==(const PlaceSet&, const PlaceSet&) = default;

 private:
  PlaceSet(bool all, std::set<Place> places) : all_(all), places_(std::move(places)) {}

  bool all_;
  std::set<Place> places_;
};

Evidence split_filter(SplitSpec d, const Evidence& e);

// Evidence produced by running `t` at place `p` at position `pos` on input `e`.
Evidence eval(const Phrase& t, const Place& p, const Position& pos, const Evidence& e);
Evidence eval_top(const TopPhrase& t);

// Places able to tamper with some measurement embedded in `e`.
PlaceSet tamper_places(const Evidence& e);

}  // namespace copland

#endif  // COPLAND_EVIDENCE_HPP
