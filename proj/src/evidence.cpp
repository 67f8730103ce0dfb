#include "copland/evidence.hpp"

#include <algorithm>
#include <iterator>

namespace copland {

Evidence Evidence::empty() {
  static const Evidence kEmpty(std::make_shared<const EvidenceNode>(EvidenceNode{ev::Empty{}}));
  return kEmpty;
}
Evidence Evidence::meas(Symbol probe, Place target_place, Symbol target, Place at_place,
                        Position pos, Evidence input) {
  return Evidence(std::make_shared<const EvidenceNode>(
      EvidenceNode{ev::Meas{std::move(probe), std::move(target_place), std::move(target),
                            std::move(at_place), std::move(pos), std::move(input)}}));
}
Evidence Evidence::sig(Evidence body, Place place) {
  return Evidence(std::make_shared<const EvidenceNode>(
      EvidenceNode{ev::Sig{std::move(body), std::move(place)}}));
}
Evidence Evidence::hash(Evidence body, Place place) {
  return Evidence(std::make_shared<const EvidenceNode>(
      EvidenceNode{ev::Hash{std::move(body), std::move(place)}}));
}
Evidence Evidence::seq(Evidence left, Evidence right) {
  return Evidence(std::make_shared<const EvidenceNode>(
      EvidenceNode{ev::Seq{std::move(left), std::move(right)}}));
}
Evidence Evidence::par(Evidence left, Evidence right) {
  return Evidence(std::make_shared<const EvidenceNode>(
      EvidenceNode{ev::Par{std::move(left), std::move(right)}}));
}

bool operator==(const Evidence& a, const Evidence& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

std::string to_string(const Evidence& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ev::Empty>) {
          return "mt";
        } else if constexpr (std::is_same_v<T, ev::Meas>) {
          return "m(" + n.probe.name + ',' + n.target_place.name + ',' + n.target.name + ',' +
                 n.at_place.name + ',' + n.pos.to_string() + ',' + to_string(n.input) + ')';
        } else if constexpr (std::is_same_v<T, ev::Sig>) {
          return "sig(" + to_string(n.body) + ',' + n.place.name + ')';
        } else if constexpr (std::is_same_v<T, ev::Hash>) {
          return "hsh(" + to_string(n.body) + ',' + n.place.name + ')';
        } else if constexpr (std::is_same_v<T, ev::Seq>) {
          return '(' + to_string(n.left) + " ;; " + to_string(n.right) + ')';
        } else {
          return '(' + to_string(n.left) + " || " + to_string(n.right) + ')';
        }
      },
      e.node().value);
}

bool PlaceSet::subset_of(const PlaceSet& other) const {
  if (other.all_) return true;
  if (all_) return false;
  return std::includes(other.places_.begin(), other.places_.end(), places_.begin(),
                       places_.end());
}

PlaceSet PlaceSet::intersect(const PlaceSet& other) const {
  if (all_) return other;
  if (other.all_) return *this;
  std::set<Place> out;
  std::set_intersection(places_.begin(), places_.end(), other.places_.begin(),
                        other.places_.end(), std::inserter(out, out.end()));
  return of(std::move(out));
}

PlaceSet PlaceSet::unite(const PlaceSet& other) const {
  if (all_ || other.all_) return all();
  std::set<Place> out = places_;
  out.insert(other.places_.begin(), other.places_.end());
  return of(std::move(out));
}

std::string PlaceSet::to_string() const {
  if (all_) return "*";
  std::string out = "{";
  bool first = true;
  for (const auto& p : places_) {
    if (!first) out += ',';
    out += p.name;
    first = false;
  }
  return out + '}';
}

Evidence split_filter(SplitSpec d, const Evidence& e) {
  return d == SplitSpec::Minus ? Evidence::empty() : e;
}

Evidence eval(const Phrase& t, const Place& p, const Position& pos, const Evidence& e) {
  return std::visit(
      [&](const auto& n) -> Evidence {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Meas>) {
          return Evidence::meas(n.probe, n.place, n.target, p, pos, e);
        } else if constexpr (std::is_same_v<T, At>) {
          return eval(n.body, n.place, pos.cons(1), e);
        } else if constexpr (std::is_same_v<T, Copy>) {
          return e;
        } else if constexpr (std::is_same_v<T, Sign>) {
          return Evidence::sig(e, p);
        } else if constexpr (std::is_same_v<T, Hash>) {
          return Evidence::hash(e, p);
        } else if constexpr (std::is_same_v<T, Nul>) {
          return Evidence::empty();
        } else if constexpr (std::is_same_v<T, Seq>) {
          return eval(n.right, p, pos.cons(2), eval(n.left, p, pos.cons(1), e));
        } else {
          Evidence l = eval(n.left, p, pos.cons(1), split_filter(n.left_spec, e));
          Evidence r = eval(n.right, p, pos.cons(2), split_filter(n.right_spec, e));
          return n.kind == BranchKind::Seq ? Evidence::seq(std::move(l), std::move(r))
                                           : Evidence::par(std::move(l), std::move(r));
        }
      },
      t.node().value);
}

Evidence eval_top(const TopPhrase& t) { return eval(t.body, t.place, Position{}, Evidence::empty()); }

PlaceSet tamper_places(const Evidence& e) {
  return std::visit(
      [](const auto& n) -> PlaceSet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ev::Empty>) {
          return PlaceSet::none();
        } else if constexpr (std::is_same_v<T, ev::Meas>) {
          return PlaceSet::all();
        } else if constexpr (std::is_same_v<T, ev::Sig>) {
          return PlaceSet::singleton(n.place).intersect(tamper_places(n.body));
        } else if constexpr (std::is_same_v<T, ev::Hash>) {
          return tamper_places(n.body);
        } else {
          return tamper_places(n.left).unite(tamper_places(n.right));
        }
      },
      e.node().value);
}

}  // namespace copland
