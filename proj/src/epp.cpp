#include "copland/epp.hpp"

#include <algorithm>
#include <set>

#include "copland/dataflow.hpp"

namespace copland {

namespace {

bool within(const PlaceSet& s, const Place& p) { return s.subset_of(PlaceSet::singleton(p)); }

}  // namespace

Phrase epp(const Phrase& t, const Place& p, const Evidence& e) {
  if (const auto* s = t.as<Seq>()) {
    Phrase left = epp(s->left, p, e);
    Evidence mid = eval(left, p, Position{}, e);
    return Phrase::seq(std::move(left), epp(s->right, p, mid));
  }
  if (const auto* b = t.as<Branch>()) {
    return Phrase::branch(b->kind, b->left_spec, b->right_spec,
                          epp(b->left, p, split_filter(b->left_spec, e)),
                          epp(b->right, p, split_filter(b->right_spec, e)));
  }
  const auto* a = t.as<At>();
  if (!a) return t;  // measurements, copy, sign, hash, nul
  const Place& q = a->place;
  if (q == p) return Phrase::at(q, epp(a->body, q, e));

  // Sign before the request unless the incoming evidence is already only
  // tamperable at p, and sign before the reply unless the result is only
  // tamperable at q.
  const bool sign_request = !within(tamper_places(e), p);
  const Evidence sent = sign_request ? Evidence::sig(e, p) : e;
  Phrase body = epp(a->body, q, sent);
  if (!within(tamper_places(eval(body, q, Position{}, sent)), q)) {
    body = Phrase::seq(std::move(body), Phrase::sign());
  }
  Phrase remote = Phrase::at(q, std::move(body));
  return sign_request ? Phrase::seq(Phrase::sign(), std::move(remote)) : remote;
}

TopPhrase epp_top(const TopPhrase& t) {
  return TopPhrase{t.place, epp(t.body, t.place, Evidence::empty())};
}

EppResult epp_top_with_diff(const TopPhrase& t) {
  TopPhrase out = epp_top(t);
  // epp only adds signatures in the shapes align_insertions recognizes.
  EppDiff diff = align_insertions(t, out).value();
  return EppResult{std::move(out), std::move(diff)};
}

namespace {

class Aligner {
 public:
  std::vector<SignInsertion> found;

  bool align(const Phrase& orig, const Phrase& trans, const Place& place, std::vector<int>& path) {
    if (const auto* a = orig.as<At>()) return align_at(*a, trans, place, path);
    if (const auto* s = orig.as<Seq>()) {
      const auto* ts = trans.as<Seq>();
      return ts && child(s->left, ts->left, place, path, 1) &&
             child(s->right, ts->right, place, path, 2);
    }
    if (const auto* b = orig.as<Branch>()) {
      const auto* tb = trans.as<Branch>();
      return tb && tb->kind == b->kind && tb->left_spec == b->left_spec &&
             tb->right_spec == b->right_spec && child(b->left, tb->left, place, path, 1) &&
             child(b->right, tb->right, place, path, 2);
    }
    return orig == trans;
  }

 private:
  bool child(const Phrase& orig, const Phrase& trans, const Place& place, std::vector<int>& path,
             int step) {
    path.push_back(step);
    bool ok = align(orig, trans, place, path);
    path.pop_back();
    return ok;
  }

  // Matches `trans` against At(q, body') or At(q, body' -> !), with `path`
  // pointing at the At node.
  bool align_remote(const At& orig, const Phrase& trans, std::vector<int>& path,
                    bool signed_reply) {
    const auto* ta = trans.as<At>();
    if (!ta || ta->place != orig.place) return false;
    if (!signed_reply) return child(orig.body, ta->body, orig.place, path, 1);
    const auto* ts = ta->body.as<Seq>();
    if (!ts || !ts->right.is<Sign>()) return false;
    path.push_back(1);
    bool ok = child(orig.body, ts->left, orig.place, path, 1);
    if (ok) {
      std::vector<int> at_sign = path;
      at_sign.push_back(2);
      found.push_back({std::move(at_sign), InsertionSide::InsideAtEnd});
    }
    path.pop_back();
    return ok;
  }

  bool align_at(const At& orig, const Phrase& trans, const Place& place, std::vector<int>& path) {
    if (orig.place == place) {
      const auto* ta = trans.as<At>();
      return ta && ta->place == orig.place && child(orig.body, ta->body, orig.place, path, 1);
    }
    const std::size_t mark = found.size();
    for (bool signed_request : {false, true}) {
      for (bool signed_reply : {false, true}) {
        found.resize(mark);
        if (!signed_request) {
          if (align_remote(orig, trans, path, signed_reply)) return true;
          continue;
        }
        const auto* ts = trans.as<Seq>();
        if (!ts || !ts->left.is<Sign>()) continue;
        std::vector<int> at_sign = path;
        at_sign.push_back(1);
        found.push_back({std::move(at_sign), InsertionSide::BeforeAt});
        path.push_back(2);
        bool ok = align_remote(orig, ts->right, path, signed_reply);
        path.pop_back();
        if (ok) return true;
      }
    }
    found.resize(mark);
    return false;
  }
};

Phrase erase(const Phrase& t, std::vector<int>& path, const std::set<std::vector<int>>& before,
             const std::set<std::vector<int>>& inside) {
  auto sub = [&](const Phrase& c, int step) {
    path.push_back(step);
    Phrase out = erase(c, path, before, inside);
    path.pop_back();
    return out;
  };
  auto child_path = [&](int step) {
    std::vector<int> p = path;
    p.push_back(step);
    return p;
  };
  if (const auto* s = t.as<Seq>()) {
    if (s->left.is<Sign>() && before.count(child_path(1))) return sub(s->right, 2);
    if (s->right.is<Sign>() && inside.count(child_path(2))) return sub(s->left, 1);
    return Phrase::seq(sub(s->left, 1), sub(s->right, 2));
  }
  if (const auto* a = t.as<At>()) return Phrase::at(a->place, sub(a->body, 1));
  if (const auto* b = t.as<Branch>()) {
    return Phrase::branch(b->kind, b->left_spec, b->right_spec, sub(b->left, 1),
                          sub(b->right, 2));
  }
  return t;
}

// Same action at the same place. Measurement positions are ignored since
// inserting Seq nodes shifts them.
bool same_action(const Label& a, const Label& b) {
  if (a.place != b.place || a.kind.index() != b.kind.index()) return false;
  const auto* ma = std::get_if<lbl::Msp>(&a.kind);
  const auto* mb = std::get_if<lbl::Msp>(&b.kind);
  if (ma && mb) {
    return ma->probe == mb->probe && ma->target_place == mb->target_place &&
           ma->target == mb->target;
  }
  return a.kind == b.kind;
}

bool reachable(const DataFlowGraph& d, EventId from, EventId to) {
  std::vector<char> seen(d.size(), 0);
  std::vector<EventId> stack{from};
  while (!stack.empty()) {
    EventId v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    if (seen[v]) continue;
    seen[v] = 1;
    for (EventId w : d.successors(v)) stack.push_back(w);
  }
  return false;
}

bool events_embed(const DataFlowGraph& original, const DataFlowGraph& transformed) {
  // Greedy order-preserving match; it finds an embedding whenever one exists.
  std::vector<EventId> image(original.size());
  EventId j = 0;
  for (const Event& v : original.events()) {
    while (j < transformed.size() && !same_action(v.label, transformed.event(j).label)) ++j;
    if (j == transformed.size()) return false;
    image[v.id] = j++;
  }
  if (image[original.input()] != transformed.input() &&
      !reachable(transformed, transformed.input(), image[original.input()])) {
    return false;
  }
  for (const auto& [a, b] : original.edges()) {
    if (!reachable(transformed, image[a], image[b])) return false;
  }
  return reachable(transformed, image[original.output()], transformed.output());
}

}  // namespace

std::optional<EppDiff> align_insertions(const TopPhrase& original, const TopPhrase& transformed) {
  if (original.place != transformed.place) return std::nullopt;
  Aligner aligner;
  std::vector<int> path;
  if (!aligner.align(original.body, transformed.body, original.place, path)) return std::nullopt;
  return EppDiff{std::move(aligner.found)};
}

TopPhrase erase_insertions(const TopPhrase& transformed, const EppDiff& diff) {
  std::set<std::vector<int>> before, inside;
  for (const auto& ins : diff.inserted) {
    (ins.side == InsertionSide::BeforeAt ? before : inside).insert(ins.path);
  }
  std::vector<int> path;
  return TopPhrase{transformed.place, erase(transformed.body, path, before, inside)};
}

bool check_evidence_preservation(const TopPhrase& original, const TopPhrase& transformed) {
  auto diff = align_insertions(original, transformed);
  if (!diff || erase_insertions(transformed, *diff) != original) return false;
  return events_embed(graph_of(original), graph_of(transformed));
}

}  // namespace copland
