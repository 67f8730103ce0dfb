#ifndef COPLAND_SYNTAX_HPP
#define COPLAND_SYNTAX_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace copland {

// A place is an execution environment (trust boundary) such as `ks` or `us`.
struct Place {
  std::string name;

  friend auto operator<=>(const Place&, const Place&) = default;
};

// Probe and target names of a measurement.
struct Symbol {
  std::string name;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

enum class SplitSpec { Plus, Minus };
enum class BranchKind { Seq, Par };

char to_char(SplitSpec s);
char to_char(BranchKind k);

// Position of a subterm relative to the root of a phrase. Stored head-first:
// `<1,2,1>` is 1 :: (2 :: (1 :: <>)), so extending a position prepends.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<int> path);

  Position cons(int step) const;
  const std::vector<int>& path() const { return path_; }
  bool empty() const { return path_.empty(); }
  std::string to_string() const;

  friend auto operator<=>(const Position&, const Position&) = default;

 private:
  std::vector<int> path_;
};

struct PhraseNode;

// Immutable Copland term. Subterms are shared, so copies are cheap.
class Phrase {
 public:
  static Phrase meas(Symbol probe, Place place, Symbol target);
  static Phrase at(Place place, Phrase body);
  static Phrase copy();
  static Phrase sign();
  static Phrase hash();
  static Phrase nul();
  static Phrase seq(Phrase left, Phrase right);
  static Phrase branch(BranchKind kind, SplitSpec left_spec, SplitSpec right_spec,
                       Phrase left, Phrase right);

  const PhraseNode& node() const { return *node_; }

  template <class T>
  const T* as() const;

  template <class T>
  bool is() const { return as<T>() != nullptr; }

  std::size_t size() const;

  friend bool operator==(const Phrase& a, const Phrase& b);

 private:
  explicit Phrase(std::shared_ptr<const PhraseNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const PhraseNode> node_;
};

// Phrase constructors. Field order follows the concrete syntax.
struct Meas {
  Symbol probe;
  Place place;
  Symbol target;
  friend bool operator==(const Meas&, const Meas&) = default;
};
struct At {
  Place place;
  Phrase body;
  friend bool operator==(const At&, const At&) = default;
};
struct Copy {
  friend bool operator==(const Copy&, const Copy&) = default;
};
struct Sign {
  friend bool operator==(const Sign&, const Sign&) = default;
};
struct Hash {
  friend bool operator==(const Hash&, const Hash&) = default;
};
struct Nul {
  friend bool operator==(const Nul&, const Nul&) = default;
};
struct Seq {
  Phrase left;
  Phrase right;
  friend bool operator==(const Seq&, const Seq&) = default;
};
struct Branch {
  BranchKind kind;
  SplitSpec left_spec;
  SplitSpec right_spec;
  Phrase left;
  Phrase right;
  friend bool operator==(const Branch&, const Branch&) = default;
};

struct PhraseNode {
  std::variant<Meas, At, Copy, Sign, Hash, Nul, Seq, Branch> value;
  friend bool operator==(const PhraseNode&, const PhraseNode&) = default;
};

template <class T>
const T* Phrase::as() const {
  return std::get_if<T>(&node_->value);
}

// `*place: body`
struct TopPhrase {
  Place place;
  Phrase body;
  friend bool operator==(const TopPhrase&, const TopPhrase&) = default;
};

// Malformed concrete syntax. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

TopPhrase parse_top(std::string_view text);
Phrase parse_phrase(std::string_view text);

std::string print_top(const TopPhrase& t);
std::string print_phrase(const Phrase& t);

bool is_identifier(std::string_view s);

}  // namespace copland

#endif  // COPLAND_SYNTAX_HPP
