#include "copland/syntax.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <utility>

namespace copland {

char to_char(SplitSpec s) { return s == SplitSpec::Plus ? '+' : '-'; }
char to_char(BranchKind k) { return k == BranchKind::Seq ? '<' : '~'; }

Position::Position(std::vector<int> path) : path_(std::move(path)) {}

Position Position::cons(int step) const {
  std::vector<int> p;
  p.reserve(path_.size() + 1);
  p.push_back(step);
  p.insert(p.end(), path_.begin(), path_.end());
  return Position(std::move(p));
}

std::string Position::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(path_[i]);
  }
  out += '>';
  return out;
}

Phrase Phrase::meas(Symbol probe, Place place, Symbol target) {
  return Phrase(std::make_shared<const PhraseNode>(
      PhraseNode{Meas{std::move(probe), std::move(place), std::move(target)}}));
}
Phrase Phrase::at(Place place, Phrase body) {
  return Phrase(std::make_shared<const PhraseNode>(
      PhraseNode{At{std::move(place), std::move(body)}}));
}
Phrase Phrase::copy() { return Phrase(std::make_shared<const PhraseNode>(PhraseNode{Copy{}})); }
Phrase Phrase::sign() { return Phrase(std::make_shared<const PhraseNode>(PhraseNode{Sign{}})); }
Phrase Phrase::hash() { return Phrase(std::make_shared<const PhraseNode>(PhraseNode{Hash{}})); }
Phrase Phrase::nul() { return Phrase(std::make_shared<const PhraseNode>(PhraseNode{Nul{}})); }
Phrase Phrase::seq(Phrase left, Phrase right) {
  return Phrase(std::make_shared<const PhraseNode>(
      PhraseNode{Seq{std::move(left), std::move(right)}}));
}
Phrase Phrase::branch(BranchKind kind, SplitSpec left_spec, SplitSpec right_spec,
                      Phrase left, Phrase right) {
  return Phrase(std::make_shared<const PhraseNode>(PhraseNode{
      Branch{kind, left_spec, right_spec, std::move(left), std::move(right)}}));
}

std::size_t Phrase::size() const {
  if (const auto* a = as<At>()) return 1 + a->body.size();
  if (const auto* s = as<Seq>()) return 1 + s->left.size() + s->right.size();
  if (const auto* b = as<Branch>()) return 1 + b->left.size() + b->right.size();
  return 1;
}

bool operator==(const Phrase& a, const Phrase& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

namespace {

enum class Tok {
  Ident, Star, Colon, AtSign, LBracket, RBracket, LParen, RParen,
  Arrow, Underscore, Bang, HashSign, LBrace, RBrace, Plus, Minus, Less, Tilde, End
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Star: return "'*'";
    case Tok::Colon: return "':'";
    case Tok::AtSign: return "'@'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Arrow: return "'->'";
    case Tok::Underscore: return "'_'";
    case Tok::Bang: return "'!'";
    case Tok::HashSign: return "'#'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Less: return "'<'";
    case Tok::Tilde: return "'~'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), line, col});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", line, col});
      advance(2);
      continue;
    }
    std::optional<Tok> single;
    switch (c) {
      case '*': single = Tok::Star; break;
      case ':': single = Tok::Colon; break;
      case '@': single = Tok::AtSign; break;
      case '[': single = Tok::LBracket; break;
      case ']': single = Tok::RBracket; break;
      case '(': single = Tok::LParen; break;
      case ')': single = Tok::RParen; break;
      case '_': single = Tok::Underscore; break;
      case '!': single = Tok::Bang; break;
      case '#': single = Tok::HashSign; break;
      case '{': single = Tok::LBrace; break;
      case '}': single = Tok::RBrace; break;
      case '+': single = Tok::Plus; break;
      case '-': single = Tok::Minus; break;
      case '<': single = Tok::Less; break;
      case '~': single = Tok::Tilde; break;
      default: break;
    }
    if (!single) {
      std::string shown;
      if (std::isprint(static_cast<unsigned char>(c))) {
        shown = std::string("'") + c + "'";
      } else {
        std::ostringstream os;
        os << "byte 0x" << std::hex << static_cast<int>(static_cast<unsigned char>(c));
        shown = os.str();
      }
      throw ParseError("unexpected character " + shown, line, col);
    }
    out.push_back({*single, std::string(1, c), line, col});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  TopPhrase top() {
    expect(Tok::Star);
    Place p{expect(Tok::Ident).text};
    expect(Tok::Colon);
    Phrase body = phrase();
    expect(Tok::End);
    return TopPhrase{std::move(p), std::move(body)};
  }

  Phrase lone_phrase() {
    Phrase body = phrase();
    expect(Tok::End);
    return body;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  const Token& expect(Tok k) {
    const Token& t = peek();
    if (t.kind != k) fail(describe(k));
    ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected " + expected + ", found " + found, t.line, t.column);
  }

  // phrase := atom ('->' phrase)?
  Phrase phrase() {
    Phrase left = atom();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      return Phrase::seq(std::move(left), phrase());
    }
    return left;
  }

  std::optional<SplitSpec> split_spec() {
    if (peek().kind == Tok::Plus) {
      ++pos_;
      return SplitSpec::Plus;
    }
    if (peek().kind == Tok::Minus) {
      ++pos_;
      return SplitSpec::Minus;
    }
    return std::nullopt;
  }

  Phrase atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        Symbol probe{t.text};
        ++pos_;
        Place place{expect(Tok::Ident).text};
        Symbol target{expect(Tok::Ident).text};
        return Phrase::meas(std::move(probe), std::move(place), std::move(target));
      }
      case Tok::AtSign: {
        ++pos_;
        Place place{expect(Tok::Ident).text};
        expect(Tok::LBracket);
        Phrase body = phrase();
        expect(Tok::RBracket);
        return Phrase::at(std::move(place), std::move(body));
      }
      case Tok::Underscore: ++pos_; return Phrase::copy();
      case Tok::Bang: ++pos_; return Phrase::sign();
      case Tok::HashSign: ++pos_; return Phrase::hash();
      case Tok::LBrace:
        ++pos_;
        expect(Tok::RBrace);
        return Phrase::nul();
      case Tok::LParen: {
        ++pos_;
        Phrase left = phrase();
        if (peek().kind == Tok::RParen) {
          ++pos_;
          return left;
        }
        auto ls = split_spec();
        if (!ls) fail("')' or a branch operator");
        BranchKind kind;
        if (peek().kind == Tok::Less) {
          kind = BranchKind::Seq;
        } else if (peek().kind == Tok::Tilde) {
          kind = BranchKind::Par;
        } else {
          fail("'<' or '~'");
        }
        ++pos_;
        auto rs = split_spec();
        if (!rs) fail("'+' or '-'");
        Phrase right = phrase();
        expect(Tok::RParen);
        return Phrase::branch(kind, *ls, *rs, std::move(left), std::move(right));
      }
      default:
        fail("a phrase");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void print(const Phrase& t, std::string& out);

void print_seq_operand(const Phrase& t, std::string& out) {
  if (t.is<Seq>()) {
    out += '(';
    print(t, out);
    out += ')';
  } else {
    print(t, out);
  }
}

void print(const Phrase& t, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Meas>) {
          out += n.probe.name + ' ' + n.place.name + ' ' + n.target.name;
        } else if constexpr (std::is_same_v<T, At>) {
          out += '@' + n.place.name + " [";
          print(n.body, out);
          out += ']';
        } else if constexpr (std::is_same_v<T, Copy>) {
          out += '_';
        } else if constexpr (std::is_same_v<T, Sign>) {
          out += '!';
        } else if constexpr (std::is_same_v<T, Hash>) {
          out += '#';
        } else if constexpr (std::is_same_v<T, Nul>) {
          out += "{}";
        } else if constexpr (std::is_same_v<T, Seq>) {
          // `->` is right-associative, so only a left operand needs grouping.
          print_seq_operand(n.left, out);
          out += " -> ";
          print(n.right, out);
        } else if constexpr (std::is_same_v<T, Branch>) {
          out += '(';
          print(n.left, out);
          out += ' ';
          out += to_char(n.left_spec);
          out += to_char(n.kind);
          out += to_char(n.right_spec);
          out += ' ';
          print(n.right, out);
          out += ')';
        }
      },
      t.node().value);
}

}  // namespace

TopPhrase parse_top(std::string_view text) { return Parser(tokenize(text)).top(); }

Phrase parse_phrase(std::string_view text) { return Parser(tokenize(text)).lone_phrase(); }

std::string print_phrase(const Phrase& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string print_top(const TopPhrase& t) {
  return '*' + t.place.name + ": " + print_phrase(t.body);
}

}  // namespace copland
