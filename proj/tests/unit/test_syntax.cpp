#include <gtest/gtest.h>

#include "copland/syntax.hpp"
#include "fixtures.hpp"
#include "generator.hpp"

using namespace copland;

TEST(Syntax, ParsesExampleOne) {
  TopPhrase t = fixtures::ex1();
  EXPECT_EQ(t.place, Place{"app"});
  const At* outer = t.body.as<At>();
  ASSERT_NE(outer, nullptr);
  EXPECT_EQ(outer->place, Place{"ks"});
  const Seq* s = outer->body.as<Seq>();
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->left, Phrase::meas(Symbol{"vcm"}, Place{"us"}, Symbol{"vc"}));
  EXPECT_EQ(s->right, Phrase::at(Place{"us"}, Phrase::meas(Symbol{"vc"}, Place{"us"}, Symbol{"sys"})));
}

TEST(Syntax, PrintsCanonicalForm) {
  EXPECT_EQ(print_top(fixtures::ex1()), fixtures::kEx1);
  EXPECT_EQ(print_top(fixtures::ex2()), fixtures::kEx2);
  EXPECT_EQ(print_top(fixtures::ex3()), fixtures::kEx3);
  EXPECT_EQ(print_top(parse_top("*p:@q[  a   b c->!]")), "*p: @q [a b c -> !]");
}

TEST(Syntax, ArrowIsRightAssociative) {
  Phrase t = parse_phrase("_ -> ! -> #");
  const Seq* s = t.as<Seq>();
  ASSERT_NE(s, nullptr);
  EXPECT_TRUE(s->left.is<Copy>());
  EXPECT_TRUE(s->right.is<Seq>());
}

TEST(Syntax, LeftNestedSequenceKeepsParens) {
  Phrase t = Phrase::seq(Phrase::seq(Phrase::copy(), Phrase::sign()), Phrase::hash());
  EXPECT_EQ(print_phrase(t), "(_ -> !) -> #");
  EXPECT_EQ(parse_phrase(print_phrase(t)), t);
}

TEST(Syntax, AllBranchOperators) {
  for (const char* l : {"+", "-"}) {
    for (const char* k : {"<", "~"}) {
      for (const char* r : {"+", "-"}) {
        std::string text = std::string("(_ ") + l + k + r + " {})";
        Phrase t = parse_phrase(text);
        const Branch* b = t.as<Branch>();
        ASSERT_NE(b, nullptr) << text;
        EXPECT_EQ(b->left_spec, *l == '+' ? SplitSpec::Plus : SplitSpec::Minus);
        EXPECT_EQ(b->kind, *k == '<' ? BranchKind::Seq : BranchKind::Par);
        EXPECT_EQ(b->right_spec, *r == '+' ? SplitSpec::Plus : SplitSpec::Minus);
        EXPECT_TRUE(b->right.is<Nul>());
        EXPECT_EQ(print_phrase(t), text);
      }
    }
  }
}

TEST(Syntax, CommentsAndNewlines) {
  TopPhrase t = parse_top("// header\n*app: // start\n  @ks [\n    vcm us vc // probe\n  ]\n");
  EXPECT_EQ(print_top(t), "*app: @ks [vcm us vc]");
}

TEST(Syntax, Leaves) {
  EXPECT_TRUE(parse_phrase("_").is<Copy>());
  EXPECT_TRUE(parse_phrase("!").is<Sign>());
  EXPECT_TRUE(parse_phrase("#").is<Hash>());
  EXPECT_TRUE(parse_phrase("{}").is<Nul>());
  EXPECT_TRUE(parse_phrase("{ }").is<Nul>());
  EXPECT_TRUE(parse_phrase("((!))").is<Sign>());
}

TEST(Syntax, Size) {
  EXPECT_EQ(fixtures::ex1().body.size(), 5u);
  EXPECT_EQ(Phrase::sign().size(), 1u);
}

namespace {

void expect_error(const std::string& text, std::size_t line, std::size_t column) {
  try {
    parse_top(text);
    ADD_FAILURE() << "parsed: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << text << ": " << e.what();
    EXPECT_EQ(e.column(), column) << text << ": " << e.what();
  }
}

}  // namespace

TEST(SyntaxErrors, Positions) {
  expect_error("", 1, 1);
  expect_error("app: !", 1, 1);
  expect_error("*app !", 1, 6);
  expect_error("*app: @ks [vcm us vc", 1, 21);
  expect_error("*app: @ks vcm", 1, 11);
  expect_error("*app: vcm us", 1, 13);
  expect_error("*app: ! !", 1, 9);
  expect_error("*app: (! +<* !)", 1, 12);
  expect_error("*app: (! +<+ !", 1, 15);
  expect_error("*app:\n  @ks [$]", 2, 8);
  expect_error("*app: ->", 1, 7);
  expect_error("*app: ! ->", 1, 11);
}

TEST(SyntaxErrors, MessageNamesToken) {
  try {
    parse_top("*app: @ks [vcm us vc ]]");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("']'"), std::string::npos) << e.what();
  }
}

TEST(Syntax, Identifiers) {
  EXPECT_TRUE(is_identifier("vc"));
  EXPECT_TRUE(is_identifier("a_1"));
  EXPECT_FALSE(is_identifier(""));
  EXPECT_FALSE(is_identifier("1a"));
  EXPECT_FALSE(is_identifier("a-b"));
}

TEST(Syntax, Positions) {
  Position p = Position{}.cons(1).cons(2).cons(1);
  EXPECT_EQ(p.to_string(), "<1,2,1>");
  EXPECT_EQ(p.path(), (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(Position{}.to_string(), "<>");
  EXPECT_TRUE(Position{}.empty());
}

TEST(SyntaxProperty, PrintParseRoundTrip) {
  testgen::PhraseGen gen(11);
  for (int i = 0; i < 500; ++i) {
    TopPhrase t = gen.top();
    const std::string text = print_top(t);
    TopPhrase back = parse_top(text);
    ASSERT_EQ(back, t) << text;
    ASSERT_EQ(print_top(back), text);
  }
}
