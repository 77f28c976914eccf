#include <gtest/gtest.h>

#include "aspcost/errors.hpp"
#include "aspcost/term.hpp"

namespace aspcost {
namespace {

TEST(Term, ParsesNestedFunctionTerms) {
  const Term t = Term::parse("happens(actOcc(cross_alone(joe,side_b,side_a),2))");
  ASSERT_TRUE(t.is("happens", 1));
  const Term& occ = t.arg(0);
  EXPECT_TRUE(occ.is("actOcc", 2));
  EXPECT_EQ(occ.arg(1).as_number(), 2);
  EXPECT_EQ(occ.arg(0).render(), "cross_alone(joe,side_b,side_a)");
}

TEST(Term, RenderRoundTripsSolverSpelling) {
  for (const char* text : {"a", "f(-3)", "p(\"x y\",q)", "(a,b)", "(a,)", "preserve(at(p,s))"}) {
    EXPECT_EQ(Term::parse(text).render(), text);
  }
}

TEST(Term, AtomLineSplitsOnTopLevelSpaces) {
  const auto atoms = parse_atom_line("holds(f(a),1) useSuffix  saturated(fluent(g))");
  ASSERT_EQ(atoms.size(), 3u);
  EXPECT_EQ(atoms[1].render(), "useSuffix");
  EXPECT_EQ(atoms[2].arg(0).name(), "fluent");
}

TEST(Term, EmptyAtomLineIsEmpty) { EXPECT_TRUE(parse_atom_line("   ").empty()); }

TEST(Term, MalformedTextRaisesParseError) {
  EXPECT_THROW(Term::parse("f(a"), ParseError);
  EXPECT_THROW(Term::parse("f(a))"), ParseError);
  EXPECT_THROW(Term::parse("3x"), ParseError);
  EXPECT_THROW(Term::parse("f(a).as_number"), ParseError);
}

TEST(Term, AsNumberRejectsSymbols) { EXPECT_THROW(Term::parse("a").as_number(), MalformedModel); }

TEST(CanonicalName, LowercasesAndMapsDashes) {
  EXPECT_EQ(canonical_term_name("At(Joe, side-a)"), "at(joe,side_a)");
  EXPECT_EQ(canonical_term_name("lantern-at(side_a)"), "lantern_at(side_a)");
  EXPECT_EQ(canonical_term_name("f(-1)"), "f(-1)");
}

TEST(CanonicalName, RejectsNonTerms) {
  EXPECT_THROW(canonical_term_name("3"), ParseError);
  EXPECT_THROW(canonical_term_name("a b"), ParseError);
  EXPECT_THROW(canonical_term_name(""), ParseError);
}

}  // namespace
}  // namespace aspcost
