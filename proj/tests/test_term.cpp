#include <doctest.h>

#include "mtkit/syntax.hpp"
#include "mtkit/term.hpp"
#include "mtkit/unify.hpp"
#include "support.hpp"

using namespace mtkit;
using mtkit::testing::TermGen;

TEST_CASE("print and parse agree on hand-written terms") {
  for (const char* text : {"f(X,a)", "want_sw(pro(i),fly_sw(pro(i)))", "[a,b|T]", "[]", "'hello world'",
                           "X=f(Y)", "keep+\"en\"", "drop(1)+an", "'2.5'", "-3", "'?'", "'måltid'"}) {
    Term t = parse_term(text);
    CHECK(parse_term(print_term(t)) == t);
  }
  CHECK(print_term(parse_term("f( X , 'a' )")) == "f(X,a)");
  CHECK(parse_term("2.5").name() == "2.5");
  CHECK(parse_term("-1.5").name() == "-1.5");
  CHECK(parse_term("\"måltid\"") == Term::atom("måltid"));
}

TEST_CASE("lists encode as cons cells") {
  Term l = parse_term("[a,b,c]");
  auto items = list_items(l);
  REQUIRE(items);
  CHECK(items->size() == 3);
  CHECK(make_list(*items) == l);
  CHECK_FALSE(list_items(parse_term("[a|T]")));
  CHECK(is_nil(parse_term("[]")));
}

TEST_CASE("syntax errors carry a location") {
  try {
    parse_clauses("a.\nf(X, .\n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_term("f(a"), SyntaxError);
  CHECK_THROWS_AS(parse_term("'unterminated"), SyntaxError);
}

TEST_CASE("anonymous variables are distinct") {
  Term t = parse_term("f(_, _)");
  CHECK(t.arg(0) != t.arg(1));
  CHECK(unify(t, parse_term("f(a, b)")));
}

TEST_CASE("unify: small cases") {
  auto s = unify(parse_term("f(X, g(Y))"), parse_term("f(a, g(X))"));
  REQUIRE(s);
  CHECK(print_subst(*s) == "{X/a, Y/a}");
  CHECK_FALSE(unify(parse_term("f(X)"), parse_term("g(X)")));
  CHECK_FALSE(unify(parse_term("X"), parse_term("f(X)")));
  CHECK_FALSE(unify(parse_term("f(X, Y)"), parse_term("f(Y, g(X))")));
  CHECK(unify(parse_term("X"), parse_term("X"))->empty());
}

TEST_CASE("match binds only pattern variables") {
  CHECK(match(parse_term("f(X, b)"), parse_term("f(a, b)")));
  CHECK_FALSE(match(parse_term("f(a, b)"), parse_term("f(X, b)")));
  CHECK_FALSE(match(parse_term("f(X, X)"), parse_term("f(a, b)")));
}

TEST_CASE("canonical renaming and variants") {
  Term t = parse_term("f(Q, g(R, Q))");
  CHECK(print_term(canonical_vars(t)) == "f(A,g(B,A))");
  CHECK(variant(t, parse_term("f(Z, g(W, Z))")));
  CHECK_FALSE(variant(t, parse_term("f(Z, g(Z, Z))")));
  CHECK(variant(t, rename_apart(t, fresh_salt())));
}

TEST_CASE("property: printed terms read back") {
  TermGen g(11);
  for (int i = 0; i < 2000; ++i) {
    Term t = g.term(g.uniform(0, 5));
    CHECK(parse_term(print_term(t)) == t);
  }
}

TEST_CASE("property: unifiers satisfy the mgu law and are idempotent") {
  TermGen g(12);
  int successes = 0;
  for (int i = 0; i < 3000; ++i) {
    Term a = g.term(g.uniform(0, 4));
    Term b = g.term(g.uniform(0, 4), g.coin() ? "X" : "Y");
    auto s = unify(a, b);
    if (!s) continue;
    ++successes;
    INFO(print_term(a), " ~ ", print_term(b));
    CHECK(mtkit::testing::check_unifier(a, b, *s) == "");
    // Symmetry up to renaming of the result.
    auto r = unify(b, a);
    REQUIRE(r);
    CHECK(variant(apply_subst(*s, a), apply_subst(*r, a)));
  }
  CHECK(successes > 300);
}

TEST_CASE("property: mgu is more general than a known ground unifier") {
  TermGen g(13);
  for (int i = 0; i < 2000; ++i) {
    auto u = g.unifiable(g.uniform(0, 4));
    INFO(print_term(u.a), " ~ ", print_term(u.b));
    auto s = unify(u.a, u.b);
    REQUIRE(s);
    CHECK(mtkit::testing::check_unifier(u.a, u.b, *s) == "");
    CHECK(mtkit::testing::check_more_general(u.a, u.b, *s, u.theta) == "");
  }
}

TEST_CASE("property: occurs-check rejects cyclic pairs") {
  TermGen g(14);
  for (int i = 0; i < 2000; ++i) {
    auto [a, b] = g.cyclic(g.uniform(1, 4));
    INFO(print_term(a), " ~ ", print_term(b));
    CHECK_FALSE(unify(a, b));
  }
}

TEST_CASE("property: unify_into agrees with unify") {
  TermGen g(15);
  for (int i = 0; i < 1000; ++i) {
    Term a = g.term(3), b = g.term(3);
    Substitution env;
    bool ok = unify_into(env, a, b);
    CHECK(ok == unify(a, b).has_value());
    if (ok) CHECK(env.resolve(a) == env.resolve(b));
  }
}
