#include <doctest.h>

#include "germ/error.hpp"
#include "germ/simplify.hpp"
#include "germ/term.hpp"

using namespace germ;

TEST_SUITE("term")
{
    TEST_CASE("round trip through format")
    {
        for (const char *s : {"x", "x + 1", "exp(x)*log(x)", "x^(3/2)", "1/log(log(x))", "pi/4 + x",
                              "exp(exp(x)) - x^2", "log(x)^(-1/3)"}) {
            Term t = parse(s);
            CHECK(parse(format(t)) == t);
        }
    }

    TEST_CASE("hash consing gives structural equality")
    {
        CHECK(parse("exp(x) + log(x)") == parse("exp(x)+log(x)"));
        CHECK(parse("x^2").id() == parse("x ^ 2").id());
        CHECK(parse("x^2") != parse("x^3"));
    }

    TEST_CASE("sugar")
    {
        CHECK(parse("sqrt(x)") == parse("x^(1/2)"));
        CHECK(parse("exp_2(x)") == parse("exp(exp(x))"));
        CHECK(parse("log_3(x)") == parse("log(log(log(x)))"));
        CHECK(simplify(parse("x - 1")) == simplify(parse("x + (-1)")));
    }

    TEST_CASE("unary minus binds to the atom")
    {
        // the grammar puts "-" inside atom, so -x^2 is (-x)^2
        CHECK(parse("-x^2") == parse("(-x)^2"));
        CHECK(parse("-(x^2)") != parse("-x^2"));
    }

    TEST_CASE("metrics")
    {
        Term t = parse("exp(log(x) + 1)");
        CHECK(t.tower_height() == 2);
        CHECK(t.depth() == 4);
        CHECK(t.has_x());
        CHECK_FALSE(parse("pi + 2").has_x());
        CHECK(parse("exp(exp(exp(x)))").tower_height() == 3);
    }

    TEST_CASE("syntax errors carry a position")
    {
        for (const char *s : {"x +", "exp(x", "sin(x)", "x ^ y", "", "2 ^ x", "exp(x, x)"}) {
            CAPTURE(s);
            CHECK_THROWS_AS(parse(s), Error);
        }
        try {
            parse("x + )");
            FAIL("no throw");
        } catch (const SyntaxError &e) {
            CHECK(e.position() == 4);
        }
    }

    TEST_CASE("substitution")
    {
        CHECK(substitute(parse("x^2 + 1"), parse("exp(x)")) == parse("exp(x)^2 + 1"));
        CHECK(substitute(parse("log(x)"), parse("x")) == parse("log(x)"));
    }

    TEST_CASE("simplify normal forms")
    {
        CHECK(simplify(parse("exp(log(x))")) == parse("x"));
        CHECK(simplify(parse("log(exp(x))")) == parse("x"));
        CHECK(simplify(parse("x*x")) == simplify(parse("x^2")));
        CHECK(simplify(parse("x + x")) == simplify(parse("2*x")));
        CHECK(simplify(parse("x - x")) == parse("0"));
        CHECK(simplify(parse("exp(x)*exp(x)")) == simplify(parse("exp(2*x)")));
        CHECK(simplify(simplify(parse("x*log(x) + x*log(x)"))) == simplify(parse("2*x*log(x)")));
    }

    TEST_CASE("simplify is idempotent")
    {
        for (const char *s : {"(x+1)*(x+1)", "exp(x + log(x))", "1/(1/x)", "x^(1/2)*x^(1/2)", "log(x^3)"}) {
            Term a = simplify(parse(s));
            CHECK(simplify(a) == a);
        }
    }
}
