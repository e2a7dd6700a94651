#include <doctest.h>

#include "germ/asymptotics.hpp"
#include "germ/error.hpp"
#include "germ/oracle.hpp"

#include <cmath>

using namespace germ;

namespace {

Term T(const char *s) { return parse(s); }

} // namespace

TEST_SUITE("oracle")
{
    TEST_CASE("grid")
    {
        std::vector<Rational> g = default_grid();
        CHECK(g.size() == 7);
        CHECK(g.front() == 100);
    }

    TEST_CASE("limits")
    {
        OracleEstimate e = numeric_limit(T("1/x"));
        CHECK(e.confidence == Confidence::Confirmed);
        CHECK(e.limit_kind == LimitKind::Zero);

        e = numeric_limit(T("exp(x)"));
        CHECK(e.limit_kind == LimitKind::PlusInfinity);

        e = numeric_limit(T("(exp(1/x) - 1)*x"));
        CHECK(e.confidence == Confidence::Confirmed);
        CHECK(e.limit_kind == LimitKind::FiniteNonzero);
        CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));
        CHECK_FALSE(e.trace.empty());
    }

    TEST_CASE("slow convergence is not confirmed")
    {
        OracleEstimate e = numeric_limit(T("1/log(log(x))"));
        CHECK(e.confidence == Confidence::Weak);
    }

    TEST_CASE("comparison")
    {
        CHECK(numeric_compare(T("x"), T("x^2")).dominance == Dominance::Less);
        CHECK(numeric_compare(T("x + 1"), T("x")).dominance == Dominance::Equivalent);
        CHECK(numeric_compare(T("exp(x)"), T("x^10")).dominance == Dominance::Greater);
    }

    TEST_CASE("levels by sandwich search")
    {
        for (auto [s, k] : std::vector<std::pair<const char *, int>>{
                 {"x^3", 0}, {"exp(x)", 1}, {"log(x)", -1}, {"exp(exp(x))", 2}}) {
            CAPTURE(s);
            OracleEstimate e = numeric_level(T(s));
            CHECK(e.level == k);
            CHECK(e.level == level(T(s)).value());
        }
    }

    TEST_CASE("corpus files")
    {
        auto c = parse_corpus("# header\nx + 1\n\n  exp(x)  \n# tail\n");
        REQUIRE(c.size() == 2);
        CHECK(c[0] == "x + 1");
        CHECK(c[1] == "exp(x)");
    }
}
