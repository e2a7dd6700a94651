#include <doctest.h>

#include "germ/asymptotics.hpp"
#include "germ/error.hpp"
#include "germ/generate.hpp"
#include "germ/simplify.hpp"
#include "reference.hpp"

#include <cmath>

using namespace germ;

namespace {

Term T(const char *s) { return parse(s); }
int lv(const char *s) { return level(T(s)).value(); }

} // namespace

TEST_SUITE("reference values")
{
    TEST_CASE("levels")
    {
        CHECK(lv("exp(x)") == 1);
        CHECK(lv("log(x)") == -1);
        CHECK(lv("x^(1/2)") == 0);
        CHECK(lv("x^5") == 0);
        CHECK(lv("x + exp(-x)") == 0);
        CHECK(lv("log(x)/log_3(x) * (1/log(x))") == -3);
        CHECK(lv("exp_2(x)") == 2);
        CHECK(lv("log_2(x)") == -2);
    }

    TEST_CASE("exponential heights")
    {
        CHECK(eh(T("x + exp(-x)")) == EhValue::Exact(1));
        CHECK(eh(T("exp(x + exp(-x))")) == EhValue::Exact(1));
    }

    TEST_CASE("angular levels")
    {
        CHECK(alevel(T("1/x")) == 1);
        CHECK(alevel(T("1/exp(x)")) == 2);
        CHECK(alevel(T("1/exp_2(x)")) == 3);
        CHECK(alevel(T("pi/2")) == 0);
        CHECK(alevel(T("7")) == 0);
        CHECK(alevel(T("x")) == -1);
        CHECK(alevel(T("sqrt(log(x))")) == 0);
    }

    TEST_CASE("inverse bounds")
    {
        CHECK(inverse_level(1) == -1);
        CHECK(inverse_level(-2) == 2);
        CHECK(inverse_eh_bound(1, 1, 1) == 0);
    }
}

TEST_SUITE("direct")
{
    TEST_CASE("classification")
    {
        CHECK(classify(T("x")) == GermClass::InfIncreasing);
        CHECK(classify(T("-x")) == GermClass::InfDecreasing);
        CHECK(classify(T("1/x")) == GermClass::SmallPositive);
        CHECK(classify(T("-exp(-x)")) == GermClass::SmallNegative);
        CHECK(classify(T("2 + 1/x")) == GermClass::FinitePositive);
        CHECK(classify(T("x - x")) == GermClass::ZeroGerm);
        CHECK(classify(T("exp(log(x)) - x")) == GermClass::ZeroGerm);
    }

    TEST_CASE("eh of simple germs")
    {
        CHECK(eh(T("x")) == EhValue::Exact(0));
        CHECK(eh(T("exp(x)")) == EhValue::Exact(1));
        CHECK(eh(T("log(x)")) == EhValue::Exact(-1));
        CHECK(eh(T("1/x")) == EhValue::Exact(0));
        CHECK(eh(T("3")) == EhValue::Exact(ExtInt::neg_inf()));
    }

    TEST_CASE("comparisons")
    {
        CHECK(compare(T("x"), T("x^2")).verdict == Dominance::Less);
        CHECK(compare(T("exp(x)"), T("x^100")).verdict == Dominance::Greater);
        CHECK(compare(T("x + 1"), T("x")).verdict == Dominance::Equivalent);
        CHECK(compare(T("log(x)^10"), T("x^(1/100)")).verdict == Dominance::Less);
        CHECK(compare(T("exp(log(x)^2)"), T("x^50")).verdict == Dominance::Greater);
    }

    TEST_CASE("simple germs have eh equal to level")
    {
        CHECK(is_simple(T("x")) == true);
        CHECK(is_simple(T("exp(x)")) == true);
        CHECK(is_simple(T("x + exp(-x)")) == false);
    }

    TEST_CASE("decomposition")
    {
        UBSplit s = decompose_UB(T("x + 1/x + 2"));
        CHECK(simplify(s.purely_infinite) == T("x"));
        CHECK(classify(s.bounded) == GermClass::FinitePositive);
    }

    TEST_CASE("errors")
    {
        auto code = [](auto fn) {
            try {
                fn();
            } catch (const Error &e) {
                return e.code();
            }
            return ErrorCode::InvalidArgument;
        };
        CHECK(code([] { limit(T("log(-x)")); }) == ErrorCode::DomainError);
        CHECK(code([] { level(T("-x")); }) == ErrorCode::PositivityError);
        CHECK(lv("1/x") == 0);
    }
}

TEST_SUITE("derived")
{
    // expected limits come from long double evaluation at two large points
    TEST_CASE("finite limits agree with direct evaluation")
    {
        for (const char *s : {"(exp(1/x) - 1)*x", "x*log(1 + 1/x)", "(1 + 1/x)^2", "exp(x*log(1 + 1/x))",
                              "(x^(1/2) + 1)^2/x", "(log(x + 1) - log(x))*x",
                              "(x + exp(-x))/(x + 3)", "2*x/(x + log(x))", "pi + 1/x"}) {
            CAPTURE(s);
            Term t = T(s);
            LimitValue L = limit(t);
            REQUIRE(L.kind == LimitKind::FiniteNonzero);
            long double a = ref::value(t, 1e12L), b = ref::value(t, 1e14L);
            double tol = 1e-6 + 10 * static_cast<double>(std::fabs(a - b));
            CHECK(std::abs(L.approx() - static_cast<double>(b)) <= tol);
        }
    }

    TEST_CASE("zero and infinite limits agree with direct evaluation")
    {
        struct Case {
            const char *f;
            long double a, b;
        };
        const Case cases[] = {{"log(x)/x", 1e30L, 1e60L},        {"x^2*exp(-x)", 100, 1000},
                              {"exp(x)/x^3", 100, 1000},         {"-x*log(x)", 1e30L, 1e60L},
                              {"x^(1/3) - log(x)^2", 1e30L, 1e60L}, {"1/log(log(x))", 1e30L, 1e60L}};
        for (const auto &[s, xa, xb] : cases) {
            CAPTURE(s);
            Term t = T(s);
            LimitValue L = limit(t);
            long double a = ref::value(t, xa), b = ref::value(t, xb);
            if (L.kind == LimitKind::Zero)
                CHECK(std::fabs(b) < std::fabs(a));
            else if (L.kind == LimitKind::PlusInfinity)
                CHECK(b > a);
            else if (L.kind == LimitKind::MinusInfinity)
                CHECK(b < a);
            else
                FAIL("finite limit reported");
        }
    }

    TEST_CASE("random increasing germs grow under direct evaluation")
    {
        TermGenerator gen(7);
        int checked = 0;
        for (int i = 0; i < 200 && checked < 40; ++i) {
            Term f = gen.inf_increasing(gen.uniform(1, 3), 1);
            if (classify(f) != GermClass::InfIncreasing)
                continue;
            long double a = ref::value(f, 1e3L), b = ref::value(f, 1e6L), c = ref::value(f, 1e9L);
            if (!std::isfinite(static_cast<double>(c)))
                continue;
            CAPTURE(format(f));
            CHECK(b < c);
            CHECK(a < c);
            ++checked;
        }
        CHECK(checked >= 20);
    }

    TEST_CASE("compare agrees with the sign of log f - log g far out")
    {
        struct Case {
            const char *f, *g;
            long double x;
        };
        const Case cases[] = {{"x^2", "x*log(x)^5", 1e40L},
                              {"exp(log(x)^2)", "x^20", 1e40L},
                              {"log(x)^3", "x^(1/10)", 1e300L},
                              {"x*exp(log(x)^(1/2))", "x^2", 1e40L},
                              {"x^3/log(x)", "x^3", 1e40L}};
        for (const Case &c : cases) {
            CAPTURE(c.f);
            Dominance d = compare(T(c.f), T(c.g)).verdict;
            long double diff = std::log(ref::value(T(c.f), c.x)) - std::log(ref::value(T(c.g), c.x));
            REQUIRE(std::isfinite(static_cast<double>(diff)));
            CHECK(d == (diff < 0 ? Dominance::Less : Dominance::Greater));
        }
    }
}
