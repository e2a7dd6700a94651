#include <doctest.h>

#include "germ/domain.hpp"
#include "germ/error.hpp"
#include "germ/generate.hpp"
#include "germ/simplify.hpp"

using namespace germ;

namespace {

Term T(const char *s) { return parse(s); }

} // namespace

TEST_SUITE("domain")
{
    TEST_CASE("class of a domain is the angular level of its bound")
    {
        CHECK(domain_class({T("pi/2"), 1.0}).k == 0);
        CHECK(domain_class({T("1/x"), 1.0}).k == 1);
        CHECK(domain_class({T("exp(-x)"), 1.0}).k == 2);
        CHECK(domain_class({T("x"), 1.0}).k == -1);
    }

    TEST_CASE("sector and half-plane shifts keep the class")
    {
        TermGenerator gen(3);
        for (int i = 0; i < 20; ++i) {
            Term h = gen.positive_bound(2);
            int k = alevel(h);
            CAPTURE(format(h));
            CHECK(alevel(nu_mr(h, Rational(3))) == k);
            CHECK(alevel(nu_pr(h, Rational(1, 2))) == k);
        }
    }

    TEST_CASE("explicit shifted bounds")
    {
        CHECK(simplify(nu_mr(T("x"), Rational(2))) == simplify(T("x/2")));
        CHECK(simplify(nu_mr(T("pi/2"), Rational(2))) == simplify(T("pi/2")));
    }

    TEST_CASE("log raises the class by one")
    {
        CHECK(nu_log_class(T("pi/2")).cls == 1);
        CHECK(nu_log_class(T("1/x")).cls == 2);
    }

    TEST_CASE("exp lowers the class of standard domains")
    {
        CHECK(nu_exp_class(T("1/x")) == 0);
        CHECK_THROWS_AS(nu_exp_class(T("x")), Error);
    }

    TEST_CASE("translates are sandwiched with the same class")
    {
        auto [lo, hi] = translate_sandwich(T("x"), Rational(1));
        CHECK(lo == simplify(T("x - 1")));
        CHECK(hi == simplify(T("x + 1")));
        for (const char *s : {"x", "log(x)", "x^2", "exp(x)", "x*log(x)"}) {
            CAPTURE(s);
            auto [l, h] = translate_sandwich(T(s), Rational(1, 2));
            CHECK(alevel(l) == alevel(T(s)));
            CHECK(alevel(h) == alevel(T(s)));
        }
        CHECK_THROWS_AS(translate_sandwich(T("1/x"), Rational(1)), Error);
    }

    TEST_CASE("standard domains")
    {
        CHECK(is_standard(T("pi/4")) == true);
        CHECK(is_standard(T("1/x")) == true);
        CHECK(is_standard(T("x")) == false);
        CHECK(is_standard(T("pi/2")) == false);
        // x cos(h) -> 1, so the boundary stays near Re z = 1 like a half-plane
        CHECK(is_standard(T("pi/2 - 1/x")) == false);
        CHECK(is_standard(T("pi/2 - 1/x^(1/2)")) == true);
    }

    TEST_CASE("angle bounded")
    {
        CHECK(angle_bounded(T("pi/2")));
        CHECK(angle_bounded(T("1/x")));
        CHECK_FALSE(angle_bounded(T("x")));
    }
}
