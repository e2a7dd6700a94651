#include <doctest.h>

#include "germ/error.hpp"
#include "germ/evaluate.hpp"
#include "germ/interval.hpp"
#include "germ/term.hpp"
#include "reference.hpp"

#include <cmath>

using namespace germ;

namespace {

bool encloses(const Interval &iv, double v)
{
    return iv.contains(Interval::from_double(v, iv.prec()));
}

} // namespace

TEST_SUITE("interval")
{
    TEST_CASE("elementary enclosures contain the double result")
    {
        Interval two = Interval::from_rational(2, 256);
        CHECK(std::abs(exp(two).mid() - std::exp(2.0)) < 1e-15);
        CHECK(std::abs(log(two).mid() - std::log(2.0)) < 1e-16);
        CHECK(encloses(exp(Interval::from_rational(0, 64)), 1.0));
        CHECK(encloses(pow(Interval::from_rational(4, 64), Rational(1, 2)), 2.0));
        CHECK(std::abs(Interval::pi(128).mid() - M_PI) < 1e-15);
    }

    TEST_CASE("width shrinks with precision")
    {
        Interval a = exp(Interval::from_rational(Rational(1, 3), 64));
        Interval b = exp(Interval::from_rational(Rational(1, 3), 512));
        CHECK(b.rel_width() < a.rel_width());
        CHECK(a.contains(b));
    }

    TEST_CASE("signs")
    {
        CHECK(Interval::from_rational(-3, 64).certain_sign() == -1);
        CHECK(Interval::from_rational(0, 64).contains_zero());
        Interval d = sub(Interval::from_rational(1, 64), Interval::from_rational(1, 64));
        CHECK(d.contains_zero());
        CHECK(mul(Interval::from_rational(-2, 64), Interval::from_rational(3, 64)).certain_sign() == -1);
    }

    TEST_CASE("log of a non-positive interval is a domain error")
    {
        CHECK_THROWS(log(Interval::from_rational(-1, 64)));
    }

    TEST_CASE("term evaluation agrees with plain floating point")
    {
        for (const char *s : {"x^2 + 1", "exp(x)/x", "log(log(x))*x^(1/3)", "(1 + 1/x)^3", "pi*x - exp(1/x)"}) {
            Term t = parse(s);
            for (double x : {2.5, 10.0, 123.5}) {
                CAPTURE(s);
                CAPTURE(x);
                Interval v = eval_interval(t, Interval::from_double(x, 256), 256);
                double r = static_cast<double>(ref::value(t, x));
                CHECK(std::abs(v.mid() - r) <= 1e-13 * std::abs(r));
            }
        }
    }

    TEST_CASE("towers are evaluated without overflow")
    {
        Interval v = eval_interval(parse("exp(exp(x))"), Interval::from_rational(10, 256), 256);
        CHECK(v.lo().is_finite());
        // log log of the value recovers x
        CHECK(std::abs(log(log(v)).mid() - 10.0) < 1e-12);
    }
}
