#include <doctest.h>

#include "germ/error.hpp"
#include "germ/lchart.hpp"
#include "reference.hpp"

#include <cmath>

using namespace germ;

namespace {

Term T(const char *s) { return parse(s); }

CheckParams small_params()
{
    CheckParams p;
    p.n_radial = 8;
    p.n_angular = 4;
    p.pairs = 300;
    return p;
}

} // namespace

TEST_SUITE("lchart")
{
    TEST_CASE("distance on the log chart")
    {
        CHECK(ldist({0, 0}, {0, 0}) == 0);
        CHECK(ldist({1, 2}, {1, 2}) == 0);
        CHECK(ldist({0, 0}, {3, 4}) > 0);
        CHECK(ldist({0, 0}, {3, 4}) == doctest::Approx(ldist({3, 4}, {0, 0})));
    }

    TEST_CASE("continuation matches the principal branch away from the cut")
    {
        // points with |arg| < pi/2 so that no value of these germs crosses the cut
        for (const char *s : {"x^2", "exp(x)/x", "x*log(x)", "x^(3/2) + x", "log(x)"}) {
            CAPTURE(s);
            Term f = T(s);
            std::vector<LPoint> path{{2, 0}, {2, 0.3}, {2.5, 0.6}, {3, 0.9}, {3, 1.2}};
            std::vector<LPoint> got = eval_along_path(f, path);
            REQUIRE(got.size() == path.size());
            for (std::size_t i = 0; i < path.size(); ++i) {
                ref::cplx z = std::exp(ref::cplx(path[i].logmod, path[i].arg));
                ref::cplx w = ref::cvalue(f, z);
                CHECK(got[i].logmod == doctest::Approx(std::log(std::abs(w))).epsilon(1e-12));
                // lifted args can differ from the principal one by 2 pi k only
                double k = (got[i].arg - std::arg(w)) / (2 * M_PI);
                CHECK(std::abs(k - std::round(k)) < 1e-9);
            }
        }
    }

    TEST_CASE("x^2 lifts past the principal sheet")
    {
        std::vector<LPoint> path;
        for (int i = 0; i <= 20; ++i)
            path.push_back({1.0, 0.1 * i});
        std::vector<LPoint> got = eval_along_path(T("x^2"), path);
        CHECK(got.back().arg == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(got.back().logmod == doctest::Approx(2.0).epsilon(1e-12));
    }

    TEST_CASE("path through a zero of the germ")
    {
        // x + 1 vanishes at x = -1, which lies on |x| = 1, arg = pi
        std::vector<LPoint> path;
        for (int i = 0; i <= 35; ++i)
            path.push_back({0.0, 0.1 * i});
        CHECK_THROWS_AS(eval_along_path(T("x + 1"), path), Error);
    }

    TEST_CASE("path must start on the real axis")
    {
        CHECK_THROWS_AS(eval_along_path(T("x"), {{1, 0.5}}), Error);
    }

    TEST_CASE("sample grids")
    {
        SampleGrid g = sample_domain({T("pi/2"), 10.0}, 4, 3, 0.1);
        CHECK(g.points.size() == 4 * 7);
        for (const LPoint &p : g.points) {
            CHECK(p.logmod > std::log(10.0));
            CHECK(std::abs(p.arg) < M_PI / 2);
        }
        CHECK(g.at(0, 3).arg == 0);
    }

    TEST_CASE("check verdicts")
    {
        CheckParams p = small_params();
        DomainSpec half{T("pi/2"), 1.0};
        CHECK(check_angle_positive(T("x^2"), {T("pi/4"), 100.0}, p).verdict == Verdict::Pass);
        CHECK(check_expansive(T("exp(x)"), half, p).verdict == Verdict::Pass);
        CHECK(check_unit_at_infinity(T("1 + 1/x"), half, p).verdict == Verdict::Pass);
        CHECK(check_unit_at_infinity(T("1 + 1/log(x)"), half, p).verdict == Verdict::Pass);
        // tends to 2, so the band maxima level off
        CHECK(check_unit_at_infinity(T("2 + 1/x"), half, p).verdict == Verdict::Fail);
        CHECK(check_half_bounded(T("log(x)"), {T("x"), 10.0}, p).verdict == Verdict::Pass);
        CHECK(check_arg_distortion(T("x^2"), T("1 + 1/x"), half, p).verdict == Verdict::Pass);
    }

    TEST_CASE("x^2 stretches distances by exactly 2")
    {
        CheckReport r = check_expansive(T("x^2"), {T("pi/2"), 1.0}, small_params());
        CHECK(r.statistic == doctest::Approx(2.0).epsilon(1e-12));
    }

    TEST_CASE("sign of arg flips for a germ that is not angle-positive")
    {
        // arg(1/x) = -arg(x)
        CheckReport r = check_angle_positive(T("1/x"), {T("pi/4"), 100.0}, small_params());
        CHECK(r.verdict == Verdict::Fail);
        CHECK_FALSE(r.witnesses.empty());
    }
}
