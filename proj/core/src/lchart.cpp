#include "germ/lchart.hpp"

#include "germ/error.hpp"
#include "germ/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_map>

namespace germ {

double ldist(const LPoint &a, const LPoint &b) { return std::hypot(a.logmod - b.logmod, a.arg - b.arg); }

const char *verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

struct NeedPrecision {};
struct NeedRefine {};

constexpr int kMaxHalvings = 20;

// value in the Log-chart; zero marks the point 0, which has no Log
struct LVal {
    BigFloat u, v;
    bool zero = false;
    explicit LVal(mpfr_prec_t p) : u(p), v(p) {}
};

class PathEval {
public:
    PathEval(const Term &f, mpfr_prec_t prec) : f_(f), prec_(prec), two_pi_(prec), half_pi_(prec)
    {
        mpfr_const_pi(two_pi_.get(), MPFR_RNDN);
        mpfr_mul_2ui(half_pi_.get(), two_pi_.get(), 0, MPFR_RNDN);
        mpfr_div_2ui(half_pi_.get(), half_pi_.get(), 1, MPFR_RNDN);
        mpfr_mul_2ui(two_pi_.get(), two_pi_.get(), 1, MPFR_RNDN);
    }

    LPoint advance(const LPoint &target)
    {
        if (!started_) {
            if (target.arg != 0)
                fail(ErrorCode::InvalidArgument, "path must start on the positive real axis");
            LPoint out = try_point(target);
            started_ = true;
            cur_ = target;
            return out;
        }
        return advance_rec(target, 0);
    }

private:
    Term f_;
    mpfr_prec_t prec_;
    BigFloat two_pi_, half_pi_;
    bool started_ = false;
    LPoint cur_;
    std::unordered_map<const Node *, BigFloat> lifts_;
    std::unordered_map<const Node *, BigFloat> pending_;
    std::unordered_map<const Node *, LVal> memo_;

    LPoint advance_rec(const LPoint &target, int depth)
    {
        try {
            LPoint out = try_point(target);
            cur_ = target;
            return out;
        } catch (const NeedRefine &) {
            if (depth >= kMaxHalvings)
                fail(ErrorCode::BranchCollision, "branch tracking failed to converge near a zero of a sum");
            LPoint mid{(cur_.logmod + target.logmod) / 2, (cur_.arg + target.arg) / 2};
            advance_rec(mid, depth + 1);
            return advance_rec(target, depth + 1);
        }
    }

    LPoint try_point(const LPoint &p)
    {
        pending_.clear();
        memo_.clear();
        LVal x(prec_);
        mpfr_set_d(x.u.get(), p.logmod, MPFR_RNDN);
        mpfr_set_d(x.v.get(), p.arg, MPFR_RNDN);
        LVal r = eval(f_, x);
        for (auto &[n, a] : pending_)
            lifts_.insert_or_assign(n, a);
        if (r.zero)
            fail(ErrorCode::BranchCollision, "term vanishes at a path point");
        LPoint out{r.u.to_double(), r.v.to_double()};
        if (!std::isfinite(out.logmod) || !std::isfinite(out.arg))
            fail(ErrorCode::PrecisionExhausted, "value leaves the double range");
        return out;
    }

    LVal constant(const ExactConstant &c)
    {
        LVal r(prec_);
        int s = c.sign();
        if (s == 0) {
            r.zero = true;
            return r;
        }
        Interval iv = Interval::from_constant(c, prec_);
        mpfr_abs(r.u.get(), iv.lo().get(), MPFR_RNDN);
        if (s < 0)
            mpfr_abs(r.u.get(), iv.hi().get(), MPFR_RNDN);
        mpfr_log(r.u.get(), r.u.get(), MPFR_RNDN);
        if (s < 0)
            mpfr_mul_2ui(r.v.get(), half_pi_.get(), 1, MPFR_RNDN);
        return r;
    }

    void check_trig_precision(const BigFloat &v)
    {
        if (mpfr_zero_p(v.get()))
            return;
        if (mpfr_get_exp(v.get()) > prec_ - 64)
            throw NeedPrecision{};
    }

    LVal eval(const Term &t, const LVal &x)
    {
        auto it = memo_.find(t.node());
        if (it != memo_.end())
            return it->second;
        LVal r(prec_);
        switch (t.kind()) {
        case Kind::Const:
            r = constant(t.value());
            break;
        case Kind::X:
            r = x;
            break;
        case Kind::Var:
            fail(ErrorCode::InvalidArgument, "placeholder variables cannot be evaluated");
        case Kind::Mul:
            for (const Term &a : t.args()) {
                LVal c = eval(a, x);
                if (c.zero) {
                    r.zero = true;
                    break;
                }
                mpfr_add(r.u.get(), r.u.get(), c.u.get(), MPFR_RNDN);
                mpfr_add(r.v.get(), r.v.get(), c.v.get(), MPFR_RNDN);
            }
            break;
        case Kind::Pow:
        case Kind::Recip: {
            LVal c = eval(t.arg(), x);
            Rational e = t.is(Kind::Pow) ? t.exponent() : Rational(-1);
            if (c.zero) {
                if (sgn(e) <= 0)
                    fail(ErrorCode::DomainViolation, "negative power of zero");
                r.zero = true;
                break;
            }
            mpfr_mul_q(r.u.get(), c.u.get(), e.get_mpq_t(), MPFR_RNDN);
            mpfr_mul_q(r.v.get(), c.v.get(), e.get_mpq_t(), MPFR_RNDN);
            break;
        }
        case Kind::Exp: {
            LVal c = eval(t.arg(), x);
            if (c.zero)
                break;
            // exp(z) with z = e^u (cos v + i sin v): logmod Re z, arg Im z
            BigFloat eu(prec_), cs(prec_), sn(prec_);
            mpfr_exp(eu.get(), c.u.get(), MPFR_RNDN);
            if (!eu.is_finite())
                throw NeedPrecision{};
            check_trig_precision(c.v);
            mpfr_sin_cos(sn.get(), cs.get(), c.v.get(), MPFR_RNDN);
            mpfr_mul(r.u.get(), eu.get(), cs.get(), MPFR_RNDN);
            mpfr_mul(r.v.get(), eu.get(), sn.get(), MPFR_RNDN);
            break;
        }
        case Kind::Log: {
            LVal c = eval(t.arg(), x);
            if (c.zero || mpfr_sgn(c.u.get()) <= 0)
                fail(ErrorCode::DomainViolation, "log argument leaves the region |x| > 1");
            mpfr_hypot(r.u.get(), c.u.get(), c.v.get(), MPFR_RNDN);
            mpfr_log(r.u.get(), r.u.get(), MPFR_RNDN);
            mpfr_atan2(r.v.get(), c.v.get(), c.u.get(), MPFR_RNDN);
            break;
        }
        case Kind::Add:
            r = eval_add(t, x);
            break;
        }
        memo_.insert_or_assign(t.node(), r);
        return r;
    }

    LVal eval_add(const Term &t, const LVal &x)
    {
        std::vector<LVal> parts;
        for (const Term &a : t.args()) {
            LVal c = eval(a, x);
            if (!c.zero)
                parts.push_back(std::move(c));
        }
        LVal r(prec_);
        if (parts.empty()) {
            r.zero = true;
            return r;
        }
        const BigFloat *umax = &parts.front().u;
        for (auto &p : parts)
            if (mpfr_cmp(p.u.get(), umax->get()) > 0)
                umax = &p.u;
        BigFloat re(prec_), im(prec_), m(prec_), cs(prec_), sn(prec_), d(prec_);
        for (auto &p : parts) {
            mpfr_sub(d.get(), p.u.get(), umax->get(), MPFR_RNDN);
            mpfr_exp(m.get(), d.get(), MPFR_RNDN);
            check_trig_precision(p.v);
            mpfr_sin_cos(sn.get(), cs.get(), p.v.get(), MPFR_RNDN);
            mpfr_fma(re.get(), m.get(), cs.get(), re.get(), MPFR_RNDN);
            mpfr_fma(im.get(), m.get(), sn.get(), im.get(), MPFR_RNDN);
        }
        mpfr_hypot(m.get(), re.get(), im.get(), MPFR_RNDN);
        if (mpfr_zero_p(m.get()) || mpfr_get_exp(m.get()) < -static_cast<mpfr_exp_t>(prec_ * 3 / 4))
            fail(ErrorCode::BranchCollision, "a sum passes through zero");
        mpfr_log(r.u.get(), m.get(), MPFR_RNDN);
        mpfr_add(r.u.get(), r.u.get(), umax->get(), MPFR_RNDN);
        BigFloat phi(prec_);
        mpfr_atan2(phi.get(), im.get(), re.get(), MPFR_RNDN);
        auto prev = lifts_.find(t.node());
        if (prev == lifts_.end()) {
            r.v = phi;
        } else {
            // lift of phi nearest to the previous argument
            BigFloat k(prec_);
            mpfr_sub(k.get(), prev->second.get(), phi.get(), MPFR_RNDN);
            mpfr_div(k.get(), k.get(), two_pi_.get(), MPFR_RNDN);
            mpfr_round(k.get(), k.get());
            mpfr_fma(r.v.get(), k.get(), two_pi_.get(), phi.get(), MPFR_RNDN);
            BigFloat jump(prec_);
            mpfr_sub(jump.get(), r.v.get(), prev->second.get(), MPFR_RNDN);
            mpfr_abs(jump.get(), jump.get(), MPFR_RNDN);
            if (mpfr_cmp(jump.get(), half_pi_.get()) >= 0)
                throw NeedRefine{};
        }
        pending_.insert_or_assign(t.node(), r.v);
        return r;
    }
};

double real_value(const Term &h, double logmod, mpfr_prec_t prec)
{
    Interval x = exp(Interval::from_double(logmod, prec));
    return eval_interval(h, x, prec).mid();
}

} // namespace

std::vector<LPoint> eval_along_path(const Term &f, const std::vector<LPoint> &path, mpfr_prec_t precision,
                                    mpfr_prec_t max_precision)
{
    if (precision < 64)
        fail(ErrorCode::InvalidArgument, "precision must be at least 64 bits");
    for (mpfr_prec_t prec = precision;; prec *= 4) {
        try {
            PathEval pe(f, prec);
            std::vector<LPoint> out;
            out.reserve(path.size());
            for (const LPoint &p : path)
                out.push_back(pe.advance(p));
            return out;
        } catch (const NeedPrecision &) {
            if (prec * 4 > max_precision)
                fail(ErrorCode::PrecisionExhausted, "evaluation needs more than " +
                                                        std::to_string(max_precision) + " bits");
        }
    }
}

SampleGrid sample_domain(const DomainSpec &spec, int n_radial, int n_angular, double shrink,
                         double radial_span, double arg_cap)
{
    if (n_radial < 1 || n_angular < 0 || !(shrink > 0 && shrink < 1))
        fail(ErrorCode::InvalidArgument, "sample_domain needs n_radial >= 1, n_angular >= 0, 0 < shrink < 1");
    SampleGrid g;
    g.n_radial = n_radial;
    g.n_angular = n_angular;
    double la = std::log(std::max(spec.base_radius, 1e-300));
    for (int i = 0; i < n_radial; ++i) {
        double u = la + radial_span * (i + 1) / n_radial;
        double hmax = 0;
        try {
            hmax = real_value(spec.h, u, 256);
        } catch (const NumericFailure &e) {
            fail(ErrorCode::PrecisionExhausted, std::string("domain bound not evaluable: ") + e.what());
        }
        if (arg_cap > 0)
            hmax = std::min(hmax, arg_cap);
        for (int j = -n_angular; j <= n_angular; ++j) {
            double t = n_angular == 0 ? 0.0 : static_cast<double>(j) / n_angular;
            g.points.push_back(LPoint{u, t * (1 - shrink) * hmax});
        }
    }
    return g;
}

std::vector<LPoint> sample_points(const SampleGrid &g) { return g.points; }

namespace {

// images of every grid point, propagated along rays from the real axis
std::vector<LPoint> eval_grid(const Term &f, const SampleGrid &g, const CheckParams &p)
{
    std::size_t w = static_cast<std::size_t>(2 * g.n_angular + 1);
    std::vector<LPoint> out(g.points.size());
    for (int i = 0; i < g.n_radial; ++i) {
        std::size_t base = static_cast<std::size_t>(i) * w;
        std::size_t mid = base + static_cast<std::size_t>(g.n_angular);
        std::vector<LPoint> up{LPoint{g.points[mid].logmod, 0}};
        std::vector<LPoint> down{LPoint{g.points[mid].logmod, 0}};
        for (int j = 1; j <= g.n_angular; ++j) {
            up.push_back(g.points[mid + static_cast<std::size_t>(j)]);
            down.push_back(g.points[mid - static_cast<std::size_t>(j)]);
        }
        auto vu = eval_along_path(f, up, p.precision_bits, p.max_precision_bits);
        auto vd = eval_along_path(f, down, p.precision_bits, p.max_precision_bits);
        out[mid] = vu[0];
        for (int j = 1; j <= g.n_angular; ++j) {
            out[mid + static_cast<std::size_t>(j)] = vu[static_cast<std::size_t>(j)];
            out[mid - static_cast<std::size_t>(j)] = vd[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

SampleGrid grid_for(const DomainSpec &spec, const CheckParams &p)
{
    return sample_domain(spec, p.n_radial, p.n_angular, p.shrink, p.radial_span, p.arg_cap);
}

int band_of(int ring, int n_radial, int bands)
{
    return std::min(bands - 1, ring * bands / std::max(n_radial, 1));
}

std::size_t ring_of(std::size_t idx, const SampleGrid &g)
{
    return idx / static_cast<std::size_t>(2 * g.n_angular + 1);
}

// band maxima must not grow by more than log(factor) from one band to the next
bool bands_bounded(const std::vector<double> &log_max, double factor, double *worst)
{
    double w = -HUGE_VAL;
    for (std::size_t b = 1; b < log_max.size(); ++b)
        if (std::isfinite(log_max[b]) && std::isfinite(log_max[b - 1]))
            w = std::max(w, log_max[b] - log_max[b - 1]);
    if (worst)
        *worst = std::isfinite(w) ? std::exp(w) : 0.0;
    return !(w > std::log(factor));
}

void fill_trace(CheckReport &r, const SampleGrid &g, const std::vector<LPoint> &v)
{
    r.trace.clear();
    for (std::size_t k = 0; k < g.points.size(); ++k)
        r.trace.emplace_back(g.points[k], v[k]);
    r.samples = g.points.size();
}

template <class F> CheckReport guarded(F &&body)
{
    try {
        return body();
    } catch (const Error &e) {
        CheckReport r;
        r.verdict = Verdict::Inconclusive;
        r.note = std::string(e.code_name()) + ": " + e.what();
        return r;
    }
}

// index pairs: grid neighbours plus seeded random pairs
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(const SampleGrid &g, const CheckParams &p,
                                                              bool same_band)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t w = static_cast<std::size_t>(2 * g.n_angular + 1);
    for (std::size_t i = 0; i < static_cast<std::size_t>(g.n_radial); ++i)
        for (std::size_t j = 0; j < w; ++j) {
            std::size_t k = i * w + j;
            if (j + 1 < w)
                out.emplace_back(k, k + 1);
            if (i + 1 < static_cast<std::size_t>(g.n_radial) &&
                (!same_band || band_of(static_cast<int>(i), g.n_radial, p.bands) ==
                                   band_of(static_cast<int>(i + 1), g.n_radial, p.bands)))
                out.emplace_back(k, k + w);
        }
    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<std::size_t> pick(0, g.points.size() - 1);
    int made = 0, tries = 0;
    while (made < p.pairs && tries < 20 * p.pairs + 100) {
        ++tries;
        std::size_t a = pick(rng), b = pick(rng);
        if (a == b)
            continue;
        if (same_band && band_of(static_cast<int>(ring_of(a, g)), g.n_radial, p.bands) !=
                             band_of(static_cast<int>(ring_of(b, g)), g.n_radial, p.bands))
            continue;
        out.emplace_back(a, b);
        ++made;
    }
    return out;
}

} // namespace

CheckReport check_angle_positive(const Term &f, const DomainSpec &spec, const CheckParams &p)
{
    return guarded([&] {
        CheckReport r;
        r.statistic_name = "min signed image argument";
        SampleGrid g = grid_for(spec, p);
        std::vector<LPoint> v = eval_grid(f, g, p);
        fill_trace(r, g, v);
        double min_arg = HUGE_VAL;
        for (const LPoint &x : g.points)
            if (x.arg != 0)
                min_arg = std::min(min_arg, std::abs(x.arg));
        double tol = p.thresholds.angle_tol * (std::isfinite(min_arg) ? min_arg : 1.0);
        double stat = HUGE_VAL;
        r.verdict = Verdict::Pass;
        for (std::size_t k = 0; k < v.size(); ++k) {
            const LPoint &x = g.points[k];
            bool ok;
            if (x.arg == 0) {
                ok = std::abs(v[k].arg) <= tol;
            } else {
                double s = v[k].arg * (x.arg > 0 ? 1 : -1);
                stat = std::min(stat, s);
                ok = s > 0;
            }
            if (!ok && r.verdict == Verdict::Pass) {
                r.verdict = Verdict::Fail;
                r.witnesses = {x, v[k]};
            }
        }
        r.statistic = stat;
        return r;
    });
}

CheckReport check_half_bounded(const Term &f, const DomainSpec &spec, const CheckParams &p)
{
    return guarded([&] {
        CheckReport r;
        SampleGrid g = grid_for(spec, p);
        std::vector<LPoint> v = eval_grid(f, g, p);
        fill_trace(r, g, v);
        std::vector<double> up(static_cast<std::size_t>(p.bands), -HUGE_VAL), down = up;
        std::vector<std::size_t> arg_up(up.size(), 0), arg_down(up.size(), 0);
        for (std::size_t k = 0; k < v.size(); ++k) {
            std::size_t b = static_cast<std::size_t>(band_of(static_cast<int>(ring_of(k, g)), g.n_radial, p.bands));
            if (v[k].logmod > up[b]) {
                up[b] = v[k].logmod;
                arg_up[b] = k;
            }
            if (-v[k].logmod > down[b]) {
                down[b] = -v[k].logmod;
                arg_down[b] = k;
            }
        }
        double sup_up = *std::max_element(up.begin(), up.end());
        double sup_down = *std::max_element(down.begin(), down.end());
        bool f_side = sup_up <= sup_down;
        const auto &side = f_side ? up : down;
        const auto &where = f_side ? arg_up : arg_down;
        r.statistic_name = f_side ? "band growth of sup|f|" : "band growth of sup|1/f|";
        for (double s : side)
            r.band_statistics.push_back(std::exp(s));
        double worst = 0;
        bool ok = bands_bounded(side, p.thresholds.band_factor, &worst);
        r.statistic = worst;
        r.verdict = ok ? Verdict::Pass : Verdict::Fail;
        if (!ok) {
            for (std::size_t b = 1; b < side.size(); ++b)
                if (side[b] - side[b - 1] > std::log(p.thresholds.band_factor)) {
                    r.witnesses = {g.points[where[b]], v[where[b]]};
                    break;
                }
        }
        return r;
    });
}

CheckReport check_expansive(const Term &f, const DomainSpec &spec, const CheckParams &p)
{
    return guarded([&] {
        CheckReport r;
        r.statistic_name = "min d(f(x),f(y))/d(x,y)";
        SampleGrid g = grid_for(spec, p);
        std::vector<LPoint> v = eval_grid(f, g, p);
        fill_trace(r, g, v);
        double a = HUGE_VAL;
        std::pair<std::size_t, std::size_t> arg{0, 0};
        auto pairs = sample_pairs(g, p, false);
        r.note = std::to_string(pairs.size()) + " pairs";
        for (auto [i, j] : pairs) {
            double d = ldist(g.points[i], g.points[j]);
            if (d <= 0)
                continue;
            double q = ldist(v[i], v[j]) / d;
            if (q < a) {
                a = q;
                arg = {i, j};
            }
        }
        r.statistic = a;
        r.witnesses = {g.points[arg.first], g.points[arg.second]};
        r.verdict = a >= p.thresholds.expansive_min ? Verdict::Pass : Verdict::Fail;
        return r;
    });
}

namespace {

// log of a level-k comparison function at r = e^lr: exp_k(r) for k >= 0, log_{-k}(r) below
double log_level_fn(int k, double lr)
{
    double t = lr; // log r
    if (k >= 0) {
        double r = std::exp(lr);
        if (k == 0)
            return t;
        if (k == 1)
            return r;
        return std::exp(r);
    }
    double val = lr; // log r, i.e. log_1(r)
    for (int i = 1; i < -k; ++i)
        val = std::log(val);
    return std::log(val);
}

} // namespace

CheckReport check_dlipschitz(const Term &u, const DomainSpec &spec, const CheckParams &p)
{
    return guarded([&] {
        CheckReport r;
        r.statistic_name = "band max of d(u(x),u(y))/d(x,y) * rho^-1(min|x|,|y|)";
        try {
            LimitValue l = limit(u);
            if (!(l.kind == LimitKind::FiniteNonzero && l.sign > 0))
                r.note = "u is not a unit at infinity: limit " + l.to_string();
        } catch (const Error &e) {
            r.note = std::string("unit precheck failed: ") + e.what();
        }
        SampleGrid g = grid_for(spec, p);
        std::vector<LPoint> v = eval_grid(u, g, p);
        fill_trace(r, g, v);
        auto pairs = sample_pairs(g, p, true);
        auto band_max = [&](int level) {
            std::vector<double> m(static_cast<std::size_t>(p.bands), -HUGE_VAL);
            for (auto [i, j] : pairs) {
                double d = ldist(g.points[i], g.points[j]);
                double du = ldist(v[i], v[j]);
                if (d <= 0 || du <= 0)
                    continue;
                double lr = std::min(g.points[i].logmod, g.points[j].logmod);
                double s = std::log(du / d) + log_level_fn(level, lr);
                std::size_t b = static_cast<std::size_t>(
                    band_of(static_cast<int>(std::min(ring_of(i, g), ring_of(j, g))), g.n_radial, p.bands));
                m[b] = std::max(m[b], s);
            }
            return m;
        };
        std::vector<double> m = band_max(p.lipschitz_level);
        for (double s : m)
            r.band_statistics.push_back(std::isfinite(s) ? std::exp(s) : 0.0);
        double worst = 0;
        bool ok = bands_bounded(m, p.thresholds.band_factor, &worst);
        r.statistic = *std::max_element(r.band_statistics.begin(), r.band_statistics.end());
        r.verdict = ok ? Verdict::Pass : Verdict::Fail;
        r.fitted_level = -3;
        for (int k = 2; k >= -2; --k)
            if (bands_bounded(band_max(k), p.thresholds.band_factor, nullptr)) {
                r.fitted_level = k;
                break;
            }
        return r;
    });
}

CheckReport check_image_class(const Term &f, const DomainSpec &spec, const Term &g1, const Term &g2,
                              const CheckParams &p)
{
    return guarded([&] {
        CheckReport r;
        r.statistic_name = "max |arg f(x)| / g2(|f(x)|)";
        SampleGrid g = grid_for(spec, p);
        std::vector<LPoint> v = eval_grid(f, g, p);
        fill_trace(r, g, v);
        std::vector<bool> band_lower(static_cast<std::size_t>(p.bands), true);
        std::vector<bool> band_seen(band_lower.size(), false);
        double worst = 0;
        r.verdict = Verdict::Pass;
        std::size_t w = static_cast<std::size_t>(2 * g.n_angular + 1);
        for (std::size_t k = 0; k < v.size(); ++k) {
            double hi = real_value(g2, v[k].logmod, p.precision_bits);
            double ay = std::abs(v[k].arg);
            worst = std::max(worst, hi > 0 ? ay / hi : HUGE_VAL);
            if (!(ay < hi) && r.verdict == Verdict::Pass) {
                r.verdict = Verdict::Fail;
                r.witnesses = {g.points[k], v[k]};
            }
            std::size_t j = k % w;
            if (g.n_angular > 0 && (j == 0 || j == w - 1)) {
                std::size_t b = static_cast<std::size_t>(band_of(static_cast<int>(ring_of(k, g)), g.n_radial, p.bands));
                band_seen[b] = true;
                double lo = real_value(g1, v[k].logmod, p.precision_bits);
                if (!(ay > lo))
                    band_lower[b] = false;
            }
        }
        bool lower = false;
        for (std::size_t b = 0; b < band_lower.size(); ++b)
            lower = lower || (band_seen[b] && band_lower[b]);
        if (r.verdict == Verdict::Pass && !lower) {
            r.verdict = Verdict::Fail;
            r.note = "no radial band where boundary images exceed the lower bound";
        }
        r.statistic = worst;
        return r;
    });
}

CheckReport check_unit_at_infinity(const Term &u, const DomainSpec &spec, const CheckParams &p)
{
    return guarded([&] {
        CheckReport r;
        r.statistic_name = "last/first band max of d(u(x),1)";
        SampleGrid g = grid_for(spec, p);
        std::vector<LPoint> v = eval_grid(u, g, p);
        fill_trace(r, g, v);
        std::vector<double> m(static_cast<std::size_t>(p.bands), 0.0);
        std::vector<std::size_t> where(m.size(), 0);
        for (std::size_t k = 0; k < v.size(); ++k) {
            std::size_t b = static_cast<std::size_t>(band_of(static_cast<int>(ring_of(k, g)), g.n_radial, p.bands));
            double d = std::hypot(v[k].logmod, v[k].arg);
            if (d >= m[b]) {
                m[b] = d;
                where[b] = k;
            }
        }
        r.band_statistics = m;
        r.verdict = Verdict::Pass;
        for (std::size_t b = 1; b < m.size(); ++b)
            if (!(m[b] < m[b - 1] * (1 - p.thresholds.unit_decrease))) {
                r.verdict = Verdict::Fail;
                r.witnesses = {g.points[where[b]], v[where[b]]};
                break;
            }
        r.statistic = m.front() > 0 ? m.back() / m.front() : 0.0;
        return r;
    });
}

CheckReport check_arg_distortion(const Term &f, const Term &u, const DomainSpec &spec, const CheckParams &p)
{
    return guarded([&] {
        CheckReport r;
        SampleGrid g = grid_for(spec, p);
        std::vector<LPoint> vf = eval_grid(f, g, p);
        std::vector<LPoint> vu = eval_grid(u, g, p);
        double radius = std::max(spec.base_radius, p.min_radius);
        double lrad = std::log(radius);
        r.statistic_name = "range of |arg(f u)| / |arg f| for |x| >= " + std::to_string(radius);
        r.trace.clear();
        double lo = HUGE_VAL, hi = 0;
        r.verdict = Verdict::Pass;
        for (std::size_t k = 0; k < vf.size(); ++k) {
            const LPoint &x = g.points[k];
            if (x.logmod < lrad)
                continue;
            ++r.samples;
            LPoint y{vf[k].logmod + vu[k].logmod, vf[k].arg + vu[k].arg};
            r.trace.emplace_back(x, y);
            double af = std::abs(vf[k].arg), afu = std::abs(y.arg);
            bool ok;
            if (af == 0) {
                ok = afu <= 1e-12;
            } else {
                double q = afu / af;
                lo = std::min(lo, q);
                hi = std::max(hi, q);
                ok = q >= 0.5 && q <= 1.5;
            }
            if (!ok && r.verdict == Verdict::Pass) {
                r.verdict = Verdict::Fail;
                r.witnesses = {x, y};
            }
        }
        if (r.samples == 0) {
            r.verdict = Verdict::Inconclusive;
            r.note = "no samples above the selected radius";
        }
        r.band_statistics = {lo, hi};
        r.statistic = hi;
        return r;
    });
}

} // namespace germ
