#include "germ/oracle.hpp"

#include "germ/error.hpp"
#include "germ/evaluate.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace germ {

const char *confidence_name(Confidence c) { return c == Confidence::Confirmed ? "confirmed" : "weak"; }

std::vector<Rational> default_grid()
{
    std::vector<Rational> g;
    mpz_class p;
    for (unsigned e = 2; e <= 128; e *= 2) {
        mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
        g.emplace_back(p);
    }
    return g;
}

namespace {

constexpr double kAgree = 1e-10;
constexpr double kZeroWidth = 1e-30;
constexpr double kSmall = 1e-6;
constexpr double kLarge = 1e6;
constexpr double kStep = 1e3;
constexpr double kFinite = 1e-6;
// huge constants hide slowly growing parts at every grid point
constexpr double kFiniteRange = 1e30;

// one grid point, agreed across two precisions
struct Point {
    bool usable = false;
    bool exact_zero = false;
    int sign = 0;
    double logabs = 0;
    double value = 0;
};

double log_abs(const Interval &v)
{
    BigFloat m(v.prec());
    mpfr_add(m.get(), v.lo().get(), v.hi().get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    mpfr_abs(m.get(), m.get(), MPFR_RNDN);
    mpfr_log(m.get(), m.get(), MPFR_RNDN);
    return m.to_double();
}

bool tiny_around_zero(const Interval &v)
{
    if (!v.contains_zero())
        return false;
    BigFloat w(v.prec());
    mpfr_sub(w.get(), v.hi().get(), v.lo().get(), MPFR_RNDU);
    return mpfr_cmp_d(w.get(), kZeroWidth) < 0;
}

// widest exponent range for the duration of one oracle call
class ExponentRange {
public:
    ExponentRange() : emin_(mpfr_get_emin()), emax_(mpfr_get_emax())
    {
        mpfr_set_emin(mpfr_get_emin_min());
        mpfr_set_emax(mpfr_get_emax_max());
    }
    ~ExponentRange()
    {
        mpfr_set_emin(emin_);
        mpfr_set_emax(emax_);
    }
    ExponentRange(const ExponentRange &) = delete;
    ExponentRange &operator=(const ExponentRange &) = delete;

private:
    mpfr_exp_t emin_, emax_;
};

using Evaluator = std::function<Interval(mpfr_prec_t)>;

Point sample(const Evaluator &ev, mpfr_prec_t prec, const std::string &label, std::vector<OracleSample> &trace)
{
    Point pt;
    std::vector<Interval> vals;
    for (mpfr_prec_t p : {prec, 2 * prec}) {
        try {
            Interval v = ev(p);
            trace.push_back({label, p, v.to_string(12)});
            vals.push_back(std::move(v));
        } catch (const NumericFailure &) {
            trace.push_back({label, p, ""});
            return pt;
        }
    }
    const Interval &a = vals[0], &b = vals[1];
    if (tiny_around_zero(a) && tiny_around_zero(b)) {
        pt.usable = pt.exact_zero = true;
        return pt;
    }
    int s = a.certain_sign();
    if (s == 0 || b.certain_sign() != s || a.rel_width() > kAgree || b.rel_width() > kAgree)
        return pt;
    double la = log_abs(a), lb = log_abs(b);
    if (!std::isfinite(la) || std::abs(la - lb) > kAgree * std::max(1.0, std::abs(la)))
        return pt;
    pt.usable = true;
    pt.sign = s;
    pt.logabs = lb;
    pt.value = s * std::exp(lb);
    return pt;
}

std::string rational_label(const Rational &q)
{
    std::string s = q.get_str();
    if (s.size() > 12 && s.find('/') == std::string::npos) {
        bool pow10 = s[0] == '1' && s.find_first_not_of('0', 1) == std::string::npos;
        if (pow10)
            return "1e" + std::to_string(s.size() - 1);
    }
    return s;
}

// verdict over the last three usable points of an escalating grid
void judge_limit(OracleEstimate &est, const std::vector<Point> &pts)
{
    std::vector<const Point *> use;
    for (const Point &p : pts)
        if (p.usable)
            use.push_back(&p);
    if (use.empty())
        fail(ErrorCode::PrecisionExhausted, "no grid point could be evaluated reliably");
    const Point &last = *use.back();
    // best guess, refined below
    est.confidence = Confidence::Weak;
    if (last.exact_zero || std::exp(last.logabs) < kSmall) {
        est.limit_kind = LimitKind::Zero;
    } else if (std::exp(last.logabs) > kLarge) {
        est.limit_kind = last.sign > 0 ? LimitKind::PlusInfinity : LimitKind::MinusInfinity;
    } else {
        est.limit_kind = LimitKind::FiniteNonzero;
        est.value = last.value;
    }
    if (use.size() < 3) {
        est.note = "fewer than three usable grid points";
        return;
    }
    const Point &a = *use[use.size() - 3], &b = *use[use.size() - 2], &c = *use[use.size() - 1];
    if (a.exact_zero && b.exact_zero && c.exact_zero) {
        est.limit_kind = LimitKind::Zero;
        est.confidence = Confidence::Confirmed;
        return;
    }
    if (a.exact_zero || b.exact_zero || c.exact_zero) {
        est.note = "enclosures touch zero on part of the grid";
        return;
    }
    double step = std::log(kStep);
    if (c.logabs < std::log(kSmall) && b.logabs - a.logabs < -step && c.logabs - b.logabs < -step) {
        est.limit_kind = LimitKind::Zero;
        est.confidence = Confidence::Confirmed;
        return;
    }
    bool same_sign = a.sign == b.sign && b.sign == c.sign;
    if (same_sign && c.logabs > std::log(kLarge) && b.logabs - a.logabs > step && c.logabs - b.logabs > step) {
        est.limit_kind = c.sign > 0 ? LimitKind::PlusInfinity : LimitKind::MinusInfinity;
        est.confidence = Confidence::Confirmed;
        return;
    }
    // |log|v_i| - log|v_j|| approximates the relative difference when it is small
    bool moderate = std::abs(c.logabs) < std::log(kFiniteRange);
    if (same_sign && moderate && std::abs(b.logabs - a.logabs) < kFinite && std::abs(c.logabs - b.logabs) < kFinite) {
        est.limit_kind = LimitKind::FiniteNonzero;
        est.value = c.value;
        est.confidence = Confidence::Confirmed;
        return;
    }
    // weak guess from the direction of a steady trend
    constexpr double kDrift = 1e-3;
    double d1 = b.logabs - a.logabs, d2 = c.logabs - b.logabs;
    if (same_sign && d1 > kDrift && d2 > kDrift)
        est.limit_kind = c.sign > 0 ? LimitKind::PlusInfinity : LimitKind::MinusInfinity;
    else if (d1 < -kDrift && d2 < -kDrift)
        est.limit_kind = LimitKind::Zero;
    est.note = "trend not conclusive on the grid";
}

Interval at_rational(const Rational &q, mpfr_prec_t p) { return Interval::from_rational(q, p); }

} // namespace

OracleEstimate numeric_limit(const Term &f, const std::vector<Rational> &grid, mpfr_prec_t precision)
{
    ExponentRange range;
    OracleEstimate est;
    est.quantity = OracleQuantity::Limit;
    std::vector<Point> pts;
    for (const Rational &q : grid)
        pts.push_back(sample([&](mpfr_prec_t p) { return eval_interval(f, at_rational(q, p), p); }, precision,
                             rational_label(q), est.trace));
    judge_limit(est, pts);
    return est;
}

OracleEstimate numeric_compare(const Term &f, const Term &g, const std::vector<Rational> &grid,
                               mpfr_prec_t precision)
{
    ExponentRange range;
    OracleEstimate est;
    est.quantity = OracleQuantity::Compare;
    std::vector<Point> pts;
    for (const Rational &q : grid) {
        Point pt = sample(
            [&](mpfr_prec_t p) {
                Interval x = at_rational(q, p);
                Interval a = eval_interval(f, x, p), b = eval_interval(g, x, p);
                if (a.certain_sign() <= 0 || b.certain_sign() <= 0)
                    throw NumericFailure("compare needs positive values");
                return div(a, b);
            },
            precision, rational_label(q), est.trace);
        pts.push_back(pt);
    }
    judge_limit(est, pts);
    est.dominance = est.limit_kind == LimitKind::Zero           ? Dominance::Less
                    : est.limit_kind == LimitKind::FiniteNonzero ? Dominance::Equivalent
                                                                 : Dominance::Greater;
    return est;
}

namespace {

struct LevelPoint {
    double logx = 0; // log x
    double logf = 0; // log |f(x)|
};

// iterated logs in log coordinates: out[i] = log(log_i v) given log v; NaN once undefined
std::vector<double> log_chain(double logv, int n)
{
    std::vector<double> out{logv};
    for (int i = 1; i <= n; ++i)
        out.push_back(out.back() > 0 ? std::log(out.back()) : NAN);
    return out;
}

} // namespace

OracleEstimate numeric_level(const Term &f, int max_k, int max_nu, mpfr_prec_t precision)
{
    ExponentRange range;
    if (max_k < 0 || max_nu < 2)
        fail(ErrorCode::InvalidArgument, "numeric_level needs max_k >= 0 and max_nu >= 2");
    OracleEstimate est;
    est.quantity = OracleQuantity::Level;
    std::vector<LevelPoint> pts;
    for (int j = 0; j <= 2; ++j)
        for (int t : {10, 20, 40}) {
            std::string label = "exp_" + std::to_string(j) + "(" + std::to_string(t) + ")";
            double logx = 0;
            auto ev = [&](mpfr_prec_t p) {
                Interval x = exp_iter(j, Interval::from_rational(Rational(t), p));
                logx = log(x).mid();
                return eval_interval(f, x, p);
            };
            Point pt;
            try {
                pt = sample(ev, precision, label, est.trace);
            } catch (const NumericFailure &) {
                continue;
            }
            if (!pt.usable || pt.exact_zero)
                continue;
            pts.push_back({logx, pt.logabs});
        }
    if (pts.size() < 3)
        fail(ErrorCode::NoSandwichFound, "fewer than three usable sandwich points");
    // germs tending to 0 are measured through 1/|f|
    if (pts.back().logf < 0) {
        for (LevelPoint &p : pts)
            p.logf = -p.logf;
        est.note = "measured on 1/|f|; ";
    }

    struct Hit {
        int k, l, nu;
        double margin;
    };
    std::vector<Hit> hits;
    for (int nu = 2; nu <= max_nu; ++nu)
        for (int k = 0; k <= max_k; ++k)
            for (int l = 0; l <= max_k; ++l) {
                double margin = HUGE_VAL;
                bool ok = true;
                // (1/nu) log log_l x < log log_k |f| < nu log log_l x
                for (const LevelPoint &p : pts) {
                    double y = log_chain(p.logx, l)[static_cast<std::size_t>(l)];
                    double g = log_chain(p.logf, k)[static_cast<std::size_t>(k)];
                    if (!(y > 0) || !std::isfinite(g)) {
                        ok = false;
                        break;
                    }
                    double down = g - y / nu, up = nu * y - g;
                    if (!(up > 0 && down > 0)) {
                        ok = false;
                        break;
                    }
                    margin = std::min(margin, std::min(up, down) / ((nu - 1.0 / nu) * y));
                }
                if (ok)
                    hits.push_back({k, l, nu, margin});
            }
    if (hits.empty())
        fail(ErrorCode::NoSandwichFound, "no sandwich exp_k(log_l^(1/nu)) <= |f| <= exp_k(log_l^nu) fits");
    // the tightest sandwich is reported; confirmation needs every fitting one to agree
    int nu_min = hits.front().nu;
    const Hit *best = &hits.front();
    bool agree = true;
    for (const Hit &h : hits) {
        if (h.k - h.l != best->k - best->l)
            agree = false;
        if (h.nu == nu_min && h.margin > best->margin)
            best = &h;
    }
    est.k = best->k;
    est.l = best->l;
    est.nu = best->nu;
    est.level = best->k - best->l;
    est.value = est.level;
    constexpr double kThin = 0.01;
    if (!agree) {
        est.note += "sandwiches of different levels fit the grid:";
        for (const Hit &h : hits)
            if (h.k - h.l != best->k - best->l || h.nu == nu_min)
                est.note += " (" + std::to_string(h.k) + "," + std::to_string(h.l) + "," + std::to_string(h.nu) + ")";
    } else if (best->margin < kThin) {
        est.note += "sandwich margin is thin";
    } else {
        est.confidence = Confidence::Confirmed;
    }
    return est;
}

std::vector<std::string> parse_corpus(const std::string &text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        auto e = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(b, e - b + 1));
    }
    return out;
}

std::vector<std::string> load_corpus(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::InvalidArgument, "cannot open corpus file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
}

} // namespace germ
