#include "engine.hpp"

#include "germ/error.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace germ::detail {

namespace {

using ExpMap = std::map<Rational, Term>;

std::optional<Rational> min_order(const std::optional<Rational> &a, const std::optional<Rational> &b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return *a < *b ? a : b;
}

bool below(const Rational &e, const std::optional<Rational> &order) { return !order || e < *order; }

void accumulate(ExpMap &m, const Rational &e, const Term &c)
{
    auto it = m.find(e);
    if (it == m.end())
        m.emplace(e, c);
    else
        it->second = make_add(it->second, c);
}

Series from_map(const ExpMap &m, const std::optional<Rational> &order)
{
    Series s;
    s.order = order;
    for (auto &[e, c] : m)
        if (below(e, order) && !c.is_const(0))
            s.terms.emplace_back(e, c);
    return s;
}

Series exact_zero() { return Series{}; }

Series exact_one()
{
    Series s;
    s.terms.emplace_back(Rational(0), Term::constant(1));
    return s;
}

Series unknown_below(const Rational &prec)
{
    Series s;
    s.order = prec;
    return s;
}

std::optional<Rational> low_bound(const Series &s)
{
    if (!s.terms.empty())
        return s.terms.front().first;
    return s.order;
}

Series scale(const Series &s, const Term &c)
{
    Series r;
    r.order = s.order;
    for (auto &[e, t] : s.terms) {
        Term p = make_mul(t, c);
        if (!p.is_const(0))
            r.terms.emplace_back(e, p);
    }
    return r;
}

Series shift(const Series &s, const Rational &by)
{
    Series r;
    if (s.order)
        r.order = *s.order + by;
    for (auto &[e, t] : s.terms)
        r.terms.emplace_back(e + by, t);
    return r;
}

long ceil_ratio(const Rational &a, const Rational &b)
{
    Rational q = a / b;
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!c.fits_slong_p())
        fail(ErrorCode::Undecided, "series expansion too long");
    return c.get_si();
}

constexpr long kMaxSeriesTerms = 48;

} // namespace

namespace {

Term merge_exps_rec(const Term &t, std::unordered_map<Term, Term, TermHash> &memo)
{
    if (!t.has_x() || t.args().empty())
        return t;
    auto it = memo.find(t);
    if (it != memo.end())
        return it->second;
    std::vector<Term> args;
    for (const Term &a : t.args())
        args.push_back(merge_exps_rec(a, memo));
    Term out;
    switch (t.kind()) {
    case Kind::Mul: {
        std::vector<Term> rest, exps;
        for (const Term &a : args)
            (a.is(Kind::Exp) ? exps : rest).push_back(a.is(Kind::Exp) ? a.arg() : a);
        if (exps.size() > 1) {
            Term sum = make_add(std::move(exps));
            rest.push_back(sum.is(Kind::Add) ? Term::exp(sum) : make_exp(sum));
        } else if (exps.size() == 1) {
            rest.push_back(Term::exp(exps.front()));
        }
        out = make_mul(std::move(rest));
        break;
    }
    case Kind::Add:
        out = make_add(std::move(args));
        break;
    case Kind::Exp:
        out = args[0].is(Kind::Add) ? Term::exp(args[0]) : make_exp(args[0]);
        break;
    case Kind::Log:
        out = make_log(args[0]);
        break;
    case Kind::Pow:
        out = make_pow(args[0], t.exponent());
        break;
    case Kind::Recip:
        out = make_recip(args[0]);
        break;
    default:
        out = t;
    }
    memo.emplace(t, out);
    return out;
}

} // namespace

// simplify, then fuse the exponential factors of each product into a single exp;
// keeps exp of a bounded difference of large terms from splitting apart
Term normalize(const Term &t)
{
    thread_local std::unordered_map<Term, Term, TermHash> memo;
    if (memo.size() > 200000)
        memo.clear();
    return merge_exps_rec(simplify(t), memo);
}

Term w_symbol()
{
    static const Term w = Term::var(kVarW);
    return w;
}

Series series_add(const Series &a, const Series &b)
{
    std::optional<Rational> order = min_order(a.order, b.order);
    ExpMap m;
    for (auto &[e, c] : a.terms)
        accumulate(m, e, c);
    for (auto &[e, c] : b.terms)
        accumulate(m, e, c);
    return from_map(m, order);
}

Series series_mul(const Series &a, const Series &b, const std::optional<Rational> &cap)
{
    if ((a.terms.empty() && !a.order) || (b.terms.empty() && !b.order))
        return exact_zero();
    std::optional<Rational> order = cap;
    auto la = low_bound(a), lb = low_bound(b);
    if (a.order)
        order = min_order(order, *a.order + *lb);
    if (b.order)
        order = min_order(order, *b.order + *la);
    ExpMap m;
    for (auto &[ea, ca] : a.terms)
        for (auto &[eb, cb] : b.terms) {
            Rational e = ea + eb;
            if (below(e, order))
                accumulate(m, e, make_mul(ca, cb));
        }
    return from_map(m, order);
}

Series series_truncate(Series s, const Rational &prec)
{
    s.order = min_order(s.order, prec);
    std::vector<std::pair<Rational, Term>> kept;
    for (auto &p : s.terms)
        if (p.first < *s.order)
            kept.push_back(std::move(p));
    s.terms = std::move(kept);
    return s;
}

Term series_coefficient(const Series &s, const Rational &e)
{
    for (auto &[x, c] : s.terms)
        if (x == e)
            return c;
    return Term::constant(0);
}

Engine::Engine(EngineOptions opts) : opts_(opts) {}

Engine::Guard::Guard(Engine &eng) : e(eng)
{
    if (++e.depth_ > e.opts_.max_depth) {
        --e.depth_;
        fail(ErrorCode::DepthExceeded, "recursion guard tripped in limit engine");
    }
}

Engine::Guard::~Guard() { --e.depth_; }

ZeroTest Engine::zero_test(const Term &t)
{
    if (t.is_const())
        return t.value().is_zero() ? ZeroTest::Zero : ZeroTest::NonZero;
    auto it = zero_cache_.find(t);
    if (it != zero_cache_.end())
        return it->second;
    ZeroTest result = ZeroTest::Unknown;
    Term s = expand(t);
    if (s.is_const()) {
        result = s.value().is_zero() ? ZeroTest::Zero : ZeroTest::NonZero;
    } else {
        int top = std::min(s.tower_height() + 1, 3);
        for (mpfr_prec_t prec = opts_.precision; prec <= opts_.max_precision && result == ZeroTest::Unknown;
             prec *= 4) {
            for (int j = 0; j <= top; ++j) {
                try {
                    Interval x = probe_point(j, prec);
                    Interval v = eval_interval(s, x, prec);
                    if (v.certain_sign() != 0) {
                        result = ZeroTest::NonZero;
                        break;
                    }
                } catch (const NumericFailure &) {
                }
            }
            if (!s.has_x() && result == ZeroTest::Unknown && prec * 4 > opts_.max_precision)
                break;
        }
    }
    zero_cache_.emplace(t, result);
    return result;
}

int Engine::constant_sign(const Term &t)
{
    if (t.is_const())
        return t.value().sign();
    ZeroTest z = zero_test(t);
    if (z == ZeroTest::Zero)
        return 0;
    for (mpfr_prec_t prec = opts_.precision; prec <= opts_.max_precision; prec *= 4) {
        try {
            Interval v = eval_interval(t, Interval::from_rational(1, prec), prec);
            int s = v.certain_sign();
            if (s != 0)
                return s;
        } catch (const NumericFailure &) {
        }
    }
    fail(ErrorCode::Undecided, "sign of constant '" + format(t) + "' undecided");
}

LimitValue Engine::constant_limit(const Term &t)
{
    LimitValue lv;
    int s = constant_sign(t);
    if (s == 0) {
        lv.kind = LimitKind::Zero;
        lv.exact = ExactConstant(0);
        return lv;
    }
    lv.kind = LimitKind::FiniteNonzero;
    lv.sign = s;
    for (mpfr_prec_t prec = opts_.precision; prec <= opts_.max_precision; prec *= 4) {
        try {
            Interval v = eval_interval(t, Interval::from_rational(1, prec), prec);
            if (v.certain_sign() == s) {
                lv.enclosure = v;
                break;
            }
        } catch (const NumericFailure &) {
        }
    }
    if (t.is_const())
        lv.exact = t.value();
    return lv;
}

std::vector<Term> Engine::mrv(const Term &t)
{
    if (!t.has_x())
        return {};
    if (t.is(Kind::X))
        return {t};
    auto it = mrv_cache_.find(t);
    if (it != mrv_cache_.end())
        return it->second;
    Guard guard(*this);
    std::vector<Term> r;
    switch (t.kind()) {
    case Kind::Add:
    case Kind::Mul:
        for (const Term &a : t.args())
            r = mrv_max(std::move(r), mrv(a));
        break;
    case Kind::Pow:
    case Kind::Recip:
    case Kind::Log:
        r = mrv(t.arg());
        break;
    case Kind::Exp: {
        LimitValue l = limit(t.arg());
        if (l.is_infinite())
            r = mrv_max({t}, mrv(t.arg()));
        else
            r = mrv(t.arg());
        break;
    }
    default:
        break;
    }
    mrv_cache_.emplace(t, r);
    return r;
}

std::vector<Term> Engine::mrv_max(std::vector<Term> a, std::vector<Term> b)
{
    if (a.empty())
        return b;
    if (b.empty())
        return a;
    auto unite = [&] {
        for (const Term &t : b)
            if (std::find(a.begin(), a.end(), t) == a.end())
                a.push_back(t);
        return a;
    };
    for (const Term &t : a)
        if (std::find(b.begin(), b.end(), t) != b.end())
            return unite();
    int c = compare_class(a.front(), b.front());
    if (c > 0)
        return a;
    if (c < 0)
        return b;
    return unite();
}

int Engine::compare_class(const Term &a, const Term &b)
{
    // exp(c*x) against x is the base fact; deciding it via log(x) would recurse forever
    auto linear_exp = [](const Term &t) {
        return t.is(Kind::Exp) && split_coefficient(t.arg()).second.is(Kind::X);
    };
    if (a.is(Kind::X) && linear_exp(b))
        return -1;
    if (b.is(Kind::X) && linear_exp(a))
        return 1;
    auto log_of = [](const Term &t) { return t.is(Kind::Exp) ? t.arg() : make_log(t); };
    LimitValue l = limit(make_div(log_of(a), log_of(b)));
    if (l.kind == LimitKind::Zero)
        return -1;
    if (l.is_infinite())
        return 1;
    return 0;
}

namespace {
int e_height_limit(const Term &t) { return t.tower_height() + 4; }
} // namespace

Rewritten Engine::rewrite_top(const Term &t)
{
    Guard guard(*this);
    Rewritten r;
    r.expr = normalize(t);
    std::vector<Term> omega = mrv(r.expr);
    auto has_x_elem = [](const std::vector<Term> &o) {
        return std::any_of(o.begin(), o.end(), [](const Term &e) { return e.is(Kind::X); });
    };
    while (has_x_elem(omega)) {
        if (++r.moved > e_height_limit(r.expr))
            fail(ErrorCode::Undecided, "class representative did not move up");
        r.expr = normalize(substitute(r.expr, Term::exp(Term::x())));
        omega = mrv(r.expr);
    }
    if (omega.empty())
        fail(ErrorCode::Undecided, "empty comparability class");
    Term g = *std::min_element(omega.begin(), omega.end(), [](const Term &a, const Term &b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return compare_terms(a, b) < 0;
    });
    r.arg_g = g.arg();
    LimitValue lg = limit(r.arg_g);
    if (lg.kind == LimitKind::PlusInfinity)
        r.sigma = -1;
    else if (lg.kind == LimitKind::MinusInfinity)
        r.sigma = 1;
    else
        fail(ErrorCode::Undecided, "class representative has bounded exponent");
    r.ctx = std::make_shared<Context>();
    r.ctx->logw = make_mul(Term::constant(r.sigma), r.arg_g);

    std::unordered_map<Term, Rational, TermHash> ratio;
    for (const Term &f : omega) {
        if (f == g) {
            ratio.emplace(f, Rational(1));
            continue;
        }
        LimitValue c = limit(make_div(f.arg(), r.arg_g));
        if (!c.is_finite_nonzero() || !c.exact || !c.exact->is_rational())
            fail(ErrorCode::Undecided, "class ratio is not an exact rational");
        ratio.emplace(f, c.exact->rational_part());
    }

    std::unordered_map<Term, Term, TermHash> memo;
    Term w = w_symbol();
    std::function<Term(const Term &)> rw = [&](const Term &e) -> Term {
        if (!e.has_x())
            return e;
        auto m = memo.find(e);
        if (m != memo.end())
            return m->second;
        Term out;
        auto rit = ratio.find(e);
        if (rit != ratio.end()) {
            const Rational &c = rit->second;
            Term rest = make_sub(rw(e.arg()), make_mul(Term::rational(c), r.arg_g));
            out = make_mul(rest.is(Kind::Add) ? Term::exp(rest) : make_exp(rest), make_pow(w, c * r.sigma));
        } else {
            switch (e.kind()) {
            case Kind::Add:
            case Kind::Mul: {
                std::vector<Term> a;
                for (const Term &c : e.args())
                    a.push_back(rw(c));
                out = e.is(Kind::Add) ? make_add(std::move(a)) : make_mul(std::move(a));
                break;
            }
            case Kind::Pow:
                out = make_pow(rw(e.arg()), e.exponent());
                break;
            case Kind::Recip:
                out = make_recip(rw(e.arg()));
                break;
            case Kind::Exp: {
                Term a = rw(e.arg());
                out = a.is(Kind::Add) ? Term::exp(a) : make_exp(a);
                break;
            }
            case Kind::Log:
                out = make_log(rw(e.arg()));
                break;
            default:
                out = e;
            }
        }
        memo.emplace(e, out);
        return out;
    };
    r.rewritten = rw(r.expr);
    return r;
}

Lead Engine::lead(Context &ctx, const Term &t)
{
    if (!t.has_var(kVarW)) {
        switch (zero_test(t)) {
        case ZeroTest::Zero:
            return Lead{true, 0, Term::constant(0)};
        case ZeroTest::NonZero:
            return Lead{false, 0, t};
        case ZeroTest::Unknown:
            fail(ErrorCode::Undecided, "zero test inconclusive for '" + format(t) + "'");
        }
    }
    auto it = ctx.leads.find(t);
    if (it != ctx.leads.end())
        return it->second;
    Guard guard(*this);
    Lead r;
    switch (t.kind()) {
    case Kind::Var:
        r = Lead{false, 1, Term::constant(1)};
        break;
    case Kind::Mul: {
        std::vector<Term> cs;
        Rational v = 0;
        for (const Term &a : t.args()) {
            Lead l = lead(ctx, a);
            if (l.zero) {
                r = Lead{true, 0, Term::constant(0)};
                break;
            }
            v += l.v;
            cs.push_back(l.c);
        }
        if (!r.zero)
            r = Lead{false, v, make_mul(std::move(cs))};
        break;
    }
    case Kind::Pow:
    case Kind::Recip: {
        Rational e = t.is(Kind::Pow) ? t.exponent() : Rational(-1);
        Lead l = lead(ctx, t.arg());
        if (l.zero) {
            if (sgn(e) < 0)
                fail(ErrorCode::DomainError, "reciprocal of a zero germ");
            r = l;
        } else {
            r = Lead{false, e * l.v, make_pow(l.c, e)};
        }
        break;
    }
    case Kind::Exp: {
        Series s = series(ctx, t.arg(), Rational(1, 1024));
        Term a0 = Term::constant(0);
        for (auto &[e, c] : s.terms) {
            if (sgn(e) < 0) {
                ZeroTest z = zero_test(c);
                if (z == ZeroTest::Zero)
                    continue;
                fail(ErrorCode::Undecided, "exponential of an unbounded expansion");
            }
            if (sgn(e) == 0)
                a0 = c;
        }
        r = Lead{false, 0, make_exp(a0)};
        break;
    }
    case Kind::Log: {
        Lead l = lead(ctx, t.arg());
        if (l.zero)
            fail(ErrorCode::DomainError, "log of a zero germ");
        Term c = make_add(make_log(l.c), make_mul(Term::rational(l.v), ctx.logw));
        switch (zero_test(c)) {
        case ZeroTest::NonZero:
            r = Lead{false, 0, c};
            break;
        case ZeroTest::Zero: {
            Term unit = make_div(t.arg(), make_mul(l.c, make_pow(w_symbol(), l.v)));
            r = lead(ctx, make_sub(unit, Term::constant(1)));
            break;
        }
        case ZeroTest::Unknown:
            fail(ErrorCode::Undecided, "zero test inconclusive for '" + format(c) + "'");
        }
        break;
    }
    case Kind::Add:
        r = lead_add(ctx, t);
        break;
    default:
        fail(ErrorCode::Undecided, "unexpected node in expansion");
    }
    if (!r.zero)
        r.c = simplify(r.c);
    ctx.leads.emplace(t, r);
    return r;
}

Lead Engine::lead_add(Context &ctx, const Term &t)
{
    std::vector<Lead> ls;
    for (const Term &a : t.args()) {
        Lead l = lead(ctx, a);
        if (!l.zero)
            ls.push_back(l);
    }
    if (ls.empty())
        return Lead{true, 0, Term::constant(0)};
    Rational vmin = ls.front().v;
    for (auto &l : ls)
        if (l.v < vmin)
            vmin = l.v;
    std::vector<Term> cs;
    for (auto &l : ls)
        if (l.v == vmin)
            cs.push_back(l.c);
    if (cs.size() == 1)
        return Lead{false, vmin, cs.front()};
    Term csum = make_add(cs);
    ZeroTest z = zero_test(csum);
    if (z == ZeroTest::NonZero)
        return Lead{false, vmin, csum};
    if (z == ZeroTest::Unknown)
        fail(ErrorCode::Undecided, "leading coefficient undecided: '" + format(csum) + "'");
    Rational step = 1;
    for (int k = 0; k < opts_.max_deepening; ++k, step *= 2) {
        Series s = series(ctx, t, vmin + step);
        for (auto &[e, c] : s.terms) {
            ZeroTest zc = zero_test(c);
            if (zc == ZeroTest::NonZero)
                return Lead{false, e, c};
            if (zc == ZeroTest::Unknown)
                fail(ErrorCode::Undecided, "expansion coefficient undecided: '" + format(c) + "'");
        }
        if (!s.order)
            return Lead{true, 0, Term::constant(0)};
    }
    fail(ErrorCode::Undecided, "leading term search exhausted for '" + format(t) + "'");
}

Series Engine::series(Context &ctx, const Term &t, const Rational &prec)
{
    if (!t.has_var(kVarW)) {
        if (t.is_const(0))
            return exact_zero();
        Series s;
        s.terms.emplace_back(Rational(0), t);
        return s;
    }
    auto it = ctx.series.find(t);
    if (it != ctx.series.end() && (!it->second.order || *it->second.order >= prec))
        return series_truncate(it->second, prec);
    Guard guard(*this);
    Series r;
    switch (t.kind()) {
    case Kind::Var:
        r.terms.emplace_back(Rational(1), Term::constant(1));
        break;
    case Kind::Add: {
        r = exact_zero();
        for (const Term &a : t.args())
            r = series_add(r, series(ctx, a, prec));
        break;
    }
    case Kind::Mul: {
        std::vector<Lead> ls;
        Rational total = 0;
        bool zero = false;
        for (const Term &a : t.args()) {
            Lead l = lead(ctx, a);
            if (l.zero) {
                zero = true;
                break;
            }
            total += l.v;
            ls.push_back(l);
        }
        if (zero) {
            r = exact_zero();
            break;
        }
        r = exact_one();
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            Series si = series(ctx, t.arg(i), prec - (total - ls[i].v));
            r = series_mul(r, si, prec);
        }
        break;
    }
    case Kind::Pow:
        r = expand_pow(ctx, t.arg(), t.exponent(), prec);
        break;
    case Kind::Recip:
        r = expand_pow(ctx, t.arg(), Rational(-1), prec);
        break;
    case Kind::Exp:
        r = expand_exp(ctx, t.arg(), prec);
        break;
    case Kind::Log:
        r = expand_log(ctx, t.arg(), prec);
        break;
    default:
        fail(ErrorCode::Undecided, "unexpected node in expansion");
    }
    r = series_truncate(std::move(r), prec);
    for (auto &p : r.terms)
        p.second = simplify(p.second);
    auto cur = ctx.series.find(t);
    if (cur == ctx.series.end())
        ctx.series.emplace(t, r);
    else if (cur->second.order && (!r.order || *r.order > *cur->second.order))
        cur->second = r;
    return r;
}

namespace {

// f/(a0 W^v) - 1 for a series f with leading term a0 W^v
Series unit_part(const Series &f, const Rational &v, const Term &a0)
{
    Series r;
    if (f.order)
        r.order = *f.order - v;
    Term inv = make_recip(a0);
    for (auto &[e, c] : f.terms) {
        if (e <= v)
            continue;
        Term q = make_mul(c, inv);
        if (!q.is_const(0))
            r.terms.emplace_back(e - v, q);
    }
    return r;
}

} // namespace

Series Engine::expand_pow(Context &ctx, const Term &base, const Rational &r, const Rational &prec)
{
    Lead l = lead(ctx, base);
    if (l.zero) {
        if (sgn(r) < 0)
            fail(ErrorCode::DomainError, "reciprocal of a zero germ");
        return exact_zero();
    }
    Rational rv = r * l.v;
    Rational rel = prec - rv;
    if (sgn(rel) <= 0)
        return unknown_below(prec);
    Series sb = series(ctx, base, l.v + rel);
    Series R = unit_part(sb, l.v, l.c);
    Series sum = exact_one();
    if (!R.terms.empty()) {
        long n = ceil_ratio(rel, R.terms.front().first);
        if (n > kMaxSeriesTerms)
            fail(ErrorCode::Undecided, "series expansion too long");
        Series p = exact_one();
        Rational binom = 1;
        for (long k = 1; k <= n; ++k) {
            binom = binom * (r - (k - 1)) / k;
            if (sgn(binom) == 0)
                break;
            p = series_mul(p, R, rel);
            sum = series_add(sum, scale(p, Term::rational(binom)));
        }
        bool terminating = sgn(r) >= 0 && is_integer(r) && r <= n;
        if (!terminating || R.order)
            sum = series_truncate(sum, rel);
    } else if (R.order) {
        sum = series_truncate(sum, *R.order);
    }
    return shift(scale(sum, make_pow(l.c, r)), rv);
}

Series Engine::expand_exp(Context &ctx, const Term &a, const Rational &prec)
{
    if (sgn(prec) <= 0)
        return unknown_below(prec);
    Series sa = series(ctx, a, prec);
    Term a0 = Term::constant(0);
    Series R;
    R.order = sa.order;
    for (auto &[e, c] : sa.terms) {
        if (sgn(e) < 0) {
            if (zero_test(c) == ZeroTest::Zero)
                continue;
            fail(ErrorCode::Undecided, "exponential of an unbounded expansion");
        }
        if (sgn(e) == 0)
            a0 = c;
        else
            R.terms.emplace_back(e, c);
    }
    Series sum = exact_one();
    if (!R.terms.empty()) {
        long n = ceil_ratio(prec, R.terms.front().first);
        if (n > kMaxSeriesTerms)
            fail(ErrorCode::Undecided, "series expansion too long");
        Series p = exact_one();
        Rational fact = 1;
        for (long k = 1; k <= n; ++k) {
            fact *= k;
            p = series_mul(p, R, prec);
            sum = series_add(sum, scale(p, Term::rational(Rational(1) / fact)));
        }
        sum = series_truncate(sum, prec);
    } else if (R.order) {
        sum = series_truncate(sum, *R.order);
    }
    return scale(sum, make_exp(a0));
}

Series Engine::expand_log(Context &ctx, const Term &a, const Rational &prec)
{
    Lead l = lead(ctx, a);
    if (l.zero)
        fail(ErrorCode::DomainError, "log of a zero germ");
    if (sgn(prec) <= 0)
        return unknown_below(prec);
    Series sa = series(ctx, a, l.v + prec);
    Series R = unit_part(sa, l.v, l.c);
    Series sum;
    Term c0 = make_add(make_log(l.c), make_mul(Term::rational(l.v), ctx.logw));
    if (!c0.is_const(0))
        sum.terms.emplace_back(Rational(0), c0);
    if (!R.terms.empty()) {
        long n = ceil_ratio(prec, R.terms.front().first);
        if (n > kMaxSeriesTerms)
            fail(ErrorCode::Undecided, "series expansion too long");
        Series p = exact_one();
        for (long k = 1; k <= n; ++k) {
            p = series_mul(p, R, prec);
            Rational coef = Rational(k % 2 == 1 ? 1 : -1) / k;
            sum = series_add(sum, scale(p, Term::rational(coef)));
        }
        sum = series_truncate(sum, prec);
    } else if (R.order) {
        sum = series_truncate(sum, *R.order);
    }
    return sum;
}

std::pair<Term, Rational> Engine::leadterm(const Term &t)
{
    Term e = normalize(t);
    if (!e.has_x())
        return {e, Rational(0)};
    auto it = leadterm_cache_.find(e);
    if (it != leadterm_cache_.end())
        return it->second;
    Guard guard(*this);
    Rewritten rw = rewrite_top(e);
    Lead l = lead(*rw.ctx, rw.rewritten);
    std::pair<Term, Rational> out = l.zero ? std::pair<Term, Rational>{Term::constant(0), Rational(0)}
                                           : std::pair<Term, Rational>{normalize(l.c), l.v};
    leadterm_cache_.emplace(e, out);
    return out;
}

int Engine::sign(const Term &t)
{
    Term e = normalize(t);
    if (!e.has_x())
        return constant_sign(e);
    switch (e.kind()) {
    case Kind::X:
    case Kind::Exp:
        return 1;
    default:
        break;
    }
    auto it = sign_cache_.find(e);
    if (it != sign_cache_.end())
        return it->second;
    Guard guard(*this);
    int s = 0;
    if (e.is(Kind::Mul)) {
        s = 1;
        for (const Term &a : e.args())
            s *= sign(a);
    } else if (e.is(Kind::Pow) && !is_integer(e.exponent())) {
        s = 1;
    } else if (e.is(Kind::Pow)) {
        int b = sign(e.arg());
        s = (e.exponent().get_num() % 2 == 0) ? (b == 0 ? 0 : 1) : b;
    } else {
        auto [c, v] = leadterm(e);
        s = sign(c);
    }
    sign_cache_.emplace(e, s);
    return s;
}

LimitValue Engine::limit(const Term &t)
{
    Term e = normalize(t);
    if (!e.has_x())
        return constant_limit(e);
    if (e.is(Kind::X)) {
        LimitValue inf;
        inf.kind = LimitKind::PlusInfinity;
        return inf;
    }
    auto it = limit_cache_.find(e);
    if (it != limit_cache_.end())
        return it->second;
    Guard guard(*this);
    auto [c, v] = leadterm(e);
    LimitValue lv;
    if (sgn(v) > 0) {
        lv.kind = LimitKind::Zero;
    } else if (sgn(v) < 0) {
        int s = sign(c);
        lv.kind = s > 0 ? LimitKind::PlusInfinity : (s < 0 ? LimitKind::MinusInfinity : LimitKind::Zero);
    } else {
        lv = limit(c);
    }
    limit_cache_.emplace(e, lv);
    return lv;
}

bool Engine::is_zero_germ(const Term &t)
{
    ZeroTest z = zero_test(t);
    if (z != ZeroTest::Unknown)
        return z == ZeroTest::Zero;
    Term e = normalize(t);
    if (!e.has_x())
        return constant_sign(e) == 0;
    auto [c, v] = leadterm(e);
    return c.is_const(0);
}

} // namespace germ::detail
