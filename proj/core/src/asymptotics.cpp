#include "germ/asymptotics.hpp"

#include "engine.hpp"
#include "germ/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace germ {

using detail::Engine;
using detail::ZeroTest;

double LimitValue::approx() const
{
    switch (kind) {
    case LimitKind::PlusInfinity:
        return HUGE_VAL;
    case LimitKind::MinusInfinity:
        return -HUGE_VAL;
    case LimitKind::Zero:
        return 0.0;
    case LimitKind::FiniteNonzero:
        if (exact)
            return exact->approx();
        if (enclosure)
            return enclosure->mid();
        return std::nan("");
    }
    return 0.0;
}

std::string LimitValue::to_string() const
{
    switch (kind) {
    case LimitKind::PlusInfinity:
        return "+inf";
    case LimitKind::MinusInfinity:
        return "-inf";
    case LimitKind::Zero:
        return "0";
    case LimitKind::FiniteNonzero:
        if (exact)
            return exact->to_string();
        if (enclosure)
            return enclosure->to_string(20);
        return sign > 0 ? "positive" : "negative";
    }
    return "?";
}

const char *germ_class_name(GermClass c)
{
    switch (c) {
    case GermClass::ZeroGerm: return "ZeroGerm";
    case GermClass::InfIncreasing: return "InfIncreasing";
    case GermClass::InfDecreasing: return "InfDecreasing";
    case GermClass::FinitePositive: return "FinitePositive";
    case GermClass::FiniteNegative: return "FiniteNegative";
    case GermClass::SmallPositive: return "SmallPositive";
    case GermClass::SmallNegative: return "SmallNegative";
    }
    return "?";
}

const char *dominance_symbol(Dominance d)
{
    switch (d) {
    case Dominance::Less: return "<";
    case Dominance::Equivalent: return "~";
    case Dominance::Greater: return ">";
    }
    return "?";
}

std::string EhValue::to_string() const
{
    if (exact)
        return hi.to_string();
    return "[" + lo.to_string() + ", " + hi.to_string() + "]";
}

Term MonomialNF::to_term() const
{
    std::vector<Term> fs;
    for (auto &[j, r] : logs)
        fs.push_back(make_pow(simplify(log_n(j, Term::x())), r));
    for (const Term &e : exps)
        fs.push_back(e);
    if (fs.empty())
        return Term::constant(1);
    return make_mul(std::move(fs));
}

std::string MonomialNF::to_string() const { return format(to_term()); }

bool operator==(const MonomialNF &a, const MonomialNF &b)
{
    return a.logs == b.logs && a.exps == b.exps;
}

namespace {

// depth j when t = log_j(x)
int log_tower_depth(const Term &t)
{
    int j = 0;
    const Term *cur = &t;
    while (cur->is(Kind::Log)) {
        ++j;
        cur = &cur->arg();
    }
    return cur->is(Kind::X) ? j : -1;
}

// Split a monomial term into its normal form and a leftover constant factor.
std::pair<MonomialNF, Term> extract_monomial(const Term &m)
{
    MonomialNF nf;
    std::vector<Term> rest;
    std::vector<Term> fs = m.is(Kind::Mul) ? m.args() : std::vector<Term>{m};
    for (const Term &f : fs) {
        if (f.is_const()) {
            rest.push_back(f);
            continue;
        }
        if (f.is(Kind::Exp)) {
            nf.exps.push_back(f);
            continue;
        }
        Term base = f;
        Rational r = 1;
        if (f.is(Kind::Pow)) {
            base = f.arg();
            r = f.exponent();
        }
        int j = log_tower_depth(base);
        if (j < 0)
            fail(ErrorCode::Undecomposable, "factor '" + format(f) + "' is not a monomial");
        nf.logs[j] += r;
        if (nf.logs[j] == 0)
            nf.logs.erase(j);
    }
    for (auto &[j, r] : nf.logs)
        nf.log_depth = std::max(nf.log_depth, j);
    std::sort(nf.exps.begin(), nf.exps.end(), TermLess());
    Term c = rest.empty() ? Term::constant(1) : make_mul(std::move(rest));
    return {nf, c};
}

EhValue eh_max(const EhValue &a, const EhValue &b)
{
    if (a.exact && b.exact)
        return EhValue::Exact(max(a.hi, b.hi));
    return EhValue::Range(max(a.lo, b.lo), max(a.hi, b.hi));
}

} // namespace

struct Asymptotics::Cache {
    std::unordered_set<Term, TermHash> domain_ok;
    std::unordered_map<Term, ExtInt, TermHash> level;
    std::unordered_map<Term, EhValue, TermHash> eh;
    std::unordered_map<Term, std::pair<Term, Term>, TermHash> lm;
    std::unordered_map<Term, UBSplit, TermHash> ub;
};

Asymptotics::Asymptotics(EngineOptions opts)
    : engine_(std::make_unique<Engine>(opts)), cache_(std::make_unique<Cache>())
{
}

Asymptotics::~Asymptotics() = default;

void Asymptotics::check_domain(const Term &f)
{
    if (!f.has_x() && f.is_const())
        return;
    if (cache_->domain_ok.count(f))
        return;
    for (const Term &a : f.args())
        check_domain(a);
    switch (f.kind()) {
    case Kind::Log:
        if (engine_->sign(f.arg()) <= 0)
            fail(ErrorCode::DomainError, "log argument '" + format(f.arg()) + "' is not eventually positive");
        break;
    case Kind::Pow:
        if (!is_integer(f.exponent())) {
            if (engine_->sign(f.arg()) <= 0)
                fail(ErrorCode::DomainError,
                     "power base '" + format(f.arg()) + "' is not eventually positive");
        } else if (sgn(f.exponent()) < 0 && engine_->is_zero_germ(f.arg())) {
            fail(ErrorCode::DomainError, "division by the zero germ");
        }
        break;
    case Kind::Recip:
        if (engine_->is_zero_germ(f.arg()))
            fail(ErrorCode::DomainError, "division by the zero germ");
        break;
    default:
        break;
    }
    cache_->domain_ok.insert(f);
}

GermClass Asymptotics::classify(const Term &f)
{
    check_domain(f);
    if (engine_->is_zero_germ(f))
        return GermClass::ZeroGerm;
    LimitValue l = engine_->limit(f);
    switch (l.kind) {
    case LimitKind::PlusInfinity:
        return GermClass::InfIncreasing;
    case LimitKind::MinusInfinity:
        return GermClass::InfDecreasing;
    case LimitKind::FiniteNonzero:
        return l.sign > 0 ? GermClass::FinitePositive : GermClass::FiniteNegative;
    case LimitKind::Zero:
        break;
    }
    int s = engine_->sign(f);
    if (s == 0)
        return GermClass::ZeroGerm;
    return s > 0 ? GermClass::SmallPositive : GermClass::SmallNegative;
}

LimitValue Asymptotics::limit(const Term &f)
{
    check_domain(f);
    return engine_->limit(f);
}

int Asymptotics::sign(const Term &f)
{
    check_domain(f);
    return engine_->sign(f);
}

Comparison Asymptotics::compare(const Term &f, const Term &g)
{
    check_domain(f);
    check_domain(g);
    if (engine_->sign(f) <= 0)
        fail(ErrorCode::PositivityError, "'" + format(f) + "' is not eventually positive");
    if (engine_->sign(g) <= 0)
        fail(ErrorCode::PositivityError, "'" + format(g) + "' is not eventually positive");
    LimitValue r = engine_->limit(make_div(simplify(f), simplify(g)));
    Comparison c;
    if (r.kind == LimitKind::Zero)
        c.verdict = Dominance::Less;
    else if (r.is_infinite())
        c.verdict = Dominance::Greater;
    else {
        c.verdict = Dominance::Equivalent;
        c.ratio = r;
    }
    return c;
}

namespace {

// x-free term equal to the limit of a bounded germ, when the expansion yields one
std::optional<Term> limit_term(Engine &eng, const Term &t)
{
    Term e = simplify(t);
    for (int guard = 0; guard < 64; ++guard) {
        if (!e.has_x())
            return e;
        auto [c, v] = eng.leadterm(e);
        if (sgn(v) > 0 || c.is_const(0))
            return Term::constant(0);
        if (sgn(v) < 0)
            return std::nullopt;
        e = c;
    }
    return std::nullopt;
}

} // namespace

LeadingMonomial Asymptotics::lm_rec(const Term &f, int budget)
{
    if (budget < 0)
        fail(ErrorCode::DepthExceeded, "leading monomial recursion guard tripped");
    Term e = simplify(f);
    auto cached = cache_->lm.find(e);
    std::pair<Term, Term> out;
    if (cached != cache_->lm.end()) {
        out = cached->second;
    } else if (!e.has_x()) {
        if (engine_->constant_sign(e) == 0)
            fail(ErrorCode::Undecided, "the zero germ has no leading monomial");
        out = {e, Term::constant(1)};
    } else {
        detail::Rewritten rw = engine_->rewrite_top(e);
        detail::Lead l = engine_->lead(*rw.ctx, rw.rewritten);
        if (l.zero)
            fail(ErrorCode::Undecided, "the zero germ has no leading monomial");
        LeadingMonomial inner = lm_rec(l.c, budget - 1);
        Term cc = inner.coefficient_term;
        Term m = inner.monomial.to_term();
        if (sgn(l.v) != 0) {
            Term t = simplify(make_mul(Term::rational(l.v * rw.sigma), rw.arg_g));
            UBSplit ub = decompose_rec(t, budget - 1);
            std::optional<Term> b = limit_term(*engine_, ub.bounded);
            if (!b)
                fail(ErrorCode::Undecided, "bounded part of an exponent has no limit term");
            m = simplify(make_mul(m, make_exp(ub.purely_infinite)));
            cc = simplify(make_mul(cc, make_exp(*b)));
        }
        for (int k = 0; k < rw.moved; ++k)
            m = simplify(substitute(m, make_log(Term::x())));
        auto [nf, rest] = extract_monomial(m);
        out = {simplify(make_mul(cc, rest)), nf.to_term()};
        cache_->lm.emplace(e, out);
    }
    LeadingMonomial r;
    r.coefficient_term = out.first;
    r.coefficient = engine_->constant_limit(out.first);
    r.monomial = extract_monomial(out.second).first;
    return r;
}

LeadingMonomial Asymptotics::lm(const Term &f)
{
    check_domain(f);
    return lm_rec(f, 4 * simplify(f).tower_height() + 8);
}

UBSplit Asymptotics::decompose_rec(const Term &f, int budget)
{
    if (budget < 0)
        fail(ErrorCode::DepthExceeded, "decomposition recursion guard tripped");
    Term e = simplify(f);
    if (!e.has_x())
        return UBSplit{Term::constant(0), e};
    auto it = cache_->ub.find(e);
    if (it != cache_->ub.end())
        return it->second;
    detail::Rewritten rw = engine_->rewrite_top(e);
    detail::Lead l = engine_->lead(*rw.ctx, rw.rewritten);
    UBSplit out;
    if (l.zero || sgn(l.v) > 0) {
        out = UBSplit{Term::constant(0), e};
    } else {
        detail::Series s = engine_->series(*rw.ctx, rw.rewritten, Rational(1, 1024));
        std::vector<Term> parts;
        Term c0 = Term::constant(0);
        for (auto &[ex, c] : s.terms) {
            if (sgn(ex) < 0) {
                if (engine_->zero_test(c) == ZeroTest::Zero)
                    continue;
                Term w = make_exp(make_mul(Term::rational(ex * rw.sigma), rw.arg_g));
                parts.push_back(make_mul(c, w));
            } else if (sgn(ex) == 0) {
                c0 = c;
            }
        }
        UBSplit inner = decompose_rec(c0, budget - 1);
        parts.push_back(inner.purely_infinite);
        Term u = make_add(std::move(parts));
        for (int k = 0; k < rw.moved; ++k)
            u = simplify(substitute(u, make_log(Term::x())));
        u = expand(u);
        out = UBSplit{u, simplify(make_sub(simplify(f), u))};
        out.bounded = expand(out.bounded);
    }
    cache_->ub.emplace(simplify(f), out);
    return out;
}

UBSplit Asymptotics::decompose_UB(const Term &f)
{
    check_domain(f);
    try {
        return decompose_rec(f, 4 * simplify(f).tower_height() + 8);
    } catch (const Error &err) {
        if (err.code() == ErrorCode::Undecided)
            fail(ErrorCode::Undecomposable, err.what());
        throw;
    }
}

ExtInt Asymptotics::level_rec(const Term &f, int budget)
{
    if (budget < 0)
        fail(ErrorCode::DepthExceeded, "level recursion guard tripped for '" + format(f) + "'");
    Term e = simplify(f);
    auto it = cache_->level.find(e);
    if (it != cache_->level.end())
        return it->second;
    if (engine_->sign(e) <= 0)
        fail(ErrorCode::PositivityError, "level needs an eventually positive germ, got '" + format(e) + "'");
    ExtInt out;
    LimitValue l = engine_->limit(e);
    if (l.kind == LimitKind::FiniteNonzero) {
        out = ExtInt::neg_inf();
    } else if (l.kind == LimitKind::Zero) {
        out = level_rec(make_recip(e), budget);
    } else {
        Term lf = simplify(make_log(e));
        LimitValue r = engine_->limit(make_div(lf, make_log(Term::x())));
        if (r.kind == LimitKind::PlusInfinity)
            out = level_rec(lf, budget - 1) + 1;
        else if (r.kind == LimitKind::Zero)
            out = level_rec(substitute(e, Term::exp(Term::x())), budget - 1) - 1;
        else
            out = ExtInt(0);
    }
    cache_->level.emplace(e, out);
    return out;
}

ExtInt Asymptotics::level(const Term &f)
{
    check_domain(f);
    Term e = simplify(f);
    return level_rec(e, 2 * e.tower_height() + 2);
}

ExtInt Asymptotics::eh_lower_bound(const Term &f)
{
    try {
        Term e = simplify(f);
        LimitValue l = engine_->limit(e);
        if (l.is_infinite() || l.kind == LimitKind::Zero) {
            if (l.kind == LimitKind::Zero && engine_->sign(e) == 0)
                return ExtInt::neg_inf();
            return level(engine_->sign(e) < 0 ? make_neg(e) : e);
        }
        std::optional<Term> c = limit_term(*engine_, e);
        if (!c)
            return ExtInt::neg_inf();
        Term s = simplify(make_sub(e, *c));
        if (engine_->is_zero_germ(s))
            return ExtInt::neg_inf();
        return level(engine_->sign(s) < 0 ? make_neg(s) : s);
    } catch (const Error &) {
        return ExtInt::neg_inf();
    }
}

namespace {

// exp of a large germ a with known eh(a) and level(|a|)
EhValue eh_of_large_exp(const EhValue &ea, const ExtInt &lv)
{
    if (ea.exact)
        return EhValue::Exact(ea.hi == lv ? ea.hi + 1 : ea.hi);
    return EhValue::Range(ea.lo, ea.hi + 1);
}

} // namespace

EhValue Asymptotics::eh_by_expansion(const Term &f, int budget)
{
    if (budget < 0)
        fail(ErrorCode::DepthExceeded, "eh recursion guard tripped for '" + format(f) + "'");
    detail::Rewritten rw = engine_->rewrite_top(f);
    detail::Series s = engine_->series(*rw.ctx, rw.rewritten, Rational(1, 1024));
    Term c0 = detail::series_coefficient(s, Rational(0));
    std::vector<Term> ws;
    for (auto &[ex, c] : s.terms)
        if (sgn(ex) != 0 && engine_->zero_test(c) != ZeroTest::Zero)
            ws.push_back(c);
    bool depends = !ws.empty();
    if (!depends) {
        detail::Lead rest = engine_->lead(*rw.ctx, make_sub(rw.rewritten, c0));
        depends = !rest.zero;
    }
    EhValue out = EhValue::Exact(ExtInt::neg_inf());
    if (!c0.is_const(0))
        out = eh_rec(c0, budget - 1);
    if (depends) {
        Term a = simplify(make_mul(Term::constant(rw.sigma), rw.arg_g));
        Term pos = engine_->sign(a) < 0 ? make_neg(a) : a;
        EhValue lambda = eh_of_large_exp(eh_rec(a, budget - 1), level_rec(pos, 2 * pos.tower_height() + 2));
        for (const Term &c : ws) {
            EhValue ec = eh_rec(c, budget - 1);
            lambda = eh_max(lambda, ec);
        }
        out = eh_max(out, lambda);
    }
    out.lo = out.lo - rw.moved;
    out.hi = out.hi - rw.moved;
    return out;
}

EhValue Asymptotics::eh_rec(const Term &f, int budget)
{
    if (budget < 0)
        fail(ErrorCode::DepthExceeded, "eh recursion guard tripped for '" + format(f) + "'");
    Term e = simplify(f);
    if (!e.has_x())
        return EhValue::Exact(ExtInt::neg_inf());
    if (int j = log_tower_depth(e); j >= 0)
        return EhValue::Exact(-j);
    auto it = cache_->eh.find(e);
    if (it != cache_->eh.end())
        return it->second;
    detail::Engine::Guard guard(*engine_);
    EhValue out;
    auto combine = [&](const std::vector<Term> &parts) {
        std::vector<EhValue> vals;
        bool all_exact = true;
        for (const Term &p : parts) {
            vals.push_back(eh_rec(p, budget));
            all_exact = all_exact && vals.back().exact;
        }
        EhValue m = vals.front();
        for (auto &v : vals)
            m = eh_max(m, v);
        if (!all_exact)
            return EhValue::Range(max(m.lo, eh_lower_bound(e)), m.hi);
        int at_max = 0;
        for (auto &v : vals)
            at_max += v.hi == m.hi ? 1 : 0;
        if (at_max == 1 || m.hi.is_neg_inf())
            return m;
        try {
            return eh_by_expansion(e, budget - 1);
        } catch (const Error &err) {
            if (err.code() == ErrorCode::DomainError || err.code() == ErrorCode::PositivityError)
                throw;
            return EhValue::Range(eh_lower_bound(e), m.hi);
        }
    };
    switch (e.kind()) {
    case Kind::Recip:
        out = eh_rec(e.arg(), budget);
        break;
    case Kind::Pow:
        if (is_integer(e.exponent()))
            out = eh_rec(e.arg(), budget);
        else
            out = eh_exp(make_mul(Term::rational(e.exponent()), make_log(e.arg())), budget);
        break;
    case Kind::Exp:
        out = eh_exp(e.arg(), budget);
        break;
    case Kind::Log:
        out = eh_log(e.arg(), budget);
        break;
    case Kind::Add:
    case Kind::Mul:
        out = combine(e.args());
        break;
    default:
        fail(ErrorCode::Undecided, "unexpected node in eh");
    }
    cache_->eh.emplace(e, out);
    return out;
}

EhValue Asymptotics::eh_exp(const Term &a, int budget)
{
    Term e = simplify(a);
    if (!e.has_x())
        return EhValue::Exact(ExtInt::neg_inf());
    LimitValue l = engine_->limit(e);
    EhValue ea = eh_rec(e, budget);
    if (!l.is_infinite())
        return ea;
    Term pos = l.kind == LimitKind::MinusInfinity ? make_neg(e) : e;
    return eh_of_large_exp(ea, level_rec(pos, 2 * pos.tower_height() + 2));
}

EhValue Asymptotics::eh_log(const Term &b, int budget)
{
    Term e = simplify(b);
    LeadingMonomial m = lm_rec(e, budget);
    std::vector<Term> parts;
    for (auto &[j, r] : m.monomial.logs)
        parts.push_back(make_mul(Term::rational(r), simplify(log_n(j + 1, Term::x()))));
    for (const Term &x : m.monomial.exps)
        parts.push_back(x.arg());
    Term unit = simplify(make_div(e, make_mul(m.coefficient_term, m.monomial.to_term())));
    Term small = simplify(make_sub(unit, Term::constant(1)));
    EhValue out = EhValue::Exact(ExtInt::neg_inf());
    if (!parts.empty())
        out = eh_rec(make_add(std::move(parts)), budget);
    if (!engine_->is_zero_germ(small))
        out = eh_max(out, eh_rec(small, budget));
    return out;
}

EhValue Asymptotics::eh(const Term &f)
{
    check_domain(f);
    Term e = simplify(f);
    return eh_rec(e, 2 * e.tower_height() + 2 + 2 * static_cast<int>(e.depth()));
}

int Asymptotics::alevel(const Term &f)
{
    check_domain(f);
    if (engine_->sign(f) <= 0)
        fail(ErrorCode::PositivityError, "alevel needs an eventually positive germ");
    Term g = simplify(make_div(simplify(f), make_log(Term::x())));
    if (classify(g) != GermClass::SmallPositive)
        return -1;
    ExtInt l = level(g);
    if (l.is_neg_inf())
        return -1;
    return std::max(-1, l.value() + 1);
}

EhComponents Asymptotics::eh_components(const Term &f)
{
    check_domain(f);
    Term e = simplify(f);
    std::vector<Term> parts = e.is(Kind::Add) ? e.args() : std::vector<Term>{e};
    std::map<ExtInt, std::vector<Term>, ExtIntLess> groups;
    for (const Term &p : parts) {
        EhValue v = eh(p);
        if (!v.exact)
            fail(ErrorCode::Undecomposable, "summand '" + format(p) + "' has eh range " + v.to_string());
        groups[v.hi].push_back(p);
    }
    EhComponents out;
    for (auto &[k, ts] : groups)
        out.emplace(k, make_add(ts));
    return out;
}

std::optional<bool> Asymptotics::is_simple(const Term &f)
{
    EhValue e = eh(f);
    ExtInt l = level(f);
    if (e.exact)
        return e.hi == l;
    if (l < e.lo || e.hi < l)
        return false;
    return std::nullopt;
}

Asymptotics &default_engine()
{
    thread_local Asymptotics engine;
    return engine;
}

GermClass classify(const Term &f) { return default_engine().classify(f); }
LimitValue limit(const Term &f) { return default_engine().limit(f); }
Comparison compare(const Term &f, const Term &g) { return default_engine().compare(f, g); }
LeadingMonomial lm(const Term &f) { return default_engine().lm(f); }
ExtInt level(const Term &f) { return default_engine().level(f); }
EhValue eh(const Term &f) { return default_engine().eh(f); }
int alevel(const Term &f) { return default_engine().alevel(f); }
UBSplit decompose_UB(const Term &f) { return default_engine().decompose_UB(f); }
EhComponents eh_components(const Term &f) { return default_engine().eh_components(f); }
std::optional<bool> is_simple(const Term &f) { return default_engine().is_simple(f); }

int inverse_eh_bound(int eh_g, int eh_f, int level_f)
{
    return std::max(eh_g + eh_f - 2 * level_f, eh_f - level_f);
}

int inverse_level(int level_f) { return -level_f; }

} // namespace germ
