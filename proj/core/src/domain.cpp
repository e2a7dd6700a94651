#include "germ/domain.hpp"

#include "germ/error.hpp"
#include "germ/evaluate.hpp"
#include "germ/simplify.hpp"

#include <cmath>

namespace germ {

namespace {

void require_positive(const Term &h, Asymptotics &eng)
{
    if (eng.sign(h) <= 0)
        fail(ErrorCode::PositivityError, "domain bound '" + format(h) + "' is not eventually positive");
}

Term half_pi() { return Term::constant(ExactConstant(0, Rational(1, 2))); }

// x cos(h(x)) sampled on an escalating grid; true when it keeps growing fast
std::optional<bool> numeric_standard_test(const Term &h)
{
    constexpr mpfr_prec_t prec = 256;
    double prev = -HUGE_VAL, first = 0;
    int n = 0;
    for (int k = 2; k <= 64; k += 2) {
        try {
            Interval x = exp(Interval::from_rational(Rational(k) * 23 / 10, prec));
            Interval v = eval_interval(h, x, prec);
            double hv = v.mid();
            double xv = x.mid();
            if (!std::isfinite(xv) || !std::isfinite(hv))
                continue;
            double g = xv * std::cos(hv);
            if (g <= prev)
                return std::nullopt;
            if (n++ == 0)
                first = g;
            prev = g;
        } catch (const NumericFailure &) {
        }
    }
    if (n >= 3 && prev > 1e6 * std::max(first, 1.0))
        return true;
    return std::nullopt;
}

} // namespace

DomainClass domain_class(const DomainSpec &spec, Asymptotics &eng)
{
    require_positive(spec.h, eng);
    DomainClass c;
    c.k = eng.alevel(spec.h);
    c.witnesses = std::make_pair(spec.h, spec.h);
    return c;
}

Term nu_mr(const Term &h, const Rational &r)
{
    if (sgn(r) <= 0)
        fail(ErrorCode::InvalidArgument, "nu_mr needs r > 0");
    return simplify(substitute(h, make_mul(Term::rational(1 / r), Term::x())));
}

Term nu_pr(const Term &h, const Rational &r)
{
    if (sgn(r) <= 0)
        fail(ErrorCode::InvalidArgument, "nu_pr needs r > 0");
    return simplify(make_mul(Term::rational(r), substitute(h, make_pow(Term::x(), 1 / r))));
}

NuLogClass nu_log_class(const Term &h, Asymptotics &eng)
{
    require_positive(h, eng);
    NuLogClass out;
    out.cls = eng.alevel(h) + 1;
    Term ratio = simplify(make_div(h, make_log(Term::x())));
    Term inner = Term::exp(Term::mul({Term::x(), Term::var(kVarUnit)}));
    out.asymptotic_form = substitute(ratio, inner);
    return out;
}

int nu_exp_class(const Term &h, Asymptotics &eng)
{
    std::optional<bool> st = is_standard(h, eng);
    if (!st)
        fail(ErrorCode::Undecided, "cannot decide whether U_h is standard");
    if (!*st)
        fail(ErrorCode::NotStandardDomain, "'" + format(h) + "' does not bound a standard domain");
    return std::max(-1, eng.alevel(h) - 1);
}

std::optional<bool> is_standard(const Term &h, Asymptotics &eng)
{
    require_positive(h, eng);
    LimitValue l = eng.limit(h);
    if (l.is_infinite())
        return false;
    LimitValue d = eng.limit(make_sub(simplify(h), half_pi()));
    if (d.kind == LimitKind::FiniteNonzero)
        return d.sign < 0;
    if (d.is_infinite())
        return d.kind == LimitKind::MinusInfinity;
    // limit equals pi/2: standard iff x cos(h) grows without bound; cos(h) ~ pi/2 - h
    Term gap = simplify(make_sub(half_pi(), h));
    try {
        if (eng.sign(gap) <= 0)
            return false;
        LimitValue g = eng.limit(make_mul(Term::x(), gap));
        return g.kind == LimitKind::PlusInfinity;
    } catch (const Error &err) {
        if (err.code() != ErrorCode::Undecided)
            throw;
    }
    return numeric_standard_test(h);
}

std::pair<Term, Term> translate_sandwich(const Term &h, const Rational &eps, Asymptotics &eng)
{
    if (sgn(eps) <= 0)
        fail(ErrorCode::InvalidArgument, "translate_sandwich needs eps > 0");
    if (eng.classify(h) != GermClass::InfIncreasing)
        fail(ErrorCode::NotInfinitelyIncreasing, "'" + format(h) + "' is not infinitely increasing");
    Term lo = simplify(substitute(h, make_sub(Term::x(), Term::rational(eps))));
    Term hi = simplify(substitute(h, make_add(Term::x(), Term::rational(eps))));
    return {lo, hi};
}

bool angle_bounded(const Term &h, Asymptotics &eng)
{
    return eng.classify(h) != GermClass::InfIncreasing;
}

} // namespace germ
