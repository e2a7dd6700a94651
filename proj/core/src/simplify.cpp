#include "germ/simplify.hpp"

#include <algorithm>
#include <unordered_map>

namespace germ {

namespace {

Term with_coefficient(const Rational &q, const Term &mono)
{
    if (q == 1)
        return mono;
    std::vector<Term> args{Term::rational(q)};
    if (mono.is(Kind::Mul))
        args.insert(args.end(), mono.args().begin(), mono.args().end());
    else
        args.push_back(mono);
    return Term::mul(std::move(args));
}

const Term &base_of(const Term &f) { return f.is(Kind::Pow) ? f.arg() : f; }

bool factor_less(const Term &a, const Term &b)
{
    int c = compare_terms(base_of(a), base_of(b));
    if (c != 0)
        return c < 0;
    return compare_terms(a, b) < 0;
}

// exact d-th root of a nonnegative integer, if any
bool exact_root(const mpz_class &v, unsigned long d, mpz_class &out)
{
    return mpz_root(out.get_mpz_t(), v.get_mpz_t(), d) != 0;
}

Rational rational_power(const Rational &q, const Rational &e)
{
    // e integer
    long n = e.get_num().get_si();
    Rational r = 1;
    mpz_class num, den;
    unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), m);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), m);
    r = Rational(num, den);
    r.canonicalize();
    if (n < 0)
        r = 1 / r;
    return r;
}

struct MulCollector {
    Rational coef{1};
    std::vector<std::pair<Term, Rational>> powers;
    std::unordered_map<Term, std::size_t, TermHash> power_index;
    std::vector<std::pair<Term, Rational>> exps;
    std::unordered_map<Term, std::size_t, TermHash> exp_index;
    ExactConstant exp_const;

    void add_power(const Term &base, const Rational &e)
    {
        auto it = power_index.find(base);
        if (it == power_index.end()) {
            power_index.emplace(base, powers.size());
            powers.emplace_back(base, e);
        } else {
            powers[it->second].second += e;
        }
    }

    void absorb(const Term &t)
    {
        switch (t.kind()) {
        case Kind::Const: {
            const ExactConstant &c = t.value();
            if (c.is_rational()) {
                coef *= c.rational_part();
            } else if (sgn(c.rational_part()) == 0) {
                coef *= c.pi_coefficient();
                add_power(Term::pi(), 1);
            } else {
                add_power(t, 1);
            }
            break;
        }
        case Kind::Mul:
            for (const Term &a : t.args())
                absorb(a);
            break;
        case Kind::Pow:
            add_power(t.arg(), t.exponent());
            break;
        case Kind::Recip:
            add_power(t.arg(), -1);
            break;
        case Kind::Exp: {
            const Term &a = t.arg();
            if (a.is_const()) {
                exp_const = exp_const + a.value();
                break;
            }
            auto [q, mono] = split_coefficient(a);
            auto it = exp_index.find(mono);
            if (it == exp_index.end()) {
                exp_index.emplace(mono, exps.size());
                exps.emplace_back(mono, q);
            } else {
                exps[it->second].second += q;
            }
            break;
        }
        default:
            add_power(t, 1);
            break;
        }
    }
};

} // namespace

std::pair<Rational, Term> split_coefficient(const Term &t)
{
    if (t.is_const() && t.value().is_rational())
        return {t.value().rational_part(), Term::constant(1)};
    if (t.is(Kind::Mul) && t.arg(0).is_const() && t.arg(0).value().is_rational()) {
        std::vector<Term> rest(t.args().begin() + 1, t.args().end());
        return {t.arg(0).value().rational_part(), Term::mul(std::move(rest))};
    }
    return {Rational(1), t};
}

Term make_mul(std::vector<Term> factors)
{
    MulCollector col;
    for (const Term &f : factors)
        col.absorb(f);

    std::vector<Term> out;
    std::vector<Term> redo;
    for (auto &[base, e] : col.powers) {
        if (sgn(e) == 0)
            continue;
        if (base.is_const() && base.value().is_rational()) {
            Rational q = base.value().rational_part();
            if (is_integer(e)) {
                if (sgn(q) == 0 && sgn(e) < 0)
                    out.push_back(Term::pow(base, e));
                else
                    col.coef *= rational_power(q, e);
                continue;
            }
            if (sgn(q) == 0) {
                if (sgn(e) > 0)
                    col.coef = 0;
                else
                    out.push_back(Term::pow(base, e));
                continue;
            }
            if (sgn(q) < 0) {
                out.push_back(Term::pow(base, e));
                continue;
            }
            Rational fl = floor_of(e);
            Rational fr = e - fl;
            col.coef *= rational_power(q, fl);
            unsigned long d = fr.get_den().get_ui();
            mpz_class ra, rb;
            if (exact_root(q.get_num(), d, ra) && exact_root(q.get_den(), d, rb)) {
                Rational root(ra, rb);
                root.canonicalize();
                col.coef *= rational_power(root, Rational(fr.get_num()));
            } else {
                out.push_back(Term::pow(base, fr));
            }
            continue;
        }
        if (base.is(Kind::Mul) && is_integer(e)) {
            redo.push_back(make_pow(base, e));
            continue;
        }
        out.push_back(e == 1 ? base : Term::pow(base, e));
    }
    for (auto &[mono, q] : col.exps) {
        if (sgn(q) == 0)
            continue;
        out.push_back(Term::exp(with_coefficient(q, mono)));
    }
    if (!col.exp_const.is_zero())
        out.push_back(Term::exp(Term::constant(col.exp_const)));

    if (!redo.empty()) {
        out.insert(out.end(), redo.begin(), redo.end());
        out.push_back(Term::rational(col.coef));
        return make_mul(std::move(out));
    }
    if (sgn(col.coef) == 0)
        return Term::constant(0);
    if (out.empty())
        return Term::rational(col.coef);
    if (out.size() == 1 && out[0].is_const())
        return Term::constant(col.coef * out[0].value());
    std::sort(out.begin(), out.end(), factor_less);
    if (col.coef != 1)
        out.insert(out.begin(), Term::rational(col.coef));
    return Term::mul(std::move(out));
}

Term make_add(std::vector<Term> terms)
{
    ExactConstant c;
    std::vector<std::pair<Term, Rational>> parts;
    std::unordered_map<Term, std::size_t, TermHash> index;
    std::vector<Term> stack(terms.rbegin(), terms.rend());
    while (!stack.empty()) {
        Term t = std::move(stack.back());
        stack.pop_back();
        if (t.is(Kind::Add)) {
            for (auto it = t.args().rbegin(); it != t.args().rend(); ++it)
                stack.push_back(*it);
            continue;
        }
        if (t.is_const()) {
            c = c + t.value();
            continue;
        }
        auto [q, mono] = split_coefficient(t);
        auto it = index.find(mono);
        if (it == index.end()) {
            index.emplace(mono, parts.size());
            parts.emplace_back(mono, q);
        } else {
            parts[it->second].second += q;
        }
    }
    std::vector<std::pair<Term, Rational>> live;
    for (auto &p : parts)
        if (sgn(p.second) != 0)
            live.push_back(p);
    std::sort(live.begin(), live.end(),
              [](const auto &a, const auto &b) { return compare_terms(a.first, b.first) < 0; });
    std::vector<Term> out;
    if (!c.is_zero())
        out.push_back(Term::constant(c));
    for (auto &[mono, q] : live)
        out.push_back(with_coefficient(q, mono));
    if (out.empty())
        return Term::constant(0);
    return Term::add(std::move(out));
}

Term make_pow(const Term &base, const Rational &r)
{
    if (sgn(r) == 0)
        return Term::constant(1);
    if (r == 1)
        return base;
    switch (base.kind()) {
    case Kind::Pow:
        if (is_positive_syntactic(base.arg()) || (is_integer(base.exponent()) && is_integer(r)))
            return make_pow(base.arg(), base.exponent() * r);
        break;
    case Kind::Exp:
        return make_exp(make_mul(Term::rational(r), base.arg()));
    case Kind::Mul: {
        bool ok = is_integer(r);
        if (!ok) {
            ok = true;
            for (const Term &f : base.args())
                ok = ok && is_positive_syntactic(f);
        }
        if (ok) {
            std::vector<Term> fs;
            for (const Term &f : base.args())
                fs.push_back(make_pow(f, r));
            return make_mul(std::move(fs));
        }
        break;
    }
    default:
        break;
    }
    return make_mul({Term::pow(base, r)});
}

Term make_recip(const Term &a) { return make_pow(a, -1); }

Term make_exp(const Term &a)
{
    switch (a.kind()) {
    case Kind::Const:
        if (a.value().is_zero())
            return Term::constant(1);
        return Term::exp(a);
    case Kind::Add: {
        std::vector<Term> fs;
        for (const Term &s : a.args())
            fs.push_back(make_exp(s));
        return make_mul(std::move(fs));
    }
    case Kind::Log:
        return a.arg();
    case Kind::Mul:
        if (a.args().size() == 2 && a.arg(0).is_const() && a.arg(0).value().is_rational() &&
            a.arg(1).is(Kind::Log))
            return make_pow(a.arg(1).arg(), a.arg(0).value().rational_part());
        break;
    default:
        break;
    }
    return make_mul({Term::exp(a)});
}

Term make_log(const Term &a)
{
    switch (a.kind()) {
    case Kind::Const:
        if (a.value().is_one())
            return Term::constant(0);
        break;
    case Kind::Exp:
        return a.arg();
    case Kind::Pow:
        if (is_positive_syntactic(a.arg()))
            return make_mul(Term::rational(a.exponent()), make_log(a.arg()));
        break;
    case Kind::Mul: {
        bool ok = true;
        for (const Term &f : a.args())
            ok = ok && is_positive_syntactic(f);
        if (ok) {
            std::vector<Term> parts;
            for (const Term &f : a.args())
                parts.push_back(make_log(f));
            return make_add(std::move(parts));
        }
        break;
    }
    default:
        break;
    }
    return Term::log(a);
}

Term make_neg(const Term &a) { return make_mul(Term::constant(-1), a); }
Term make_sub(const Term &a, const Term &b) { return make_add(a, make_neg(b)); }
Term make_div(const Term &a, const Term &b) { return make_mul(a, make_recip(b)); }
Term make_scale(const ExactConstant &c, const Term &a) { return make_mul(Term::constant(c), a); }

bool is_positive_syntactic(const Term &t)
{
    switch (t.kind()) {
    case Kind::Const:
        return t.value().sign() > 0;
    case Kind::X:
    case Kind::Var:
    case Kind::Exp:
        return true;
    case Kind::Pow:
    case Kind::Recip:
        return is_positive_syntactic(t.arg());
    case Kind::Mul:
    case Kind::Add:
        for (const Term &a : t.args())
            if (!is_positive_syntactic(a))
                return false;
        return true;
    case Kind::Log:
        return is_large_syntactic(t.arg());
    }
    return false;
}

bool is_large_syntactic(const Term &t)
{
    switch (t.kind()) {
    case Kind::X:
        return true;
    case Kind::Exp:
    case Kind::Log:
        return is_large_syntactic(t.arg());
    case Kind::Pow:
        return sgn(t.exponent()) > 0 && is_large_syntactic(t.arg());
    case Kind::Mul: {
        bool large = false;
        for (const Term &a : t.args()) {
            if (is_large_syntactic(a))
                large = true;
            else if (!(a.is_const() && a.value().sign() > 0))
                return false;
        }
        return large;
    }
    case Kind::Add: {
        bool large = false;
        for (const Term &a : t.args()) {
            if (!is_positive_syntactic(a))
                return false;
            large = large || is_large_syntactic(a);
        }
        return large;
    }
    default:
        return false;
    }
}

namespace {

struct Memo {
    std::unordered_map<Term, Term, TermHash> simp;
    std::unordered_map<Term, Term, TermHash> expd;
    void trim()
    {
        if (simp.size() > (1u << 17))
            simp.clear();
        if (expd.size() > (1u << 16))
            expd.clear();
    }
};

Memo &memo()
{
    thread_local Memo m;
    return m;
}

Term simplify_once(const Term &t)
{
    switch (t.kind()) {
    case Kind::Const:
    case Kind::X:
    case Kind::Var:
        return t;
    default:
        break;
    }
    auto &m = memo().simp;
    auto it = m.find(t);
    if (it != m.end())
        return it->second;
    Term r;
    switch (t.kind()) {
    case Kind::Add:
    case Kind::Mul: {
        std::vector<Term> a;
        a.reserve(t.args().size());
        for (const Term &c : t.args())
            a.push_back(simplify_once(c));
        r = t.is(Kind::Add) ? make_add(std::move(a)) : make_mul(std::move(a));
        break;
    }
    case Kind::Recip:
        r = make_recip(simplify_once(t.arg()));
        break;
    case Kind::Pow:
        r = make_pow(simplify_once(t.arg()), t.exponent());
        break;
    case Kind::Exp:
        r = make_exp(simplify_once(t.arg()));
        break;
    case Kind::Log:
        r = make_log(simplify_once(t.arg()));
        break;
    default:
        r = t;
    }
    memo().trim();
    memo().simp.emplace(t, r);
    return r;
}

constexpr std::size_t kDistributeCap = 4096;

Term distribute(const std::vector<Term> &factors);

Term expand_pow(const Term &base, const Rational &r)
{
    Term v = make_pow(base, r);
    if (v.is(Kind::Mul) || (v.is(Kind::Pow) && v.arg().is(Kind::Add)))
        return distribute(v.is(Kind::Mul) ? v.args() : std::vector<Term>{v});
    return v;
}

Term distribute(const std::vector<Term> &factors)
{
    std::vector<std::vector<Term>> sums;
    std::size_t estimate = 1;
    bool any = false;
    for (const Term &f : factors) {
        if (f.is(Kind::Add)) {
            sums.push_back(f.args());
            any = true;
        } else if (f.is(Kind::Pow) && f.arg().is(Kind::Add) && is_integer(f.exponent()) &&
                   f.exponent() >= 2 && f.exponent() <= 8) {
            long n = f.exponent().get_num().get_si();
            for (long i = 0; i < n; ++i)
                sums.push_back(f.arg().args());
            any = true;
        } else {
            sums.push_back({f});
        }
        estimate *= sums.back().size();
        if (estimate > kDistributeCap)
            return make_mul(factors);
    }
    if (!any)
        return make_mul(factors);
    std::vector<Term> acc{Term::constant(1)};
    for (const auto &s : sums) {
        std::vector<Term> next;
        next.reserve(acc.size() * s.size());
        for (const Term &a : acc)
            for (const Term &b : s)
                next.push_back(make_mul(a, b));
        Term combined = make_add(std::move(next));
        acc = combined.is(Kind::Add) ? combined.args() : std::vector<Term>{combined};
    }
    return make_add(std::move(acc));
}

Term expand_rec(const Term &t)
{
    switch (t.kind()) {
    case Kind::Const:
    case Kind::X:
    case Kind::Var:
        return t;
    default:
        break;
    }
    auto &m = memo().expd;
    auto it = m.find(t);
    if (it != m.end())
        return it->second;
    Term r;
    switch (t.kind()) {
    case Kind::Add: {
        std::vector<Term> a;
        for (const Term &c : t.args())
            a.push_back(expand_rec(c));
        r = make_add(std::move(a));
        break;
    }
    case Kind::Mul: {
        std::vector<Term> a;
        for (const Term &c : t.args())
            a.push_back(expand_rec(c));
        Term prod = make_mul(a);
        r = prod.is(Kind::Mul) ? distribute(prod.args()) : expand_pow(prod, 1);
        break;
    }
    case Kind::Recip:
        r = expand_pow(expand_rec(t.arg()), -1);
        break;
    case Kind::Pow:
        r = expand_pow(expand_rec(t.arg()), t.exponent());
        break;
    case Kind::Exp:
        r = make_exp(expand_rec(t.arg()));
        break;
    case Kind::Log:
        r = make_log(expand_rec(t.arg()));
        break;
    default:
        r = t;
    }
    memo().trim();
    memo().expd.emplace(t, r);
    return r;
}

} // namespace

Term simplify(const Term &t)
{
    Term cur = simplify_once(t);
    for (int i = 0; i < 8; ++i) {
        Term next = simplify_once(cur);
        if (next == cur)
            break;
        cur = next;
    }
    return cur;
}

Term expand(const Term &t)
{
    Term cur = simplify(t);
    for (int i = 0; i < 6; ++i) {
        Term next = simplify(expand_rec(cur));
        if (next == cur)
            break;
        cur = next;
    }
    return cur;
}

} // namespace germ
