#include "germ/interval.hpp"

#include <cmath>
#include <vector>

namespace germ {

BigFloat::BigFloat(mpfr_prec_t prec)
{
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec)
{
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat &o)
{
    mpfr_init2(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat &&o) noexcept
{
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat &BigFloat::operator=(const BigFloat &o)
{
    if (this != &o) {
        mpfr_set_prec(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat &BigFloat::operator=(BigFloat &&o) noexcept
{
    if (this != &o)
        mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::to_string(int digits) const
{
    if (mpfr_nan_p(v_))
        return "nan";
    if (mpfr_inf_p(v_))
        return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

namespace {

void ensure_finite(const BigFloat &a, const BigFloat &b)
{
    if (!a.is_finite() || !b.is_finite())
        throw NumericFailure("interval overflow");
}

} // namespace

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval Interval::from_rational(const Rational &q, mpfr_prec_t prec)
{
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::pi(mpfr_prec_t prec)
{
    Interval r(prec);
    mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
    mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
    return r;
}

Interval Interval::from_constant(const ExactConstant &c, mpfr_prec_t prec)
{
    Interval q = from_rational(c.rational_part(), prec);
    if (c.is_rational())
        return q;
    Interval p = from_rational(c.pi_coefficient(), prec);
    return add(q, mul(p, pi(prec)));
}

Interval Interval::from_double(double d, mpfr_prec_t prec)
{
    Interval r(prec);
    mpfr_set_d(r.lo_.get(), d, MPFR_RNDD);
    mpfr_set_d(r.hi_.get(), d, MPFR_RNDU);
    return r;
}

Interval Interval::hull(const BigFloat &lo, const BigFloat &hi)
{
    mpfr_prec_t prec = std::max(lo.prec(), hi.prec());
    Interval r(prec);
    if (mpfr_cmp(lo.get(), hi.get()) <= 0) {
        mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
    } else {
        mpfr_set(r.lo_.get(), hi.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), lo.get(), MPFR_RNDU);
    }
    return r;
}

void Interval::check() const { ensure_finite(lo_, hi_); }

bool Interval::contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

bool Interval::contains(const Interval &o) const
{
    return mpfr_cmp(lo_.get(), o.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), o.hi_.get()) >= 0;
}

bool Interval::overlaps(const Interval &o) const
{
    return mpfr_cmp(lo_.get(), o.hi_.get()) <= 0 && mpfr_cmp(o.lo_.get(), hi_.get()) <= 0;
}

int Interval::certain_sign() const
{
    if (lo_.sign() > 0)
        return 1;
    if (hi_.sign() < 0)
        return -1;
    return 0;
}

double Interval::mid() const
{
    BigFloat m(prec() + 2);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_double();
}

double Interval::rel_width() const
{
    BigFloat w(prec()), mag(prec());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    mpfr_abs(mag.get(), lo_.get(), MPFR_RNDN);
    BigFloat m2(prec());
    mpfr_abs(m2.get(), hi_.get(), MPFR_RNDN);
    if (mpfr_cmp(m2.get(), mag.get()) > 0)
        mag = m2;
    if (mpfr_cmp_ui(mag.get(), 1) < 0)
        return w.to_double();
    mpfr_div(w.get(), w.get(), mag.get(), MPFR_RNDU);
    return w.to_double();
}

std::string Interval::to_string(int digits) const
{
    return "[" + lo_.to_string(digits) + ", " + hi_.to_string(digits) + "]";
}

Interval add(const Interval &a, const Interval &b)
{
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval sub(const Interval &a, const Interval &b)
{
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval neg(const Interval &a)
{
    Interval r(a.prec());
    mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
    return r;
}

Interval mul(const Interval &a, const Interval &b)
{
    mpfr_prec_t prec = std::max(a.prec(), b.prec());
    Interval r(prec);
    const mpfr_srcptr as[2] = {a.lo_.get(), a.hi_.get()};
    const mpfr_srcptr bs[2] = {b.lo_.get(), b.hi_.get()};
    BigFloat t(prec);
    bool first = true;
    for (auto x : as)
        for (auto y : bs) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0)
                mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0)
                mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    r.check();
    return r;
}

Interval div(const Interval &a, const Interval &b)
{
    if (b.contains_zero())
        throw NumericFailure("division by interval containing zero");
    Interval inv(b.prec());
    mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
    return mul(a, inv);
}

Interval exp(const Interval &a)
{
    Interval r(a.prec());
    mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

Interval log(const Interval &a)
{
    if (a.lo_.sign() <= 0)
        throw NumericFailure("log of interval not bounded away from zero");
    Interval r(a.prec());
    mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
    r.check();
    return r;
}

namespace {

// a^n for integer n >= 0
Interval pow_nat(const Interval &a, unsigned long n)
{
    Interval r(a.prec());
    if (n == 0) {
        mpfr_set_ui(r.lo().get(), 1, MPFR_RNDN);
        mpfr_set_ui(r.hi().get(), 1, MPFR_RNDN);
        return r;
    }
    BigFloat lo(a.prec()), hi(a.prec());
    if (a.lo().sign() >= 0) {
        mpfr_pow_ui(lo.get(), a.lo().get(), n, MPFR_RNDD);
        mpfr_pow_ui(hi.get(), a.hi().get(), n, MPFR_RNDU);
    } else if (a.hi().sign() <= 0) {
        if (n % 2 == 0) {
            mpfr_pow_ui(lo.get(), a.hi().get(), n, MPFR_RNDD);
            mpfr_pow_ui(hi.get(), a.lo().get(), n, MPFR_RNDU);
        } else {
            mpfr_pow_ui(lo.get(), a.lo().get(), n, MPFR_RNDD);
            mpfr_pow_ui(hi.get(), a.hi().get(), n, MPFR_RNDU);
        }
    } else {
        if (n % 2 == 0) {
            BigFloat t(a.prec());
            mpfr_pow_ui(hi.get(), a.lo().get(), n, MPFR_RNDU);
            mpfr_pow_ui(t.get(), a.hi().get(), n, MPFR_RNDU);
            if (mpfr_cmp(t.get(), hi.get()) > 0)
                hi = t;
            mpfr_set_zero(lo.get(), 1);
        } else {
            mpfr_pow_ui(lo.get(), a.lo().get(), n, MPFR_RNDD);
            mpfr_pow_ui(hi.get(), a.hi().get(), n, MPFR_RNDU);
        }
    }
    Interval out = Interval::hull(lo, hi);
    if (!out.lo().is_finite() || !out.hi().is_finite())
        throw NumericFailure("interval overflow");
    return out;
}

} // namespace

Interval pow(const Interval &a, const Rational &r)
{
    const mpz_class &num = r.get_num();
    const mpz_class &den = r.get_den();
    if (!num.fits_slong_p() || !den.fits_ulong_p())
        throw NumericFailure("exponent too large");
    long n = num.get_si();
    unsigned long d = den.get_ui();
    Interval base = a;
    if (d != 1) {
        if (a.lo().sign() < 0)
            throw NumericFailure("fractional power of negative interval");
        Interval root(a.prec());
        mpfr_rootn_ui(root.lo().get(), a.lo().get(), d, MPFR_RNDD);
        mpfr_rootn_ui(root.hi().get(), a.hi().get(), d, MPFR_RNDU);
        base = root;
    }
    unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
    Interval p = pow_nat(base, m);
    if (n >= 0)
        return p;
    Interval one = Interval::from_rational(1, a.prec());
    return div(one, p);
}

Interval exp_iter(int n, const Interval &v)
{
    Interval r = v;
    for (int i = 0; i < n; ++i)
        r = exp(r);
    return r;
}

} // namespace germ
