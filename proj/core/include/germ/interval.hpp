#pragma once

#include "germ/constant.hpp"

#include <mpfr.h>

#include <stdexcept>
#include <string>

namespace germ {

// Owning wrapper around an mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 256);
    BigFloat(double v, mpfr_prec_t prec);
    BigFloat(const BigFloat &o);
    BigFloat(BigFloat &&o) noexcept;
    BigFloat &operator=(const BigFloat &o);
    BigFloat &operator=(BigFloat &&o) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(int digits = 20) const;
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

private:
    mpfr_t v_;
};

// Raised when a certified evaluation cannot proceed (division by an interval
// containing zero, log of a non-positive interval, overflow).
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Closed interval [lo, hi] with outward-rounded endpoints.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 256);
    static Interval from_rational(const Rational &q, mpfr_prec_t prec);
    static Interval from_constant(const ExactConstant &c, mpfr_prec_t prec);
    static Interval from_double(double d, mpfr_prec_t prec);
    static Interval hull(const BigFloat &lo, const BigFloat &hi);
    static Interval pi(mpfr_prec_t prec);

    const BigFloat &lo() const { return lo_; }
    const BigFloat &hi() const { return hi_; }
    BigFloat &lo() { return lo_; }
    BigFloat &hi() { return hi_; }
    mpfr_prec_t prec() const { return lo_.prec(); }

    bool contains_zero() const;
    bool contains(const Interval &o) const;
    bool overlaps(const Interval &o) const;
    // +1 / -1 when the whole interval lies on one side of zero, else 0
    int certain_sign() const;
    double mid() const;
    // width relative to magnitude (absolute when the magnitude is below 1)
    double rel_width() const;
    std::string to_string(int digits = 17) const;

private:
    BigFloat lo_, hi_;
    void check() const;
    friend Interval add(const Interval &, const Interval &);
    friend Interval sub(const Interval &, const Interval &);
    friend Interval mul(const Interval &, const Interval &);
    friend Interval div(const Interval &, const Interval &);
    friend Interval neg(const Interval &);
    friend Interval exp(const Interval &);
    friend Interval log(const Interval &);
    friend Interval pow(const Interval &, const Rational &);
};

Interval add(const Interval &a, const Interval &b);
Interval sub(const Interval &a, const Interval &b);
Interval mul(const Interval &a, const Interval &b);
Interval div(const Interval &a, const Interval &b);
Interval neg(const Interval &a);
Interval exp(const Interval &a);
Interval log(const Interval &a);
Interval pow(const Interval &a, const Rational &r);
// exp applied n times to v
Interval exp_iter(int n, const Interval &v);

} // namespace germ
