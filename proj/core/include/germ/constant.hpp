#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>

namespace germ {

using Rational = mpq_class;

Rational parse_rational(const std::string &text);
std::string to_string(const Rational &q);
std::size_t hash_value(const Rational &q);
bool is_integer(const Rational &q);
// floor of q as a rational with denominator 1
Rational floor_of(const Rational &q);

// q + p*pi with q, p rational; the representation is unique
class ExactConstant {
public:
    ExactConstant() = default;
    ExactConstant(long v) : q_(v) {}
    ExactConstant(Rational q, Rational p = 0) : q_(std::move(q)), p_(std::move(p))
    {
        q_.canonicalize();
        p_.canonicalize();
    }
    static ExactConstant pi() { return ExactConstant(0, 1); }

    const Rational &rational_part() const { return q_; }
    const Rational &pi_coefficient() const { return p_; }

    bool is_rational() const { return sgn(p_) == 0; }
    bool is_zero() const { return sgn(q_) == 0 && sgn(p_) == 0; }
    bool is_one() const { return is_rational() && q_ == 1; }
    int sign() const;
    // double approximation, for reporting only
    double approx() const;

    ExactConstant operator-() const { return ExactConstant(-q_, -p_); }
    friend ExactConstant operator+(const ExactConstant &a, const ExactConstant &b)
    {
        return ExactConstant(a.q_ + b.q_, a.p_ + b.p_);
    }
    friend ExactConstant operator-(const ExactConstant &a, const ExactConstant &b)
    {
        return ExactConstant(a.q_ - b.q_, a.p_ - b.p_);
    }
    // product leaves the field only when both carry pi
    friend std::optional<ExactConstant> multiply(const ExactConstant &a, const ExactConstant &b);
    friend ExactConstant operator*(const Rational &r, const ExactConstant &a)
    {
        return ExactConstant(r * a.q_, r * a.p_);
    }
    // a / b when b is rational and nonzero
    std::optional<ExactConstant> divided_by(const ExactConstant &b) const;

    friend bool operator==(const ExactConstant &a, const ExactConstant &b)
    {
        return a.q_ == b.q_ && a.p_ == b.p_;
    }
    // total order by real value
    friend std::strong_ordering operator<=>(const ExactConstant &a, const ExactConstant &b);

    std::size_t hash() const;
    std::string to_string() const;

private:
    Rational q_{0};
    Rational p_{0};
};

} // namespace germ
