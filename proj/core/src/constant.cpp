#include "germ/constant.hpp"

#include "germ/error.hpp"

#include <mpfr.h>

#include <cctype>
#include <functional>

namespace germ {

const char *error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::Undecided: return "Undecided";
    case ErrorCode::PositivityError: return "PositivityError";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::Undecomposable: return "Undecomposable";
    case ErrorCode::NotStandardDomain: return "NotStandardDomain";
    case ErrorCode::NotInfinitelyIncreasing: return "NotInfinitelyIncreasing";
    case ErrorCode::BranchCollision: return "BranchCollision";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NoSandwichFound: return "NoSandwichFound";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

Rational parse_rational(const std::string &text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        fail(ErrorCode::InvalidArgument, "empty rational");
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+')
        i = 1;
    bool slash = false;
    bool digits = false;
    for (std::size_t j = i; j < s.size(); ++j) {
        if (std::isdigit(static_cast<unsigned char>(s[j]))) {
            digits = true;
        } else if (s[j] == '/' && !slash && digits) {
            slash = true;
            digits = false;
        } else {
            fail(ErrorCode::InvalidArgument, "malformed rational '" + text + "'");
        }
    }
    if (!digits)
        fail(ErrorCode::InvalidArgument, "malformed rational '" + text + "'");
    if (s[0] == '+')
        s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0)
        fail(ErrorCode::InvalidArgument, "malformed rational '" + text + "'");
    if (q.get_den() == 0)
        fail(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational &q) { return q.get_str(10); }

std::size_t hash_value(const Rational &q)
{
    std::hash<std::string> h;
    return h(q.get_str(16));
}

bool is_integer(const Rational &q) { return q.get_den() == 1; }

Rational floor_of(const Rational &q)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
}

std::optional<ExactConstant> multiply(const ExactConstant &a, const ExactConstant &b)
{
    if (a.is_rational())
        return a.q_ * b;
    if (b.is_rational())
        return b.q_ * a;
    return std::nullopt;
}

std::optional<ExactConstant> ExactConstant::divided_by(const ExactConstant &b) const
{
    if (!b.is_rational() || sgn(b.q_) == 0)
        return std::nullopt;
    Rational inv = 1 / b.q_;
    return inv * *this;
}

int ExactConstant::sign() const
{
    if (sgn(p_) == 0)
        return sgn(q_);
    if (sgn(q_) == 0)
        return sgn(p_);
    if (sgn(q_) == sgn(p_))
        return sgn(q_);
    // opposite signs: decide q + p*pi with enclosures of pi, tightening until separated
    for (mpfr_prec_t prec = 64; prec <= (1 << 16); prec *= 2) {
        mpfr_t lo, hi, t;
        mpfr_inits2(prec, lo, hi, t, (mpfr_ptr)nullptr);
        mpfr_const_pi(lo, MPFR_RNDD);
        mpfr_const_pi(hi, MPFR_RNDU);
        // p*pi enclosure
        mpfr_t plo, phi;
        mpfr_inits2(prec, plo, phi, (mpfr_ptr)nullptr);
        if (sgn(p_) > 0) {
            mpfr_mul_q(plo, lo, p_.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(phi, hi, p_.get_mpq_t(), MPFR_RNDU);
        } else {
            mpfr_mul_q(plo, hi, p_.get_mpq_t(), MPFR_RNDD);
            mpfr_mul_q(phi, lo, p_.get_mpq_t(), MPFR_RNDU);
        }
        mpfr_add_q(plo, plo, q_.get_mpq_t(), MPFR_RNDD);
        mpfr_add_q(phi, phi, q_.get_mpq_t(), MPFR_RNDU);
        int s = 0;
        if (mpfr_sgn(plo) > 0)
            s = 1;
        else if (mpfr_sgn(phi) < 0)
            s = -1;
        mpfr_clears(lo, hi, t, plo, phi, (mpfr_ptr)nullptr);
        if (s != 0)
            return s;
    }
    fail(ErrorCode::PrecisionExhausted, "cannot separate constant from zero");
}

double ExactConstant::approx() const
{
    return q_.get_d() + p_.get_d() * 3.14159265358979323846;
}

std::strong_ordering operator<=>(const ExactConstant &a, const ExactConstant &b)
{
    if (a == b)
        return std::strong_ordering::equal;
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::size_t ExactConstant::hash() const
{
    std::size_t h = hash_value(q_);
    if (sgn(p_) != 0)
        h ^= hash_value(p_) * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15;
    return h;
}

std::string ExactConstant::to_string() const
{
    if (is_rational())
        return germ::to_string(q_);
    std::string pi_part;
    if (p_ == 1)
        pi_part = "pi";
    else if (p_ == -1)
        pi_part = "-pi";
    else if (p_.get_den() == 1)
        pi_part = germ::to_string(p_) + "*pi";
    else {
        mpz_class n = p_.get_num();
        std::string head = n == 1 ? "pi" : (n == -1 ? "-pi" : germ::to_string(Rational(n)) + "*pi");
        pi_part = head + "/" + germ::to_string(Rational(p_.get_den()));
    }
    if (sgn(q_) == 0)
        return pi_part;
    if (pi_part[0] == '-')
        return germ::to_string(q_) + " - " + pi_part.substr(1);
    return germ::to_string(q_) + " + " + pi_part;
}

} // namespace germ
