#pragma once

// Plain floating-point evaluation of terms, kept apart from the library's
// interval evaluator so numeric expectations do not share its code.

#include "germ/term.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace ref {

using germ::Kind;
using germ::Term;

inline long double value(const Term &t, long double x)
{
    switch (t.kind()) {
    case Kind::Const: {
        const auto &c = t.value();
        return c.rational_part().get_d() + c.pi_coefficient().get_d() * 3.141592653589793238462643383279502884L;
    }
    case Kind::X: return x;
    case Kind::Var: throw std::invalid_argument("free variable");
    case Kind::Add: {
        long double s = 0;
        for (const Term &a : t.args())
            s += value(a, x);
        return s;
    }
    case Kind::Mul: {
        long double p = 1;
        for (const Term &a : t.args())
            p *= value(a, x);
        return p;
    }
    case Kind::Recip: return 1 / value(t.arg(), x);
    case Kind::Pow: return std::pow(value(t.arg(), x), static_cast<long double>(t.exponent().get_d()));
    case Kind::Exp: return std::exp(value(t.arg(), x));
    case Kind::Log: return std::log(value(t.arg(), x));
    }
    return NAN;
}

using cplx = std::complex<double>;

// principal-branch complex value; callers keep away from the cut
inline cplx cvalue(const Term &t, cplx z)
{
    switch (t.kind()) {
    case Kind::Const: return cplx(value(t, 0), 0);
    case Kind::X: return z;
    case Kind::Var: throw std::invalid_argument("free variable");
    case Kind::Add: {
        cplx s = 0;
        for (const Term &a : t.args())
            s += cvalue(a, z);
        return s;
    }
    case Kind::Mul: {
        cplx p = 1;
        for (const Term &a : t.args())
            p *= cvalue(a, z);
        return p;
    }
    case Kind::Recip: return 1.0 / cvalue(t.arg(), z);
    case Kind::Pow: return std::exp(t.exponent().get_d() * std::log(cvalue(t.arg(), z)));
    case Kind::Exp: return std::exp(cvalue(t.arg(), z));
    case Kind::Log: return std::log(cvalue(t.arg(), z));
    }
    return NAN;
}

} // namespace ref
