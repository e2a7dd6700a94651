#pragma once

#include "germ/asymptotics.hpp"

#include <optional>
#include <utility>

namespace germ {

// U_h = {x : |x| > a, |arg x| < h(|x|)}, compared as germs at infinity.
struct DomainSpec {
    Term h;
    double base_radius = 1.0;
};

struct DomainClass {
    int k = -1;
    std::optional<std::pair<Term, Term>> witnesses;
};

struct NuLogClass {
    int cls = -1;
    Term asymptotic_form; // (h/log) o exp(x*u), u = Var(kVarUnit) left opaque
};

DomainClass domain_class(const DomainSpec &spec, Asymptotics &eng = default_engine());
Term nu_mr(const Term &h, const Rational &r);
Term nu_pr(const Term &h, const Rational &r);
NuLogClass nu_log_class(const Term &h, Asymptotics &eng = default_engine());
int nu_exp_class(const Term &h, Asymptotics &eng = default_engine());
std::optional<bool> is_standard(const Term &h, Asymptotics &eng = default_engine());
std::pair<Term, Term> translate_sandwich(const Term &h, const Rational &eps,
                                         Asymptotics &eng = default_engine());
bool angle_bounded(const Term &h, Asymptotics &eng = default_engine());

} // namespace germ
