#pragma once

#include "germ/term.hpp"

#include <utility>
#include <vector>

namespace germ {

// Normal-form constructors. Inputs must already be in normal form.
Term make_add(std::vector<Term> terms);
Term make_mul(std::vector<Term> factors);
Term make_pow(const Term &base, const Rational &r);
Term make_recip(const Term &a);
Term make_exp(const Term &a);
Term make_log(const Term &a);

inline Term make_add(const Term &a, const Term &b) { return make_add(std::vector<Term>{a, b}); }
inline Term make_mul(const Term &a, const Term &b) { return make_mul(std::vector<Term>{a, b}); }
Term make_neg(const Term &a);
Term make_sub(const Term &a, const Term &b);
Term make_div(const Term &a, const Term &b);
Term make_scale(const ExactConstant &c, const Term &a);

// Split a normal-form term into rational coefficient and monomial part.
std::pair<Rational, Term> split_coefficient(const Term &t);

// Syntactic eventual positivity / growth; sound but incomplete.
bool is_positive_syntactic(const Term &t);
bool is_large_syntactic(const Term &t);

Term simplify(const Term &t);
// simplify plus distribution of products and small integer powers over sums
Term expand(const Term &t);

} // namespace germ
