#include "germ/generate.hpp"

namespace germ {

int TermGenerator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool TermGenerator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

Rational TermGenerator::small_rational(bool positive)
{
    static const int num[] = {1, 1, 2, 3, 1, 5, 1, 7};
    static const int den[] = {1, 2, 1, 2, 3, 1, 4, 3};
    int i = uniform(0, 7);
    Rational q(num[i], den[i]);
    q.canonicalize();
    if (!positive && chance(0.4))
        q = -q;
    return q;
}

Rational TermGenerator::exponent()
{
    static const Rational opts[] = {Rational(1, 2), Rational(2), Rational(3, 2), Rational(3), Rational(1, 3),
                                    Rational(2, 3)};
    return opts[uniform(0, 5)];
}

namespace {

Term c(const Rational &q) { return Term::rational(q); }

} // namespace

// positive and tending to 0
Term TermGenerator::small(int depth)
{
    Term base = depth <= 0 ? Term::x() : inf_increasing(depth - 1, 1);
    switch (uniform(0, 3)) {
    case 0: return Term::recip(base);
    case 1: return Term::exp(Term::mul({c(-1), base}));
    case 2: return Term::mul({c(small_rational()), Term::recip(base)});
    default: return Term::pow(base, -exponent());
    }
}

Term TermGenerator::inf_increasing(int depth, int max_height)
{
    if (depth <= 0) {
        switch (uniform(0, 5)) {
        case 0:
        case 1: return Term::x();
        case 2: return Term::pow(Term::x(), exponent());
        case 3: return max_height > 0 ? Term::log(Term::x()) : Term::x();
        case 4: return max_height > 0 ? Term::exp(Term::x()) : Term::x();
        default: return Term::mul({c(small_rational()), Term::x()});
        }
    }
    int pick = uniform(0, 9);
    if (max_height <= 0 && (pick == 5 || pick == 6 || pick == 9))
        pick = 0;
    switch (pick) {
    case 0: return Term::add({inf_increasing(depth - 1, max_height), inf_increasing(depth - 1, max_height)});
    case 1: return Term::mul({inf_increasing(depth - 1, max_height), inf_increasing(depth - 1, max_height)});
    case 2: return Term::mul({c(small_rational()), inf_increasing(depth - 1, max_height)});
    case 3: return Term::add({inf_increasing(depth - 1, max_height), c(small_rational(false))});
    case 4: return Term::pow(inf_increasing(depth - 1, max_height), exponent());
    case 5: return Term::log(inf_increasing(depth - 1, max_height - 1));
    case 6: return Term::exp(inf_increasing(depth - 1, max_height - 1));
    case 7: return Term::mul({inf_increasing(depth - 1, max_height), unit(1)});
    case 8: return Term::add({inf_increasing(depth - 1, max_height), small(0)});
    default: return Term::add({inf_increasing(depth - 1, max_height), Term::log(Term::x())});
    }
}

Term TermGenerator::unit(int depth)
{
    Term eps = small(depth > 0 ? uniform(0, depth) : 0);
    Term k = c(small_rational());
    switch (uniform(0, 4)) {
    case 0: return Term::add({c(1), eps});
    case 1: return Term::mul({k, Term::add({c(1), eps})});
    case 2: return Term::exp(eps);
    case 3:
        return Term::mul({Term::add({c(1), Term::recip(Term::x())}),
                          Term::recip(Term::add({c(1), Term::mul({c(2), Term::recip(Term::x())})}))});
    default: return Term::add({k, Term::mul({k, eps})});
    }
}

Term TermGenerator::positive_bound(int depth)
{
    if (depth <= 0) {
        switch (uniform(0, 7)) {
        case 0: return c(small_rational());
        case 1: return Term::constant(ExactConstant(0, Rational(1, uniform(2, 4))));
        case 2: return Term::recip(Term::x());
        case 3: return Term::recip(Term::log(Term::x()));
        case 4: return Term::exp(Term::mul({c(-1), Term::x()}));
        case 5: return Term::pow(Term::log(Term::x()), Rational(1, 2));
        case 6: return Term::x();
        default: return Term::log(Term::x());
        }
    }
    switch (uniform(0, 4)) {
    case 0: return Term::mul({positive_bound(depth - 1), positive_bound(depth - 1)});
    case 1: return Term::add({positive_bound(depth - 1), positive_bound(depth - 1)});
    case 2: return Term::mul({c(small_rational()), positive_bound(depth - 1)});
    case 3: return Term::mul({positive_bound(depth - 1), unit(0)});
    default: return Term::pow(positive_bound(depth - 1), exponent());
    }
}

Term TermGenerator::positive(int depth, int max_height)
{
    if (depth <= 0) {
        switch (uniform(0, 3)) {
        case 0: return c(small_rational());
        case 1: return Term::pi();
        default: return Term::x();
        }
    }
    int pick = uniform(0, 7);
    if (max_height <= 0 && pick >= 5)
        pick = uniform(0, 4);
    switch (pick) {
    case 0: return Term::add({positive(depth - 1, max_height), positive(depth - 1, max_height)});
    case 1: return Term::mul({positive(depth - 1, max_height), positive(depth - 1, max_height)});
    case 2: return Term::recip(positive(depth - 1, max_height));
    case 3: return Term::pow(positive(depth - 1, max_height), uniform(0, 1) ? exponent() : -exponent());
    case 4: return Term::mul({c(small_rational()), positive(depth - 1, max_height)});
    case 5:
    case 6: return Term::exp(any(depth - 1, max_height - 1));
    default: return Term::log(Term::add({c(1), positive(depth - 1, max_height - 1)}));
    }
}

Term TermGenerator::any(int depth, int max_height)
{
    if (depth <= 0) {
        switch (uniform(0, 4)) {
        case 0: return c(small_rational(false));
        case 1: return Term::mul({c(small_rational(false)), Term::x()});
        default: return Term::x();
        }
    }
    int pick = uniform(0, 9);
    if (max_height <= 0 && pick >= 6)
        pick = uniform(0, 5);
    switch (pick) {
    case 0:
    case 1: return Term::add({any(depth - 1, max_height), any(depth - 1, max_height)});
    case 2: return Term::mul({any(depth - 1, max_height), any(depth - 1, max_height)});
    case 3: return Term::recip(positive(depth - 1, max_height));
    case 4: return Term::pow(any(depth - 1, max_height), Rational(uniform(2, 3)));
    case 5: return positive(depth - 1, max_height);
    case 6:
    case 7: return Term::log(positive(depth - 1, max_height - 1));
    default: return Term::exp(any(depth - 1, max_height - 1));
    }
}

} // namespace germ
