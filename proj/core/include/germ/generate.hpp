#pragma once

#include "germ/term.hpp"

#include <cstdint>
#include <random>

namespace germ {

// Seeded random terms. Raw structure only; callers filter by classification.
class TermGenerator {
public:
    explicit TermGenerator(std::uint64_t seed) : rng_(seed) {}

    // tends to +infinity by construction, tower height at most max_height
    Term inf_increasing(int depth, int max_height = 2);
    // limit in (0, +infinity)
    Term unit(int depth = 1);
    // eventually positive, bounded or not
    Term positive_bound(int depth = 2);
    // arbitrary term whose logs and fractional powers have positive arguments
    Term any(int depth, int max_height = 3);
    // eventually positive by construction
    Term positive(int depth, int max_height = 3);

    Rational small_rational(bool positive = true);
    Rational exponent();
    int uniform(int lo, int hi);
    bool chance(double p);
    std::mt19937_64 &rng() { return rng_; }

private:
    std::mt19937_64 rng_;
    Term small(int depth);
};

} // namespace germ
