#pragma once

#include "germ/interval.hpp"
#include "germ/term.hpp"

#include <map>

namespace germ {

using VarValues = std::map<int, Interval>;

// Certified enclosure of t at the real point(s) x. Throws NumericFailure when the
// enclosure cannot be formed.
Interval eval_interval(const Term &t, const Interval &x, mpfr_prec_t prec,
                       const VarValues *vars = nullptr);

// exp_j(10), the probe points of the zero test
Interval probe_point(int j, mpfr_prec_t prec);

} // namespace germ
