#pragma once

#include "germ/asymptotics.hpp"
#include "germ/interval.hpp"
#include "germ/term.hpp"

#include <string>
#include <vector>

namespace germ {

enum class OracleQuantity { Limit, Compare, Level };
enum class Confidence { Confirmed, Weak };

const char *confidence_name(Confidence c);

struct OracleSample {
    std::string point;
    mpfr_prec_t precision = 0;
    std::string value; // empty when the point could not be evaluated
};

struct OracleEstimate {
    OracleQuantity quantity = OracleQuantity::Limit;
    Confidence confidence = Confidence::Weak;
    LimitKind limit_kind = LimitKind::Zero; // Limit
    double value = 0;                       // Limit: finite value
    Dominance dominance = Dominance::Equivalent; // Compare
    int level = 0;                          // Level: k - l of the sandwich
    int k = 0, l = 0, nu = 0;
    std::vector<OracleSample> trace;
    std::string note;
};

// 10^2, 10^4, ..., 10^128
std::vector<Rational> default_grid();

// Every grid point is evaluated at `precision` and twice that; the oracle never
// simplifies and never consults the symbolic engine.
OracleEstimate numeric_limit(const Term &f, const std::vector<Rational> &grid = default_grid(),
                             mpfr_prec_t precision = 256);
OracleEstimate numeric_compare(const Term &f, const Term &g,
                               const std::vector<Rational> &grid = default_grid(),
                               mpfr_prec_t precision = 256);
// Sandwich exp_k(log_l^{1/nu}) <= |f| <= exp_k(log_l^nu) at x = exp_j(t), t in {10, 20, 40}, j <= 2.
OracleEstimate numeric_level(const Term &f, int max_k = 2, int max_nu = 8, mpfr_prec_t precision = 256);

// One expression per line; '#' starts a comment.
std::vector<std::string> load_corpus(const std::string &path);
std::vector<std::string> parse_corpus(const std::string &text);

} // namespace germ
