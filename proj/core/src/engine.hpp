#pragma once

// Most-rapidly-varying limit engine shared by the asymptotics operations.

#include "germ/asymptotics.hpp"
#include "germ/evaluate.hpp"
#include "germ/simplify.hpp"

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace germ::detail {

enum class ZeroTest { Zero, NonZero, Unknown };

// Truncated expansion in the fresh symbol W = Var(kVarW).
struct Series {
    std::vector<std::pair<Rational, Term>> terms; // increasing exponents, W-free coefficients
    std::optional<Rational> order;                // terms at exponents >= order are unknown
};

struct Lead {
    bool zero = false;
    Rational v{0};
    Term c;
};

// Expansion context: W = exp(sigma * arg_g), log W = logw.
struct Context {
    Term logw;
    std::unordered_map<Term, Lead, TermHash> leads;
    std::unordered_map<Term, Series, TermHash> series;
};

struct Rewritten {
    int moved = 0;          // times x was replaced by exp(x) first
    Term expr;              // simplified input, in moved coordinates
    Term arg_g;             // argument of the representative, moved coordinates
    int sigma = 1;          // W = exp(sigma * arg_g)
    Term rewritten;         // expr with the class replaced via W
    std::shared_ptr<Context> ctx;
};

class Engine {
public:
    explicit Engine(EngineOptions opts = {});

    const EngineOptions &options() const { return opts_; }

    ZeroTest zero_test(const Term &t);
    int constant_sign(const Term &t);
    int sign(const Term &t);
    LimitValue limit(const Term &t);
    LimitValue constant_limit(const Term &t);

    Rewritten rewrite_top(const Term &t);
    Lead lead(Context &ctx, const Term &t);
    Series series(Context &ctx, const Term &t, const Rational &prec);
    // leading term (coefficient, exponent) of t in its top class
    std::pair<Term, Rational> leadterm(const Term &t);

    bool is_zero_germ(const Term &t);

    // recursion guard
    struct Guard {
        Engine &e;
        explicit Guard(Engine &eng);
        ~Guard();
    };

private:
    EngineOptions opts_;
    int depth_ = 0;
    std::unordered_map<Term, ZeroTest, TermHash> zero_cache_;
    std::unordered_map<Term, LimitValue, TermHash> limit_cache_;
    std::unordered_map<Term, int, TermHash> sign_cache_;
    std::unordered_map<Term, std::pair<Term, Rational>, TermHash> leadterm_cache_;
    std::unordered_map<Term, std::vector<Term>, TermHash> mrv_cache_;

    std::vector<Term> mrv(const Term &t);
    std::vector<Term> mrv_max(std::vector<Term> a, std::vector<Term> b);
    int compare_class(const Term &a, const Term &b);
    Series expand_pow(Context &ctx, const Term &base, const Rational &r, const Rational &prec);
    Series expand_exp(Context &ctx, const Term &a, const Rational &prec);
    Series expand_log(Context &ctx, const Term &a, const Rational &prec);
    Lead lead_add(Context &ctx, const Term &t);
};

Series series_add(const Series &a, const Series &b);
Series series_mul(const Series &a, const Series &b, const std::optional<Rational> &cap);
Series series_truncate(Series s, const Rational &prec);
Term series_coefficient(const Series &s, const Rational &e);

Term w_symbol();
Term normalize(const Term &t);

} // namespace germ::detail
