#pragma once

#include "germ/interval.hpp"
#include "germ/term.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace germ {

// Integer extended by -infinity.
class ExtInt {
public:
    constexpr ExtInt(int v = 0) : neg_inf_(false), v_(v) {}
    static constexpr ExtInt neg_inf()
    {
        ExtInt e;
        e.neg_inf_ = true;
        return e;
    }
    constexpr bool is_neg_inf() const { return neg_inf_; }
    constexpr int value() const { return v_; }
    friend constexpr bool operator==(const ExtInt &a, const ExtInt &b)
    {
        return a.neg_inf_ == b.neg_inf_ && (a.neg_inf_ || a.v_ == b.v_);
    }
    friend constexpr bool operator<(const ExtInt &a, const ExtInt &b)
    {
        if (a.neg_inf_)
            return !b.neg_inf_;
        if (b.neg_inf_)
            return false;
        return a.v_ < b.v_;
    }
    friend constexpr bool operator<=(const ExtInt &a, const ExtInt &b) { return !(b < a); }
    friend constexpr bool operator>(const ExtInt &a, const ExtInt &b) { return b < a; }
    friend constexpr bool operator>=(const ExtInt &a, const ExtInt &b) { return !(a < b); }
    friend constexpr ExtInt operator+(const ExtInt &a, int k)
    {
        return a.neg_inf_ ? a : ExtInt(a.v_ + k);
    }
    friend constexpr ExtInt operator-(const ExtInt &a, int k) { return a + (-k); }
    std::string to_string() const { return neg_inf_ ? "-inf" : std::to_string(v_); }

private:
    bool neg_inf_;
    int v_;
};

inline ExtInt max(const ExtInt &a, const ExtInt &b) { return a < b ? b : a; }

enum class LimitKind { PlusInfinity, MinusInfinity, Zero, FiniteNonzero };

struct LimitValue {
    LimitKind kind = LimitKind::Zero;
    int sign = 0;
    std::optional<Interval> enclosure;
    std::optional<ExactConstant> exact;

    bool is_infinite() const
    {
        return kind == LimitKind::PlusInfinity || kind == LimitKind::MinusInfinity;
    }
    bool is_finite_nonzero() const { return kind == LimitKind::FiniteNonzero; }
    double approx() const;
    std::string to_string() const;
};

enum class GermClass {
    ZeroGerm,
    InfIncreasing,
    InfDecreasing,
    FinitePositive,
    FiniteNegative,
    SmallPositive,
    SmallNegative,
};
const char *germ_class_name(GermClass c);

enum class Dominance { Less, Equivalent, Greater };
const char *dominance_symbol(Dominance d);

struct Comparison {
    Dominance verdict = Dominance::Equivalent;
    std::optional<LimitValue> ratio;
};

// Element of the monomial group: prod_j l_j^{r_j} * prod exp(e) with l_0 = x.
struct MonomialNF {
    int log_depth = 0;
    std::map<int, Rational> logs;
    std::vector<Term> exps; // each factor exp(e), e purely infinite
    bool is_one() const { return logs.empty() && exps.empty(); }
    Term to_term() const;
    std::string to_string() const;
    friend bool operator==(const MonomialNF &a, const MonomialNF &b);
};

struct LeadingMonomial {
    LimitValue coefficient;
    Term coefficient_term;
    MonomialNF monomial;
};

struct EhValue {
    bool exact = true;
    ExtInt lo = ExtInt::neg_inf();
    ExtInt hi = ExtInt::neg_inf();
    static EhValue Exact(ExtInt v) { return EhValue{true, v, v}; }
    static EhValue Range(ExtInt lo, ExtInt hi)
    {
        if (!(lo < hi))
            return Exact(hi);
        return EhValue{false, lo, hi};
    }
    ExtInt value() const { return hi; }
    std::string to_string() const;
    friend bool operator==(const EhValue &a, const EhValue &b)
    {
        return a.exact == b.exact && a.lo == b.lo && a.hi == b.hi;
    }
};

struct UBSplit {
    Term purely_infinite;
    Term bounded;
};

struct ExtIntLess {
    bool operator()(const ExtInt &a, const ExtInt &b) const { return a < b; }
};
using EhComponents = std::map<ExtInt, Term, ExtIntLess>;

struct EngineOptions {
    mpfr_prec_t precision = 256;
    mpfr_prec_t max_precision = 4096;
    int max_depth = 400;
    int max_deepening = 5;
};

namespace detail {
class Engine;
}

// Symbolic engine with its own memo tables; one instance per thread.
class Asymptotics {
public:
    explicit Asymptotics(EngineOptions opts = {});
    ~Asymptotics();
    Asymptotics(const Asymptotics &) = delete;
    Asymptotics &operator=(const Asymptotics &) = delete;

    GermClass classify(const Term &f);
    LimitValue limit(const Term &f);
    int sign(const Term &f);
    Comparison compare(const Term &f, const Term &g);
    LeadingMonomial lm(const Term &f);
    ExtInt level(const Term &f);
    EhValue eh(const Term &f);
    int alevel(const Term &f);
    UBSplit decompose_UB(const Term &f);
    EhComponents eh_components(const Term &f);
    std::optional<bool> is_simple(const Term &f);
    // DomainError unless every log / fractional power argument is eventually positive
    void check_domain(const Term &f);

    detail::Engine &engine() { return *engine_; }

private:
    std::unique_ptr<detail::Engine> engine_;
    struct Cache;
    std::unique_ptr<Cache> cache_;

    ExtInt level_rec(const Term &f, int budget);
    EhValue eh_rec(const Term &f, int budget);
    EhValue eh_by_expansion(const Term &f, int budget);
    EhValue eh_exp(const Term &a, int budget);
    EhValue eh_log(const Term &b, int budget);
    ExtInt eh_lower_bound(const Term &f);
    UBSplit decompose_rec(const Term &f, int budget);
    LeadingMonomial lm_rec(const Term &f, int budget);
};

// Thread-local default engine.
Asymptotics &default_engine();

GermClass classify(const Term &f);
LimitValue limit(const Term &f);
Comparison compare(const Term &f, const Term &g);
LeadingMonomial lm(const Term &f);
ExtInt level(const Term &f);
EhValue eh(const Term &f);
int alevel(const Term &f);
UBSplit decompose_UB(const Term &f);
EhComponents eh_components(const Term &f);
std::optional<bool> is_simple(const Term &f);

int inverse_eh_bound(int eh_g, int eh_f, int level_f);
int inverse_level(int level_f);

} // namespace germ
