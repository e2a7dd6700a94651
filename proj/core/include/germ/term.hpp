#pragma once

#include "germ/constant.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace germ {

enum class Kind : std::uint8_t { Const, X, Var, Add, Mul, Recip, Pow, Exp, Log };

const char *kind_name(Kind k);

struct Node;
using TermId = std::size_t;

// Immutable exp-log term. Copies share structure.
class Term {
public:
    Term();
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    // Structural constructors; no rewriting happens here.
    static Term constant(const ExactConstant &c);
    static Term constant(long v) { return constant(ExactConstant(v)); }
    static Term rational(const Rational &q) { return constant(ExactConstant(q)); }
    static Term pi() { return constant(ExactConstant::pi()); }
    static Term x();
    static Term var(int id);
    // singleton lists collapse to their element
    static Term add(std::vector<Term> args);
    static Term mul(std::vector<Term> args);
    static Term recip(Term a);
    static Term pow(Term base, Rational exponent);
    static Term exp(Term a);
    static Term log(Term a);

    Kind kind() const;
    bool is(Kind k) const { return kind() == k; }
    bool is_const() const { return is(Kind::Const); }
    bool is_const(long v) const;
    const ExactConstant &value() const;
    const Rational &exponent() const;
    int var_id() const;
    const std::vector<Term> &args() const;
    const Term &arg(std::size_t i = 0) const { return args()[i]; }

    TermId id() const;
    int tower_height() const;
    std::size_t size() const;
    int depth() const;
    bool has_x() const;
    bool has_var() const;
    bool has_var(int id) const;
    const Node *node() const { return node_.get(); }

    friend bool operator==(const Term &a, const Term &b);
    friend bool operator!=(const Term &a, const Term &b) { return !(a == b); }

private:
    std::shared_ptr<const Node> node_;
};

struct Node {
    Kind kind = Kind::Const;
    ExactConstant value;
    Rational exponent{0};
    int var_id = -1;
    std::vector<Term> args;
    std::size_t hash = 0;
    int height = 0;
    std::size_t size = 1;
    int depth = 1;
    bool has_x = false;
    std::uint64_t var_mask = 0;
};

struct TermHash {
    std::size_t operator()(const Term &t) const { return t.id(); }
};

// Total structural order; used to sort Add and Mul operands.
int compare_terms(const Term &a, const Term &b);

struct TermLess {
    bool operator()(const Term &a, const Term &b) const { return compare_terms(a, b) < 0; }
};

// Replace every X in f by g.
Term substitute(const Term &f, const Term &g);
// Replace Var(id) in f by g.
Term substitute_var(const Term &f, int id, const Term &g);

// Variable names used when printing internal placeholders.
std::string var_name(int id);
inline constexpr int kVarW = 0;
inline constexpr int kVarUnit = 1;

std::string format(const Term &t);
Term parse(const std::string &text);

Term exp_n(int n, Term t);
Term log_n(int n, Term t);

} // namespace germ
