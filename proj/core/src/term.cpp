#include "germ/term.hpp"

#include "germ/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace germ {

namespace {

std::size_t mix(std::size_t h, std::size_t v)
{
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Term make_node(Node n)
{
    std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ULL + 17;
    switch (n.kind) {
    case Kind::Const:
        h = mix(h, n.value.hash());
        break;
    case Kind::X:
        n.has_x = true;
        break;
    case Kind::Var:
        h = mix(h, static_cast<std::size_t>(n.var_id));
        n.var_mask = std::uint64_t(1) << (n.var_id & 63);
        break;
    case Kind::Pow:
        h = mix(h, hash_value(n.exponent));
        break;
    default:
        break;
    }
    int max_height = 0;
    for (const Term &a : n.args) {
        const Node *c = a.node();
        h = mix(h, c->hash);
        max_height = std::max(max_height, c->height);
        n.size += c->size;
        n.depth = std::max(n.depth, c->depth + 1);
        n.has_x = n.has_x || c->has_x;
        n.var_mask |= c->var_mask;
    }
    n.height = max_height + ((n.kind == Kind::Exp || n.kind == Kind::Log) ? 1 : 0);
    n.hash = h;
    return Term(std::make_shared<const Node>(std::move(n)));
}

const Term &zero_term()
{
    static const Term z = [] {
        Node n;
        n.kind = Kind::Const;
        return make_node(std::move(n));
    }();
    return z;
}

} // namespace

const char *kind_name(Kind k)
{
    switch (k) {
    case Kind::Const: return "Const";
    case Kind::X: return "X";
    case Kind::Var: return "Var";
    case Kind::Add: return "Add";
    case Kind::Mul: return "Mul";
    case Kind::Recip: return "Recip";
    case Kind::Pow: return "Pow";
    case Kind::Exp: return "Exp";
    case Kind::Log: return "Log";
    }
    return "?";
}

Term::Term() : node_(zero_term().node_) {}

Term Term::constant(const ExactConstant &c)
{
    Node n;
    n.kind = Kind::Const;
    n.value = c;
    return make_node(std::move(n));
}

Term Term::x()
{
    static const Term t = [] {
        Node n;
        n.kind = Kind::X;
        return make_node(std::move(n));
    }();
    return t;
}

Term Term::var(int id)
{
    Node n;
    n.kind = Kind::Var;
    n.var_id = id;
    return make_node(std::move(n));
}

Term Term::add(std::vector<Term> args)
{
    if (args.empty())
        fail(ErrorCode::InvalidArgument, "empty Add");
    if (args.size() == 1)
        return args[0];
    Node n;
    n.kind = Kind::Add;
    n.args = std::move(args);
    return make_node(std::move(n));
}

Term Term::mul(std::vector<Term> args)
{
    if (args.empty())
        fail(ErrorCode::InvalidArgument, "empty Mul");
    if (args.size() == 1)
        return args[0];
    Node n;
    n.kind = Kind::Mul;
    n.args = std::move(args);
    return make_node(std::move(n));
}

Term Term::recip(Term a)
{
    Node n;
    n.kind = Kind::Recip;
    n.args.push_back(std::move(a));
    return make_node(std::move(n));
}

Term Term::pow(Term base, Rational exponent)
{
    Node n;
    n.kind = Kind::Pow;
    exponent.canonicalize();
    n.exponent = std::move(exponent);
    n.args.push_back(std::move(base));
    return make_node(std::move(n));
}

Term Term::exp(Term a)
{
    Node n;
    n.kind = Kind::Exp;
    n.args.push_back(std::move(a));
    return make_node(std::move(n));
}

Term Term::log(Term a)
{
    Node n;
    n.kind = Kind::Log;
    n.args.push_back(std::move(a));
    return make_node(std::move(n));
}

Kind Term::kind() const { return node_->kind; }
bool Term::is_const(long v) const { return is_const() && node_->value == ExactConstant(v); }
const ExactConstant &Term::value() const { return node_->value; }
const Rational &Term::exponent() const { return node_->exponent; }
int Term::var_id() const { return node_->var_id; }
const std::vector<Term> &Term::args() const { return node_->args; }
TermId Term::id() const { return node_->hash; }
int Term::tower_height() const { return node_->height; }
std::size_t Term::size() const { return node_->size; }
int Term::depth() const { return node_->depth; }
bool Term::has_x() const { return node_->has_x; }
bool Term::has_var() const { return node_->var_mask != 0; }
bool Term::has_var(int id) const { return (node_->var_mask >> (id & 63)) & 1; }

bool operator==(const Term &a, const Term &b)
{
    const Node *p = a.node();
    const Node *q = b.node();
    if (p == q)
        return true;
    if (p->hash != q->hash || p->kind != q->kind || p->size != q->size)
        return false;
    switch (p->kind) {
    case Kind::Const:
        return p->value == q->value;
    case Kind::X:
        return true;
    case Kind::Var:
        return p->var_id == q->var_id;
    case Kind::Pow:
        if (p->exponent != q->exponent)
            return false;
        break;
    default:
        break;
    }
    if (p->args.size() != q->args.size())
        return false;
    for (std::size_t i = 0; i < p->args.size(); ++i)
        if (!(p->args[i] == q->args[i]))
            return false;
    return true;
}

namespace {

int kind_rank(Kind k)
{
    switch (k) {
    case Kind::Const: return 0;
    case Kind::X: return 1;
    case Kind::Var: return 2;
    case Kind::Log: return 3;
    case Kind::Pow: return 4;
    case Kind::Mul: return 5;
    case Kind::Add: return 6;
    case Kind::Recip: return 7;
    case Kind::Exp: return 8;
    }
    return 9;
}

} // namespace

int compare_terms(const Term &a, const Term &b)
{
    if (a.node() == b.node())
        return 0;
    int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
    if (ra != rb)
        return ra < rb ? -1 : 1;
    switch (a.kind()) {
    case Kind::Const: {
        auto c = a.value() <=> b.value();
        return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::X:
        return 0;
    case Kind::Var:
        return a.var_id() < b.var_id() ? -1 : (a.var_id() > b.var_id() ? 1 : 0);
    case Kind::Pow: {
        int c = compare_terms(a.arg(), b.arg());
        if (c != 0)
            return c;
        return a.exponent() < b.exponent() ? -1 : (a.exponent() > b.exponent() ? 1 : 0);
    }
    default:
        break;
    }
    const auto &x = a.args();
    const auto &y = b.args();
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare_terms(x[i], y[i]);
        if (c != 0)
            return c;
    }
    if (x.size() != y.size())
        return x.size() < y.size() ? -1 : 1;
    return 0;
}

namespace {

Term rebuild(const Term &t, std::vector<Term> args)
{
    switch (t.kind()) {
    case Kind::Add: return Term::add(std::move(args));
    case Kind::Mul: return Term::mul(std::move(args));
    case Kind::Recip: return Term::recip(std::move(args[0]));
    case Kind::Pow: return Term::pow(std::move(args[0]), t.exponent());
    case Kind::Exp: return Term::exp(std::move(args[0]));
    case Kind::Log: return Term::log(std::move(args[0]));
    default: return t;
    }
}

template <class Pred, class Leaf>
Term replace_leaves(const Term &f, Pred relevant, Leaf leaf,
                    std::unordered_map<const Node *, Term> &memo)
{
    if (!relevant(f))
        return f;
    if (f.args().empty())
        return leaf(f);
    auto it = memo.find(f.node());
    if (it != memo.end())
        return it->second;
    std::vector<Term> args;
    args.reserve(f.args().size());
    for (const Term &a : f.args())
        args.push_back(replace_leaves(a, relevant, leaf, memo));
    Term r = rebuild(f, std::move(args));
    memo.emplace(f.node(), r);
    return r;
}

} // namespace

Term substitute(const Term &f, const Term &g)
{
    std::unordered_map<const Node *, Term> memo;
    return replace_leaves(
        f, [](const Term &t) { return t.has_x(); },
        [&](const Term &t) { return t.is(Kind::X) ? g : t; }, memo);
}

Term substitute_var(const Term &f, int id, const Term &g)
{
    std::unordered_map<const Node *, Term> memo;
    return replace_leaves(
        f, [id](const Term &t) { return t.has_var(id); },
        [&](const Term &t) { return (t.is(Kind::Var) && t.var_id() == id) ? g : t; }, memo);
}

std::string var_name(int id)
{
    switch (id) {
    case kVarW: return "w";
    case kVarUnit: return "u";
    default: return "v" + std::to_string(id);
    }
}

Term exp_n(int n, Term t)
{
    for (int i = 0; i < n; ++i)
        t = Term::exp(std::move(t));
    return t;
}

Term log_n(int n, Term t)
{
    for (int i = 0; i < n; ++i)
        t = Term::log(std::move(t));
    return t;
}

} // namespace germ
