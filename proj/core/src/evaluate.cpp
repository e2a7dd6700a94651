#include "germ/evaluate.hpp"

#include <unordered_map>

namespace germ {

namespace {

struct Evaluator {
    const Interval &x;
    mpfr_prec_t prec;
    const VarValues *vars;
    std::unordered_map<const Node *, Interval> memo;

    Interval run(const Term &t)
    {
        if (t.args().size() > 0) {
            auto it = memo.find(t.node());
            if (it != memo.end())
                return it->second;
        }
        Interval r = compute(t);
        if (t.args().size() > 0)
            memo.emplace(t.node(), r);
        return r;
    }

    Interval compute(const Term &t)
    {
        switch (t.kind()) {
        case Kind::Const:
            return Interval::from_constant(t.value(), prec);
        case Kind::X:
            return x;
        case Kind::Var: {
            if (!vars)
                throw NumericFailure("unbound variable " + var_name(t.var_id()));
            auto it = vars->find(t.var_id());
            if (it == vars->end())
                throw NumericFailure("unbound variable " + var_name(t.var_id()));
            return it->second;
        }
        case Kind::Add: {
            Interval acc = run(t.arg(0));
            for (std::size_t i = 1; i < t.args().size(); ++i)
                acc = add(acc, run(t.arg(i)));
            return acc;
        }
        case Kind::Mul: {
            Interval acc = run(t.arg(0));
            for (std::size_t i = 1; i < t.args().size(); ++i)
                acc = mul(acc, run(t.arg(i)));
            return acc;
        }
        case Kind::Recip:
            return div(Interval::from_rational(1, prec), run(t.arg()));
        case Kind::Pow:
            return pow(run(t.arg()), t.exponent());
        case Kind::Exp:
            return exp(run(t.arg()));
        case Kind::Log:
            return log(run(t.arg()));
        }
        throw NumericFailure("unknown node");
    }
};

} // namespace

Interval eval_interval(const Term &t, const Interval &x, mpfr_prec_t prec, const VarValues *vars)
{
    Evaluator ev{x, prec, vars, {}};
    return ev.run(t);
}

Interval probe_point(int j, mpfr_prec_t prec)
{
    return exp_iter(j, Interval::from_rational(10, prec));
}

} // namespace germ
