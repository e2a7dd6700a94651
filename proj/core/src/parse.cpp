#include "germ/error.hpp"
#include "germ/term.hpp"

#include <cctype>

namespace germ {

namespace {

std::string exponent_text(const Rational &r)
{
    if (sgn(r) >= 0 && is_integer(r))
        return to_string(r);
    return "(" + to_string(r) + ")";
}

bool is_numeric_literal(const Term &t)
{
    return t.is_const() && t.value().is_rational() && sgn(t.value().rational_part()) >= 0;
}

std::string fmt_expr(const Term &t);
std::string fmt_term(const Term &t);

std::string fmt_atom(const Term &t)
{
    switch (t.kind()) {
    case Kind::X:
        return "x";
    case Kind::Var:
        return var_name(t.var_id());
    case Kind::Const:
        if (is_numeric_literal(t))
            return to_string(t.value().rational_part());
        if (t.value() == ExactConstant::pi())
            return "pi";
        return "(" + t.value().to_string() + ")";
    case Kind::Exp:
        return "exp(" + fmt_expr(t.arg()) + ")";
    case Kind::Log:
        return "log(" + fmt_expr(t.arg()) + ")";
    default:
        return "(" + fmt_expr(t) + ")";
    }
}

std::string fmt_factor(const Term &t)
{
    if (t.is(Kind::Pow))
        return fmt_atom(t.arg()) + "^" + exponent_text(t.exponent());
    return fmt_atom(t);
}

std::string fmt_term(const Term &t)
{
    if (t.is(Kind::Recip))
        return "1/" + (is_numeric_literal(t.arg()) ? "(" + fmt_atom(t.arg()) + ")"
                                                     : fmt_factor(t.arg()));
    if (!t.is(Kind::Mul))
        return fmt_factor(t);
    const auto &a = t.args();
    if (a.size() == 2 && a[0].is_const(-1)) {
        if (is_numeric_literal(a[1]))
            return "-(" + fmt_atom(a[1]) + ")";
        return "-" + fmt_factor(a[1]);
    }
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Term &f = a[i];
        if (i == 0) {
            out = f.is(Kind::Recip) ? fmt_term(f) : fmt_factor(f);
            continue;
        }
        bool after_one = (i == 1 && a[0].is_const(1));
        if (f.is(Kind::Recip) && !after_one) {
            const Term &d = f.arg();
            out += "/" + (is_numeric_literal(d) ? "(" + fmt_atom(d) + ")" : fmt_factor(d));
        } else if (f.is(Kind::Recip)) {
            out += "*(" + fmt_term(f) + ")";
        } else {
            out += "*" + fmt_factor(f);
        }
    }
    return out;
}

std::string fmt_summand(const Term &t, bool first = false)
{
    if (first && t.is_const() && t.value().is_rational())
        return to_string(t.value().rational_part());
    if (t.is(Kind::Add))
        return "(" + fmt_expr(t) + ")";
    return fmt_term(t);
}

std::string fmt_expr(const Term &t)
{
    if (!t.is(Kind::Add))
        return fmt_summand(t, true);
    std::string out;
    const auto &a = t.args();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Term &s = a[i];
        if (i == 0) {
            out = fmt_summand(s, true);
        } else if (s.is(Kind::Mul) && s.args().size() == 2 && s.arg(0).is_const(-1)) {
            out += " - " + fmt_summand(s.arg(1));
        } else {
            out += " + " + fmt_summand(s);
        }
    }
    return out;
}

class Parser {
public:
    explicit Parser(const std::string &s) : s_(s) {}

    Term run()
    {
        Term t = expr();
        skip();
        if (pos_ != s_.size())
            throw SyntaxError(pos_, "unexpected '" + std::string(1, s_[pos_]) + "'");
        return t;
    }

private:
    const std::string &s_;
    std::size_t pos_ = 0;

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void expect(char c)
    {
        if (peek() != c)
            throw SyntaxError(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    Term expr()
    {
        std::vector<Term> parts{term()};
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            Term u = term();
            parts.push_back(c == '-' ? Term::mul({Term::constant(-1), u}) : u);
        }
        return parts.size() == 1 ? parts[0] : Term::add(std::move(parts));
    }

    Term term()
    {
        bool one_literal = false;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '1') {
            std::size_t j = pos_ + 1;
            one_literal = j >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[j]));
        }
        std::vector<Term> args{factor()};
        if (one_literal && !(args[0].is_const(1) && args[0].is(Kind::Const)))
            one_literal = false;
        bool first_op = true;
        for (char c = peek(); c == '*' || c == '/'; c = peek()) {
            ++pos_;
            Term f = factor();
            if (c == '/' && first_op && one_literal)
                args.clear();
            args.push_back(c == '/' ? Term::recip(f) : f);
            first_op = false;
        }
        return args.size() == 1 ? args[0] : Term::mul(std::move(args));
    }

    Term factor()
    {
        Term a = atom();
        if (peek() != '^')
            return a;
        ++pos_;
        bool paren = false;
        if (peek() == '(') {
            paren = true;
            ++pos_;
        }
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        Rational r = number();
        if (paren)
            expect(')');
        return Term::pow(a, neg ? Rational(-r) : r);
    }

    mpz_class integer()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            throw SyntaxError(pos_, "expected integer");
        return mpz_class(s_.substr(start, pos_ - start), 10);
    }

    // int or int "/" int
    Rational number()
    {
        mpz_class n = integer();
        std::size_t save = pos_;
        if (peek() == '/') {
            ++pos_;
            skip();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                mpz_class d = integer();
                if (d == 0)
                    throw SyntaxError(pos_, "zero denominator");
                Rational q(n, d);
                q.canonicalize();
                return q;
            }
            pos_ = save;
        }
        return Rational(n);
    }

    std::string ident()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }

    Term call_argument(const std::string &name)
    {
        expect('(');
        if (peek() == ')')
            throw Error(ErrorCode::ArityError, name + " expects one argument, got none");
        Term a = expr();
        if (peek() == ',')
            throw Error(ErrorCode::ArityError, name + " expects one argument");
        expect(')');
        return a;
    }

    Term atom()
    {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Term::rational(number());
        if (c == '(') {
            ++pos_;
            Term t = expr();
            expect(')');
            return t;
        }
        if (c == '-') {
            ++pos_;
            skip();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                return Term::rational(-number());
            return Term::mul({Term::constant(-1), atom()});
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            std::string id = ident();
            if (id == "x")
                return Term::x();
            if (id == "pi")
                return Term::pi();
            if (id == "exp")
                return Term::exp(call_argument(id));
            if (id == "log")
                return Term::log(call_argument(id));
            if (id == "sqrt")
                return Term::pow(call_argument(id), Rational(1, 2));
            for (const char *fn : {"exp_", "log_"}) {
                std::string p(fn);
                if (id.size() > p.size() && id.compare(0, p.size(), p) == 0) {
                    std::string digits = id.substr(p.size());
                    bool ok = digits.find_first_not_of("0123456789") == std::string::npos;
                    if (!ok || digits.size() > 3)
                        throw SyntaxError(start, "bad iterate index in '" + id + "'");
                    int n = std::stoi(digits);
                    Term a = call_argument(id);
                    return p == "exp_" ? exp_n(n, a) : log_n(n, a);
                }
            }
            throw SyntaxError(start, "unknown identifier '" + id + "'");
        }
        if (c == '\0')
            throw SyntaxError(pos_, "unexpected end of input");
        throw SyntaxError(pos_, "unexpected '" + std::string(1, c) + "'");
    }
};

} // namespace

std::string format(const Term &t) { return fmt_expr(t); }

Term parse(const std::string &text)
{
    Parser p(text);
    return p.run();
}

} // namespace germ
