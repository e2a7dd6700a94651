#include "json_io.hpp"

#include "germ/error.hpp"
#include "germ/simplify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace germ;
using germcalc::json;

namespace {

struct Globals {
    long precision = 256;
    long max_precision = 4096;
    bool plain = false;
    std::uint64_t seed = 1;
    std::string params_file;
    std::string dump_file;
};

struct Args {
    std::string f, g, h, u, g1, g2, r, eps, path, corpus, only;
    int a = 0, b = 0, c = 0;
    double radius = 1.0;
    int max_k = 2, max_nu = 8;
};

using Action = std::function<json()>;

CLI::App *leaf(CLI::App &parent, const std::string &name, const std::string &desc, Action &slot, Action fn)
{
    CLI::App *s = parent.add_subcommand(name, desc);
    s->callback([&slot, fn] { slot = fn; });
    return s;
}

std::vector<LPoint> parse_path(const std::string &text)
{
    std::vector<LPoint> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        double u, v;
        char comma;
        std::istringstream is(item);
        if (!(is >> u >> comma >> v) || comma != ',')
            throw CLI::ValidationError("--path", "expected 'logmod,arg;logmod,arg;...'");
        out.push_back({u, v});
    }
    if (out.empty())
        throw CLI::ValidationError("--path", "empty path");
    return out;
}

void dump_trace(const std::string &file, const CheckReport &r)
{
    if (file.empty())
        return;
    std::ofstream out(file);
    if (!out)
        fail(ErrorCode::InvalidArgument, "cannot write " + file);
    out << "logmod,arg,image_logmod,image_arg\n";
    out.precision(17);
    for (const auto &[x, y] : r.trace)
        out << x.logmod << ',' << x.arg << ',' << y.logmod << ',' << y.arg << '\n';
}

json error_json(const Error &e)
{
    return json{{"status", "error"}, {"error", {{"code", e.code_name()}, {"message", e.what()}}}};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"germcalc: asymptotics of exp-log germs at +infinity"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals G;
    Args A;
    app.add_option("--precision", G.precision, "working precision in bits")->check(CLI::Range(64L, 1L << 20));
    app.add_option("--max-precision", G.max_precision, "precision ceiling in bits")
        ->check(CLI::Range(64L, 1L << 22));
    app.add_flag("--plain", G.plain, "plain text instead of JSON");
    app.add_option("--seed", G.seed, "seed for randomized checks");
    app.add_option("--params", G.params_file, "check parameters as JSON")->check(CLI::ExistingFile);
    app.add_option("--dump", G.dump_file, "write sampled points of a check as CSV");

    Action action;
    std::unique_ptr<Asymptotics> engine;
    auto eng = [&]() -> Asymptotics & {
        if (!engine) {
            EngineOptions o;
            o.precision = G.precision;
            o.max_precision = std::max(G.max_precision, G.precision);
            engine = std::make_unique<Asymptotics>(o);
        }
        return *engine;
    };
    auto P = [&](const std::string &s) { return parse(s); };
    auto params = [&] {
        CheckParams p;
        p.precision_bits = G.precision;
        p.max_precision_bits = std::max(G.max_precision, G.precision);
        p.seed = G.seed;
        if (!G.params_file.empty()) {
            std::ifstream in(G.params_file);
            p = germcalc::params_from_json(json::parse(in), p);
        }
        return p;
    };
    auto expr = [](CLI::App *s, std::string &slot, const char *name = "expr") {
        s->add_option(name, slot, "exp-log term in x")->required();
        return s;
    };

    expr(leaf(app, "parse", "parse and print the syntax tree", action,
              [&] {
                  Term t = P(A.f);
                  return json{{"term", format(t)},
                              {"ast", germcalc::term_ast(t)},
                              {"size", t.size()},
                              {"depth", t.depth()},
                              {"tower_height", t.tower_height()}};
              }),
         A.f);
    expr(leaf(app, "simplify", "rewrite to normal form", action,
              [&] { return json{{"simplified", format(simplify(P(A.f)))}}; }),
         A.f);
    expr(leaf(app, "limit", "limit at +infinity", action,
              [&] { return json{{"limit", germcalc::limit_json(eng().limit(P(A.f)))}}; }),
         A.f);
    {
        CLI::App *s = leaf(app, "cmp", "dominance of f against g", action, [&] {
            Comparison c = eng().compare(P(A.f), P(A.g));
            json j{{"dominance", dominance_symbol(c.verdict)}};
            if (c.ratio)
                j["ratio_limit"] = germcalc::limit_json(*c.ratio);
            return j;
        });
        expr(s, A.f, "f");
        expr(s, A.g, "g");
    }
    expr(leaf(app, "lm", "leading monomial", action,
              [&] {
                  LeadingMonomial m = eng().lm(P(A.f));
                  return json{{"coefficient", germcalc::limit_json(m.coefficient)},
                              {"coefficient_term", format(m.coefficient_term)},
                              {"monomial", germcalc::monomial_json(m.monomial)}};
              }),
         A.f);
    expr(leaf(app, "classify", "germ class", action,
              [&] { return json{{"class", germ_class_name(eng().classify(P(A.f)))}}; }),
         A.f);
    expr(leaf(app, "level", "level of growth", action,
              [&] { return json{{"level", germcalc::ext_json(eng().level(P(A.f)))}}; }),
         A.f);
    expr(leaf(app, "eh", "exponential height", action,
              [&] { return json{{"eh", germcalc::eh_json(eng().eh(P(A.f)))}}; }),
         A.f);
    expr(leaf(app, "alevel", "angular level", action, [&] { return json{{"alevel", eng().alevel(P(A.f))}}; }),
         A.f);
    expr(leaf(app, "decompose", "purely infinite plus bounded part", action,
              [&] {
                  UBSplit s = eng().decompose_UB(P(A.f));
                  return json{{"purely_infinite", format(s.purely_infinite)}, {"bounded", format(s.bounded)}};
              }),
         A.f);
    expr(leaf(app, "components", "eh-graded components", action,
              [&] {
                  json out = json::array();
                  for (const auto &[k, t] : eng().eh_components(P(A.f)))
                      out.push_back({{"eh", germcalc::ext_json(k)}, {"term", format(t)}});
                  return json{{"components", out}};
              }),
         A.f);
    expr(leaf(app, "simple", "whether eh equals level", action,
              [&] {
                  std::optional<bool> s = eng().is_simple(P(A.f));
                  return json{{"simple", s ? json(*s) : json(nullptr)}};
              }),
         A.f);
    {
        CLI::App *s = leaf(app, "inv-eh-bound", "bound on eh(g o f^-1)", action,
                           [&] { return json{{"bound", inverse_eh_bound(A.a, A.b, A.c)}}; });
        s->add_option("eh_g", A.a)->required();
        s->add_option("eh_f", A.b)->required();
        s->add_option("level_f", A.c)->required();
    }
    leaf(app, "inv-level", "level of the compositional inverse", action,
         [&] { return json{{"level", inverse_level(A.a)}}; })
        ->add_option("level_f", A.a)
        ->required();

    // domain arithmetic
    CLI::App *dom = app.add_subcommand("domain", "real domains U_h");
    dom->require_subcommand(1);
    {
        CLI::App *s = leaf(*dom, "class", "angular class of U_h", action, [&] {
            DomainClass c = domain_class(DomainSpec{P(A.h), A.radius}, eng());
            json j{{"class", c.k}};
            if (c.witnesses)
                j["witnesses"] = {format(c.witnesses->first), format(c.witnesses->second)};
            return j;
        });
        expr(s, A.h, "bound");
        s->add_option("--radius", A.radius, "base radius a")->check(CLI::PositiveNumber);
    }
    for (const char *name : {"nu-mr", "nu-pr"}) {
        bool mr = std::string(name) == "nu-mr";
        CLI::App *s = leaf(*dom, name, mr ? "bound of m_r(U_h)" : "bound of p_r(U_h)", action, [&, mr] {
            Rational r = parse_rational(A.r);
            return json{{"bound", format(mr ? nu_mr(P(A.h), r) : nu_pr(P(A.h), r))}};
        });
        expr(s, A.h, "bound");
        expr(s, A.r, "r");
    }
    expr(leaf(*dom, "nu-log", "class of log(U_h)", action,
              [&] {
                  NuLogClass c = nu_log_class(P(A.h), eng());
                  return json{{"class", c.cls}, {"asymptotic_form", format(c.asymptotic_form)}};
              }),
         A.h, "bound");
    expr(leaf(*dom, "nu-exp", "class of exp(U_h)", action,
              [&] { return json{{"class", nu_exp_class(P(A.h), eng())}}; }),
         A.h, "bound");
    expr(leaf(*dom, "standard", "whether U_h is standard", action,
              [&] {
                  std::optional<bool> s = is_standard(P(A.h), eng());
                  return json{{"standard", s ? json(*s) : json(nullptr)}};
              }),
         A.h, "bound");
    {
        CLI::App *s = leaf(*dom, "sandwich", "translates h(x -+ eps)", action, [&] {
            Rational e = parse_rational(A.eps);
            auto [lo, hi] = translate_sandwich(P(A.h), e, eng());
            return json{{"lower", format(lo)}, {"upper", format(hi)}};
        });
        expr(s, A.h, "bound");
        expr(s, A.eps, "eps");
    }
    expr(leaf(*dom, "angle-bounded", "whether h stays bounded", action,
              [&] { return json{{"angle_bounded", angle_bounded(P(A.h), eng())}}; }),
         A.h, "bound");

    // continuation on the Riemann surface of log
    CLI::App *cont = app.add_subcommand("continue", "sampled continuation checks in the Log-chart");
    cont->require_subcommand(1);
    {
        CLI::App *s = leaf(*cont, "eval", "continue f along a path", action, [&] {
            auto vals = eval_along_path(P(A.f), parse_path(A.path), G.precision,
                                        std::max(G.max_precision, G.precision));
            json out = json::array();
            for (const LPoint &p : vals)
                out.push_back({p.logmod, p.arg});
            return json{{"values", out}};
        });
        expr(s, A.f, "f");
        s->add_option("--path", A.path, "points 'logmod,arg;...' starting on the real axis")->required();
    }
    auto spec = [&] { return DomainSpec{P(A.h), A.radius}; };
    auto domain_opts = [&](CLI::App *s) {
        s->add_option("--bound", A.h, "domain bound h(|x|)")->required();
        s->add_option("--radius", A.radius, "base radius a")->check(CLI::PositiveNumber);
        return s;
    };
    auto check = [&](const CheckReport &r) {
        dump_trace(G.dump_file, r);
        return germcalc::report_json(r);
    };
    expr(domain_opts(leaf(*cont, "angle-positive", "sign of arg preserved", action,
                          [&] { return check(check_angle_positive(P(A.f), spec(), params())); })),
         A.f, "f");
    expr(domain_opts(leaf(*cont, "half-bounded", "f or 1/f bounded", action,
                          [&] { return check(check_half_bounded(P(A.f), spec(), params())); })),
         A.f, "f");
    expr(domain_opts(leaf(*cont, "expansive", "metric lower bound", action,
                          [&] { return check(check_expansive(P(A.f), spec(), params())); })),
         A.f, "f");
    expr(domain_opts(leaf(*cont, "dlipschitz", "contraction rate of a unit", action,
                          [&] {
                              CheckReport r = check_dlipschitz(P(A.u), spec(), params());
                              json j = check(r);
                              j["fitted_level"] = r.fitted_level;
                              return j;
                          })),
         A.u, "u");
    {
        CLI::App *s = domain_opts(leaf(*cont, "image-class", "image squeezed between g1 and g2", action,
                                       [&] {
                                           return check(check_image_class(P(A.f), spec(), P(A.g1), P(A.g2),
                                                                          params()));
                                       }));
        expr(s, A.f, "f");
        s->add_option("--g1", A.g1, "lower target bound")->required();
        s->add_option("--g2", A.g2, "upper target bound")->required();
    }
    expr(domain_opts(leaf(*cont, "unit", "d(u(x), 1) -> 0", action,
                          [&] { return check(check_unit_at_infinity(P(A.u), spec(), params())); })),
         A.u, "u");
    {
        CLI::App *s = domain_opts(leaf(*cont, "arg-distortion", "arg(f u) within [1/2, 3/2] arg(f)", action,
                                       [&] { return check(check_arg_distortion(P(A.f), P(A.u), spec(), params())); }));
        expr(s, A.f, "f");
        expr(s, A.u, "u");
    }

    // numeric oracle
    CLI::App *orc = app.add_subcommand("oracle", "brute-force numeric estimates");
    orc->require_subcommand(1);
    expr(leaf(*orc, "limit", "numeric limit", action,
              [&] { return germcalc::estimate_json(numeric_limit(P(A.f), default_grid(), G.precision)); }),
         A.f, "f");
    {
        CLI::App *s = leaf(*orc, "level", "sandwich search", action,
                           [&] { return germcalc::estimate_json(numeric_level(P(A.f), A.max_k, A.max_nu, G.precision)); });
        expr(s, A.f, "f");
        s->add_option("--max-k", A.max_k, "largest k and l")->check(CLI::Range(0, 4));
        s->add_option("--max-nu", A.max_nu, "largest nu")->check(CLI::Range(2, 64));
    }
    {
        CLI::App *s = leaf(*orc, "cmp", "numeric dominance", action, [&] {
            return germcalc::estimate_json(numeric_compare(P(A.f), P(A.g), default_grid(), G.precision));
        });
        expr(s, A.f, "f");
        expr(s, A.g, "g");
    }

    bool selftest_failed = false;
    {
        CLI::App *s = leaf(app, "selftest", "run the acceptance suite", action, [&] {
            SelftestOptions o;
            o.seed = G.seed;
            o.precision = G.precision;
            o.corpus_path = A.corpus;
            std::stringstream ss(A.only);
            std::string id;
            while (std::getline(ss, id, ','))
                if (!id.empty())
                    o.only.push_back(std::stoi(id));
            json out = json::array();
            bool all = true;
            for (const CriterionResult &r : run_selftest(o)) {
                out.push_back(germcalc::criterion_json(r));
                all = all && r.pass;
            }
            selftest_failed = !all;
            return json{{"pass", all}, {"criteria", out}};
        });
        s->add_option("--corpus", A.corpus, "oracle corpus file")->check(CLI::ExistingFile);
        s->add_option("--only", A.only, "comma-separated criterion ids");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        json payload = action();
        if (G.plain)
            std::cout << germcalc::plain_text(payload);
        else
            std::cout << payload.dump() << '\n';
        return selftest_failed ? 1 : 0;
    } catch (const CLI::ValidationError &e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const Error &e) {
        if (G.plain)
            std::cout << "error: " << e.code_name() << ": " << e.what() << '\n';
        else
            std::cout << error_json(e).dump() << '\n';
        return 1;
    } catch (const json::exception &e) {
        std::cerr << "--params: " << e.what() << '\n';
        return 2;
    }
}
