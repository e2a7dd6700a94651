#include "json_io.hpp"

#include "germ/error.hpp"

#include <sstream>

namespace germcalc {

using namespace germ;

json ext_json(const ExtInt &v)
{
    if (v.is_neg_inf())
        return "-inf";
    return v.value();
}

json term_ast(const Term &t)
{
    json j;
    j["kind"] = kind_name(t.kind());
    switch (t.kind()) {
    case Kind::Const: j["value"] = t.value().to_string(); break;
    case Kind::Var: j["var"] = var_name(t.var_id()); break;
    case Kind::Pow: j["exponent"] = to_string(t.exponent()); break;
    default: break;
    }
    if (!t.is(Kind::Const) && !t.is(Kind::X) && !t.is(Kind::Var)) {
        json args = json::array();
        for (const Term &a : t.args())
            args.push_back(term_ast(a));
        j["args"] = std::move(args);
    }
    return j;
}

json limit_json(const LimitValue &v)
{
    json j;
    switch (v.kind) {
    case LimitKind::PlusInfinity: j["kind"] = "+inf"; break;
    case LimitKind::MinusInfinity: j["kind"] = "-inf"; break;
    case LimitKind::Zero: j["kind"] = "zero"; break;
    case LimitKind::FiniteNonzero: j["kind"] = "finite"; break;
    }
    if (v.kind == LimitKind::FiniteNonzero) {
        j["sign"] = v.sign;
        j["value"] = v.approx();
        if (v.enclosure)
            j["enclosure"] = {v.enclosure->lo().to_string(25), v.enclosure->hi().to_string(25)};
        if (v.exact)
            j["exact"] = v.exact->to_string();
    }
    j["text"] = v.to_string();
    return j;
}

json eh_json(const EhValue &v)
{
    if (v.exact)
        return json{{"exact", ext_json(v.hi)}};
    return json{{"range", {ext_json(v.lo), ext_json(v.hi)}}};
}

json monomial_json(const MonomialNF &m)
{
    json logs = json::object();
    for (const auto &[k, r] : m.logs)
        logs[std::to_string(k)] = to_string(r);
    json exps = json::array();
    for (const Term &e : m.exps)
        exps.push_back(format(e));
    return json{{"text", m.to_string()}, {"log_depth", m.log_depth}, {"logs", logs}, {"exps", exps}};
}

namespace {

json point_json(const LPoint &p) { return json::array({p.logmod, p.arg}); }

// JSON has no infinities
json real(double v)
{
    if (std::isnan(v))
        return nullptr;
    if (std::isinf(v))
        return v > 0 ? "+inf" : "-inf";
    return v;
}

} // namespace

json report_json(const CheckReport &r)
{
    json w = json::array();
    for (const LPoint &p : r.witnesses)
        w.push_back(point_json(p));
    json bands = json::array();
    for (double b : r.band_statistics)
        bands.push_back(real(b));
    json j{{"verdict", verdict_name(r.verdict)},
           {"samples", r.samples},
           {"statistic_name", r.statistic_name},
           {"statistic", real(r.statistic)},
           {"band_statistics", bands},
           {"witnesses", w}};
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

json estimate_json(const OracleEstimate &e)
{
    json j;
    j["confidence"] = confidence_name(e.confidence);
    switch (e.quantity) {
    case OracleQuantity::Limit: {
        j["quantity"] = "limit";
        const char *k = e.limit_kind == LimitKind::PlusInfinity    ? "+inf"
                        : e.limit_kind == LimitKind::MinusInfinity ? "-inf"
                        : e.limit_kind == LimitKind::Zero          ? "zero"
                                                                   : "finite";
        j["kind"] = k;
        if (e.limit_kind == LimitKind::FiniteNonzero)
            j["value"] = real(e.value);
        break;
    }
    case OracleQuantity::Compare:
        j["quantity"] = "compare";
        j["dominance"] = dominance_symbol(e.dominance);
        break;
    case OracleQuantity::Level:
        j["quantity"] = "level";
        j["level"] = e.level;
        j["sandwich"] = {{"k", e.k}, {"l", e.l}, {"nu", e.nu}};
        break;
    }
    json trace = json::array();
    for (const OracleSample &s : e.trace)
        trace.push_back({{"point", s.point},
                         {"precision", s.precision},
                         {"value", s.value.empty() ? json(nullptr) : json(s.value)}});
    j["trace"] = trace;
    if (!e.note.empty())
        j["note"] = e.note;
    return j;
}

json criterion_json(const CriterionResult &r)
{
    return json{{"id", r.id},          {"name", r.name},   {"pass", r.pass},         {"seconds", r.seconds},
                {"time_limit", r.time_limit}, {"detail", r.detail}, {"failures", r.failures}};
}

CheckParams params_from_json(const json &j, CheckParams p)
{
    if (!j.is_object())
        fail(ErrorCode::InvalidArgument, "check parameters must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string &k = it.key();
        const json &v = it.value();
        if (k == "radial_span") p.radial_span = v.get<double>();
        else if (k == "n_radial") p.n_radial = v.get<int>();
        else if (k == "n_angular") p.n_angular = v.get<int>();
        else if (k == "shrink") p.shrink = v.get<double>();
        else if (k == "precision_bits") p.precision_bits = v.get<long>();
        else if (k == "max_precision_bits") p.max_precision_bits = v.get<long>();
        else if (k == "bands") p.bands = v.get<int>();
        else if (k == "pairs") p.pairs = v.get<int>();
        else if (k == "arg_cap") p.arg_cap = v.get<double>();
        else if (k == "lipschitz_level") p.lipschitz_level = v.get<int>();
        else if (k == "min_radius") p.min_radius = v.get<double>();
        else if (k == "seed") p.seed = v.get<std::uint64_t>();
        else if (k == "thresholds") {
            for (auto t = v.begin(); t != v.end(); ++t) {
                if (t.key() == "expansive_min") p.thresholds.expansive_min = t->get<double>();
                else if (t.key() == "angle_tol") p.thresholds.angle_tol = t->get<double>();
                else if (t.key() == "band_factor") p.thresholds.band_factor = t->get<double>();
                else if (t.key() == "unit_decrease") p.thresholds.unit_decrease = t->get<double>();
                else fail(ErrorCode::InvalidArgument, "unknown threshold '" + t.key() + "'");
            }
        } else {
            fail(ErrorCode::InvalidArgument, "unknown check parameter '" + k + "'");
        }
    }
    if (p.n_radial < 1 || p.n_angular < 0 || p.bands < 1 || p.bands > p.n_radial)
        fail(ErrorCode::InvalidArgument, "need n_radial >= bands >= 1 and n_angular >= 0");
    return p;
}

json params_json(const CheckParams &p)
{
    return json{{"radial_span", p.radial_span},
                {"n_radial", p.n_radial},
                {"n_angular", p.n_angular},
                {"shrink", p.shrink},
                {"precision_bits", p.precision_bits},
                {"max_precision_bits", p.max_precision_bits},
                {"bands", p.bands},
                {"pairs", p.pairs},
                {"arg_cap", p.arg_cap},
                {"lipschitz_level", p.lipschitz_level},
                {"min_radius", p.min_radius},
                {"seed", p.seed},
                {"thresholds",
                 {{"expansive_min", p.thresholds.expansive_min},
                  {"angle_tol", p.thresholds.angle_tol},
                  {"band_factor", p.thresholds.band_factor},
                  {"unit_decrease", p.thresholds.unit_decrease}}}};
}

std::string plain_text(const json &payload)
{
    std::ostringstream out;
    for (auto it = payload.begin(); it != payload.end(); ++it) {
        out << it.key() << ": ";
        if (it->is_string())
            out << it->get<std::string>();
        else
            out << it->dump();
        out << '\n';
    }
    return out.str();
}

} // namespace germcalc
