#pragma once

#include "germ/asymptotics.hpp"
#include "germ/domain.hpp"
#include "germ/lchart.hpp"
#include "germ/oracle.hpp"
#include "germ/selftest.hpp"

#include <nlohmann/json.hpp>

namespace germcalc {

using nlohmann::json;

json ext_json(const germ::ExtInt &v);
json term_ast(const germ::Term &t);
json limit_json(const germ::LimitValue &v);
json eh_json(const germ::EhValue &v);
json monomial_json(const germ::MonomialNF &m);
json report_json(const germ::CheckReport &r);
json estimate_json(const germ::OracleEstimate &e);
json criterion_json(const germ::CriterionResult &r);

// Missing keys keep their defaults; unknown keys are rejected.
germ::CheckParams params_from_json(const json &j, germ::CheckParams base = {});
json params_json(const germ::CheckParams &p);

// key: value lines for --plain
std::string plain_text(const json &payload);

} // namespace germcalc
