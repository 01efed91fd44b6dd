#include "diskvolt/report.hpp"

namespace diskvolt {

void to_json(Json& j, const NormResult& r) {
    j = Json{{"value", r.value},
             {"error", r.error_estimate},
             {"diverged", r.diverged},
             {"tolerance_ok", r.tolerance_ok},
             {"profile", r.level_profile}};
}

void to_json(Json& j, const IntegralResult& r) {
    j = Json{{"value", r.value},
             {"error", r.error_estimate},
             {"diverged", r.diverged},
             {"tolerance_ok", r.tolerance_ok},
             {"profile", r.level_profile},
             {"boundary_sliver", r.boundary_sliver}};
}

void to_json(Json& j, const QuadratureConfig& cfg) {
    j = Json{{"radial_levels", cfg.radial_levels},
             {"nodes_per_annulus", cfg.nodes_per_annulus},
             {"angular_nodes", cfg.angular_nodes},
             {"panel_nodes", cfg.panel_nodes},
             {"abs_tol", cfg.abs_tol},
             {"rel_tol", cfg.rel_tol},
             {"singular_angles", cfg.singular_angles}};
}

void to_json(Json& j, const LevelStat& s) {
    j = Json{{"l", s.level},
             {"sup", s.sup},
             {"argmax_angle", s.argmax_angle},
             {"error", s.error},
             {"quad_ok", s.quad_ok}};
}

void to_json(Json& j, const CarlesonProfile& p) {
    j = Json{{"gauge", gauge_name(p.gauge)},
             {"levels", p.levels},
             {"slope", p.slope},
             {"sup_overall", p.sup_overall},
             {"fit_levels", p.fit_levels}};
}

void to_json(Json& j, const CarlesonClassification& c) {
    j = Json{{"mode", c.mode == CarlesonMode::BoundedConstant ? "bounded-constant" : "vanishing"},
             {"holds", ternary_name(c.holds)},
             {"slope", c.slope},
             {"first_sup", c.first_sup},
             {"last_sup", c.last_sup}};
}

void to_json(Json& j, const GrowthProfile& p) {
    j = Json{{"exponent_t", p.exponent_t},
             {"radii", p.radii},
             {"values", p.values},
             {"slope", p.slope},
             {"trend", growth_trend_name(p.trend)}};
}

void to_json(Json& j, const NamedIntegral& e) {
    j = Json{{"name", e.name},
             {"finite", ternary_name(e.finite)},
             {"value", e.value},
             {"decay", std::isfinite(e.decay) ? Json(e.decay) : Json("inf")},
             {"diverged", e.diverged},
             {"tolerance_ok", e.tolerance_ok}};
}

void to_json(Json& j, const CriterionVerdict& v) {
    j = Json{{"operator", operator_name(v.op)},
             {"mode", check_mode_name(v.mode)},
             {"regime", regime_name(v.regime)},
             {"criterion", v.criterion},
             {"holds", ternary_name(v.holds)},
             {"quad_ok", v.quad_ok}};
    if (v.threshold)
        j["threshold"] = Json{{"predicted", v.threshold->predicted},
                              {"measured", v.threshold->measured}};
    Json evidence = Json::object();
    if (v.carleson_evidence) evidence["carleson"] = *v.carleson_evidence;
    if (v.growth_evidence) evidence["growth"] = *v.growth_evidence;
    if (!v.integral_evidence.empty()) evidence["integrals"] = v.integral_evidence;
    j["evidence"] = evidence;
}

void to_json(Json& j, const AuditReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back(Json{{"name", e.name}, {"verdict", ternary_name(e.verdict)}});
    Json disagreements = Json::array();
    for (const auto& [a, b] : r.disagreements)
        disagreements.push_back(Json{{"first", a}, {"second", b}});
    j = Json{{"chain", audit_chain_name(r.chain)},
             {"entries", entries},
             {"disagreements", disagreements},
             {"consistent", r.consistent()}};
}

}  // namespace diskvolt
