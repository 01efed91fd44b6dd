// diskvolt command line: norms, Carleson profiles, growth profiles,
// criterion checks, parameter sweeps, equivalence audits.
//
// Exit codes: 0 ok, 2 parse/validation error, 3 hypothesis violation,
// 4 quadrature tolerance failure, 5 inconclusive under --strict,
// 6 audit inconsistency.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "diskvolt/operators.hpp"
#include "diskvolt/report.hpp"
#include "diskvolt/symbols.hpp"

namespace {

using namespace diskvolt;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitTolerance = 4;
constexpr int kExitStrictInconclusive = 5;
constexpr int kExitAuditInconsistent = 6;

struct Options {
    std::string symbol;
    double p = 2.0;
    double alpha = 0.0;
    double q = 4.0;
    double beta = 0.0;
    std::string space = "dirichlet";
    std::string op = "Tg";
    std::vector<std::string> modes{"bounded"};
    std::string gauge = "pow:1";
    bool from_derivative = false;
    double plain_sigma = std::numeric_limits<double>::quiet_NaN();
    double growth_t = 0.0;
    int growth_radii = 28;
    int profile_levels = 12;
    bool strict = false;
    bool corrupt_verdict = false;
    std::string out_path;
    unsigned seed = 1;

    std::string sweep_param;
    double sweep_from = 0.0;
    double sweep_to = 0.0;
    double sweep_step = 0.0;

    QuadratureConfig quad;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

OperatorKind parse_op(const std::string& name) {
    if (name == "Tg" || name == "tg") return OperatorKind::Tg;
    if (name == "Sg" || name == "sg") return OperatorKind::Sg;
    if (name == "Mg" || name == "mg") return OperatorKind::Mg;
    throw std::invalid_argument("unknown operator '" + name + "' (expected Tg, Sg or Mg)");
}

CheckMode parse_mode(const std::string& name) {
    if (name == "bounded") return CheckMode::Bounded;
    if (name == "compact") return CheckMode::Compact;
    if (name == "order" || name == "order-bounded") return CheckMode::OrderBounded;
    throw std::invalid_argument("unknown mode '" + name + "'");
}

Gauge parse_gauge(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("gauge must look like pow:<s> or log:<e>");
    const std::string kind = text.substr(0, colon);
    const double value = std::stod(text.substr(colon + 1));
    if (kind == "pow") return PowerGauge{value};
    if (kind == "log") return LogGauge{value};
    throw std::invalid_argument("unknown gauge kind '" + kind + "'");
}

void emit(const Json& payload, const Options& opt) {
    const std::string text = payload.dump(2) + "\n";
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output path " + opt.out_path);
        out << text;
    } else {
        std::cout << text;
    }
}

Json config_echo(const std::string& command, const Options& opt) {
    Json j{{"command", command},
           {"symbol", opt.symbol},
           {"p", opt.p},
           {"alpha", opt.alpha},
           {"q", opt.q},
           {"beta", opt.beta},
           {"quadrature", opt.quad},
           {"profile_levels", opt.profile_levels},
           {"seed", opt.seed},
           {"op", opt.op},
           {"modes", opt.modes},
           {"space", opt.space},
           {"gauge", opt.gauge},
           {"growth_t", opt.growth_t},
           {"growth_radii", opt.growth_radii},
           {"strict", opt.strict},
           {"from_derivative", opt.from_derivative}};
    if (!std::isnan(opt.plain_sigma)) j["plain_sigma"] = opt.plain_sigma;
    if (!opt.sweep_param.empty())
        j["sweep"] = Json{{"param", opt.sweep_param},
                          {"from", opt.sweep_from},
                          {"to", opt.sweep_to},
                          {"step", opt.sweep_step}};
    return j;
}

AnalyticFn resolve_symbol(const Options& opt, std::optional<SpaceParams> space) {
    SymbolContext ctx;
    ctx.space = space;
    return parse_symbol(opt.symbol, ctx);
}

CheckConfig make_check_config(const Options& opt) {
    CheckConfig cfg;
    cfg.quad = opt.quad;
    cfg.profile_levels = opt.profile_levels;
    cfg.growth_radii = opt.growth_radii;
    return cfg;
}

CriterionVerdict run_check(OperatorKind op, CheckMode mode, const AnalyticFn& g,
                           const SpaceParams& in, const SpaceParams& out, const CheckConfig& cfg) {
    switch (mode) {
        case CheckMode::Bounded: return check_bounded(op, g, in, out, cfg);
        case CheckMode::Compact: return check_compact(op, g, in, out, cfg);
        case CheckMode::OrderBounded: return check_order_bounded(op, g, in, out, cfg);
    }
    throw std::invalid_argument("unknown mode");
}

int cmd_norm(const Options& opt) {
    const SpaceParams sp(opt.p, opt.alpha);
    const AnalyticFn f = resolve_symbol(opt, sp);
    const NormResult res = opt.space == "bergman" ? bergman_norm(f, sp, opt.quad)
                                                  : dirichlet_norm(f, sp, opt.quad);
    Json payload{{"config", config_echo("norm", opt)}, {"space", opt.space}, {"norm", res}};
    emit(payload, opt);
    if (!res.tolerance_ok && !res.diverged) return kExitTolerance;
    return kExitOk;
}

int cmd_check(const Options& opt) {
    const SpaceParams in(opt.p, opt.alpha);
    const SpaceParams out(opt.q, opt.beta);
    const AnalyticFn g = resolve_symbol(opt, in);
    const CheckConfig cfg = make_check_config(opt);
    Json verdicts = Json::array();
    bool any_inconclusive = false;
    for (const auto& mode_name : opt.modes) {
        const CriterionVerdict v = run_check(parse_op(opt.op), parse_mode(mode_name), g, in, out, cfg);
        any_inconclusive = any_inconclusive || v.holds == Ternary::Inconclusive;
        verdicts.push_back(v);
    }
    Json payload{{"config", config_echo("check", opt)}, {"op", opt.op}, {"verdicts", verdicts}};
    emit(payload, opt);
    if (opt.strict && any_inconclusive) return kExitStrictInconclusive;
    return kExitOk;
}

int cmd_carleson(const Options& opt) {
    MeasureSpec spec = MeasureSpec::plain_weight(0.0);
    if (!std::isnan(opt.plain_sigma)) {
        spec = MeasureSpec::plain_weight(opt.plain_sigma);
    } else {
        const AnalyticFn g = resolve_symbol(opt, SpaceParams(opt.p, opt.alpha));
        spec = opt.from_derivative ? MeasureSpec::volterra_from_derivative(g, opt.q, opt.beta)
                                   : MeasureSpec::volterra(g, opt.q, opt.beta);
    }
    const Gauge gauge = parse_gauge(opt.gauge);
    const CarlesonProfile profile = carleson_profile(spec, gauge, opt.profile_levels, opt.quad);
    Json payload{{"config", config_echo("carleson", opt)},
                 {"gauge", gauge_name(gauge)},
                 {"profile", profile},
                 {"bounded", classify_carleson(profile, CarlesonMode::BoundedConstant)},
                 {"vanishing", classify_carleson(profile, CarlesonMode::Vanishing)}};
    emit(payload, opt);
    return kExitOk;
}

int cmd_growth(const Options& opt) {
    const AnalyticFn g = resolve_symbol(opt, SpaceParams(opt.p, opt.alpha));
    const GrowthProfile profile =
        classify_growth(g, opt.growth_t, opt.growth_radii, opt.quad.angular_nodes);
    Json payload{{"config", config_echo("growth", opt)}, {"t", opt.growth_t}, {"growth", profile}};
    emit(payload, opt);
    return kExitOk;
}

struct SweepRow {
    double value = 0.0;
    std::string mode;
    std::string verdict;
    double measured = 0.0;
    bool quad_ok = true;
};

int cmd_sweep(const Options& opt) {
    if (opt.sweep_param.empty() || !(opt.sweep_step > 0.0) || opt.sweep_to < opt.sweep_from)
        throw std::invalid_argument("sweep requires --sweep-param, --sweep-from <= --sweep-to and --sweep-step > 0");
    std::vector<double> grid;
    for (double v = opt.sweep_from; v <= opt.sweep_to + 0.5 * opt.sweep_step; v += opt.sweep_step)
        grid.push_back(v);
    if (grid.empty()) throw std::invalid_argument("sweep grid is empty");

    const OperatorKind op = parse_op(opt.op);
    std::vector<CheckMode> modes;
    for (const auto& m : opt.modes) modes.push_back(parse_mode(m));
    const CheckConfig cfg = make_check_config(opt);

    auto run_point = [&](double value) {
        Options point = opt;
        if (opt.sweep_param == "gamma") {
            const std::string placeholder = "@";
            std::string symbol = opt.symbol;
            const auto at = symbol.find(placeholder);
            if (at == std::string::npos)
                throw std::invalid_argument("gamma sweep requires '@' placeholder in --symbol");
            symbol.replace(at, placeholder.size(), fmt(value));
            point.symbol = symbol;
        } else if (opt.sweep_param == "p") {
            point.p = value;
        } else if (opt.sweep_param == "alpha") {
            point.alpha = value;
        } else if (opt.sweep_param == "q") {
            point.q = value;
        } else if (opt.sweep_param == "beta") {
            point.beta = value;
        } else {
            throw std::invalid_argument("unknown sweep parameter '" + opt.sweep_param + "'");
        }
        const SpaceParams in(point.p, point.alpha);
        const SpaceParams out(point.q, point.beta);
        const AnalyticFn g = resolve_symbol(point, in);
        std::vector<SweepRow> rows;
        for (std::size_t mi = 0; mi < modes.size(); ++mi) {
            const CriterionVerdict v = run_check(op, modes[mi], g, in, out, cfg);
            SweepRow row;
            row.value = value;
            row.mode = opt.modes[mi];
            row.verdict = ternary_name(v.holds);
            row.measured = v.threshold ? v.threshold->measured : 0.0;
            row.quad_ok = v.quad_ok;
            rows.push_back(row);
        }
        return rows;
    };

    std::vector<std::vector<SweepRow>> rows(grid.size());
    std::exception_ptr failure;
    const int count = static_cast<int>(grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(max_threads()) if (max_threads() > 1)
    for (int i = 0; i < count; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] = run_point(grid[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::ostringstream csv;
    csv << "schema_version,param,value,mode,verdict,measured,quad_ok\n";
    for (const auto& point : rows)
        for (const auto& row : point)
            csv << "1," << opt.sweep_param << ',' << fmt(row.value) << ',' << row.mode << ','
                << row.verdict << ',' << fmt(row.measured) << ',' << (row.quad_ok ? 1 : 0)
                << '\n';

    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output path " + opt.out_path);
        out << csv.str();
    } else {
        std::cout << csv.str();
    }

    // threshold estimates: midpoint of last holds / first fails per mode
    Json thresholds = Json::object();
    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
        std::optional<double> last_holds;
        std::optional<double> first_fails;
        int transitions = 0;
        std::string prev;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& row = rows[i][mi];
            if (row.verdict == "holds") last_holds = row.value;
            if (row.verdict == "fails" && !first_fails) first_fails = row.value;
            if (row.verdict != "inconclusive") {
                if (!prev.empty() && prev != row.verdict) ++transitions;
                prev = row.verdict;
            }
        }
        Json entry{{"transitions", transitions}};
        if (last_holds && first_fails)
            entry["estimate"] = 0.5 * (*last_holds + *first_fails);
        thresholds[opt.modes[mi]] = entry;
    }
    if (!opt.out_path.empty()) {
        Json payload{{"config", config_echo("sweep", opt)},
                     {"rows", static_cast<int>(grid.size())},
                     {"thresholds", thresholds}};
        std::cout << payload.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_audit(const Options& opt) {
    const SpaceParams in(opt.p, opt.alpha);
    const SpaceParams out(opt.q, opt.beta);
    const CheckConfig cfg = make_check_config(opt);
    Json reports = Json::array();
    bool consistent = true;
    bool first = true;
    for (const auto& [name, symbol] : builtin_symbol_battery()) {
        AuditReport report = equivalence_audit(symbol, in, out, cfg);
        if (first && opt.corrupt_verdict && !report.entries.empty()) {
            // test hook: force a wrong verdict to prove the tripwire fires
            report.entries.front().verdict = report.entries.front().verdict == Ternary::Holds
                                                 ? Ternary::Fails
                                                 : Ternary::Holds;
            report.disagreements.clear();
            for (std::size_t i = 0; i < report.entries.size(); ++i)
                for (std::size_t j = i + 1; j < report.entries.size(); ++j) {
                    const Ternary a = report.entries[i].verdict;
                    const Ternary b = report.entries[j].verdict;
                    if (a != Ternary::Inconclusive && b != Ternary::Inconclusive && a != b)
                        report.disagreements.emplace_back(report.entries[i].name,
                                                          report.entries[j].name);
                }
        }
        first = false;
        consistent = consistent && report.consistent();
        Json entry{{"symbol", name}, {"report", report}};
        reports.push_back(entry);
    }
    Json payload{{"config", config_echo("audit", opt)},
                 {"reports", reports},
                 {"consistent", consistent}};
    emit(payload, opt);
    return consistent ? kExitOk : kExitAuditInconsistent;
}

int cmd_report(const Options& opt) {
    const SpaceParams in(opt.p, opt.alpha);
    const SpaceParams out(opt.q, opt.beta);
    const AnalyticFn g = resolve_symbol(opt, in);
    const CheckConfig cfg = make_check_config(opt);
    const OperatorKind op = parse_op(opt.op);

    Json payload{{"config", config_echo("report", opt)}, {"op", opt.op}};
    payload["bergman_norm"] = bergman_norm(g, in, opt.quad);
    payload["dirichlet_norm"] = dirichlet_norm(g, in, opt.quad);
    const double t = (2.0 + in.alpha) / in.p - (2.0 + out.alpha) / out.p;
    payload["growth"] = classify_growth(g, t, opt.growth_radii, opt.quad.angular_nodes);

    Json verdicts = Json::array();
    for (CheckMode mode : {CheckMode::Bounded, CheckMode::Compact, CheckMode::OrderBounded}) {
        if (mode != CheckMode::OrderBounded && !(in.p < out.p)) continue;
        verdicts.push_back(run_check(op, mode, g, in, out, cfg));
    }
    payload["verdicts"] = verdicts;

    // lower bound over the peak kernels, monomials and a seeded random series
    std::vector<AnalyticFn> family;
    for (int k = 1; k <= 5; ++k) family.push_back(peak_kernel(Complex(1.0 - std::ldexp(1.0, -k)), in));
    for (int n : {0, 1, 2, 4}) family.push_back(AnalyticFn::monomial(n));
    std::mt19937 rng(opt.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<Complex> coeffs;
    for (int k = 0; k <= 16; ++k) coeffs.emplace_back(uni(rng), uni(rng));
    family.push_back(AnalyticFn::series(coeffs));
    payload["opnorm_lower_bound"] = opnorm_lower_bound(op, g, in, out, family, cfg);

    emit(payload, opt);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for Volterra-type operators on weighted Dirichlet spaces"};
    app.require_subcommand(1);
    // config keys live under a [<subcommand>] section; flags override
    app.set_config("--config");

    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->fallthrough();
        cmd->add_option("--symbol", opt.symbol, "symbol string, e.g. pow(a=1,gamma=0.5)");
        cmd->add_option("--p", opt.p, "source space integrability exponent");
        cmd->add_option("--alpha", opt.alpha, "source space weight exponent");
        cmd->add_option("--q", opt.q, "target space integrability exponent");
        cmd->add_option("--beta", opt.beta, "target space weight exponent");
        cmd->add_option("--levels", opt.quad.radial_levels, "radial dyadic levels");
        cmd->add_option("--nodes", opt.quad.nodes_per_annulus, "radial nodes per annulus");
        cmd->add_option("--angular", opt.quad.angular_nodes, "base angular node budget");
        cmd->add_option("--panel-nodes", opt.quad.panel_nodes, "nodes per angular panel");
        cmd->add_option("--abs-tol", opt.quad.abs_tol, "absolute tolerance");
        cmd->add_option("--rel-tol", opt.quad.rel_tol, "relative tolerance");
        cmd->add_option("--profile-levels", opt.profile_levels, "Carleson profile depth");
        cmd->add_option("--seed", opt.seed, "seed for randomized test families");
        cmd->add_option("--out", opt.out_path, "write the report to this path");
    };

    CLI::App* norm = app.add_subcommand("norm", "Bergman/Dirichlet norm of a symbol");
    add_common(norm);
    norm->add_option("--space", opt.space, "bergman or dirichlet")
        ->check(CLI::IsMember({"bergman", "dirichlet"}));

    CLI::App* check = app.add_subcommand("check", "criterion verdict for an operator");
    add_common(check);
    check->add_option("--op", opt.op, "Tg, Sg or Mg");
    check->add_option("--mode", opt.modes, "bounded, compact, order")->delimiter(',');
    check->add_flag("--strict", opt.strict, "exit 5 when any verdict is inconclusive");

    CLI::App* carleson = app.add_subcommand("carleson", "Carleson square profile of a measure");
    add_common(carleson);
    carleson->add_option("--gauge", opt.gauge, "pow:<s> or log:<e>");
    carleson->add_flag("--from-derivative", opt.from_derivative,
                       "treat --symbol as g' rather than g");
    carleson->add_option("--plain", opt.plain_sigma, "use the plain weight (1-|z|^2)^sigma");

    CLI::App* growth = app.add_subcommand("growth", "radial growth profile of a symbol");
    add_common(growth);
    growth->add_option("--t", opt.growth_t, "weight exponent t in |g(z)|(1-|z|^2)^t");
    growth->add_option("--radii", opt.growth_radii, "number of dyadic radii");

    CLI::App* sweep = app.add_subcommand("sweep", "verdicts along a parameter grid (CSV)");
    add_common(sweep);
    sweep->add_option("--op", opt.op, "Tg, Sg or Mg");
    sweep->add_option("--mode", opt.modes, "bounded, compact, order")->delimiter(',');
    sweep->add_option("--sweep-param", opt.sweep_param, "gamma, p, alpha, q or beta");
    sweep->add_option("--sweep-from", opt.sweep_from, "grid start");
    sweep->add_option("--sweep-to", opt.sweep_to, "grid end");
    sweep->add_option("--sweep-step", opt.sweep_step, "grid step");

    CLI::App* audit = app.add_subcommand("audit", "equivalence audit over the built-in battery");
    add_common(audit);
    audit->add_flag("--corrupt-verdict", opt.corrupt_verdict)->group("");  // test hook

    CLI::App* report = app.add_subcommand("report", "combined report for one symbol");
    add_common(report);
    report->add_option("--op", opt.op, "Tg, Sg or Mg");
    report->add_option("--radii", opt.growth_radii, "number of dyadic radii");

    try {
        app.parse(argc, argv);
        opt.quad.validate();
        if (norm->parsed()) return cmd_norm(opt);
        if (check->parsed()) return cmd_check(opt);
        if (carleson->parsed()) return cmd_carleson(opt);
        if (growth->parsed()) return cmd_growth(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (audit->parsed()) return cmd_audit(opt);
        if (report->parsed()) return cmd_report(opt);
        return kExitParse;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    } catch (const HypothesisViolation& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const SymbolParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}
