#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lip/dynamics.hpp"
#include "lip/io.hpp"
#include "lip/potential.hpp"
#include "lip/routing.hpp"
#include "lip/splittable.hpp"

using nlohmann::json;
using namespace lip;

namespace {

struct CommonOpts {
    std::string game_path;
    std::string format = "text";
    std::int64_t budget = 1'000'000;
    int max_coalition = 0;  // 0 = all players
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--game", opts.game_path, "game file (JSON)")->required();
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--budget", opts.budget, "profile enumeration budget");
    cmd->add_option("--max-coalition", opts.max_coalition,
                    "coalition size limit (0 = all players)");
}

EnumerationBudget budget_of(const CommonOpts& opts) {
    EnumerationBudget b;
    b.max_profiles = opts.budget;
    return b;
}

json profile_json(const Profile& x) { return json(x.choices); }

json costs_json(const std::vector<Rational>& costs) {
    json out = json::array();
    for (const auto& c : costs) out.push_back(format_rational(c));
    return out;
}

void emit(const json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    // Text mode: flat key-value rendering of the results block.
    std::cout << report.at("command").get<std::string>() << "\n";
    for (const auto& [key, value] : report.at("results").items())
        std::cout << "  " << key << ": " << value.dump() << "\n";
    std::cout << "  provenance: " << report.at("provenance").get<std::string>()
              << "\n";
}

LipFunction pick_function(const CongestionModel& model, const std::string& name) {
    if (name == "phi") return phi_pi(model);
    if (name == "psi") return psi_facility(model);
    if (name == "upsilon") return upsilon(model);
    throw ValidationError("unknown certificate function: " + name);
}

const CongestionModel& require_congestion(const GameFile& file) {
    if (!file.congestion)
        throw ValidationError("command needs a congestion-style game file");
    return *file.congestion;
}

json move_json(const ImprovingMove& move) {
    return {{"from", profile_json(move.from)},
            {"coalition", move.coalition},
            {"to", profile_json(move.to)}};
}

int cmd_check_lip(const CommonOpts& opts, const std::string& function) {
    GameFile file = load_game_file(opts.game_path);
    const auto& model = require_congestion(file);
    FiniteGame game = build_finite(file);
    int k = opts.max_coalition > 0 ? opts.max_coalition : game.players();

    auto verdict = verify_lip(game, pick_function(model, function), k, budget_of(opts));
    json results = {{"function", function}, {"holds", verdict.holds}};
    if (verdict.counterexample)
        results["counterexample"] = move_json(*verdict.counterexample);
    emit({{"command", "check-lip"},
          {"config", {{"game", opts.game_path}, {"max_coalition", k}}},
          {"results", results},
          {"provenance",
           "LIP definition and Thm 4.3 certificates (Harks, Klimm, Mohring: Strong "
           "Nash equilibria and the lexicographical improvement property)"}},
         opts.format);
    return 0;
}

int cmd_potential(const CommonOpts& opts, const std::string& function) {
    GameFile file = load_game_file(opts.game_path);
    const auto& model = require_congestion(file);
    FiniteGame game = build_finite(file);
    int k = opts.max_coalition > 0 ? opts.max_coalition : game.players();

    auto spec = compute_exponent(game, pick_function(model, function), k,
                                 budget_of(opts));
    json results = {{"function", function},
                    {"phi_max", format_rational(spec.phi_max)},
                    {"eps_min", format_rational(spec.eps_min)},
                    {"exponent", spec.exponent},
                    {"edgeless", spec.no_moves},
                    {"path_bound", path_bound(spec).str()}};
    emit({{"command", "potential"},
          {"config", {{"game", opts.game_path}, {"max_coalition", k}}},
          {"results", results},
          {"provenance",
           "Corollary M > log(q) phi_max / eps_min and the improvement-path bound "
           "(Thm 2.5 equivalences)"}},
         opts.format);
    return 0;
}

int cmd_dynamics(const CommonOpts& opts, const std::string& mode_name,
                 const std::string& rule_name, std::uint64_t seed,
                 std::int64_t steps) {
    GameFile file = load_game_file(opts.game_path);
    FiniteGame game = build_finite(file);

    DynamicsConfig cfg;
    cfg.max_coalition = opts.max_coalition;
    cfg.seed = seed;
    cfg.step_cap = steps;
    if (mode_name == "strict") cfg.mode = MoveMode::Strict;
    else if (mode_name == "weak-ssne") cfg.mode = MoveMode::WeakSsne;
    else throw ValidationError("unknown mode: " + mode_name);
    if (rule_name == "first") cfg.rule = SelectionRule::First;
    else if (rule_name == "best-response") cfg.rule = SelectionRule::BestResponse;
    else if (rule_name == "random") cfg.rule = SelectionRule::Random;
    else throw ValidationError("unknown selection rule: " + rule_name);

    Profile x0;
    x0.choices.assign(game.players(), 0);
    auto report = run(game, x0, cfg);

    const char* terminal = report.classification == TerminalKind::Sne ? "SNE"
                           : report.classification == TerminalKind::Ssne ? "SSNE"
                           : report.classification == TerminalKind::NoMove
                               ? "no-move"
                               : "step-cap";
    json path = json::array();
    for (const auto& x : report.path) path.push_back(profile_json(x));
    emit({{"command", "dynamics"},
          {"config",
           {{"game", opts.game_path},
            {"mode", mode_name},
            {"rule", rule_name},
            {"seed", seed},
            {"step_cap", steps}}},
          {"results",
           {{"steps", report.steps},
            {"terminal", profile_json(report.terminal)},
            {"classification", terminal},
            {"path", path}}},
          {"provenance",
           "SFIP / finite improvement paths (Thm 2.5 and the SNE existence "
           "corollary)"}},
         opts.format);
    return 0;
}

int cmd_sne_enum(const CommonOpts& opts) {
    GameFile file = load_game_file(opts.game_path);
    FiniteGame game = build_finite(file);
    auto sne = enumerate_sne(game, budget_of(opts));
    json list = json::array();
    for (const auto& x : sne)
        list.push_back(
            {{"profile", profile_json(x)}, {"costs", costs_json(game.costs(x))}});
    emit({{"command", "sne-enum"},
          {"config", {{"game", opts.game_path}}},
          {"results", {{"count", sne.size()}, {"sne", list}}},
          {"provenance", "SNE definition (coalition enumeration, brute force)"}},
         opts.format);
    return 0;
}

int cmd_fairness(const CommonOpts& opts) {
    GameFile file = load_game_file(opts.game_path);
    FiniteGame game = build_finite(file);
    auto budget = budget_of(opts);
    auto minimizers = sorted_lex_minimizers(game, budget);
    json list = json::array();
    for (const auto& x : minimizers)
        list.push_back({{"profile", profile_json(x)},
                        {"costs", costs_json(game.costs(x))},
                        {"minmax_fair", is_minmax_fair(game, x, budget)},
                        {"strict_pareto", is_strict_pareto(game, x, budget)}});
    emit({{"command", "fairness"},
          {"config", {{"game", opts.game_path}}},
          {"results", {{"lex_minimizers", list}}},
          {"provenance",
           "Min-max fairness lemma (appendix) relating P_M minimizers and "
           "sorted-lex minima"}},
         opts.format);
    return 0;
}

int cmd_efficiency(const CommonOpts& opts, unsigned p, bool infinite) {
    GameFile file = load_game_file(opts.game_path);
    FiniteGame game = build_finite(file);
    LpNorm norm = infinite ? LpNorm::linf() : LpNorm::lp(p);
    auto budget = budget_of(opts);

    auto render = [](const EfficiencyResult& r) {
        json out = {{"optimum_zero", r.optimum_zero},
                    {"ratio", r.optimum_zero ? json("inf") : json(r.ratio)}};
        if (r.exact) out["exact"] = format_rational(*r.exact);
        return out;
    };
    emit({{"command", "efficiency"},
          {"config",
           {{"game", opts.game_path}, {"norm", infinite ? "inf" : std::to_string(p)}}},
          {"results",
           {{"strong_pos", render(strong_pos(game, norm, budget))},
            {"strong_poa", render(strong_poa(game, norm, budget))}}},
          {"provenance",
           "Strong price of stability / anarchy bounds (Thm 3.1 and the unbounded "
           "PoA example)"}},
         opts.format);
    return 0;
}

int cmd_routing(const CommonOpts& opts, bool convex) {
    GameFile file = load_game_file(opts.game_path);
    if (!file.routing) throw ValidationError("command needs a routing game file");
    const auto& inst = *file.routing;
    auto sol = convex ? sne_convex_costs(inst) : sne_identical_costs(inst);

    FiniteGame game = build_game(to_congestion_model(inst));
    json paths = json::array();
    for (const auto& p : sol.player_paths) paths.push_back(p);
    json results = {{"profile", profile_json(sol.profile)},
                    {"player_paths", paths},
                    {"arc_loads", sol.arc_loads},
                    {"player_costs", costs_json(game.costs(sol.profile))}};
    if (convex) {
        results["exponent"] = sol.exponent;
        results["potential"] = format_rational(sol.potential);
    } else {
        results["disjoint_paths"] = sol.disjoint_paths;
        results["cut_arcs"] = sol.cut_arcs;
        results["cut_certificate"] = verify_cut_certificate(inst, sol.profile);
    }
    emit({{"command", convex ? "routing sne-convex" : "routing sne-identical"},
          {"config", {{"game", opts.game_path}}},
          {"results", results},
          {"provenance",
           convex ? "Convex-cost SNE via minimal integral flow for P_M (Prop. 4.6 "
                    "proof)"
                  : "Identical-cost SNE via Edmonds-Karp max flow / min cut "
                    "(Thm 4.5 proof)"}},
         opts.format);
    return 0;
}

int cmd_splittable(const CommonOpts& opts, const std::string& alpha_text,
                   std::uint64_t seed) {
    GameFile file = load_game_file(opts.game_path);
    if (!file.splittable)
        throw ValidationError("command needs a splittable game file");
    Rational alpha = parse_rational(alpha_text);
    auto result = approx_sne(*file.splittable, alpha);

    json intensities = json::array();
    for (const auto& row : result.state.intensity) intensities.push_back(costs_json(row));
    auto screen =
        verify_alpha_unilateral(*file.splittable, result.state, alpha, 50, seed);
    json results = {{"intensities", intensities},
                    {"exponent", result.exponent},
                    {"iterations", result.iterations},
                    {"gap", result.gap},
                    {"verified", result.verified && screen.ok}};
    if (result.violation)
        results["violation"] = {{"player", result.violation->player},
                                {"current_cost", result.violation->current_cost},
                                {"best_response", result.violation->best_response_cost}};
    emit({{"command", "splittable approx"},
          {"config",
           {{"game", opts.game_path}, {"alpha", alpha_text}, {"seed", seed}}},
          {"results", results},
          {"provenance",
           "alpha-approximate SNE existence and computation (Thm 5.8 and the M(alpha) "
           "lemma)"}},
         opts.format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LIP toolchain for bottleneck congestion games"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string function = "phi";
    std::string mode = "strict";
    std::string rule = "first";
    std::string alpha = "1/10";
    std::uint64_t seed = 0;
    std::int64_t steps = 1'000'000;
    unsigned p = 1;
    bool p_inf = false;

    auto* check = app.add_subcommand("check-lip", "verify a LIP certificate");
    add_common(check, opts);
    check->add_option("--function", function, "phi | psi | upsilon");

    auto* pot = app.add_subcommand("potential", "exponent and path bound");
    add_common(pot, opts);
    pot->add_option("--function", function, "phi | psi | upsilon");

    auto* dyn = app.add_subcommand("dynamics", "run improvement dynamics");
    add_common(dyn, opts);
    dyn->add_option("--mode", mode, "strict | weak-ssne");
    dyn->add_option("--rule", rule, "first | best-response | random");
    dyn->add_option("--seed", seed, "RNG seed for --rule random");
    dyn->add_option("--steps", steps, "step cap");

    auto* sne = app.add_subcommand("sne-enum", "enumerate strong equilibria");
    add_common(sne, opts);

    auto* fair = app.add_subcommand("fairness", "min-max fairness analysis");
    add_common(fair, opts);

    auto* eff = app.add_subcommand("efficiency", "strong PoS / PoA");
    add_common(eff, opts);
    eff->add_option("--p", p, "L_p norm exponent");
    eff->add_flag("--inf", p_inf, "use the L_infinity norm");

    auto* routing = app.add_subcommand("routing", "bottleneck routing solvers");
    auto* rid = routing->add_subcommand("sne-identical", "identical arc costs");
    add_common(rid, opts);
    auto* rcv = routing->add_subcommand("sne-convex", "convex arc costs");
    add_common(rcv, opts);
    routing->require_subcommand(1);

    auto* split = app.add_subcommand("splittable", "splittable game solvers");
    auto* approx = split->add_subcommand("approx", "alpha-approximate SNE");
    add_common(approx, opts);
    approx->add_option("--alpha", alpha, "approximation level (rational)");
    approx->add_option("--seed", seed, "seed for the coalition screen");
    split->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check_lip(opts, function);
        if (pot->parsed()) return cmd_potential(opts, function);
        if (dyn->parsed()) return cmd_dynamics(opts, mode, rule, seed, steps);
        if (sne->parsed()) return cmd_sne_enum(opts);
        if (fair->parsed()) return cmd_fairness(opts);
        if (eff->parsed()) return cmd_efficiency(opts, p, p_inf);
        if (routing->parsed()) return cmd_routing(opts, rcv->parsed());
        if (split->parsed()) return cmd_splittable(opts, alpha, seed);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
