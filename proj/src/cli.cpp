#include "linemarch/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "linemarch/metrics.hpp"
#include "linemarch/simulator.hpp"

namespace linemarch::cli {

namespace fs = std::filesystem;

namespace {

Scenario prepare(const CliInvocation& inv) {
    Scenario s = load_scenario(inv.scenario);
    for (const std::string& o : inv.overrides) s = apply_override(s, o);
    if (inv.seed) s.sim.rng_seed = *inv.seed;
    validate(s);
    return s;
}

std::string fmt_opt(const std::optional<double>& v, int precision = 4) {
    if (!v) return "n/a";
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << *v;
    return os.str();
}

fs::path output_dir(const CliInvocation& inv) {
    fs::path dir = inv.output_dir.empty() ? fs::path(".") : fs::path(inv.output_dir);
    fs::create_directories(dir);
    return dir;
}

void write_outputs(const fs::path& dir, const std::string& stem, const TrajectoryLog& log,
                   const MetricsReport& metrics) {
    write_log(log, (dir / (stem + ".trajectory.csv")).string(), (dir / (stem + ".obstacles.csv")).string());
    write_metrics(metrics, (dir / (stem + ".metrics.json")).string());
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

struct ControllerOutcome {
    ControllerKind kind;
    TrajectoryLog log;
    MetricsReport metrics;
    std::vector<int> stuck;
    double max_final_gap_error = 0.0;
    double max_final_gap = 0.0;
    bool line_complete = false;
};

}  // namespace

int cmd_run(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario s = prepare(inv);
        const TrajectoryLog log = run_scenario(s);
        const MetricsReport m = compute_metrics(log, s, inv.tol);
        write_outputs(output_dir(inv), s.name, log, m);
        out << s.name << ": convergence " << fmt_opt(m.convergence_time, 3) << " s"
            << ", worst robot-robot margin " << fmt_opt(m.worst_robot_robot_margin) << " m"
            << ", worst robot-obstacle margin " << fmt_opt(m.worst_robot_obstacle_margin) << " m\n";
        return kOk;
    });
}

int cmd_compare(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario base = prepare(inv);
        if (base.failures.empty()) err << "warning: scenario has no failure event\n";

        const ControllerKind kinds[] = {ControllerKind::dynamic, ControllerKind::virtual_structure,
                                        ControllerKind::fixed_chain};
        std::vector<std::future<ControllerOutcome>> jobs;
        for (ControllerKind kind : kinds) {
            Scenario s = base;
            s.controller = kind;
            s.execution = Execution::centralized;
            if (kind != ControllerKind::fixed_chain) s.fixed_order.clear();
            validate(s);
            jobs.push_back(std::async(std::launch::async, [s, kind, tol = inv.tol] {
                ControllerOutcome o{kind, run_scenario(s), {}, {}};
                o.metrics = compute_metrics(o.log, s, tol);
                o.stuck = stuck_robots(o.log, s);
                const StepFormation f = evaluate_step(o.log, o.log.steps() - 1, s);
                o.max_final_gap_error = f.max_gap_error;
                o.line_complete = !f.order.empty() && f.max_gap_error <= tol && f.lateral_spread <= tol;
                for (double e : f.gap_errors) o.max_final_gap = std::max(o.max_final_gap, e + s.march.rho);
                return o;
            }));
        }
        std::vector<ControllerOutcome> results;
        for (auto& j : jobs) results.push_back(j.get());

        const fs::path dir = output_dir(inv);
        nlohmann::json table = nlohmann::json::array();
        out << std::left << std::setw(20) << "controller" << std::setw(15) << "line_complete"
            << std::setw(8) << "stuck" << std::setw(18) << "max_gap_error" << "max_gap\n";
        for (const ControllerOutcome& o : results) {
            write_outputs(dir, base.name + "." + to_string(o.kind), o.log, o.metrics);
            out << std::left << std::setw(20) << to_string(o.kind) << std::setw(15)
                << (o.line_complete ? "yes" : "no") << std::setw(8) << o.stuck.size() << std::setw(18)
                << fmt_opt(o.max_final_gap_error) << fmt_opt(o.max_final_gap) << '\n';
            table.push_back({{"controller", to_string(o.kind)},
                             {"line_complete", o.line_complete},
                             {"stuck_robots", o.stuck},
                             {"max_final_gap_error", o.max_final_gap_error},
                             {"max_final_gap", o.max_final_gap}});
        }
        std::ofstream(dir / (base.name + ".compare.json")) << table.dump(2) << '\n';
        return kOk;
    });
}

int cmd_validate(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario s = prepare(inv);
        out << s.name << ": ok (" << s.robots.size() << " robots, " << s.sim.steps() << " steps)\n";
        return kOk;
    });
}

int cmd_list_scenarios(std::ostream& out) {
    for (const std::string& name : builtin_scenario_names()) out << name << '\n';
    return kOk;
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Dynamic leader-follower line marching simulator"};
    app.require_subcommand(1);

    CliInvocation inv;
    if (const char* env = std::getenv("LINEMARCH_OUT")) inv.output_dir = env;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("scenario_name", inv.scenario, "built-in scenario name or JSON path");
        sub->add_option("--scenario", inv.scenario, "built-in scenario name or JSON path");
        sub->add_option("--set", inv.overrides, "override a scenario field, key=value (repeatable)");
        sub->add_option("--seed", inv.seed, "noise RNG seed");
    };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", inv.output_dir, "output directory (default $LINEMARCH_OUT or .)");
        sub->add_option("--tol", inv.tol, "convergence tolerance in metres");
    };

    CLI::App* run = app.add_subcommand("run", "run one scenario and write trajectory + metrics");
    add_common(run);
    add_out(run);
    CLI::App* compare = app.add_subcommand("compare", "run dynamic, virtual structure and fixed chain side by side");
    add_common(compare);
    add_out(compare);
    CLI::App* val = app.add_subcommand("validate", "load and validate a scenario");
    add_common(val);
    app.add_subcommand("list-scenarios", "print built-in scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidationError;
    }

    CLI::App* chosen = app.get_subcommands().front();
    inv.command = chosen->get_name();
    if (inv.command == "list-scenarios") return cmd_list_scenarios(std::cout);
    if (inv.scenario.empty()) {
        std::cerr << "error: a scenario is required\n";
        return kValidationError;
    }
    if (inv.command == "run") return cmd_run(inv, std::cout, std::cerr);
    if (inv.command == "compare") return cmd_compare(inv, std::cout, std::cerr);
    return cmd_validate(inv, std::cout, std::cerr);
}

}  // namespace linemarch::cli
