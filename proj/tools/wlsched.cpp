// Command-line front end: analyze, schedule, reduce, simulate, gantt.
//
// Exit codes: 0 feasible / ok, 1 infeasible verdict (or deadline misses in
// simulate), 2 invalid input.

#include "wlsched/canonical.hpp"
#include "wlsched/feasibility.hpp"
#include "wlsched/reduction.hpp"
#include "wlsched/render.hpp"
#include "wlsched/sim.hpp"
#include "wlsched/taskset_io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

using namespace wlsched;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInvalid = 2;

struct Options {
    std::string file;
    std::string interval = "unit";
    std::string arrivals = "periodic";
    std::string jitter = "0";
    std::uint64_t seed = 1;
    std::int64_t horizon = 0;
    std::string executor = "canonical";
    std::string format = "text";
    int residual_processors = -1;
    int columns = 64;
};

IntervalKind interval_of(const Options& o) {
    return o.interval == "gcd" ? IntervalKind::PeriodGcd : IntervalKind::Unit;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (o.format == f) return;
    throw InvalidInput("--format " + o.format + " is not available for this command");
}

int analyze(const Options& o) {
    require_format(o, {"text", "json"});
    const auto system = parse_taskset(o.file);
    try {
        const auto verdict = check_feasibility(system);
        const auto min_m = min_processors(system.tasks());
        std::cout << (o.format == "json" ? render::analysis_json(system, verdict, min_m)
                                         : render::analysis_text(system, verdict, min_m));
        return verdict.feasible ? kOk : kInfeasible;
    } catch (const InfeasibleTasksError& e) {
        std::cout << (o.format == "json" ? render::infeasible_tasks_json(e) : render::infeasible_tasks_text(e));
        return kInfeasible;
    }
}

// Prints the certificate or the inherent-infeasibility report and returns
// nullopt when there is no pattern.
std::optional<SchedulePattern> pattern_or_report(const TaskSystem& system, const Options& o) {
    try {
        auto outcome = build_canonical(system, interval_of(o));
        if (auto* cert = std::get_if<InfeasibleCertificate>(&outcome)) {
            std::cout << (o.format == "json" ? render::certificate_json(*cert) : render::certificate_text(*cert));
            return std::nullopt;
        }
        return std::get<SchedulePattern>(std::move(outcome));
    } catch (const InfeasibleTasksError& e) {
        std::cout << (o.format == "json" ? render::infeasible_tasks_json(e) : render::infeasible_tasks_text(e));
        return std::nullopt;
    }
}

int schedule(const Options& o) {
    require_format(o, {"text", "json", "csv"});
    const auto system = parse_taskset(o.file);
    auto pattern = pattern_or_report(system, o);
    if (!pattern) return kInfeasible;
    if (o.format == "json") std::cout << render::schedule_json(*pattern);
    else if (o.format == "csv") std::cout << render::schedule_csv(*pattern);
    else std::cout << render::schedule_text(system, *pattern);
    return kOk;
}

int gantt(const Options& o) {
    require_format(o, {"text", "svg"});
    const auto system = parse_taskset(o.file);
    auto pattern = pattern_or_report(system, o);
    if (!pattern) return kInfeasible;
    std::cout << (o.format == "svg" ? render::gantt_svg(system, *pattern)
                                    : render::gantt_text(system, *pattern, o.columns));
    return kOk;
}

int reduce_cmd(const Options& o) {
    require_format(o, {"text", "json"});
    const auto system = parse_taskset(o.file);
    try {
        const auto reduced = reduce(system);
        const std::int64_t available =
            o.residual_processors >= 0 ? o.residual_processors : reduced.residual_processors;
        const auto us_half = edf_us_half_test(reduced, available);
        std::cout << (o.format == "json" ? render::reduction_json(reduced, us_half)
                                         : render::reduction_text(system, reduced, us_half));
        return kOk;
    } catch (const InfeasibleSystemError& e) {
        std::cout << (o.format == "json" ? render::certificate_json({e.verdict().load, e.verdict().capacity, e.verdict().margin})
                                         : render::certificate_text({e.verdict().load, e.verdict().capacity, e.verdict().margin}));
        return kInfeasible;
    } catch (const InfeasibleTasksError& e) {
        std::cout << (o.format == "json" ? render::infeasible_tasks_json(e) : render::infeasible_tasks_text(e));
        return kInfeasible;
    }
}

int simulate(const Options& o) {
    require_format(o, {"text", "json", "csv"});
    const auto system = parse_taskset(o.file);
    ArrivalModel model;
    model.kind = o.arrivals == "sporadic" ? ArrivalKind::SporadicUniformJitter : ArrivalKind::SynchronousPeriodic;
    model.jitter_bound = Rat::parse(o.jitter);
    model.seed = o.seed;
    const Rat horizon = o.horizon > 0 ? Rat(o.horizon) : default_horizon(system);
    const auto arrivals = generate_arrivals(system, model, horizon);
    SimOptions sim_options;
    sim_options.record_trace = o.format == "csv";

    SimReport report;
    try {
        if (o.executor == "canonical") {
            auto pattern = pattern_or_report(system, o);
            if (!pattern) return kInfeasible;
            report = simulate_pattern(system, *pattern, arrivals, horizon, sim_options);
        } else {
            const auto plan = build_reduced_schedule_plan(system);
            const auto executor = o.executor == "reduced" ? ResidualExecutor::Canonical
                                  : o.executor == "edf"   ? ResidualExecutor::Edf
                                                          : ResidualExecutor::EdfUsHalf;
            std::optional<int> pool;
            if (o.residual_processors >= 0) pool = o.residual_processors;
            report = simulate_reduced(system, plan, executor, arrivals, horizon, sim_options, pool);
        }
    } catch (const InfeasibleSystemError& e) {
        std::cout << render::certificate_text({e.verdict().load, e.verdict().capacity, e.verdict().margin});
        return kInfeasible;
    } catch (const InfeasibleTasksError& e) {
        std::cout << render::infeasible_tasks_text(e);
        return kInfeasible;
    }
    if (o.format == "json") std::cout << render::sim_json(report);
    else if (o.format == "csv") std::cout << trace_csv(report);
    else std::cout << render::sim_text(system, report);
    return report.deadline_misses.empty() ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feasibility analysis, canonical scheduling and simulation of sporadic task systems "
                 "with work-limited job parallelism"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", o.file, "Task-set document (JSON)")->required();
        cmd->add_option("--format", o.format, "Output format: text|json|csv|svg");
    };
    auto add_interval = [&](CLI::App* cmd) {
        cmd->add_option("--interval", o.interval, "Pattern interval: unit|gcd")
            ->check(CLI::IsMember({"unit", "gcd"}));
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "Per-task u, k, ell, lambda and the exact feasibility verdict");
    add_common(analyze_cmd);
    auto* schedule_cmd = app.add_subcommand("schedule", "Canonical schedule pattern or infeasibility certificate");
    add_common(schedule_cmd);
    add_interval(schedule_cmd);
    auto* reduce_sub = app.add_subcommand("reduce", "Static processor map and residual sequential tasks");
    add_common(reduce_sub);
    reduce_sub->add_option("--residual-processors", o.residual_processors,
                           "Processors available to the residual tasks for the EDF-US[1/2] test (default m')");
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a schedule against an arrival sequence");
    add_common(simulate_cmd);
    add_interval(simulate_cmd);
    simulate_cmd->add_option("--arrivals", o.arrivals, "periodic|sporadic")
        ->check(CLI::IsMember({"periodic", "sporadic"}));
    simulate_cmd->add_option("--jitter", o.jitter, "Maximum extra inter-arrival delay (decimal)");
    simulate_cmd->add_option("--seed", o.seed, "Seed for sporadic arrivals");
    simulate_cmd->add_option("--horizon", o.horizon, "Simulated time (default 10 hyperperiods)");
    simulate_cmd->add_option("--executor", o.executor, "canonical|reduced|edf|edf-us-half")
        ->check(CLI::IsMember({"canonical", "reduced", "edf", "edf-us-half"}));
    simulate_cmd->add_option("--residual-processors", o.residual_processors,
                             "Residual pool size for the edf executors (default m')");
    auto* gantt_cmd = app.add_subcommand("gantt", "Timeline of one pattern interval as text or SVG");
    add_common(gantt_cmd);
    add_interval(gantt_cmd);
    gantt_cmd->add_option("--columns", o.columns, "Text timeline width")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (analyze_cmd->parsed()) return analyze(o);
        if (schedule_cmd->parsed()) return schedule(o);
        if (reduce_sub->parsed()) return reduce_cmd(o);
        if (simulate_cmd->parsed()) return simulate(o);
        if (gantt_cmd->parsed()) return gantt(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
