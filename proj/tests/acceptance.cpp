// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"

#include "wlsched/canonical.hpp"
#include "wlsched/feasibility.hpp"
#include "wlsched/reduction.hpp"
#include "wlsched/sim.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace wlsched;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

SchedulePattern pattern_of(const TaskSystem& s, IntervalKind kind) {
    return std::get<SchedulePattern>(build_canonical(s, kind));
}

Outcome worked_example() {
    const auto start = Clock::now();
    const auto s = fixtures::two_tasks();
    Outcome o;
    const bool ks = std::get<int>(compute_k(s.task(1))) == 1 && std::get<int>(compute_k(s.task(2))) == 0;
    const auto p = pattern_of(s, IntervalKind::Unit);
    using Row = std::vector<Segment>;
    const bool listing = p.processors() == 3 && p.interval_length == 1 &&
                         p.per_processor[2] == Row{{Rat(0), Rat(3, 4), 2}, {Rat(3, 4), Rat(1), 1}} &&
                         p.per_processor[1] == Row{{Rat(0), Rat(1), 1}} &&
                         p.per_processor[0] == Row{{Rat(0), Rat(3, 4), 1}};
    const double t = seconds_since(start);
    o.pass = ks && listing && t < 1.0;
    std::ostringstream d;
    d << "k=(" << (ks ? "1, 0" : "wrong") << "), listing " << (listing ? "exact" : "differs") << ", " << t << " s";
    o.detail = d.str();
    return o;
}

Outcome ratio_counterexample() {
    const auto v = validate_profile(fixtures::profile({"1.0", "1.1", "1.2", "1.3", "4.9"}));
    bool cited = false;
    for (const auto& x : v.violations)
        cited = cited || (x.constraint == ProfileConstraint::SubLinearSpeedup && x.lower == 4 && x.upper == 5);
    bool rejected = false;
    try {
        TaskSystem({Task{"x", 1, 2, fixtures::profile({"1.0", "1.1", "1.2", "1.3", "4.9"})}}, 5);
    } catch (const ProfileError&) {
        rejected = true;
    }
    return {!v.ok() && cited && rejected,
            std::string(rejected ? "rejected" : "accepted") + (cited ? ", ratio violation at (4, 5)" : ", (4, 5) not cited")};
}

Outcome exact_bound_vs_oracle() {
    const auto start = Clock::now();
    gen::Rng rng(20261016);
    gen::SystemShape shape;  // n <= 3, m <= 3, T in {2, 3, 4}, quarter-grid rates
    int agree = 0, explained = 0, unexplained = 0, feasible = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = gen::random_system(rng, shape);
        bool exact = false;
        try {
            exact = check_feasibility(s).feasible;
        } catch (const InfeasibleTasksError&) {
            exact = false;
        }
        if (exact) ++feasible;
        const bool coarse = oracle::exhaustive_feasible(s, 8);
        if (coarse == exact) {
            ++agree;
        } else if (!coarse && exact && oracle::exhaustive_feasible(s, 16)) {
            ++explained;
        } else {
            ++unexplained;
        }
    }
    const double t = seconds_since(start);
    std::ostringstream d;
    d << feasible << "/200 feasible, " << agree << " agree, " << explained << " quantization, " << unexplained
      << " unexplained, " << t << " s";
    return {unexplained == 0 && t < 300, d.str()};
}

Outcome lambda_vs_oracle() {
    const auto start = Clock::now();
    gen::Rng rng(4242);
    constexpr std::int64_t grid = 200;
    int violations = 0, checked = 0;
    while (checked < 500) {
        const auto m = static_cast<std::size_t>(gen::pick(rng, 1, 4));
        const auto profile = gen::fine_profile(rng, m, 10);
        const auto task = gen::task_with(rng, profile, {1, 2, 3, 4, 5, 6, 7, 8}, 1);
        const auto lambda = compute_lambda(task);
        const auto oracle = oracle::brute_force_min_use(task, grid);
        ++checked;
        if (!std::holds_alternative<Rat>(oracle)) {
            ++violations;
            continue;
        }
        const Rat& best = std::get<Rat>(oracle);
        if (best < lambda || best > lambda + Rat(static_cast<std::int64_t>(m), grid)) ++violations;
    }
    const double t = seconds_since(start);
    std::ostringstream d;
    d << checked << " tasks, " << violations << " violations, " << t << " s";
    return {violations == 0 && t < 120, d.str()};
}

Outcome canonical_soundness() {
    const auto start = Clock::now();
    gen::Rng rng(777);
    gen::SystemShape shape;
    shape.max_tasks = 6;
    shape.max_processors = 4;
    shape.periods = {1, 2, 3, 4, 6};
    shape.quarter = false;
    int misses = 0, short_windows = 0, runs = 0;
    for (int sys = 0; sys < 100; ++sys) {
        const auto s = gen::random_feasible_system(rng, shape);
        const auto p = pattern_of(s, IntervalKind::Unit);
        const Rat horizon = default_horizon(s);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            ArrivalModel model{ArrivalKind::SporadicUniformJitter, Rat(gen::pick(rng, 1, 8), 4), seed};
            const auto arrivals = generate_arrivals(s, model, horizon);
            const auto report = simulate_pattern(s, p, arrivals, horizon);
            ++runs;
            misses += static_cast<int>(report.deadline_misses.size());
            for (const auto& job : report.jobs) {
                if (job.deadline > horizon) continue;
                const auto& task = s.task(job.task);
                if (work_delivered(p, s, job.task, job.arrival, job.deadline) != Rat(task.wcet) ||
                    job.delivered != job.demand)
                    ++short_windows;
            }
        }
    }
    const double t = seconds_since(start);
    std::ostringstream d;
    d << runs << " runs, " << misses << " misses, " << short_windows << " windows off C_i, " << t << " s";
    return {misses == 0 && short_windows == 0 && t < 300, d.str()};
}

Outcome reduction_invariants() {
    const auto r = reduce(fixtures::two_tasks());
    const bool example = r.static_assignment == std::map<int, std::size_t>{{1, 1}} && r.residual_processors == 2 &&
                         r.residual_tasks.size() == 2 && r.residual_tasks[0].wcet == Rat(4) &&
                         r.residual_tasks[0].period == 4 && r.residual_tasks[1].wcet == Rat(3) &&
                         r.residual_tasks[1].period == 4;

    gen::Rng rng(99);
    gen::SystemShape shape;
    shape.max_tasks = 5;
    shape.max_processors = 5;
    shape.periods = {1, 2, 3, 4, 6};
    shape.quarter = false;
    int budget_errors = 0, static_migrations = 0;
    for (int sys = 0; sys < 100; ++sys) {
        const auto s = gen::random_feasible_system(rng, shape);
        const auto verdict = check_feasibility(s);
        const auto red = reduce(s);
        Rat total(0);
        for (const auto& t : red.residual_tasks) total += t.utilization();
        for (const auto& d : verdict.per_task) total += Rat(d.k);
        if (total != verdict.load) ++budget_errors;
        const auto plan = build_reduced_schedule_plan(s);
        const Rat horizon = default_horizon(s);
        const auto arrivals = generate_arrivals(s, ArrivalModel{}, horizon);
        const auto report = simulate_reduced(s, plan, ResidualExecutor::Canonical, arrivals, horizon);
        static_migrations += static_cast<int>(report.static_migrations);
    }
    std::ostringstream d;
    d << "worked system " << (example ? "exact" : "differs") << ", " << budget_errors << " budget mismatches, "
      << static_migrations << " static migrations";
    return {example && budget_errors == 0 && static_migrations == 0, d.str()};
}

Outcome edf_us_numbers() {
    const auto r = reduce(fixtures::two_tasks());
    const auto test = edf_us_half_test(r, r.residual_processors);
    const std::int64_t periods[] = {4, 4};
    const Rat horizon(40);
    const auto report = simulate_global_edf(r.residual_tasks, 3, EdfVariant::UsHalf,
                                            generate_arrivals(periods, ArrivalModel{}, horizon), horizon);
    const auto jobs = static_cast<std::int64_t>(report.jobs_released);
    std::ostringstream d;
    d << "required " << test.required_processors << ", extra " << test.extra_over_reduction << ", misses "
      << report.deadline_misses.size() << ", preemptions " << report.preemptions << ", migrations "
      << report.migrations << ", jobs " << jobs;
    return {test.required_processors == 3 && test.extra_over_reduction == 1 && report.deadline_misses.empty() &&
                report.preemptions <= jobs && report.migrations <= jobs,
            d.str()};
}

TaskSystem synthetic(std::size_t n) {
    const auto profile = fixtures::profile({"1.0", "1.9", "2.7", "3.4", "4.0", "4.5", "4.9", "5.2"});
    std::vector<Task> tasks;
    tasks.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        tasks.push_back(Task{"t" + std::to_string(i + 1), static_cast<std::int64_t>(1 + i % 3),
                             i % 2 ? 1000000 : 2000000, profile});
    return TaskSystem(std::move(tasks), 8);
}

double best_build_time(const TaskSystem& s) {
    double best = 1e9;
    for (int rep = 0; rep < 3; ++rep) {
        const auto start = Clock::now();
        auto outcome = build_canonical(s, IntervalKind::Unit);
        best = std::min(best, seconds_since(start));
        if (!std::holds_alternative<SchedulePattern>(outcome)) return 1e9;
    }
    return best;
}

Outcome linear_scaling() {
    const auto small = synthetic(10000);
    const auto large = synthetic(100000);
    const double a = best_build_time(small);
    const double b = best_build_time(large);
    const double ratio = b / a;
    std::ostringstream d;
    d << "n=1e4 " << a << " s, n=1e5 " << b << " s, ratio " << ratio;
    return {ratio <= 15 && a < 2 && b < 2, d.str()};
}

Outcome gcd_variant() {
    gen::Rng rng(555);
    gen::SystemShape shape;
    shape.max_tasks = 5;
    shape.max_processors = 4;
    shape.quarter = false;
    const std::vector<std::vector<std::int64_t>> period_sets{{2, 4, 6}, {3, 6, 9}, {4, 8, 12}, {2, 6}, {5, 10}};
    int systems = 0, failures = 0, fewer = 0;
    while (systems < 50) {
        shape.periods = period_sets[static_cast<std::size_t>(systems) % period_sets.size()];
        const auto s = gen::random_feasible_system(rng, shape);
        if (s.period_gcd() < 2) continue;
        ++systems;
        const auto g = pattern_of(s, IntervalKind::PeriodGcd);
        const auto u = pattern_of(s, IntervalKind::Unit);
        bool ok = g.interval_length == s.period_gcd() && verify_canonical(g, s).is_canonical;
        for (std::size_t i = 1; i <= s.size(); ++i) {
            const Rat period(s.task(i).period);
            for (const Rat& t : {Rat(0), Rat(1, 3), Rat(5, 2), Rat(s.period_gcd()) - Rat(1, 7)})
                ok = ok && work_delivered(g, s, i, t, t + period) == Rat(s.task(i).wcet);
        }
        const Rat hyper(s.hyperperiod());
        const auto arrivals = generate_arrivals(s, ArrivalModel{}, hyper);
        const auto rg = simulate_pattern(s, g, arrivals, hyper);
        const auto ru = simulate_pattern(s, u, arrivals, hyper);
        ok = ok && rg.deadline_misses.empty() && rg.preemptions <= ru.preemptions;
        if (rg.preemptions < ru.preemptions) ++fewer;
        if (!ok) ++failures;
    }
    std::ostringstream d;
    d << systems << " systems, " << failures << " failures, strictly fewer preemptions in " << fewer;
    return {failures == 0, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"worked example: k and canonical listing", worked_example},
        {"ratio counterexample rejected at (4, 5)", ratio_counterexample},
        {"exact bound agrees with exhaustive search", exact_bound_vs_oracle},
        {"lambda equals minimum processor use", lambda_vs_oracle},
        {"canonical schedule meets sporadic deadlines", canonical_soundness},
        {"reduction invariants", reduction_invariants},
        {"EDF-US[1/2] sizing and run", edf_us_numbers},
        {"linear construction time", linear_scaling},
        {"gcd-length interval", gcd_variant},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
