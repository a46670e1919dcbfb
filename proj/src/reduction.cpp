#include "wlsched/reduction.hpp"

namespace wlsched {

InfeasibleSystemError::InfeasibleSystemError(FeasibilityVerdict verdict)
    : std::runtime_error("system is infeasible: load " + verdict.load.str() + " exceeds " +
                         std::to_string(verdict.capacity) + " processors"),
      verdict_(std::move(verdict)) {}

namespace {

FeasibilityVerdict require_feasible(const TaskSystem& system) {
    auto verdict = check_feasibility(system);
    if (!verdict.feasible) throw InfeasibleSystemError(std::move(verdict));
    return verdict;
}

}  // namespace

ReducedSystem reduce(const TaskSystem& system) {
    const auto verdict = require_feasible(system);
    ReducedSystem out;
    out.total_processors = system.processors();
    int next = 1;
    for (std::size_t i = 1; i <= system.size(); ++i) {
        const auto& p = verdict.per_task[i - 1];
        const Task& t = system.task(i);
        for (int r = 0; r < p.k; ++r) out.static_assignment.emplace(next++, i);
        const Rat demand = p.ell * Rat(t.period);
        if (demand.sign() > 0) out.residual_tasks.push_back({t.name, i, demand, t.period});
    }
    out.residual_processors = system.processors() - (next - 1);
    return out;
}

ReducedPlan build_reduced_schedule_plan(const TaskSystem& system) {
    const auto reduced = reduce(system);
    ReducedPlan plan;
    plan.total_processors = reduced.total_processors;
    plan.residual_processors = reduced.residual_processors;
    plan.tasks.resize(system.size());
    for (const auto& [processor, owner] : reduced.static_assignment)
        plan.tasks[owner - 1].static_processors.push_back(processor);
    for (const auto& r : reduced.residual_tasks) plan.tasks[r.source - 1].extra_duration = r.wcet;
    return plan;
}

}  // namespace wlsched
