#include "wlsched/feasibility.hpp"

#include "wlsched/reduction.hpp"

namespace wlsched {

FeasibilityVerdict check_feasibility(const TaskSystem& system) {
    FeasibilityVerdict v;
    v.per_task = derive_all(system);
    v.load = Rat(0);
    for (const auto& p : v.per_task) v.load += p.lambda;
    v.capacity = system.processors();
    v.margin = Rat(v.capacity) - v.load;
    v.feasible = v.margin.sign() >= 0;
    return v;
}

std::optional<int> min_processors(const std::vector<Task>& tasks) {
    if (tasks.empty()) throw InvalidInput("no tasks");
    const std::size_t full = tasks.front().profile.size();
    for (const auto& t : tasks)
        if (t.profile.size() != full) throw InvalidInput("profiles differ in length");

    for (std::size_t m = 1; m <= full; ++m) {
        std::vector<Task> trial;
        trial.reserve(tasks.size());
        for (const auto& t : tasks) trial.push_back({t.name, t.wcet, t.period, t.profile.prefix(m)});
        const TaskSystem system(std::move(trial), static_cast<int>(m));
        Rat load(0);
        bool possible = true;
        for (const auto& t : system.tasks()) {
            auto d = derive(t);
            if (std::holds_alternative<InherentlyInfeasible>(d)) {
                possible = false;
                break;
            }
            load += std::get<DerivedParams>(d).lambda;
        }
        if (possible && load <= Rat(static_cast<std::int64_t>(m))) return static_cast<int>(m);
    }
    return std::nullopt;
}

EdfUsHalfResult edf_us_half_test(const ReducedSystem& reduced, std::int64_t available) {
    EdfUsHalfResult r;
    if (reduced.residual_tasks.empty()) {
        r.bound = Rat(-1);
        r.required_processors = 0;
        r.passes = available >= 0;
        r.extra_over_reduction = -static_cast<std::int64_t>(reduced.residual_processors);
        return r;
    }
    Rat total(0);
    for (const auto& t : reduced.residual_tasks) total += t.utilization();
    r.bound = Rat(2) * total - Rat(1);
    r.required_processors = r.bound.ceil();
    if (r.required_processors < 1) {
        r.required_processors = 1;
        r.degenerate = true;
    }
    r.extra_over_reduction = r.required_processors - reduced.residual_processors;
    r.passes = r.required_processors <= available;
    return r;
}

}  // namespace wlsched
