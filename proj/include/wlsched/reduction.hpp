#pragma once

#include "wlsched/feasibility.hpp"
#include "wlsched/model.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace wlsched {

/// Sequential residual task tau'_i: demand C'_i = ell_i * T_i (rational),
/// period T_i.
struct ResidualTask {
    std::string name;
    std::size_t source = 0;  ///< 1-based index of the original task
    Rat wcet;
    std::int64_t period = 1;

    Rat utilization() const { return wcet / Rat(period); }
    friend bool operator==(const ResidualTask&, const ResidualTask&) = default;
};

/// Each task permanently owns k_i processors; the residual tasks share the
/// remaining m' = m - sum k_i processors.
struct ReducedSystem {
    std::vector<ResidualTask> residual_tasks;
    /// processor (1-based) -> owning task (1-based); covers p_1..p_{sum k}.
    std::map<int, std::size_t> static_assignment;
    int residual_processors = 0;
    int total_processors = 0;

    /// Residual processors are p_{sum k + 1} .. p_m.
    int first_residual_processor() const { return total_processors - residual_processors + 1; }
};

/// Thrown when reducing an infeasible system.
class InfeasibleSystemError : public std::runtime_error {
public:
    explicit InfeasibleSystemError(FeasibilityVerdict verdict);
    const FeasibilityVerdict& verdict() const { return verdict_; }

private:
    FeasibilityVerdict verdict_;
};

/// Static processors are handed out from p_1 upward in task order.
ReducedSystem reduce(const TaskSystem& system);

struct TaskPlan {
    std::vector<int> static_processors;
    /// Time on one extra residual processor each job needs: ell_i * T_i.
    Rat extra_duration;
};

struct ReducedPlan {
    std::vector<TaskPlan> tasks;  ///< index 0 is tau_1
    int residual_processors = 0;
    int total_processors = 0;
};

ReducedPlan build_reduced_schedule_plan(const TaskSystem& system);

}  // namespace wlsched
