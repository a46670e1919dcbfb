#pragma once

#include "wlsched/model.hpp"

#include <optional>
#include <vector>

namespace wlsched {

struct ReducedSystem;

/// Exact feasibility decision: feasible iff sum of lambda_i <= m.
struct FeasibilityVerdict {
    bool feasible = false;
    Rat load;      ///< sum of lambda_i
    int capacity = 0;
    Rat margin;    ///< capacity - load
    std::vector<DerivedParams> per_task;
};

/// Throws InfeasibleTasksError when some task cannot run on any processor
/// count; equality load == m is feasible.
FeasibilityVerdict check_feasibility(const TaskSystem& system);

/// Smallest m in 1..M for which the tasks (using length-m prefixes of their
/// length-M profiles) are feasible, or nullopt. A task that is inherently
/// infeasible at some m simply makes that m infeasible.
std::optional<int> min_processors(const std::vector<Task>& tasks);

/// EDF-US[1/2] sufficient test on a reduced system. This test is sufficient
/// only: a failure is never a proof of infeasibility.
struct EdfUsHalfResult {
    bool passes = false;
    Rat bound;                          ///< 2 * sum u'_i - 1
    std::int64_t required_processors = 0;
    std::int64_t extra_over_reduction = 0;  ///< required - m'
    /// Set when the raw bound is <= 0 for a non-empty residual set; then
    /// required_processors is clamped to 1.
    bool degenerate = false;
    static constexpr bool sufficient_only = true;
};

EdfUsHalfResult edf_us_half_test(const ReducedSystem& reduced, std::int64_t available);

}  // namespace wlsched
