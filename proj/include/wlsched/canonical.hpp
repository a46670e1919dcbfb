#pragma once

#include "wlsched/model.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace wlsched {

/// Task `task` (1-based) runs on the owning processor during [start, end).
/// Idle time is the gap between segments and is never stored.
struct Segment {
    Rat start;
    Rat end;
    std::size_t task = 0;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Per-processor assignment over [0, L), repeated with period L. A task
/// appearing on several processors at the same instant runs in parallel.
struct SchedulePattern {
    std::int64_t interval_length = 1;
    std::vector<std::vector<Segment>> per_processor;  ///< index 0 is p_1

    int processors() const { return static_cast<int>(per_processor.size()); }
    std::size_t segment_count() const;

    /// Task on processor `processor` (1-based) at time t, or 0 when idle.
    std::size_t task_at(int processor, const Rat& t) const;

    /// Number of processors running `task` at time t.
    int parallelism_at(std::size_t task, const Rat& t) const;

    friend bool operator==(const SchedulePattern&, const SchedulePattern&) = default;
};

enum class IntervalKind { Unit, PeriodGcd };

/// Returned instead of a pattern when sum lambda_i > m.
struct InfeasibleCertificate {
    Rat load;
    int capacity = 0;
    Rat margin;
};

using CanonicalOutcome = std::variant<SchedulePattern, InfeasibleCertificate>;

/// Canonical schedule over an interval of length L = 1 or L = gcd(T_i).
/// Tasks are placed from tau_n down to tau_1, filling processors from p_m
/// downward; each task gets k_i whole processors and one partial run of
/// length ell_i * L, wrapping at the running boundary. Throws
/// InfeasibleTasksError for inherently infeasible tasks.
CanonicalOutcome build_canonical(const TaskSystem& system, IntervalKind interval = IntervalKind::Unit);

/// Same construction from precomputed (k, ell) pairs; used for residual
/// systems whose demands are not integers. `interval_length` must be >= 1.
CanonicalOutcome build_canonical(std::span<const DerivedParams> params, int processors,
                                 std::int64_t interval_length);

enum class CanonicalCondition {
    Structure,       ///< unsorted, overlapping, out of range or unknown task
    TimeMonotone,    ///< sigma_j must not increase over time
    ProcessorOrder,  ///< max sigma_j <= min sigma_j' for j < j'
};

struct CanonicalViolation {
    CanonicalCondition condition;
    int processor = 0;        ///< 1-based
    int other_processor = 0;  ///< for ProcessorOrder
    std::string detail;
};

struct CanonicalReport {
    bool is_canonical = false;
    std::vector<CanonicalViolation> violations;
};

/// Checks the canonical conditions over one interval. Idle counts as
/// task index 0, the lowest value. Periodicity holds by representation.
CanonicalReport verify_canonical(const SchedulePattern& pattern, const TaskSystem& system);

/// Work completed by `task` over [a, b): integral of gamma_{task, c(t)}
/// where c(t) is the number of processors the pattern gives it at t.
/// Throws std::out_of_range for an unknown task index.
Rat work_delivered(const SchedulePattern& pattern, const TaskSystem& system, std::size_t task,
                   const Rat& a, const Rat& b);

}  // namespace wlsched
