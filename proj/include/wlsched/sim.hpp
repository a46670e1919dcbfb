#pragma once

#include "wlsched/canonical.hpp"
#include "wlsched/model.hpp"
#include "wlsched/reduction.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wlsched {

enum class ArrivalKind { SynchronousPeriodic, SporadicUniformJitter };

/// How job releases are generated.
///
/// Sporadic arrivals start at 0; each later release is the previous one plus
/// T_i plus a jitter j * grid, where j is uniform on 0..floor(jitter_bound /
/// grid). j is drawn from std::mt19937_64 seeded with `seed` (whose output
/// sequence is fixed by the C++ standard) by rejection sampling: a raw
/// 64-bit draw x is rejected while x >= 2^64 - (2^64 mod (N + 1)), then
/// j = x mod (N + 1). Tasks draw in index order, each consuming its draws
/// for all of its arrivals before the next task starts.
struct ArrivalModel {
    ArrivalKind kind = ArrivalKind::SynchronousPeriodic;
    Rat jitter_bound{0};
    std::uint64_t seed = 0;
    Rat jitter_grid{1, 100};
};

/// arrivals[i] holds the sorted release times (< horizon) of task i + 1.
using ArrivalSequence = std::vector<std::vector<Rat>>;

ArrivalSequence generate_arrivals(std::span<const std::int64_t> periods, const ArrivalModel& model,
                                  const Rat& horizon);
ArrivalSequence generate_arrivals(const TaskSystem& system, const ArrivalModel& model, const Rat& horizon);

/// 10 hyperperiods.
Rat default_horizon(const TaskSystem& system);

/// Processors owned by one task in a reduction are Static; everything a
/// global scheduler hands out (pattern processors, residual pool) is Global.
enum class ProcessorClass { Static, Global };

struct DeadlineMiss {
    std::size_t task = 0;
    Rat arrival;
    Rat deadline;
    /// completion - deadline, or horizon - deadline for a job still running.
    Rat lateness;
    bool completed = false;
};

struct JobRecord {
    std::size_t task = 0;
    std::size_t job = 0;  ///< 1-based release number within the task
    Rat arrival;
    Rat deadline;
    Rat demand;
    Rat delivered;
    std::optional<Rat> completion;
};

enum class TraceKind { Arrival, Start, Preempt, Migrate, Complete, DeadlineMiss };

std::string to_string(TraceKind kind);

struct TraceEvent {
    Rat time;
    TraceKind kind;
    std::size_t task = 0;
    std::size_t job = 0;
    int processor = 0;  ///< 0 when the event is not tied to a processor
};

struct SimReport {
    Rat horizon;
    std::vector<DeadlineMiss> deadline_misses;
    std::int64_t preemptions = 0;
    std::int64_t migrations = 0;
    std::int64_t static_preemptions = 0;
    std::int64_t static_migrations = 0;
    std::int64_t global_preemptions = 0;
    std::int64_t global_migrations = 0;
    std::size_t jobs_released = 0;
    std::vector<Rat> per_task_work;         ///< index 0 is task 1
    std::vector<Rat> processor_busy_time;   ///< index 0 is p_1
    std::vector<JobRecord> jobs;
    std::vector<std::string> notes;
    std::vector<TraceEvent> trace;          ///< filled when requested
};

/// CSV event log: header "time,event,task,job,processor", times as "p/q",
/// processor empty when not applicable.
std::string trace_csv(const SimReport& report);

struct SimOptions {
    bool record_trace = false;
};

/// Runs a precomputed pattern: a processor runs its designated task's
/// earliest pending job, or idles when the task has none.
///
/// Preemption: a job leaves a processor while unfinished. Migration: a job
/// starts running on a processor outside the set it last ran on (once per
/// change). The horizon must be a multiple of the pattern length.
SimReport simulate_pattern(const TaskSystem& system, const SchedulePattern& pattern,
                           const ArrivalSequence& arrivals, const Rat& horizon, SimOptions options = {});

enum class ResidualExecutor { Canonical, Edf, EdfUsHalf };

/// Static processors serve their owner's jobs exclusively; each job also
/// needs ell_i * T_i time on one residual processor, dispatched by
/// `executor`. `residual_pool` overrides m' (for EDF-US[1/2] sizing); the
/// canonical executor always uses m'.
SimReport simulate_reduced(const TaskSystem& system, const ReducedPlan& plan, ResidualExecutor executor,
                           const ArrivalSequence& arrivals, const Rat& horizon, SimOptions options = {},
                           std::optional<int> residual_pool = std::nullopt);

enum class EdfVariant { Plain, UsHalf };

/// Global EDF over sequential residual tasks on `processors` processors.
/// UsHalf gives tasks with u' > 1/2 top priority. Ties break by (task
/// index, arrival); freed processors prefer each job's last processor.
SimReport simulate_global_edf(std::span<const ResidualTask> tasks, int processors, EdfVariant variant,
                              const ArrivalSequence& arrivals, const Rat& horizon, SimOptions options = {});

}  // namespace wlsched
