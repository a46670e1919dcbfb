#pragma once

#include "wlsched/canonical.hpp"
#include "wlsched/feasibility.hpp"
#include "wlsched/reduction.hpp"
#include "wlsched/sim.hpp"

#include <optional>
#include <string>

namespace wlsched::render {

/// "3/4 (0.750000)"; integers print without a denominator.
std::string human(const Rat& r);

std::string analysis_text(const TaskSystem& system, const FeasibilityVerdict& verdict,
                          std::optional<int> min_processors);
std::string analysis_json(const TaskSystem& system, const FeasibilityVerdict& verdict,
                          std::optional<int> min_processors);
std::string infeasible_tasks_text(const InfeasibleTasksError& error);
std::string infeasible_tasks_json(const InfeasibleTasksError& error);

/// One line per stretch, idle included, e.g. "sigma_3(t) = 2 on [0, 3/4)".
std::string schedule_text(const TaskSystem& system, const SchedulePattern& pattern);
std::string schedule_json(const SchedulePattern& pattern);
/// "processor,start,end,task" rows, idle rows omitted.
std::string schedule_csv(const SchedulePattern& pattern);
std::string certificate_text(const InfeasibleCertificate& certificate);
std::string certificate_json(const InfeasibleCertificate& certificate);

std::string reduction_text(const TaskSystem& system, const ReducedSystem& reduced, const EdfUsHalfResult& us_half);
std::string reduction_json(const ReducedSystem& reduced, const EdfUsHalfResult& us_half);

std::string sim_text(const TaskSystem& system, const SimReport& report);
std::string sim_json(const SimReport& report);

/// Character timeline of one interval, `columns` cells wide, followed by
/// the stretch listing.
std::string gantt_text(const TaskSystem& system, const SchedulePattern& pattern, int columns = 64);
/// Standalone SVG: one row per processor (p_m on top), one <rect
/// class="bar"> per segment, time axis in pattern units.
std::string gantt_svg(const TaskSystem& system, const SchedulePattern& pattern);

}  // namespace wlsched::render
