#include "wlsched/sim.hpp"

#include "sim_engine.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace wlsched {

using detail::ActiveList;
using detail::EngineJob;
using detail::kIdle;
using detail::Policy;
using detail::Release;

namespace {

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t upper_inclusive) {
    if (upper_inclusive == std::numeric_limits<std::uint64_t>::max()) return rng();
    const std::uint64_t range = upper_inclusive + 1;
    // 2^64 mod range, computed without 128-bit arithmetic.
    const std::uint64_t excess = (std::numeric_limits<std::uint64_t>::max() % range + 1) % range;
    const std::uint64_t limit = excess == 0 ? 0 : std::numeric_limits<std::uint64_t>::max() - excess + 1;
    for (;;) {
        const std::uint64_t x = rng();
        if (limit == 0 || x < limit) return x % range;
    }
}

}  // namespace

ArrivalSequence generate_arrivals(std::span<const std::int64_t> periods, const ArrivalModel& model,
                                  const Rat& horizon) {
    if (horizon.sign() <= 0) throw InvalidInput("horizon must be positive");
    if (model.jitter_bound.sign() < 0) throw InvalidInput("jitter bound must be non-negative");
    if (model.jitter_grid.sign() <= 0) throw InvalidInput("jitter grid must be positive");

    std::mt19937_64 rng(model.seed);
    const bool sporadic = model.kind == ArrivalKind::SporadicUniformJitter;
    const auto steps = static_cast<std::uint64_t>(floor_div(model.jitter_bound, model.jitter_grid));
    ArrivalSequence out(periods.size());
    for (std::size_t i = 0; i < periods.size(); ++i) {
        if (periods[i] < 1) throw InvalidInput("period must be positive");
        Rat at(0);
        while (at < horizon) {
            out[i].push_back(at);
            at += Rat(periods[i]);
            if (sporadic && steps > 0) at += model.jitter_grid * Rat(static_cast<std::int64_t>(uniform_index(rng, steps)));
        }
    }
    return out;
}

ArrivalSequence generate_arrivals(const TaskSystem& system, const ArrivalModel& model, const Rat& horizon) {
    std::vector<std::int64_t> periods;
    for (const auto& t : system.tasks()) periods.push_back(t.period);
    return generate_arrivals(periods, model, horizon);
}

Rat default_horizon(const TaskSystem& system) { return Rat(10 * system.hyperperiod()); }

std::string to_string(TraceKind kind) {
    switch (kind) {
        case TraceKind::Arrival: return "arrival";
        case TraceKind::Start: return "start";
        case TraceKind::Preempt: return "preempt";
        case TraceKind::Migrate: return "migrate";
        case TraceKind::Complete: return "complete";
        case TraceKind::DeadlineMiss: return "deadline-miss";
    }
    return "unknown";
}

std::string trace_csv(const SimReport& report) {
    std::ostringstream os;
    os << "time,event,task,job,processor\n";
    for (const auto& e : report.trace) {
        os << e.time.str() << ',' << to_string(e.kind) << ',' << e.task << ',' << e.job << ',';
        if (e.processor > 0) os << e.processor;
        os << '\n';
    }
    return os.str();
}

namespace {

/// Runs a pattern on processors offset+1 .. offset+m. Pattern task p maps
/// to original task task_map[p - 1].
class PatternPolicy : public Policy {
public:
    PatternPolicy(const SchedulePattern& pattern, int offset, std::vector<std::size_t> task_map, bool needs_global)
        : pattern_(pattern), offset_(offset), task_map_(std::move(task_map)), needs_global_(needs_global),
          length_(pattern.interval_length) {
        std::set<Rat> points;
        for (const auto& row : pattern.per_processor)
            for (const auto& s : row) {
                points.insert(s.start);
                points.insert(s.end);
            }
        points.insert(length_);
        points.erase(Rat(0));
        breakpoints_.assign(points.begin(), points.end());
    }

    void dispatch(const Rat& t, const std::vector<EngineJob>& jobs, const ActiveList& active,
                  std::vector<std::size_t>& assignment) override {
        for (int q = 1; q <= pattern_.processors(); ++q) {
            const std::size_t task = pattern_.task_at(q, t);
            if (task == 0) continue;
            const std::size_t job = detail::earliest_job(jobs, active, task_map_[task - 1], needs_global_);
            if (job != kIdle) assignment[static_cast<std::size_t>(offset_ + q - 1)] = job;
        }
    }

    std::optional<Rat> next_boundary(const Rat& t) const override {
        const Rat x = mod(t, length_);
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        return t - x + *it;  // length_ is always the last breakpoint and x < length_
    }

private:
    const SchedulePattern& pattern_;
    int offset_;
    std::vector<std::size_t> task_map_;
    bool needs_global_;
    Rat length_;
    std::vector<Rat> breakpoints_;
};

/// Each owned processor runs its owner's earliest pending job.
class StaticPolicy : public Policy {
public:
    explicit StaticPolicy(std::vector<std::pair<int, std::size_t>> owners) : owners_(std::move(owners)) {}

    void dispatch(const Rat&, const std::vector<EngineJob>& jobs, const ActiveList& active,
                  std::vector<std::size_t>& assignment) override {
        for (const auto& [processor, task] : owners_) {
            const std::size_t job = detail::earliest_job(jobs, active, task, false);
            if (job != kIdle) assignment[static_cast<std::size_t>(processor - 1)] = job;
        }
    }

private:
    std::vector<std::pair<int, std::size_t>> owners_;
};

/// Global EDF (optionally with top priority for heavy tasks) over a pool
/// of processors; one processor per job.
class EdfPolicy : public Policy {
public:
    EdfPolicy(std::vector<int> processors, std::vector<char> heavy)
        : processors_(std::move(processors)), heavy_(std::move(heavy)) {}

    void dispatch(const Rat&, const std::vector<EngineJob>& jobs, const ActiveList& active,
                  std::vector<std::size_t>& assignment) override {
        std::vector<std::size_t> ready;
        for (std::size_t j : active)
            if (jobs[j].needs_global()) ready.push_back(j);
        auto key = [&](std::size_t j) {
            const auto& s = jobs[j].spec;
            return std::tuple<int, const Rat&, std::size_t, const Rat&>(heavy_[s.task - 1] ? 0 : 1, s.deadline, s.task,
                                                                       s.arrival);
        };
        std::sort(ready.begin(), ready.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
        if (ready.size() > processors_.size()) ready.resize(processors_.size());

        std::vector<char> taken(processors_.size(), 0);
        std::vector<char> placed(ready.size(), 0);
        auto slot_of = [&](int p) {
            return static_cast<std::size_t>(std::find(processors_.begin(), processors_.end(), p) - processors_.begin());
        };
        // Jobs first try the processor they last ran on, then take the
        // lowest free one.
        for (std::size_t r = 0; r < ready.size(); ++r) {
            const auto& last = jobs[ready[r]].last_set[1];
            if (last.empty()) continue;
            const std::size_t slot = slot_of(last.front());
            if (slot < processors_.size() && !taken[slot]) {
                taken[slot] = 1;
                placed[r] = 1;
                assignment[static_cast<std::size_t>(processors_[slot] - 1)] = ready[r];
            }
        }
        for (std::size_t r = 0; r < ready.size(); ++r) {
            if (placed[r]) continue;
            for (std::size_t slot = 0; slot < processors_.size(); ++slot) {
                if (taken[slot]) continue;
                taken[slot] = 1;
                assignment[static_cast<std::size_t>(processors_[slot] - 1)] = ready[r];
                break;
            }
        }
    }

private:
    std::vector<int> processors_;
    std::vector<char> heavy_;
};

Rat unit_rate(const EngineJob&, int count) { return count == 1 ? Rat(1) : Rat(0); }

std::vector<Release> releases_for(const ArrivalSequence& arrivals, std::size_t tasks,
                                  const std::function<Rat(std::size_t)>& demand,
                                  const std::function<std::optional<Rat>(std::size_t)>& budget,
                                  const std::function<std::int64_t(std::size_t)>& period) {
    if (arrivals.size() != tasks) throw InvalidInput("arrival sequence does not match the task count");
    std::vector<Release> out;
    for (std::size_t i = 1; i <= tasks; ++i) {
        const auto& times = arrivals[i - 1];
        for (std::size_t k = 0; k < times.size(); ++k) {
            if (k > 0 && times[k] - times[k - 1] < Rat(period(i)))
                throw InvalidInput("arrivals of task " + std::to_string(i) + " are closer than its period");
            out.push_back({i, k + 1, times[k], times[k] + Rat(period(i)), demand(i), budget(i)});
        }
    }
    return out;
}

void check_pattern(const TaskSystem& system, const SchedulePattern& pattern, int processors) {
    if (pattern.processors() != processors) throw InvalidInput("pattern processor count does not match");
    if (pattern.interval_length < 1) throw InvalidInput("pattern interval length must be positive");
    for (const auto& row : pattern.per_processor) {
        Rat cursor(0);
        for (const auto& s : row) {
            if (s.task < 1 || s.task > system.size()) throw InvalidInput("pattern names an unknown task");
            if (!(s.start < s.end) || s.start < cursor || Rat(pattern.interval_length) < s.end)
                throw InvalidInput("pattern segments are unsorted, overlapping or out of range");
            cursor = s.end;
        }
    }
}

}  // namespace

SimReport simulate_pattern(const TaskSystem& system, const SchedulePattern& pattern, const ArrivalSequence& arrivals,
                           const Rat& horizon, SimOptions options) {
    check_pattern(system, pattern, system.processors());
    if (mod(horizon, Rat(pattern.interval_length)).sign() != 0 || horizon.sign() <= 0)
        throw InvalidInput("horizon must be a positive multiple of the pattern length");

    std::vector<std::size_t> identity(system.size());
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i + 1;
    PatternPolicy policy(pattern, 0, identity, false);

    detail::EngineConfig config;
    config.tasks = system.size();
    config.classes.assign(static_cast<std::size_t>(system.processors()), ProcessorClass::Global);
    config.rate = [&system](const EngineJob& job, int count) {
        return system.task(job.spec.task).profile.rate(static_cast<std::size_t>(count));
    };
    config.record_trace = options.record_trace;

    auto releases = releases_for(
        arrivals, system.size(), [&](std::size_t i) { return Rat(system.task(i).wcet); },
        [](std::size_t) { return std::optional<Rat>{}; }, [&](std::size_t i) { return system.task(i).period; });
    return detail::run_engine(config, {&policy}, std::move(releases), horizon);
}

SimReport simulate_reduced(const TaskSystem& system, const ReducedPlan& plan, ResidualExecutor executor,
                           const ArrivalSequence& arrivals, const Rat& horizon, SimOptions options,
                           std::optional<int> residual_pool) {
    if (plan.tasks.size() != system.size() || plan.total_processors != system.processors())
        throw InvalidInput("plan does not match the task system");
    if (horizon.sign() <= 0) throw InvalidInput("horizon must be positive");

    int static_count = 0;
    std::vector<std::pair<int, std::size_t>> owners;
    for (std::size_t i = 1; i <= plan.tasks.size(); ++i)
        for (int p : plan.tasks[i - 1].static_processors) {
            owners.emplace_back(p, i);
            ++static_count;
        }
    int pool = plan.residual_processors;
    if (residual_pool && executor != ResidualExecutor::Canonical) pool = *residual_pool;
    if (pool < 0) throw InvalidInput("residual pool size must be non-negative");
    const int total = static_count + pool;

    std::vector<std::int64_t> periods;
    std::vector<DerivedParams> residual_params;
    std::vector<std::size_t> residual_map;
    std::vector<char> heavy(system.size(), 0);
    for (std::size_t i = 1; i <= system.size(); ++i) {
        periods.push_back(system.task(i).period);
        const Rat& extra = plan.tasks[i - 1].extra_duration;
        if (extra.sign() <= 0) continue;
        const Rat u = extra / Rat(system.task(i).period);
        heavy[i - 1] = Rat(1, 2) < u;
        residual_params.push_back({u, 0, u, u});
        residual_map.push_back(i);
    }

    std::vector<int> pool_processors;
    for (int p = static_count + 1; p <= total; ++p) pool_processors.push_back(p);

    StaticPolicy static_policy(owners);
    std::vector<Policy*> policies{&static_policy};
    std::optional<SchedulePattern> residual_pattern;
    std::optional<PatternPolicy> pattern_policy;
    std::optional<EdfPolicy> edf_policy;
    std::vector<std::string> notes;
    if (executor == ResidualExecutor::Canonical) {
        // Residual tasks are sequential (gamma' = (1)); a unit interval
        // divides every period.
        if (!residual_params.empty()) {
            auto outcome = build_canonical(residual_params, std::max(pool, 1), 1);
            if (std::holds_alternative<InfeasibleCertificate>(outcome) || pool == 0)
                throw InvalidInput("residual system does not fit the residual processors");
            residual_pattern = std::get<SchedulePattern>(std::move(outcome));
            pattern_policy.emplace(*residual_pattern, static_count, residual_map, true);
            policies.push_back(&*pattern_policy);
        }
    } else {
        if (executor == ResidualExecutor::Edf) {
            std::fill(heavy.begin(), heavy.end(), 0);
            notes.push_back("plain global EDF: sum u' <= m' is only a necessary condition; misses do not imply infeasibility");
        } else {
            notes.push_back("EDF-US[1/2]: the 2*sum u' - 1 <= m test is sufficient only");
        }
        edf_policy.emplace(pool_processors, heavy);
        policies.push_back(&*edf_policy);
    }

    detail::EngineConfig config;
    config.tasks = system.size();
    config.classes.assign(static_cast<std::size_t>(total), ProcessorClass::Global);
    for (int p = 0; p < static_count; ++p) config.classes[static_cast<std::size_t>(p)] = ProcessorClass::Static;
    config.rate = [&system](const EngineJob& job, int count) {
        return system.task(job.spec.task).profile.rate(static_cast<std::size_t>(count));
    };
    config.record_trace = options.record_trace;

    auto releases = releases_for(
        arrivals, system.size(), [&](std::size_t i) { return Rat(system.task(i).wcet); },
        [&](std::size_t i) { return std::optional<Rat>(plan.tasks[i - 1].extra_duration); },
        [&](std::size_t i) { return system.task(i).period; });
    auto report = detail::run_engine(config, policies, std::move(releases), horizon);
    report.notes = std::move(notes);
    return report;
}

SimReport simulate_global_edf(std::span<const ResidualTask> tasks, int processors, EdfVariant variant,
                              const ArrivalSequence& arrivals, const Rat& horizon, SimOptions options) {
    if (processors < 0) throw InvalidInput("processor count must be non-negative");
    if (horizon.sign() <= 0) throw InvalidInput("horizon must be positive");
    std::vector<char> heavy(tasks.size(), 0);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Rat u = tasks[i].utilization();
        if (Rat(1) < u) throw InvalidInput("residual task " + tasks[i].name + " has utilization above 1");
        heavy[i] = variant == EdfVariant::UsHalf && Rat(1, 2) < u;
    }
    std::vector<int> pool;
    for (int p = 1; p <= processors; ++p) pool.push_back(p);
    EdfPolicy policy(pool, heavy);

    detail::EngineConfig config;
    config.tasks = tasks.size();
    config.classes.assign(static_cast<std::size_t>(processors), ProcessorClass::Global);
    config.rate = unit_rate;
    config.record_trace = options.record_trace;

    auto releases = releases_for(
        arrivals, tasks.size(), [&](std::size_t i) { return tasks[i - 1].wcet; },
        [](std::size_t) { return std::optional<Rat>{}; }, [&](std::size_t i) { return tasks[i - 1].period; });
    return detail::run_engine(config, {&policy}, std::move(releases), horizon);
}

}  // namespace wlsched
