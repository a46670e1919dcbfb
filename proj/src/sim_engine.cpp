#include "sim_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace wlsched::detail {

std::size_t earliest_job(const std::vector<EngineJob>& jobs, const ActiveList& active, std::size_t task,
                         bool needs_global) {
    for (std::size_t j : active) {
        const auto& job = jobs[j];
        if (job.spec.task != task) continue;
        if (needs_global && !job.needs_global()) continue;
        return j;
    }
    return kIdle;
}

namespace {

std::size_t class_index(ProcessorClass c) { return c == ProcessorClass::Static ? 0 : 1; }

class Engine {
public:
    Engine(const EngineConfig& config, std::vector<Release> releases, const Rat& horizon)
        : config_(config), horizon_(horizon), m_(static_cast<int>(config.classes.size())) {
        jobs_.reserve(releases.size());
        for (auto& r : releases) {
            if (!(r.arrival < horizon_)) continue;
            EngineJob job;
            job.remaining = r.demand;
            job.budget_left = r.budget.value_or(Rat(0));
            job.spec = std::move(r);
            jobs_.push_back(std::move(job));
        }
        report_.horizon = horizon_;
        report_.per_task_work.assign(config.tasks, Rat(0));
        report_.processor_busy_time.assign(static_cast<std::size_t>(m_), Rat(0));
        report_.jobs_released = jobs_.size();
    }

    SimReport run(const std::vector<Policy*>& policies) {
        std::vector<std::size_t> previous(static_cast<std::size_t>(m_), kIdle);
        std::vector<std::size_t> assignment(static_cast<std::size_t>(m_), kIdle);
        std::size_t next_release = 0;
        Rat t(0);
        while (t < horizon_) {
            while (next_release < jobs_.size() && jobs_[next_release].spec.arrival <= t) {
                active_.push_back(next_release);
                trace(t, TraceKind::Arrival, next_release, 0);
                ++next_release;
            }

            std::fill(assignment.begin(), assignment.end(), kIdle);
            for (Policy* p : policies) p->dispatch(t, jobs_, active_, assignment);
            account(t, previous, assignment);

            // Per-job processor counts and Global occupancy for this step.
            std::vector<int> count(jobs_.size(), 0);
            std::vector<char> on_global(jobs_.size(), 0);
            for (int p = 0; p < m_; ++p) {
                const std::size_t j = assignment[static_cast<std::size_t>(p)];
                if (j == kIdle) continue;
                ++count[j];
                if (config_.classes[static_cast<std::size_t>(p)] == ProcessorClass::Global) on_global[j] = 1;
            }

            Rat next = horizon_;
            if (next_release < jobs_.size()) next = min(next, jobs_[next_release].spec.arrival);
            for (Policy* p : policies)
                if (auto b = p->next_boundary(t)) next = min(next, *b);
            std::vector<Rat> rate(jobs_.size());
            for (std::size_t j : active_) {
                if (count[j] == 0) continue;
                rate[j] = config_.rate(jobs_[j], count[j]);
                if (rate[j].sign() > 0) next = min(next, t + jobs_[j].remaining / rate[j]);
                if (on_global[j] && jobs_[j].spec.budget) next = min(next, t + jobs_[j].budget_left);
            }
            if (!(t < next)) throw std::logic_error("simulation failed to advance time");

            const Rat dt = next - t;
            for (int p = 0; p < m_; ++p)
                if (assignment[static_cast<std::size_t>(p)] != kIdle)
                    report_.processor_busy_time[static_cast<std::size_t>(p)] += dt;
            for (std::size_t j : active_) {
                if (count[j] == 0) continue;
                EngineJob& job = jobs_[j];
                const Rat work = rate[j] * dt;
                job.remaining -= work;
                job.delivered += work;
                report_.per_task_work[job.spec.task - 1] += work;
                if (on_global[j] && job.spec.budget) job.budget_left -= dt;
            }
            t = next;

            ActiveList still;
            still.reserve(active_.size());
            for (std::size_t j : active_) {
                if (jobs_[j].remaining.sign() <= 0) {
                    jobs_[j].completion = t;
                    trace(t, TraceKind::Complete, j, 0);
                } else {
                    still.push_back(j);
                }
            }
            active_ = std::move(still);
            previous = assignment;
        }
        finish();
        return std::move(report_);
    }

private:
    void trace(const Rat& t, TraceKind kind, std::size_t j, int processor) {
        if (!config_.record_trace) return;
        report_.trace.push_back({t, kind, jobs_[j].spec.task, jobs_[j].spec.seq, processor});
    }

    bool unfinished_for(const EngineJob& job, ProcessorClass c) const {
        if (job.done()) return false;
        return c == ProcessorClass::Static || job.needs_global();
    }

    void account(const Rat& t, const std::vector<std::size_t>& previous,
                 const std::vector<std::size_t>& assignment) {
        for (int p = 0; p < m_; ++p) {
            const auto up = static_cast<std::size_t>(p);
            const std::size_t before = previous[up];
            const std::size_t now = assignment[up];
            if (before == now) continue;
            const ProcessorClass c = config_.classes[up];
            if (before != kIdle && unfinished_for(jobs_[before], c)) {
                (c == ProcessorClass::Static ? report_.static_preemptions : report_.global_preemptions)++;
                trace(t, TraceKind::Preempt, before, p + 1);
            }
            if (now != kIdle) trace(t, TraceKind::Start, now, p + 1);
        }

        // Processor sets per job and class, in processor order.
        std::vector<std::array<std::vector<int>, 2>> sets;
        std::vector<std::size_t> touched;
        sets.resize(jobs_.size());
        for (int p = 0; p < m_; ++p) {
            const std::size_t j = assignment[static_cast<std::size_t>(p)];
            if (j == kIdle) continue;
            auto& s = sets[j][class_index(config_.classes[static_cast<std::size_t>(p)])];
            if (sets[j][0].empty() && sets[j][1].empty()) touched.push_back(j);
            s.push_back(p + 1);
        }
        for (std::size_t j : touched) {
            for (std::size_t c = 0; c < 2; ++c) {
                const auto& now = sets[j][c];
                if (now.empty()) continue;
                auto& last = jobs_[j].last_set[c];
                if (!last.empty()) {
                    const bool moved = std::any_of(now.begin(), now.end(), [&](int p) {
                        return std::find(last.begin(), last.end(), p) == last.end();
                    });
                    if (moved) {
                        (c == 0 ? report_.static_migrations : report_.global_migrations)++;
                        trace(t, TraceKind::Migrate, j, now.front());
                    }
                }
                last = now;
            }
        }
    }

    void finish() {
        report_.preemptions = report_.static_preemptions + report_.global_preemptions;
        report_.migrations = report_.static_migrations + report_.global_migrations;
        for (const auto& job : jobs_) {
            report_.jobs.push_back({job.spec.task, job.spec.seq, job.spec.arrival, job.spec.deadline,
                                    job.spec.demand, job.delivered, job.completion});
            if (job.completion) {
                if (job.spec.deadline < *job.completion)
                    miss(job, *job.completion - job.spec.deadline, true);
            } else if (job.spec.deadline <= horizon_) {
                miss(job, horizon_ - job.spec.deadline, false);
            }
        }
        if (config_.record_trace)
            std::stable_sort(report_.trace.begin(), report_.trace.end(),
                             [](const TraceEvent& a, const TraceEvent& b) { return a.time < b.time; });
    }

    void miss(const EngineJob& job, const Rat& lateness, bool completed) {
        report_.deadline_misses.push_back({job.spec.task, job.spec.arrival, job.spec.deadline, lateness, completed});
        if (config_.record_trace)
            report_.trace.push_back({job.spec.deadline, TraceKind::DeadlineMiss, job.spec.task, job.spec.seq, 0});
    }

    const EngineConfig& config_;
    Rat horizon_;
    int m_;
    std::vector<EngineJob> jobs_;
    ActiveList active_;
    SimReport report_;
};

}  // namespace

SimReport run_engine(const EngineConfig& config, std::vector<Policy*> policies, std::vector<Release> releases,
                     const Rat& horizon) {
    std::stable_sort(releases.begin(), releases.end(),
                     [](const Release& a, const Release& b) { return a.arrival < b.arrival; });
    Engine engine(config, std::move(releases), horizon);
    return engine.run(policies);
}

}  // namespace wlsched::detail
