#include "fixtures.hpp"
#include "generators.hpp"

#include "wlsched/canonical.hpp"
#include "wlsched/reduction.hpp"
#include "wlsched/sim.hpp"

#include <doctest.h>

using namespace wlsched;
using fixtures::profile;

namespace {

SchedulePattern pattern_of(const TaskSystem& s, IntervalKind kind = IntervalKind::Unit) {
    auto outcome = build_canonical(s, kind);
    REQUIRE(std::holds_alternative<SchedulePattern>(outcome));
    return std::get<SchedulePattern>(outcome);
}

ArrivalSequence periodic(const TaskSystem& s, const Rat& horizon) {
    return generate_arrivals(s, ArrivalModel{}, horizon);
}

}  // namespace

TEST_CASE("periodic arrivals") {
    const std::int64_t periods[] = {4, 3};
    auto a = generate_arrivals(periods, ArrivalModel{}, Rat(12));
    CHECK(a[0] == std::vector<Rat>{Rat(0), Rat(4), Rat(8)});
    CHECK(a[1] == std::vector<Rat>{Rat(0), Rat(3), Rat(6), Rat(9)});
    CHECK(default_horizon(fixtures::two_tasks()) == Rat(40));
}

TEST_CASE("sporadic arrivals") {
    const std::int64_t periods[] = {4, 3, 7};
    ArrivalModel model{ArrivalKind::SporadicUniformJitter, Rat(0), 5};
    CHECK(generate_arrivals(periods, model, Rat(100)) == generate_arrivals(periods, ArrivalModel{}, Rat(100)));

    model.jitter_bound = Rat(3, 2);
    auto a = generate_arrivals(periods, model, Rat(200));
    CHECK(a == generate_arrivals(periods, model, Rat(200)));
    model.seed = 6;
    CHECK(a != generate_arrivals(periods, model, Rat(200)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE_FALSE(a[i].empty());
        CHECK(a[i].front() == Rat(0));
        for (std::size_t k = 1; k < a[i].size(); ++k) {
            const Rat gap = a[i][k] - a[i][k - 1];
            CHECK(gap >= Rat(periods[i]));
            CHECK(gap <= Rat(periods[i]) + Rat(3, 2));
            // Quantized to the default grid of 1/100.
            CHECK((gap * Rat(100)).is_integer());
        }
        CHECK(a[i].back() < Rat(200));
    }
}

TEST_CASE("pattern run of the two-task system") {
    const auto s = fixtures::two_tasks();
    auto report = simulate_pattern(s, pattern_of(s), periodic(s, Rat(40)), Rat(40));
    CHECK(report.deadline_misses.empty());
    CHECK(report.jobs_released == 20);
    CHECK(report.per_task_work[0] == Rat(60));
    CHECK(report.per_task_work[1] == Rat(30));
    for (const auto& job : report.jobs) {
        CHECK(job.delivered == job.demand);
        REQUIRE(job.completion.has_value());
        CHECK(*job.completion <= job.deadline);
    }
    // p_1 idles on [3/4, 1) of every unit.
    CHECK(report.processor_busy_time == std::vector<Rat>{Rat(30), Rat(40), Rat(40)});
    CHECK(report.preemptions == report.static_preemptions + report.global_preemptions);
    CHECK(report.static_preemptions == 0);
}

TEST_CASE("pattern run misses deadlines when demand exceeds the pattern") {
    const auto s = fixtures::two_tasks();
    const auto pattern = pattern_of(s);
    auto heavier = s.tasks();
    heavier[1].wcet = 5;
    const TaskSystem s5(heavier, 3);
    auto report = simulate_pattern(s5, pattern, periodic(s5, Rat(40)), Rat(40));
    CHECK_FALSE(report.deadline_misses.empty());
    for (const auto& miss : report.deadline_misses) {
        CHECK(miss.task == 2);
        // A job still running at the horizon reports horizon - deadline.
        CHECK(miss.lateness >= Rat(0));
        if (miss.completed) CHECK(miss.lateness > Rat(0));
    }
}

TEST_CASE("empty arrivals") {
    const auto s = fixtures::two_tasks();
    auto report = simulate_pattern(s, pattern_of(s), ArrivalSequence(2), Rat(8));
    CHECK(report.deadline_misses.empty());
    CHECK(report.jobs_released == 0);
    CHECK(report.per_task_work == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(report.processor_busy_time == std::vector<Rat>{Rat(0), Rat(0), Rat(0)});
}

TEST_CASE("horizon must be a multiple of the pattern length") {
    const auto s = fixtures::two_tasks();
    const auto p = pattern_of(s, IntervalKind::PeriodGcd);
    CHECK_THROWS(simulate_pattern(s, p, periodic(s, Rat(6)), Rat(6)));
}

TEST_CASE("trace export") {
    const auto s = fixtures::two_tasks();
    SimOptions options;
    options.record_trace = true;
    auto report = simulate_pattern(s, pattern_of(s), periodic(s, Rat(4)), Rat(4), options);
    REQUIRE_FALSE(report.trace.empty());
    const auto csv = trace_csv(report);
    CHECK(csv.rfind("time,event,task,job,processor\n", 0) == 0);
    CHECK(csv.find("0/1,arrival,1,1,") != std::string::npos);
    CHECK(csv.find("15/4,complete,2,1,") != std::string::npos);
    CHECK(to_string(TraceKind::DeadlineMiss) == "deadline-miss");
}

TEST_CASE("reduced run of the two-task system") {
    const auto s = fixtures::two_tasks();
    const auto plan = build_reduced_schedule_plan(s);
    const auto arrivals = periodic(s, Rat(40));
    auto report = simulate_reduced(s, plan, ResidualExecutor::Canonical, arrivals, Rat(40));
    CHECK(report.deadline_misses.empty());
    CHECK(report.static_migrations == 0);
    CHECK(report.static_preemptions == 0);
    CHECK(report.per_task_work == std::vector<Rat>{Rat(60), Rat(30)});
    CHECK(report.processor_busy_time[0] == Rat(40));

    SUBCASE("plain EDF on m' = 2 carries the necessary-only note") {
        auto edf = simulate_reduced(s, plan, ResidualExecutor::Edf, arrivals, Rat(40));
        CHECK(edf.static_migrations == 0);
        bool noted = false;
        for (const auto& n : edf.notes) noted = noted || n.find("only a necessary condition") != std::string::npos;
        CHECK(noted);
    }
    SUBCASE("EDF-US[1/2] on the enlarged pool") {
        auto us = simulate_reduced(s, plan, ResidualExecutor::EdfUsHalf, arrivals, Rat(40), {}, 3);
        CHECK(us.deadline_misses.empty());
        CHECK(us.static_migrations == 0);
        CHECK(us.processor_busy_time.size() == 4);
    }
}

TEST_CASE("task saturating its residual processor") {
    // u equals gamma_2: one static processor plus a full residual one.
    TaskSystem s({Task{"a", 3, 2, profile({"1.0", "1.5"})}}, 2);
    const auto plan = build_reduced_schedule_plan(s);
    CHECK(plan.residual_processors == 1);
    auto report = simulate_reduced(s, plan, ResidualExecutor::Canonical, periodic(s, Rat(20)), Rat(20));
    CHECK(report.deadline_misses.empty());
    CHECK(report.static_migrations == 0);
}

TEST_CASE("global EDF") {
    SUBCASE("one saturating task on one processor") {
        std::vector<ResidualTask> tasks{{"a", 1, Rat(4), 4}};
        const std::int64_t periods[] = {4};
        auto report = simulate_global_edf(tasks, 1, EdfVariant::Plain,
                                          generate_arrivals(periods, ArrivalModel{}, Rat(40)), Rat(40));
        CHECK(report.deadline_misses.empty());
        CHECK(report.migrations == 0);
        CHECK(report.preemptions == 0);
    }
    SUBCASE("overload misses") {
        std::vector<ResidualTask> tasks{{"a", 1, Rat(3), 4}, {"b", 2, Rat(3), 4}};
        const std::int64_t periods[] = {4, 4};
        auto report = simulate_global_edf(tasks, 1, EdfVariant::Plain,
                                          generate_arrivals(periods, ArrivalModel{}, Rat(40)), Rat(40));
        CHECK_FALSE(report.deadline_misses.empty());
    }
    SUBCASE("residual tasks of the two-task system on three processors") {
        const auto r = reduce(fixtures::two_tasks());
        const std::int64_t periods[] = {4, 4};
        auto report = simulate_global_edf(r.residual_tasks, 3, EdfVariant::UsHalf,
                                          generate_arrivals(periods, ArrivalModel{}, Rat(40)), Rat(40));
        CHECK(report.deadline_misses.empty());
        CHECK(report.preemptions <= static_cast<std::int64_t>(report.jobs_released));
        CHECK(report.migrations <= static_cast<std::int64_t>(report.jobs_released));
    }
    SUBCASE("heavy tasks outrank earlier deadlines") {
        // b has the earlier deadline but a is heavy; on one processor a runs first.
        std::vector<ResidualTask> tasks{{"a", 1, Rat(3), 4}, {"b", 2, Rat(1), 2}};
        const std::int64_t periods[] = {4, 2};
        auto arrivals = generate_arrivals(periods, ArrivalModel{}, Rat(2));
        arrivals[0] = {Rat(0)};
        SimOptions o;
        o.record_trace = true;
        auto us = simulate_global_edf(tasks, 1, EdfVariant::UsHalf, arrivals, Rat(4), o);
        auto plain = simulate_global_edf(tasks, 1, EdfVariant::Plain, arrivals, Rat(4), o);
        const auto first_start = [](const SimReport& r) {
            for (const auto& e : r.trace)
                if (e.kind == TraceKind::Start) return e.task;
            return std::size_t{0};
        };
        CHECK(first_start(us) == 1);
        CHECK(first_start(plain) == 2);
    }
}

TEST_CASE("property: canonical runs meet every deadline under sporadic arrivals") {
    gen::Rng rng(31);
    gen::SystemShape shape;
    shape.max_tasks = 5;
    shape.max_processors = 4;
    shape.periods = {1, 2, 3, 4, 6};
    shape.quarter = false;
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = gen::random_feasible_system(rng, shape);
        const auto pattern = pattern_of(s);
        ArrivalModel model{ArrivalKind::SporadicUniformJitter, Rat(gen::pick(rng, 0, 3), 2),
                           static_cast<std::uint64_t>(trial)};
        const Rat horizon = default_horizon(s);
        auto report = simulate_pattern(s, pattern, generate_arrivals(s, model, horizon), horizon);
        CHECK(report.deadline_misses.empty());
        for (const auto& job : report.jobs)
            if (job.completion) CHECK(job.delivered == job.demand);
        CHECK(report.static_migrations == 0);
    }
}

TEST_CASE("property: reduced runs keep static processors migration-free") {
    gen::Rng rng(37);
    gen::SystemShape shape;
    shape.max_tasks = 4;
    shape.max_processors = 5;
    shape.periods = {1, 2, 3, 4};
    shape.quarter = false;
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = gen::random_feasible_system(rng, shape);
        const auto plan = build_reduced_schedule_plan(s);
        if (plan.residual_processors == 0) continue;
        const Rat horizon = default_horizon(s);
        auto report = simulate_reduced(s, plan, ResidualExecutor::Canonical,
                                       generate_arrivals(s, ArrivalModel{}, horizon), horizon);
        CHECK(report.static_migrations == 0);
        CHECK(report.deadline_misses.empty());
    }
}
