#include "fixtures.hpp"
#include "generators.hpp"

#include "wlsched/render.hpp"
#include "wlsched/taskset_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <regex>

using namespace wlsched;

namespace {

constexpr const char* kTwoTasks = R"({
  "processors": 3,
  "tasks": [
    { "name": "tau_1", "C": 6, "T": 4, "gamma": ["1.0", "1.5", "2.0"] },
    { "name": "tau_2", "C": 3, "T": 4, "gamma": ["1.0", "1.2", "1.3"] }
  ]
})";

std::string location_of(const std::string& text) {
    try {
        parse_taskset_text(text);
    } catch (const ParseError& e) {
        return e.location();
    }
    return "<parsed>";
}

SchedulePattern pattern_of(const TaskSystem& s) { return std::get<SchedulePattern>(build_canonical(s)); }

// Every string leaf of a structured report that looks numeric must be p/q.
void check_no_floats(const nlohmann::json& j) {
    if (j.is_object() || j.is_array()) {
        for (const auto& v : j) check_no_floats(v);
        return;
    }
    CHECK_FALSE(j.is_number_float());
}

}  // namespace

TEST_CASE("parse the two-task document") {
    auto s = parse_taskset_text(kTwoTasks);
    CHECK(s == fixtures::two_tasks());
    CHECK(s.size() == 2);
    CHECK(s.processors() == 3);
}

TEST_CASE("fractions are accepted and names are optional") {
    auto s = parse_taskset_text(R"({"processors": 1, "tasks": [{"C": 1, "T": 3, "gamma": ["2/3"]}]})");
    CHECK(s.task(1).name == "tau_1");
    CHECK(s.task(1).profile.rate(1) == Rat(2, 3));
}

TEST_CASE("parse errors carry locations") {
    CHECK(location_of("{\n\"processors\": 3,\n]") == "line 3");
    CHECK(location_of(R"({"tasks": []})") == "processors");
    CHECK(location_of(R"({"processors": 0, "tasks": []})") == "processors");
    CHECK(location_of(R"({"processors": 1, "tasks": [{"C": 1, "T": 2, "gamma": [1.0]}]})") == "tasks[0].gamma[0]");
    CHECK(location_of(R"({"processors": 1, "tasks": [{"C": 1, "T": 2, "gamma": ["x"]}]})") == "tasks[0].gamma[0]");
    CHECK(location_of(R"({"processors": 2, "tasks": [{"C": 1, "T": 2, "gamma": ["1.0"]}]})") == "tasks[0].gamma");
    CHECK(location_of(R"({"processors": 1, "tasks": [{"C": 1.5, "T": 2, "gamma": ["1.0"]}]})") == "tasks[0].C");
    CHECK(location_of(R"({"processors": 1, "tasks": [{"C": 1, "gamma": ["1.0"]}]})") == "tasks[0].T");
    CHECK(location_of(R"({"processors": 1, "tasks": [{"C": 1, "T": 2, "D": 2, "gamma": ["1.0"]}]})") == "tasks[0].D");
    CHECK(location_of(R"({"processors": 1, "extra": 1, "tasks": []})") == "extra");
}

TEST_CASE("work-limited violations are reported at parse time") {
    try {
        parse_taskset_text(R"({"processors": 2, "tasks": [{"C": 1, "T": 2, "gamma": ["1.0", "2.0"]}]})");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.location() == "tasks[0].gamma");
        CHECK(std::string(e.what()).find("sub-linear-speedup violated at (1, 2)") != std::string::npos);
    }
}

TEST_CASE("property: serialize then parse is the identity") {
    gen::Rng rng(41);
    gen::SystemShape shape;
    shape.max_tasks = 5;
    shape.max_processors = 5;
    shape.periods = {1, 3, 7, 10};
    for (int trial = 0; trial < 100; ++trial) {
        shape.quarter = trial % 2 == 0;
        auto s = gen::random_system(rng, shape);
        CHECK(parse_taskset_text(serialize_taskset(s)) == s);
    }
    TaskSystem thirds({Task{"x", 1, 3, ParallelismProfile({Rat(1, 3), Rat(1, 2)})}}, 2);
    CHECK(parse_taskset_text(serialize_taskset(thirds)) == thirds);
}

TEST_CASE("text reports") {
    const auto s = fixtures::two_tasks();
    const auto v = check_feasibility(s);
    const auto text = render::analysis_text(s, v, 3);
    CHECK(text.find("FEASIBLE") != std::string::npos);
    CHECK(text.find("11/4 (2.750000)") != std::string::npos);
    CHECK(render::human(Rat(3, 4)) == "3/4 (0.750000)");
    CHECK(render::human(Rat(2)) == "2 (2.000000)");

    const auto sched = render::schedule_text(s, pattern_of(s));
    CHECK(sched.find("sigma_3(t) = 2 on [0, 3/4)") != std::string::npos);
    CHECK(sched.find("sigma_3(t) = 1 on [3/4, 1)") != std::string::npos);
    CHECK(sched.find("sigma_2(t) = 1 on [0, 1)") != std::string::npos);
    CHECK(sched.find("sigma_1(t) = 1 on [0, 3/4)") != std::string::npos);
    CHECK(sched.find("sigma_1(t) = 0 on [3/4, 1)") != std::string::npos);

    const auto bad = check_feasibility(fixtures::doubled_tau1());
    CHECK(render::analysis_text(fixtures::doubled_tau1(), bad, std::nullopt).find("INFEASIBLE") != std::string::npos);
}

TEST_CASE("structured reports hold rationals as p/q strings") {
    const auto s = fixtures::two_tasks();
    const auto v = check_feasibility(s);
    auto analysis = nlohmann::json::parse(render::analysis_json(s, v, 3));
    check_no_floats(analysis);
    CHECK(analysis["load"] == "11/4");
    CHECK(analysis["feasible"] == true);

    auto sched = nlohmann::json::parse(render::schedule_json(pattern_of(s)));
    check_no_floats(sched);

    const auto r = reduce(s);
    auto red = nlohmann::json::parse(render::reduction_json(r, edf_us_half_test(r, r.residual_processors)));
    check_no_floats(red);

    const Rat h(8);
    auto sim = nlohmann::json::parse(
        render::sim_json(simulate_pattern(s, pattern_of(s), generate_arrivals(s, ArrivalModel{}, h), h)));
    check_no_floats(sim);
    CHECK(sim["horizon"] == "8/1");
}

TEST_CASE("gantt output") {
    const auto s = fixtures::two_tasks();
    const auto svg = render::gantt_svg(s, pattern_of(s));
    const std::regex bar(R"(<rect class="bar")");
    const std::regex lane(R"(<rect class="lane")");
    CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), bar), std::sregex_iterator()) == 4);
    CHECK(std::distance(std::sregex_iterator(svg.begin(), svg.end(), lane), std::sregex_iterator()) == 3);
    CHECK(svg.rfind("<svg", 0) == 0);

    const auto text = render::gantt_text(s, pattern_of(s), 8);
    CHECK(text.find("p_3   |22222211|") != std::string::npos);
    CHECK(text.find("p_1   |111111..|") != std::string::npos);
}
