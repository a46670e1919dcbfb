#include "wlsched/render.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace wlsched::render {

using nlohmann::json;

namespace {

std::string compact(const Rat& r) {
    return r.is_integer() ? std::to_string(r.numerator()) : r.str();
}

std::string task_label(const TaskSystem& system, std::size_t index) {
    const auto& name = system.task(index).name;
    std::string label = "tau_" + std::to_string(index);
    if (!name.empty() && name != label) label += " (" + name + ")";
    return label;
}

struct Stretch {
    Rat start;
    Rat end;
    std::size_t task;
};

std::vector<Stretch> stretches(const std::vector<Segment>& segs, const Rat& length) {
    std::vector<Stretch> out;
    Rat cursor(0);
    for (const auto& s : segs) {
        if (cursor < s.start) out.push_back({cursor, s.start, 0});
        out.push_back({s.start, s.end, s.task});
        cursor = s.end;
    }
    if (cursor < length) out.push_back({cursor, length, 0});
    return out;
}

json rat(const Rat& r) { return r.str(); }

}  // namespace

std::string human(const Rat& r) { return compact(r) + " (" + r.approx(6) + ")"; }

std::string analysis_text(const TaskSystem& system, const FeasibilityVerdict& verdict,
                          std::optional<int> min_processors) {
    std::ostringstream os;
    os << "tasks: " << system.size() << "  processors: " << system.processors() << "\n\n";
    os << std::left << std::setw(18) << "task" << std::setw(6) << "C" << std::setw(6) << "T" << std::setw(22)
       << "u" << std::setw(4) << "k" << std::setw(22) << "ell" << "lambda\n";
    for (std::size_t i = 1; i <= system.size(); ++i) {
        const auto& t = system.task(i);
        const auto& p = verdict.per_task[i - 1];
        os << std::setw(18) << task_label(system, i) << std::setw(6) << t.wcet << std::setw(6) << t.period
           << std::setw(22) << human(p.utilization) << std::setw(4) << p.k << std::setw(22) << human(p.ell)
           << human(p.lambda) << "\n";
    }
    os << "\nload (sum lambda): " << human(verdict.load) << (verdict.feasible ? " <= " : " > ") << verdict.capacity
       << "\nmargin: " << human(verdict.margin) << "\n";
    if (min_processors)
        os << "minimum processors: " << *min_processors << "\n";
    else
        os << "minimum processors: none within the profile length\n";
    os << (verdict.feasible ? "FEASIBLE" : "INFEASIBLE") << "\n";
    return os.str();
}

std::string analysis_json(const TaskSystem& system, const FeasibilityVerdict& verdict,
                          std::optional<int> min_processors) {
    json doc;
    doc["feasible"] = verdict.feasible;
    doc["load"] = rat(verdict.load);
    doc["capacity"] = verdict.capacity;
    doc["margin"] = rat(verdict.margin);
    doc["min_processors"] = min_processors ? json(*min_processors) : json(nullptr);
    doc["tasks"] = json::array();
    for (std::size_t i = 1; i <= system.size(); ++i) {
        const auto& p = verdict.per_task[i - 1];
        doc["tasks"].push_back({{"index", i},
                                {"name", system.task(i).name},
                                {"u", rat(p.utilization)},
                                {"k", p.k},
                                {"ell", rat(p.ell)},
                                {"lambda", rat(p.lambda)}});
    }
    return doc.dump(2) + "\n";
}

std::string infeasible_tasks_text(const InfeasibleTasksError& error) {
    std::ostringstream os;
    for (const auto& o : error.offenders())
        os << "tau_" << o.index << " (" << o.name << "): u = " << human(o.detail.utilization)
           << " exceeds the largest rate " << human(o.detail.max_rate) << "\n";
    os << "INFEASIBLE\n";
    return os.str();
}

std::string infeasible_tasks_json(const InfeasibleTasksError& error) {
    json doc;
    doc["feasible"] = false;
    doc["inherently_infeasible"] = json::array();
    for (const auto& o : error.offenders())
        doc["inherently_infeasible"].push_back(
            {{"index", o.index}, {"name", o.name}, {"u", rat(o.detail.utilization)}, {"max_rate", rat(o.detail.max_rate)}});
    return doc.dump(2) + "\n";
}

std::string schedule_text(const TaskSystem& system, const SchedulePattern& pattern) {
    std::ostringstream os;
    const Rat length(pattern.interval_length);
    os << "canonical pattern, interval length " << pattern.interval_length << ", " << pattern.processors()
       << " processors, " << pattern.segment_count() << " segments\n";
    for (int p = pattern.processors(); p >= 1; --p) {
        for (const auto& s : stretches(pattern.per_processor[static_cast<std::size_t>(p - 1)], length)) {
            os << "sigma_" << p << "(t) = " << s.task << " on [" << compact(s.start) << ", " << compact(s.end)
               << ")   [" << s.start.approx(6) << ", " << s.end.approx(6) << ")";
            if (s.task != 0) os << "  " << task_label(system, s.task);
            else os << "  idle";
            os << "\n";
        }
    }
    return os.str();
}

std::string schedule_json(const SchedulePattern& pattern) {
    json doc;
    doc["interval_length"] = pattern.interval_length;
    doc["processors"] = json::array();
    for (int p = 1; p <= pattern.processors(); ++p) {
        json row = json::array();
        for (const auto& s : pattern.per_processor[static_cast<std::size_t>(p - 1)])
            row.push_back({{"start", rat(s.start)}, {"end", rat(s.end)}, {"task", s.task}});
        doc["processors"].push_back({{"processor", p}, {"segments", row}});
    }
    return doc.dump(2) + "\n";
}

std::string schedule_csv(const SchedulePattern& pattern) {
    std::ostringstream os;
    os << "processor,start,end,task\n";
    for (int p = 1; p <= pattern.processors(); ++p)
        for (const auto& s : pattern.per_processor[static_cast<std::size_t>(p - 1)])
            os << p << ',' << s.start.str() << ',' << s.end.str() << ',' << s.task << '\n';
    return os.str();
}

std::string certificate_text(const InfeasibleCertificate& c) {
    std::ostringstream os;
    os << "no canonical schedule: load (sum lambda) " << human(c.load) << " > " << c.capacity
       << " processors (margin " << human(c.margin) << ")\nINFEASIBLE\n";
    return os.str();
}

std::string certificate_json(const InfeasibleCertificate& c) {
    json doc{{"feasible", false}, {"load", rat(c.load)}, {"capacity", c.capacity}, {"margin", rat(c.margin)}};
    return doc.dump(2) + "\n";
}

std::string reduction_text(const TaskSystem& system, const ReducedSystem& reduced, const EdfUsHalfResult& us_half) {
    std::ostringstream os;
    os << "static processors:\n";
    if (reduced.static_assignment.empty()) os << "  (none)\n";
    for (const auto& [p, task] : reduced.static_assignment)
        os << "  p_" << p << " -> " << task_label(system, task) << "\n";
    os << "residual processors: " << reduced.residual_processors;
    if (reduced.residual_processors > 0)
        os << " (p_" << reduced.first_residual_processor() << " .. p_" << reduced.total_processors << ")";
    os << "\nresidual tasks:\n";
    Rat total(0);
    for (const auto& r : reduced.residual_tasks) {
        os << "  " << task_label(system, r.source) << "': C' = " << human(r.wcet) << ", T = " << r.period
           << ", u' = " << human(r.utilization()) << "\n";
        total += r.utilization();
    }
    os << "sum u': " << human(total) << "\n";
    os << "EDF-US[1/2] (sufficient test only): 2*sum u' - 1 = " << human(us_half.bound)
       << ", required processors " << us_half.required_processors << ", extra over reduction "
       << us_half.extra_over_reduction << (us_half.passes ? ", passes" : ", does not pass")
       << (us_half.degenerate ? " (degenerate bound <= 0, clamped to 1)" : "") << "\n";
    return os.str();
}

std::string reduction_json(const ReducedSystem& reduced, const EdfUsHalfResult& us_half) {
    json doc;
    doc["static_assignment"] = json::array();
    for (const auto& [p, task] : reduced.static_assignment)
        doc["static_assignment"].push_back({{"processor", p}, {"task", task}});
    doc["residual_processors"] = reduced.residual_processors;
    doc["residual_tasks"] = json::array();
    for (const auto& r : reduced.residual_tasks)
        doc["residual_tasks"].push_back({{"task", r.source},
                                         {"name", r.name},
                                         {"C", rat(r.wcet)},
                                         {"T", r.period},
                                         {"u", rat(r.utilization())}});
    doc["edf_us_half"] = {{"sufficient_only", true},
                          {"bound", rat(us_half.bound)},
                          {"required_processors", us_half.required_processors},
                          {"extra_over_reduction", us_half.extra_over_reduction},
                          {"passes", us_half.passes},
                          {"degenerate", us_half.degenerate}};
    return doc.dump(2) + "\n";
}

std::string sim_text(const TaskSystem& system, const SimReport& report) {
    std::ostringstream os;
    os << "horizon: " << human(report.horizon) << "\n";
    os << "jobs released: " << report.jobs_released << "\n";
    os << "deadline misses: " << report.deadline_misses.size() << "\n";
    for (const auto& m : report.deadline_misses)
        os << "  " << task_label(system, m.task) << " arrival " << compact(m.arrival) << " deadline "
           << compact(m.deadline) << " lateness " << (m.completed ? "" : ">= ") << human(m.lateness) << "\n";
    os << "preemptions: " << report.preemptions << " (static " << report.static_preemptions << ", global "
       << report.global_preemptions << ")\n";
    os << "migrations: " << report.migrations << " (static " << report.static_migrations << ", global "
       << report.global_migrations << ")\n";
    os << "work per task:\n";
    for (std::size_t i = 0; i < report.per_task_work.size(); ++i)
        os << "  " << task_label(system, i + 1) << ": " << human(report.per_task_work[i]) << "\n";
    os << "busy time per processor:\n";
    for (std::size_t p = 0; p < report.processor_busy_time.size(); ++p)
        os << "  p_" << p + 1 << ": " << human(report.processor_busy_time[p]) << "\n";
    for (const auto& n : report.notes) os << "note: " << n << "\n";
    return os.str();
}

std::string sim_json(const SimReport& report) {
    json doc;
    doc["horizon"] = rat(report.horizon);
    doc["jobs_released"] = report.jobs_released;
    doc["deadline_misses"] = json::array();
    for (const auto& m : report.deadline_misses)
        doc["deadline_misses"].push_back({{"task", m.task},
                                          {"arrival", rat(m.arrival)},
                                          {"deadline", rat(m.deadline)},
                                          {"lateness", rat(m.lateness)},
                                          {"completed", m.completed}});
    doc["preemptions"] = {{"total", report.preemptions},
                          {"static", report.static_preemptions},
                          {"global", report.global_preemptions}};
    doc["migrations"] = {{"total", report.migrations},
                         {"static", report.static_migrations},
                         {"global", report.global_migrations}};
    doc["per_task_work"] = json::array();
    for (const auto& w : report.per_task_work) doc["per_task_work"].push_back(rat(w));
    doc["processor_busy_time"] = json::array();
    for (const auto& b : report.processor_busy_time) doc["processor_busy_time"].push_back(rat(b));
    doc["notes"] = report.notes;
    return doc.dump(2) + "\n";
}

std::string gantt_text(const TaskSystem& system, const SchedulePattern& pattern, int columns) {
    std::ostringstream os;
    const Rat length(pattern.interval_length);
    auto glyph = [](std::size_t task) -> char {
        static const std::string symbols = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
        if (task == 0) return '.';
        return task <= symbols.size() ? symbols[task - 1] : '#';
    };
    for (int p = pattern.processors(); p >= 1; --p) {
        os << "p_" << std::left << std::setw(4) << p << "|";
        for (int c = 0; c < columns; ++c) {
            // Sample the middle of each cell.
            const Rat t = length * Rat(2 * c + 1, 2 * static_cast<std::int64_t>(columns));
            os << glyph(pattern.task_at(p, t));
        }
        os << "|\n";
    }
    os << std::string(7, ' ') << "0" << std::string(static_cast<std::size_t>(std::max(columns - 1, 1)), ' ')
       << pattern.interval_length << "\n\n";
    os << schedule_text(system, pattern);
    return os.str();
}

std::string gantt_svg(const TaskSystem& system, const SchedulePattern& pattern) {
    static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
    const double left = 60, top = 20, row = 32, width = 720;
    const int m = pattern.processors();
    const double height = top + row * m + 40;
    const Rat length(pattern.interval_length);
    auto x_of = [&](const Rat& t) { return left + width * (t / length).to_double(); };

    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + width + 20 << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << left + width + 20 << ' ' << height << "\">\n";
    os << "  <style>text{font-family:sans-serif;font-size:12px}</style>\n";
    for (int p = m; p >= 1; --p) {
        const double y = top + row * (m - p);
        os << "  <text class=\"processor\" x=\"8\" y=\"" << y + row / 2 + 4 << "\">p_" << p << "</text>\n";
        os << "  <rect class=\"lane\" x=\"" << left << "\" y=\"" << y + 2 << "\" width=\"" << width
           << "\" height=\"" << row - 4 << "\" fill=\"#f4f4f4\" stroke=\"#cccccc\"/>\n";
        for (const auto& s : pattern.per_processor[static_cast<std::size_t>(p - 1)]) {
            const double x0 = x_of(s.start), x1 = x_of(s.end);
            os << "  <rect class=\"bar\" data-task=\"" << s.task << "\" x=\"" << x0 << "\" y=\"" << y + 2
               << "\" width=\"" << x1 - x0 << "\" height=\"" << row - 4 << "\" fill=\""
               << palette[(s.task - 1) % std::size(palette)] << "\" stroke=\"#333333\"><title>"
               << task_label(system, s.task) << " [" << compact(s.start) << ", " << compact(s.end)
               << ")</title></rect>\n";
            os << "  <text class=\"label\" x=\"" << (x0 + x1) / 2 - 4 << "\" y=\"" << y + row / 2 + 4 << "\">"
               << s.task << "</text>\n";
        }
    }
    const double axis = top + row * m + 6;
    os << "  <line x1=\"" << left << "\" y1=\"" << axis << "\" x2=\"" << left + width << "\" y2=\"" << axis
       << "\" stroke=\"#000000\"/>\n";
    const int ticks = 4;
    for (int k = 0; k <= ticks; ++k) {
        const Rat t = length * Rat(k, ticks);
        const double x = x_of(t);
        os << "  <line x1=\"" << x << "\" y1=\"" << axis << "\" x2=\"" << x << "\" y2=\"" << axis + 5
           << "\" stroke=\"#000000\"/>\n";
        os << "  <text class=\"tick\" x=\"" << x - 8 << "\" y=\"" << axis + 18 << "\">" << compact(t) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace wlsched::render
