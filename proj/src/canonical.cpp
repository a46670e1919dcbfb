#include "wlsched/canonical.hpp"

#include <algorithm>
#include <stdexcept>

namespace wlsched {

std::size_t SchedulePattern::segment_count() const {
    std::size_t n = 0;
    for (const auto& p : per_processor) n += p.size();
    return n;
}

std::size_t SchedulePattern::task_at(int processor, const Rat& t) const {
    if (processor < 1 || processor > processors()) throw std::out_of_range("processor index out of range");
    const Rat x = mod(t, Rat(interval_length));
    const auto& segs = per_processor[static_cast<std::size_t>(processor - 1)];
    auto it = std::upper_bound(segs.begin(), segs.end(), x,
                               [](const Rat& v, const Segment& s) { return v < s.start; });
    if (it == segs.begin()) return 0;
    --it;
    return x < it->end ? it->task : 0;
}

int SchedulePattern::parallelism_at(std::size_t task, const Rat& t) const {
    int c = 0;
    for (int p = 1; p <= processors(); ++p)
        if (task_at(p, t) == task) ++c;
    return c;
}

namespace {

class PatternWriter {
public:
    explicit PatternWriter(int processors) : rows_(static_cast<std::size_t>(processors)) {}

    void assign(int processor, const Rat& start, const Rat& end, std::size_t task) {
        if (!(start < end)) return;
        if (processor < 1 || processor > static_cast<int>(rows_.size()))
            throw std::logic_error("canonical construction ran out of processors");
        rows_[static_cast<std::size_t>(processor - 1)].push_back({start, end, task});
    }

    std::vector<std::vector<Segment>> finish() && {
        for (auto& row : rows_) {
            std::sort(row.begin(), row.end(),
                      [](const Segment& a, const Segment& b) { return a.start < b.start; });
            std::vector<Segment> merged;
            merged.reserve(row.size());
            for (auto& s : row) {
                if (!merged.empty() && merged.back().task == s.task && merged.back().end == s.start)
                    merged.back().end = s.end;
                else
                    merged.push_back(std::move(s));
            }
            row = std::move(merged);
        }
        return std::move(rows_);
    }

private:
    std::vector<std::vector<Segment>> rows_;
};

}  // namespace

CanonicalOutcome build_canonical(std::span<const DerivedParams> params, int processors,
                                 std::int64_t interval_length) {
    if (processors < 1) throw InvalidInput("processor count must be at least 1");
    if (interval_length < 1) throw InvalidInput("interval length must be a positive integer");

    Rat load(0);
    for (const auto& p : params) load += p.lambda;
    const Rat capacity(processors);
    if (capacity < load) return InfeasibleCertificate{load, processors, capacity - load};

    const Rat length(interval_length);
    PatternWriter out(processors);
    int j = processors;
    Rat t0(0);
    for (std::size_t idx = params.size(); idx-- > 0;) {
        const std::size_t task = idx + 1;
        const DerivedParams& p = params[idx];
        for (int r = 0; r < p.k; ++r) {
            out.assign(j, t0, length, task);
            out.assign(j - 1, Rat(0), t0, task);
            --j;
        }
        Rat tmp = t0 + p.ell * length;
        if (length < tmp) {
            out.assign(j, t0, length, task);
            --j;
            t0 = Rat(0);
            tmp -= length;
        }
        out.assign(j, t0, tmp, task);
        t0 = tmp;
        if (t0 == length) {
            t0 = Rat(0);
            --j;
        }
    }

    SchedulePattern pattern;
    pattern.interval_length = interval_length;
    pattern.per_processor = std::move(out).finish();
    return pattern;
}

CanonicalOutcome build_canonical(const TaskSystem& system, IntervalKind interval) {
    const auto params = derive_all(system);
    std::int64_t length = 1;
    if (interval == IntervalKind::PeriodGcd) {
        length = system.period_gcd();
        for (const auto& t : system.tasks())
            if (t.period % length != 0) throw std::logic_error("interval length does not divide a period");
    }
    return build_canonical(params, system.processors(), length);
}

namespace {

struct Piece {
    Rat start;
    Rat end;
    std::size_t value;
};

// Segments of one processor with idle gaps filled in as value 0.
std::vector<Piece> timeline(const std::vector<Segment>& segs, const Rat& length) {
    std::vector<Piece> out;
    Rat cursor(0);
    for (const auto& s : segs) {
        if (cursor < s.start) out.push_back({cursor, s.start, 0});
        out.push_back({s.start, s.end, s.task});
        cursor = s.end;
    }
    if (cursor < length) out.push_back({cursor, length, 0});
    return out;
}

}  // namespace

CanonicalReport verify_canonical(const SchedulePattern& pattern, const TaskSystem& system) {
    CanonicalReport report;
    auto violation = [&](CanonicalCondition c, int p, int q, std::string detail) {
        report.violations.push_back({c, p, q, std::move(detail)});
    };

    if (pattern.interval_length < 1)
        violation(CanonicalCondition::Structure, 0, 0, "interval length must be positive");
    if (pattern.processors() != system.processors())
        violation(CanonicalCondition::Structure, 0, 0, "pattern has " + std::to_string(pattern.processors()) +
                                                           " processors, system has " +
                                                           std::to_string(system.processors()));
    if (!report.violations.empty()) return report;

    const Rat length(pattern.interval_length);
    const int m = pattern.processors();
    for (int p = 1; p <= m; ++p) {
        const auto& segs = pattern.per_processor[static_cast<std::size_t>(p - 1)];
        Rat cursor(0);
        for (const auto& s : segs) {
            if (s.task < 1 || s.task > system.size())
                violation(CanonicalCondition::Structure, p, 0, "unknown task " + std::to_string(s.task));
            if (!(s.start < s.end) || s.start < cursor || length < s.end)
                violation(CanonicalCondition::Structure, p, 0,
                          "segment [" + s.start.str() + ", " + s.end.str() + ") out of order or range");
            cursor = s.end;
        }
    }
    if (!report.violations.empty()) return report;

    std::vector<std::size_t> low(static_cast<std::size_t>(m));
    std::vector<std::size_t> high(static_cast<std::size_t>(m));
    for (int p = 1; p <= m; ++p) {
        const auto pieces = timeline(pattern.per_processor[static_cast<std::size_t>(p - 1)], length);
        for (std::size_t i = 1; i < pieces.size(); ++i)
            if (pieces[i - 1].value < pieces[i].value)
                violation(CanonicalCondition::TimeMonotone, p, 0,
                          "value rises from " + std::to_string(pieces[i - 1].value) + " to " +
                              std::to_string(pieces[i].value) + " at t = " + pieces[i].start.str());
        std::size_t lo = pieces.front().value, hi = pieces.front().value;
        for (const auto& piece : pieces) {
            lo = std::min(lo, piece.value);
            hi = std::max(hi, piece.value);
        }
        low[static_cast<std::size_t>(p - 1)] = lo;
        high[static_cast<std::size_t>(p - 1)] = hi;
    }
    for (int p = 1; p <= m; ++p)
        for (int q = p + 1; q <= m; ++q)
            if (low[static_cast<std::size_t>(q - 1)] < high[static_cast<std::size_t>(p - 1)])
                violation(CanonicalCondition::ProcessorOrder, p, q,
                          "max on p_" + std::to_string(p) + " is " +
                              std::to_string(high[static_cast<std::size_t>(p - 1)]) + ", min on p_" +
                              std::to_string(q) + " is " + std::to_string(low[static_cast<std::size_t>(q - 1)]));

    report.is_canonical = report.violations.empty();
    return report;
}

namespace {

struct RatePiece {
    Rat start;
    Rat end;
    Rat rate;
};

std::vector<RatePiece> rate_profile(const SchedulePattern& pattern, const Task& task, std::size_t index) {
    std::vector<std::pair<Rat, int>> edges;
    for (const auto& row : pattern.per_processor)
        for (const auto& s : row)
            if (s.task == index) {
                edges.emplace_back(s.start, +1);
                edges.emplace_back(s.end, -1);
            }
    std::sort(edges.begin(), edges.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<RatePiece> out;
    int count = 0;
    for (std::size_t i = 0; i < edges.size();) {
        const Rat at = edges[i].first;
        while (i < edges.size() && edges[i].first == at) count += edges[i++].second;
        if (i < edges.size() && count > 0) {
            if (static_cast<std::size_t>(count) > task.profile.size())
                throw std::invalid_argument("pattern runs a task on more processors than its profile covers");
            out.push_back({at, edges[i].first, task.profile.rate(static_cast<std::size_t>(count))});
        }
    }
    return out;
}

Rat cumulative(const std::vector<RatePiece>& pieces, const Rat& per_interval, const Rat& length,
               const Rat& x) {
    const std::int64_t whole = floor_div(x, length);
    const Rat rest = x - Rat(whole) * length;
    Rat total = Rat(whole) * per_interval;
    for (const auto& piece : pieces) {
        if (!(piece.start < rest)) break;
        total += piece.rate * (min(piece.end, rest) - piece.start);
    }
    return total;
}

}  // namespace

Rat work_delivered(const SchedulePattern& pattern, const TaskSystem& system, std::size_t task,
                   const Rat& a, const Rat& b) {
    const Task& t = system.task(task);
    if (!(a < b)) return Rat(0);
    const auto pieces = rate_profile(pattern, t, task);
    const Rat length(pattern.interval_length);
    Rat per_interval(0);
    for (const auto& piece : pieces) per_interval += piece.rate * (piece.end - piece.start);
    return cumulative(pieces, per_interval, length, b) - cumulative(pieces, per_interval, length, a);
}

}  // namespace wlsched
