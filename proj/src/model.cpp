#include "wlsched/model.hpp"

#include <numeric>
#include <sstream>

namespace wlsched {

ParallelismProfile ParallelismProfile::from_strings(const std::vector<std::string>& entries) {
    std::vector<Rat> gammas;
    gammas.reserve(entries.size());
    for (const auto& e : entries) gammas.push_back(Rat::parse(e));
    return ParallelismProfile(std::move(gammas));
}

const Rat& ParallelismProfile::rate(std::size_t j) const {
    static const Rat zero{0};
    if (j == 0) return zero;
    if (j > gammas_.size()) throw std::out_of_range("processor count beyond profile length");
    return gammas_[j - 1];
}

ParallelismProfile ParallelismProfile::prefix(std::size_t m) const {
    if (m > gammas_.size()) throw std::out_of_range("prefix longer than profile");
    return ParallelismProfile({gammas_.begin(), gammas_.begin() + static_cast<std::ptrdiff_t>(m)});
}

std::string to_string(ProfileConstraint c) {
    switch (c) {
        case ProfileConstraint::StrictlyIncreasing: return "strictly-increasing";
        case ProfileConstraint::SubLinearSpeedup: return "sub-linear-speedup";
        case ProfileConstraint::ConcaveIncrements: return "concave-increments";
    }
    return "unknown";
}

std::string ProfileViolation::describe() const {
    std::ostringstream os;
    os << to_string(constraint) << " violated at (" << lower << ", " << upper << ")";
    return os.str();
}

ProfileValidation validate_profile(const ParallelismProfile& profile) {
    if (profile.empty()) throw InvalidInput("parallelism profile is empty");
    const auto& g = profile.gammas();
    for (std::size_t j = 0; j < g.size(); ++j)
        if (g[j].sign() <= 0)
            throw InvalidInput("rate gamma_" + std::to_string(j + 1) + " = " + g[j].str() +
                               " is not positive");

    ProfileValidation report;
    const std::size_t m = g.size();
    for (std::size_t j = 1; j < m; ++j) {
        const Rat& lo = g[j - 1];
        const Rat& hi = g[j];
        if (!(lo < hi))
            report.violations.push_back({ProfileConstraint::StrictlyIncreasing, j, j + 1});
        // gamma_{j+1} / gamma_j < (j+1)/j  <=>  j * gamma_{j+1} < (j+1) * gamma_j
        if (!(Rat(static_cast<std::int64_t>(j)) * hi < Rat(static_cast<std::int64_t>(j + 1)) * lo))
            report.violations.push_back({ProfileConstraint::SubLinearSpeedup, j, j + 1});
    }
    for (std::size_t j = 1; j + 2 <= m; ++j) {
        if (g[j] - g[j - 1] < g[j + 1] - g[j])
            report.violations.push_back({ProfileConstraint::ConcaveIncrements, j, j + 2});
    }
    return report;
}

namespace {

std::string profile_error_message(std::size_t index, const ProfileValidation& report) {
    std::string msg = "task " + std::to_string(index) + ": profile is not work-limited:";
    for (const auto& v : report.violations) msg += " " + v.describe() + ";";
    return msg;
}

}  // namespace

ProfileError::ProfileError(std::size_t task_index, ProfileValidation report)
    : InvalidInput(profile_error_message(task_index, report)),
      task_index_(task_index),
      report_(std::move(report)) {}

TaskSystem::TaskSystem(std::vector<Task> tasks, int processors)
    : tasks_(std::move(tasks)), processors_(processors) {
    if (processors_ < 1) throw InvalidInput("processor count must be at least 1");
    if (tasks_.empty()) throw InvalidInput("task system has no tasks");
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
        const Task& t = tasks_[i];
        const std::string where = "task " + std::to_string(i + 1) + " (" + t.name + ")";
        if (t.wcet < 1) throw InvalidInput(where + ": C must be a positive integer");
        if (t.period < 1) throw InvalidInput(where + ": T must be a positive integer");
        if (t.profile.size() != static_cast<std::size_t>(processors_))
            throw InvalidInput(where + ": profile has " + std::to_string(t.profile.size()) +
                               " entries, expected " + std::to_string(processors_));
        auto report = validate_profile(t.profile);
        if (!report.ok()) throw ProfileError(i + 1, std::move(report));
    }
}

const Task& TaskSystem::task(std::size_t index) const {
    if (index < 1 || index > tasks_.size()) throw std::out_of_range("task index out of range");
    return tasks_[index - 1];
}

std::int64_t TaskSystem::hyperperiod() const {
    std::int64_t p = 1;
    for (const auto& t : tasks_) p = std::lcm(p, t.period);
    return p;
}

std::int64_t TaskSystem::period_gcd() const {
    std::int64_t g = 0;
    for (const auto& t : tasks_) g = std::gcd(g, t.period);
    return g;
}

Rat utilization(const Task& task) { return Rat(task.wcet, task.period); }

KOutcome compute_k(const Task& task) {
    const Rat u = utilization(task);
    const auto& g = task.profile.gammas();
    if (g.empty()) throw InvalidInput("parallelism profile is empty");
    if (u <= g.front()) return 0;
    if (g.back() < u) return InherentlyInfeasible{u, g.back()};
    // Rates are strictly increasing, so the largest k with gamma_k < u is
    // found scanning down from the top.
    int k = static_cast<int>(g.size());
    while (k > 0 && !(g[static_cast<std::size_t>(k - 1)] < u)) --k;
    return k;
}

namespace {

Rat ell_for(const Task& task, int k) {
    const Rat u = utilization(task);
    const auto kk = static_cast<std::size_t>(k);
    const Rat& below = task.profile.rate(kk);
    const Rat& above = task.profile.rate(kk + 1);
    return (u - below) / (above - below);
}

int require_k(const Task& task) {
    auto k = compute_k(task);
    if (auto* bad = std::get_if<InherentlyInfeasible>(&k))
        throw InvalidInput("task " + task.name + " is inherently infeasible: u = " +
                           bad->utilization.str() + " exceeds gamma_m = " + bad->max_rate.str());
    return std::get<int>(k);
}

}  // namespace

Rat compute_ell(const Task& task) { return ell_for(task, require_k(task)); }

Rat compute_lambda(const Task& task) {
    const int k = require_k(task);
    return Rat(k) + ell_for(task, k);
}

std::variant<DerivedParams, InherentlyInfeasible> derive(const Task& task) {
    auto k = compute_k(task);
    if (auto* bad = std::get_if<InherentlyInfeasible>(&k)) return *bad;
    DerivedParams p;
    p.utilization = utilization(task);
    p.k = std::get<int>(k);
    p.ell = ell_for(task, p.k);
    p.lambda = Rat(p.k) + p.ell;
    return p;
}

namespace {

std::string offenders_message(const std::vector<InfeasibleTasksError::Offender>& offenders) {
    std::string msg = "inherently infeasible task(s):";
    for (const auto& o : offenders)
        msg += " tau_" + std::to_string(o.index) + " (" + o.name + ") u = " +
               o.detail.utilization.str() + " > gamma_m = " + o.detail.max_rate.str() + ";";
    return msg;
}

}  // namespace

InfeasibleTasksError::InfeasibleTasksError(std::vector<Offender> offenders)
    : std::runtime_error(offenders_message(offenders)), offenders_(std::move(offenders)) {}

std::vector<DerivedParams> derive_all(const TaskSystem& system) {
    std::vector<DerivedParams> params;
    std::vector<InfeasibleTasksError::Offender> offenders;
    params.reserve(system.size());
    for (std::size_t i = 1; i <= system.size(); ++i) {
        const Task& t = system.task(i);
        auto d = derive(t);
        if (auto* bad = std::get_if<InherentlyInfeasible>(&d))
            offenders.push_back({i, t.name, *bad});
        else
            params.push_back(std::get<DerivedParams>(d));
    }
    if (!offenders.empty()) throw InfeasibleTasksError(std::move(offenders));
    return params;
}

}  // namespace wlsched
