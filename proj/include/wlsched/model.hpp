#pragma once

#include "wlsched/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wlsched {

/// Raised for malformed input: empty profiles, non-positive values, length
/// mismatches. Distinct from a profile that is well-formed but violates the
/// work-limited constraints (see ProfileValidation).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Execution rates gamma_1..gamma_m of one task: a job running on j
/// processors for t time units completes gamma_j * t units of work.
/// gamma_0 = 0 is implied and never stored.
class ParallelismProfile {
public:
    ParallelismProfile() = default;
    explicit ParallelismProfile(std::vector<Rat> gammas) : gammas_(std::move(gammas)) {}

    /// Parses each entry with Rat::parse ("1.5", "3/2").
    static ParallelismProfile from_strings(const std::vector<std::string>& entries);

    std::size_t size() const { return gammas_.size(); }
    bool empty() const { return gammas_.empty(); }

    /// Rate on j processors, 0 <= j <= size(); rate(0) is 0.
    const Rat& rate(std::size_t j) const;

    /// First m rates. Prefixes of a work-limited profile are work-limited.
    ParallelismProfile prefix(std::size_t m) const;

    const std::vector<Rat>& gammas() const { return gammas_; }

    friend bool operator==(const ParallelismProfile&, const ParallelismProfile&) = default;

private:
    std::vector<Rat> gammas_;
};

enum class ProfileConstraint {
    StrictlyIncreasing,  ///< gamma_j < gamma_{j+1}
    SubLinearSpeedup,    ///< gamma_{j+1} / gamma_j < (j+1) / j
    ConcaveIncrements,   ///< gamma_{j+1} - gamma_j >= gamma_{j+2} - gamma_{j+1}
};

std::string to_string(ProfileConstraint c);

/// One violated constraint. Indices are 1-based processor counts: for the
/// first two kinds (lower, upper) = (j, j+1); for concavity they name the
/// first and last index of the triple (j, j+2).
struct ProfileViolation {
    ProfileConstraint constraint;
    std::size_t lower;
    std::size_t upper;

    std::string describe() const;
    friend bool operator==(const ProfileViolation&, const ProfileViolation&) = default;
};

struct ProfileValidation {
    std::vector<ProfileViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks the work-limited constraints on adjacent indices (the pairwise
/// forms follow by telescoping). Throws InvalidInput for an empty profile or
/// a non-positive rate.
ProfileValidation validate_profile(const ParallelismProfile& profile);

/// Sporadic task with implicit deadline: wcet C, period T (= deadline).
struct Task {
    std::string name;
    std::int64_t wcet = 0;
    std::int64_t period = 0;
    ParallelismProfile profile;

    friend bool operator==(const Task&, const Task&) = default;
};

/// Thrown when constructing a TaskSystem from a profile that is well-formed
/// but not work-limited.
class ProfileError : public InvalidInput {
public:
    ProfileError(std::size_t task_index, ProfileValidation report);
    std::size_t task_index() const { return task_index_; }
    const ProfileValidation& report() const { return report_; }

private:
    std::size_t task_index_;
    ProfileValidation report_;
};

/// Tasks tau_1..tau_n on m identical processors. A constructed TaskSystem
/// always satisfies: n >= 1, m >= 1, C >= 1, T >= 1, every profile has
/// length m and is work-limited.
class TaskSystem {
public:
    TaskSystem(std::vector<Task> tasks, int processors);

    std::size_t size() const { return tasks_.size(); }
    int processors() const { return processors_; }

    /// 1-based access, matching the tau_i numbering.
    const Task& task(std::size_t index) const;
    const std::vector<Task>& tasks() const { return tasks_; }

    /// lcm of all periods.
    std::int64_t hyperperiod() const;
    /// gcd of all periods.
    std::int64_t period_gcd() const;

    friend bool operator==(const TaskSystem&, const TaskSystem&) = default;

private:
    std::vector<Task> tasks_;
    int processors_;
};

/// u_i = C_i / T_i.
Rat utilization(const Task& task);

/// Outcome of compute_k when the task cannot meet its deadline on any
/// processor count: u_i > gamma_{i,m}.
struct InherentlyInfeasible {
    Rat utilization;
    Rat max_rate;
};

using KOutcome = std::variant<int, InherentlyInfeasible>;

/// 0 if u <= gamma_1, else the largest k with gamma_k < u.
KOutcome compute_k(const Task& task);

/// Fraction of time spent on k+1 processors, in (0, 1]. Throws
/// InvalidInput if the task is inherently infeasible.
Rat compute_ell(const Task& task);

/// k + ell: processors used per unit of time.
Rat compute_lambda(const Task& task);

struct DerivedParams {
    Rat utilization;
    int k = 0;
    Rat ell;
    Rat lambda;

    friend bool operator==(const DerivedParams&, const DerivedParams&) = default;
};

/// u, k, ell and lambda derived from the same k; the typed outcome is
/// returned instead of params for inherently infeasible tasks.
std::variant<DerivedParams, InherentlyInfeasible> derive(const Task& task);

/// Thrown by system-level analyses when one or more tasks are inherently
/// infeasible. Lists every offender (1-based index).
class InfeasibleTasksError : public std::runtime_error {
public:
    struct Offender {
        std::size_t index;
        std::string name;
        InherentlyInfeasible detail;
    };

    explicit InfeasibleTasksError(std::vector<Offender> offenders);
    const std::vector<Offender>& offenders() const { return offenders_; }

private:
    std::vector<Offender> offenders_;
};

/// Derived params for every task, in order. Throws InfeasibleTasksError.
std::vector<DerivedParams> derive_all(const TaskSystem& system);

}  // namespace wlsched
