#pragma once

#include "wlsched/sim.hpp"

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace wlsched::detail {

inline constexpr std::size_t kIdle = std::numeric_limits<std::size_t>::max();

struct Release {
    std::size_t task = 0;  ///< 1-based
    std::size_t seq = 0;   ///< 1-based
    Rat arrival;
    Rat deadline;
    Rat demand;
    /// Time the job needs on a Global processor; absent when work alone
    /// decides completion.
    std::optional<Rat> budget;
};

struct EngineJob {
    Release spec;
    Rat remaining;
    Rat budget_left;
    Rat delivered{0};
    std::optional<Rat> completion;
    /// Last non-empty processor set per class (Static, Global).
    std::array<std::vector<int>, 2> last_set;

    bool done() const { return completion.has_value(); }
    bool needs_global() const { return !done() && (!spec.budget || budget_left.sign() > 0); }
};

/// Jobs currently released and unfinished, in release order.
using ActiveList = std::vector<std::size_t>;

class Policy {
public:
    virtual ~Policy() = default;
    /// Writes job indices (into `jobs`) for the processors this policy owns.
    virtual void dispatch(const Rat& t, const std::vector<EngineJob>& jobs, const ActiveList& active,
                          std::vector<std::size_t>& assignment) = 0;
    /// Next instant after t where the policy's decision may change by itself.
    virtual std::optional<Rat> next_boundary(const Rat& /*t*/) const { return std::nullopt; }
};

struct EngineConfig {
    std::size_t tasks = 0;
    std::vector<ProcessorClass> classes;  ///< one per processor
    /// Work rate of a job running on `count` processors.
    std::function<Rat(const EngineJob&, int count)> rate;
    bool record_trace = false;
};

/// Event-driven run over [0, horizon). `releases` must be sorted by arrival.
SimReport run_engine(const EngineConfig& config, std::vector<Policy*> policies, std::vector<Release> releases,
                     const Rat& horizon);

/// First active job of `task`, optionally requiring Global time left.
std::size_t earliest_job(const std::vector<EngineJob>& jobs, const ActiveList& active, std::size_t task,
                         bool needs_global);

}  // namespace wlsched::detail
