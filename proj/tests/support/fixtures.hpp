#pragma once

#include "wlsched/model.hpp"

#include <string>
#include <vector>

namespace wlsched::fixtures {

inline ParallelismProfile profile(std::initializer_list<const char*> rates) {
    std::vector<std::string> entries(rates.begin(), rates.end());
    return ParallelismProfile::from_strings(entries);
}

inline Task tau1() { return {"tau_1", 6, 4, profile({"1.0", "1.5", "2.0"})}; }
inline Task tau2() { return {"tau_2", 3, 4, profile({"1.0", "1.2", "1.3"})}; }

// Two tasks on three processors; the standard worked system.
inline TaskSystem two_tasks() { return TaskSystem({tau1(), tau2()}, 3); }

// Two copies of tau_1 on three processors: load 4.
inline TaskSystem doubled_tau1() {
    auto b = tau1();
    b.name = "tau_2";
    return TaskSystem({tau1(), b}, 3);
}

}  // namespace wlsched::fixtures
