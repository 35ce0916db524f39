#pragma once

// Deliberately naive tick-by-tick preemptive fixed-priority scheduler,
// independent of the library's interval-jumping engine. Ground truth for
// response times and deadline misses: one unit of work per tick, highest
// rank first, synchronous release at tick 0.

#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

struct Task {
    std::int64_t wcet = 0;
    std::int64_t period = 0;
    std::int64_t deadline = 0;
    int rank = 0; // smaller = higher priority, unique
};

struct TaskResult {
    std::int64_t released = 0;
    std::int64_t completed = 0;
    std::int64_t missed = 0;
    std::optional<std::int64_t> worst_response;
};

struct RunResult {
    std::vector<TaskResult> tasks; // input order
    bool any_miss = false;
};

// Simulates [0, horizon). A job completing exactly at its deadline is on
// time; a job with work left when its deadline passes is missed once and
// keeps running.
RunResult run(const std::vector<Task>& tasks, std::int64_t horizon);

} // namespace oracle
