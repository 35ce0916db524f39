#pragma once

// Exact schedulability mathematics for rate-monotonic fixed-priority
// systems: priority assignment, fixed-point response-time analysis with
// and without the periodic management task, management-task sizing from
// a utilization budget or an activation window, and period snapping.

#include <optional>
#include <string>
#include <vector>

#include "rtreconf/model.hpp"

namespace rtreconf {

struct ResponseTimeEntry {
    std::string id;
    Tick deadline = 0;
    // Least fixed point of the response-time recurrence, or nullopt when
    // the iteration exceeded the deadline (unschedulable for this task).
    std::optional<Tick> response;
    int iterations = 0;

    bool met() const { return response.has_value() && *response <= deadline; }
};

struct ResponseTimeReport {
    std::vector<ResponseTimeEntry> entries; // one per component, input order
    bool schedulable = false;               // every entry met its deadline

    const ResponseTimeEntry* find(const std::string& id) const;
};

// Assigns rate-monotonic ranks: ascending period, ties broken by
// component id. Idempotent; component order is preserved, only the
// priority field changes.
TaskSet assign_rms_priorities(const TaskSet& ts);

// Worst-case response time of each component under preemptive
// fixed-priority scheduling, by fixed-point iteration from R = wcet.
// Requires ranks assigned (unique 0..n-1).
ResponseTimeReport response_time(const TaskSet& ts);

// Same analysis with the periodic management task included as interference
// above every component. With mgmt.cost == 0 this reduces exactly to
// response_time(ts). The management task itself always meets its deadline
// (it runs whole at top priority), so it contributes no entry.
ResponseTimeReport response_time_with_mgmt(const TaskSet& ts, const ManagementTaskConfig& mgmt);

// Cost of the management task: the maximum registered operation cost,
// 0 for an empty registry (inert task).
Tick max_op_cost(const OpRegistry& registry);

// Management-task period that keeps the task's CPU share within
// `budget` percent: ceil(100 * cost / budget). Rounding up means the
// achieved utilization never exceeds the budget.
Result<Tick> period_from_utilization(Tick cost, const Percent& budget);

// Management-task period guaranteeing at least `count` activations in any
// window of `window` ticks: floor(window / count).
Result<Tick> period_from_window(Tick window, std::int64_t count);

// Replaces `candidate` by the largest component period P <= candidate
// with (candidate - P) / candidate within `tolerance` percent; returns
// candidate unchanged when no period qualifies. Snapping only downward
// preserves the reserved inter-arrival guarantee.
Tick snap_period_to_existing(Tick candidate, const TaskSet& ts, const Percent& tolerance);

// Least common multiple of all component periods (plus the management
// period when given). Errors on an empty period collection or on int64
// overflow.
Result<Tick> hyperperiod(const TaskSet& ts,
                         const std::optional<ManagementTaskConfig>& mgmt = std::nullopt);

} // namespace rtreconf
