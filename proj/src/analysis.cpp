#include "rtreconf/analysis.hpp"

#include <algorithm>
#include <numeric>

namespace rtreconf {

const ResponseTimeEntry* ResponseTimeReport::find(const std::string& id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

TaskSet assign_rms_priorities(const TaskSet& ts) {
    std::vector<const Component*> order;
    order.reserve(ts.components.size());
    for (const auto& c : ts.components) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const Component* a, const Component* b) {
        if (a->period != b->period) return a->period < b->period;
        return a->id < b->id;
    });

    TaskSet out = ts;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        for (auto& c : out.components)
            if (c.id == order[rank]->id) c.priority = static_cast<int>(rank);
    }
    return out;
}

namespace {

struct Interferer {
    Tick wcet;
    Tick period;
};

// Least fixed point of R = wcet + sum over interferers of ceil(R/T_j)*C_j,
// iterated from R = wcet. Stops as soon as R exceeds the deadline.
ResponseTimeEntry fixed_point(const std::string& id, Tick wcet, Tick deadline,
                              const std::vector<Interferer>& hp) {
    ResponseTimeEntry entry;
    entry.id = id;
    entry.deadline = deadline;

    Tick r = wcet;
    while (true) {
        Tick next = wcet;
        for (const auto& j : hp) next += ceil_div(r, j.period) * j.wcet;
        ++entry.iterations;
        if (next == r) {
            entry.response = r;
            return entry;
        }
        if (next > deadline) return entry; // diverged: unschedulable for this task
        r = next;
    }
}

ResponseTimeReport analyze(const TaskSet& ts, std::optional<Interferer> mgmt) {
    ResponseTimeReport report;
    report.schedulable = true;
    for (const auto& c : ts.components) {
        std::vector<Interferer> hp;
        if (mgmt) hp.push_back(*mgmt);
        for (const auto& other : ts.components)
            if (other.priority < c.priority) hp.push_back({other.wcet, other.period});

        auto entry = fixed_point(c.id, c.wcet, c.deadline, hp);
        report.schedulable = report.schedulable && entry.met();
        report.entries.push_back(std::move(entry));
    }
    return report;
}

} // namespace

ResponseTimeReport response_time(const TaskSet& ts) { return analyze(ts, std::nullopt); }

ResponseTimeReport response_time_with_mgmt(const TaskSet& ts, const ManagementTaskConfig& mgmt) {
    if (mgmt.inert()) return analyze(ts, std::nullopt);
    return analyze(ts, Interferer{mgmt.cost, mgmt.period});
}

Tick max_op_cost(const OpRegistry& registry) { return registry.max_cost(); }

Result<Tick> period_from_utilization(Tick cost, const Percent& budget) {
    if (cost < 1) return fail<Tick>(Errc::bad_argument, "cost must be >= 1");
    if (budget.num <= 0 || budget.den <= 0)
        return fail<Tick>(Errc::bad_argument, "utilization budget must be positive");
    if (!budget.less_equal(Percent::of(100)))
        return fail<Tick>(Errc::bad_argument, "utilization budget above 100%");

    // ceil(100 * cost * den / num), exact.
    __int128 numerator = static_cast<__int128>(100) * cost * budget.den;
    __int128 period = (numerator + budget.num - 1) / budget.num;
    if (period > INT64_MAX) return fail<Tick>(Errc::bad_argument, "period overflows tick range");
    return static_cast<Tick>(period);
}

Result<Tick> period_from_window(Tick window, std::int64_t count) {
    if (count < 1) return fail<Tick>(Errc::bad_argument, "count must be >= 1");
    if (window < count)
        return fail<Tick>(Errc::bad_argument, "window shorter than requested activation count");
    return window / count;
}

Tick snap_period_to_existing(Tick candidate, const TaskSet& ts, const Percent& tolerance) {
    std::optional<Tick> best;
    for (const auto& c : ts.components) {
        if (c.period > candidate) continue;
        // (candidate - P) / candidate <= tolerance/100, cross-multiplied.
        __int128 lhs = static_cast<__int128>(candidate - c.period) * 100 * tolerance.den;
        __int128 rhs = static_cast<__int128>(candidate) * tolerance.num;
        if (lhs > rhs) continue;
        if (!best || c.period > *best) best = c.period;
    }
    return best.value_or(candidate);
}

Result<Tick> hyperperiod(const TaskSet& ts, const std::optional<ManagementTaskConfig>& mgmt) {
    std::vector<Tick> periods;
    for (const auto& c : ts.components) periods.push_back(c.period);
    if (mgmt && !mgmt->inert()) periods.push_back(mgmt->period);
    if (periods.empty()) return fail<Tick>(Errc::bad_argument, "no periods to combine");

    Tick acc = 1;
    for (Tick p : periods) {
        if (p < 1) return fail<Tick>(Errc::bad_argument, "period must be >= 1");
        Tick g = std::gcd(acc, p);
        __int128 next = static_cast<__int128>(acc / g) * p;
        if (next > INT64_MAX) return fail<Tick>(Errc::bad_argument, "hyperperiod overflows tick range");
        acc = static_cast<Tick>(next);
    }
    return acc;
}

} // namespace rtreconf
