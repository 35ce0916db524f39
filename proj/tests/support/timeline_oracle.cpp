#include "timeline_oracle.hpp"

namespace oracle {

namespace {

struct Job {
    std::size_t task = 0;
    std::int64_t release = 0;
    std::int64_t deadline = 0;
    std::int64_t remaining = 0;
    bool missed = false;
};

} // namespace

RunResult run(const std::vector<Task>& tasks, std::int64_t horizon) {
    RunResult out;
    out.tasks.resize(tasks.size());
    std::vector<Job> live;

    for (std::int64_t t = 0; t < horizon; ++t) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (tasks[i].period > 0 && t % tasks[i].period == 0) {
                live.push_back(Job{i, t, t + tasks[i].deadline, tasks[i].wcet, false});
                ++out.tasks[i].released;
            }
        }

        // run one tick of the highest-rank job; FIFO within a task
        Job* pick = nullptr;
        for (Job& j : live) {
            if (j.remaining == 0) continue;
            if (pick == nullptr || tasks[j.task].rank < tasks[pick->task].rank ||
                (tasks[j.task].rank == tasks[pick->task].rank && j.release < pick->release))
                pick = &j;
        }
        if (pick != nullptr) {
            --pick->remaining;
            if (pick->remaining == 0) {
                TaskResult& tr = out.tasks[pick->task];
                ++tr.completed;
                const std::int64_t response = t + 1 - pick->release;
                if (!tr.worst_response || response > *tr.worst_response)
                    tr.worst_response = response;
            }
        }

        for (Job& j : live) {
            if (j.remaining > 0 && !j.missed && j.deadline <= t + 1) {
                j.missed = true;
                ++out.tasks[j.task].missed;
                out.any_miss = true;
            }
        }
        std::erase_if(live, [](const Job& j) { return j.remaining == 0; });
    }
    return out;
}

} // namespace oracle
