#pragma once

// Deterministic integer-tick simulation of the component set under
// preemptive fixed-priority scheduling together with the periodic
// management task: admission-gated request queuing, one operation per
// management activation, safe-point (job boundary) commit of structural
// changes, and a low-priority demo mode that reproduces the interference
// anomaly the normal configuration is built to prevent.
//
// A Simulation is a single-threaded state machine; distinct instances may
// run on different threads. Identical configuration (including seed)
// always yields an identical trace.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtreconf/admission.hpp"
#include "rtreconf/model.hpp"

namespace rtreconf {

enum class EventKind {
    job_release,
    job_start,
    job_preempt,
    job_resume,
    job_complete,
    deadline_miss,
    mgmt_activate,
    mgmt_idle,
    op_exec_start,
    op_exec_end,
    op_commit,
    request_enqueued,
    request_rejected,
    queue_overflow,
    interference_detected,
};

const char* event_kind_name(EventKind k);

struct TraceEvent {
    Tick time = 0;
    EventKind kind = EventKind::job_release;
    std::string subject; // component id, request id, or "mgmt"
    std::vector<std::pair<std::string, std::string>> detail;
};

// One event per line: time<TAB>kind<TAB>subject<TAB>key=value pairs
// (space separated, "-" when empty). The format is frozen; golden traces
// diff against it byte for byte.
std::string format_trace_event(const TraceEvent& ev);

enum class MgmtPriority { highest, lowest };

struct WeightedKind {
    std::string kind;
    std::int64_t weight = 1;

    bool operator==(const WeightedKind&) const = default;
};

// Seeded sporadic request source. Generated requests are identity
// replacements of randomly chosen components (the continuous-substitution
// workload); consecutive arrivals are never closer than `mit`.
struct SporadicSpec {
    std::uint64_t seed = 0;
    Tick mit = 1;
    std::vector<WeightedKind> kinds;

    bool operator==(const SporadicSpec&) const = default;
};

struct SimConfig {
    SystemState initial_state;
    Tick horizon = 0;
    MgmtPriority mgmt_priority = MgmtPriority::highest;
    std::size_t queue_capacity = 16;
    std::vector<Request> scripted_requests; // arrival time = enqueue_time
    std::optional<SporadicSpec> sporadic;

    // Tooling knobs (not part of the scenario surface).
    bool record_trace = true;
    bool stop_on_first_miss = false;
};

struct ComponentStats {
    std::string id;
    std::int64_t released = 0;
    std::int64_t completed = 0;
    std::int64_t missed = 0;
    std::optional<Tick> worst_response;
};

enum class RequestOutcome {
    pending,   // staged, arrival not reached yet
    rejected,  // refused at arrival (admission) or at dequeue (stale)
    overflow,  // arrived with a full queue, dropped
    queued,    // waiting for a management slot
    executing, // owns the current management slot
    committed, // structural change applied
};

const char* request_outcome_name(RequestOutcome o);

struct RequestStats {
    std::string id;
    std::string kind;
    Tick enqueue_time = 0;
    RequestOutcome outcome = RequestOutcome::pending;
    std::optional<Tick> exec_start;
    std::optional<Tick> exec_end;
    std::optional<Tick> commit;
    std::optional<Tick> latency; // commit - enqueue_time
    Tick max_target_period = 0;  // over the components the request touches
};

struct SimSummary {
    std::vector<ComponentStats> components;
    std::vector<RequestStats> requests;
    std::int64_t total_misses = 0;
    std::int64_t total_rejections = 0;
    std::int64_t total_overflows = 0;
    std::int64_t total_commits = 0;
    std::int64_t total_interference = 0;
};

enum class EnqueueOutcome { scheduled, enqueued, rejected, overflow };

class Simulation {
  public:
    // Validates the configuration and stands the system up at tick 0 with
    // every component (and the management task) released synchronously.
    // An unschedulable initial state is simulable; it only attaches a
    // warning, so anomaly and miss behavior stay demonstrable.
    static Result<Simulation> create(SimConfig cfg);

    // Stages a request arriving at `at`. An arrival at the current instant
    // is processed immediately (admission check, queue entry) and its
    // outcome returned; later arrivals report `scheduled` and surface
    // their outcome through the trace and summary.
    Result<EnqueueOutcome> enqueue_request(const Request& req, Tick at);

    // Advances the simulation to instant t (
    // processing completions due exactly at t, but not releases at t).
    Result<void> run_until(Tick t);

    Tick now() const { return now_; }
    Tick horizon() const { return cfg_.horizon; }
    const SystemState& state() const { return state_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    const std::vector<TraceEvent>& trace() const { return trace_; }
    SimSummary summary() const;

  private:
    Simulation() = default;

    struct Job {
        std::int64_t index = 0;
        Tick release = 0;
        Tick deadline = 0;
        Tick remaining = 0;
        bool ever_ran = false;
        bool missed = false;
    };

    struct CompRuntime {
        std::string id;
        Tick next_release = 0;
        std::int64_t next_index = 0;
        std::deque<Job> live;
    };

    struct ActiveOp {
        Request request;
        Tick cost = 0;
        Tick remaining = 0;
        std::vector<std::string> targets;
        bool exec_started = false;
        bool exec_done = false;
        Tick exec_start_time = 0;
        Tick exec_end_time = 0;
    };

    struct RunnerRef {
        enum class Type { none, job, op } type = Type::none;
        std::string comp;
        std::int64_t job_index = 0;

        bool operator==(const RunnerRef&) const = default;
    };

    void emit(Tick time, EventKind kind, std::string subject,
              std::vector<std::pair<std::string, std::string>> detail);
    bool mgmt_active() const { return state_.mgmt.cost > 0; }
    CompRuntime* runtime_of(const std::string& id);
    const Component* def_of(const std::string& id) const;
    bool release_suppressed(const std::string& id) const;
    bool op_targets(const std::string& id) const;

    void process_arrival(const Request& req);
    void instant_start(Tick u);
    void instant_end(Tick u);
    void try_commit(Tick u);
    void record_miss(Tick u, const std::string& comp, Job& job);
    RunnerRef pick_runner() const;
    void handle_transition(const RunnerRef& runner);
    Tick next_boundary(const RunnerRef& runner, Tick limit) const;
    std::vector<CompRuntime*> by_rank();
    RequestStats& stats_for(const Request& req);

    SimConfig cfg_;
    SystemState state_; // live system, updated at commits
    Tick now_ = 0;
    std::vector<Request> arrivals_; // sorted by enqueue_time, stable
    std::size_t next_arrival_ = 0;
    std::vector<CompRuntime> comps_;
    std::deque<Request> queue_;
    std::optional<ActiveOp> op_;
    RunnerRef prev_runner_;
    bool halted_ = false; // stop_on_first_miss tripped

    std::vector<TraceEvent> trace_;
    std::vector<std::string> warnings_;
    std::map<std::string, ComponentStats> comp_stats_;
    std::vector<RequestStats> req_stats_;
    std::map<std::string, std::size_t> req_stats_index_;
    std::int64_t total_misses_ = 0;
    std::int64_t total_rejections_ = 0;
    std::int64_t total_overflows_ = 0;
    std::int64_t total_commits_ = 0;
    std::int64_t total_interference_ = 0;
};

// Deterministic sporadic arrival synthesis: first arrival inside [0, mit),
// consecutive gaps in [mit, 2*mit], kind drawn by weight, each request an
// identity replacement of a seeded-random component of `ts`. Reproducible
// from the seed on any platform.
Result<std::vector<Request>> generate_sporadic_requests(const TaskSet& ts, std::uint64_t seed,
                                                        Tick mit, Tick horizon,
                                                        const std::vector<WeightedKind>& kinds);

} // namespace rtreconf
