#include "rtreconf/simulator.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <random>
#include <set>

#include "rtreconf/analysis.hpp"
#include "rtreconf/ops.hpp"

namespace rtreconf {

namespace {

// Rejection-sampled uniform draw in [0, n): unbiased and identical on
// every platform for a given engine state.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t m = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
    const std::uint64_t bound = 0 - m; // 2^64 - m, wraparound intended
    for (;;) {
        const std::uint64_t r = rng();
        if (m == 0 || r < bound) return r % n;
    }
}

std::string tic(Tick t) { return std::to_string(t); }

} // namespace

const char* event_kind_name(EventKind k) {
    switch (k) {
    case EventKind::job_release: return "job_release";
    case EventKind::job_start: return "job_start";
    case EventKind::job_preempt: return "job_preempt";
    case EventKind::job_resume: return "job_resume";
    case EventKind::job_complete: return "job_complete";
    case EventKind::deadline_miss: return "deadline_miss";
    case EventKind::mgmt_activate: return "mgmt_activate";
    case EventKind::mgmt_idle: return "mgmt_idle";
    case EventKind::op_exec_start: return "op_exec_start";
    case EventKind::op_exec_end: return "op_exec_end";
    case EventKind::op_commit: return "op_commit";
    case EventKind::request_enqueued: return "request_enqueued";
    case EventKind::request_rejected: return "request_rejected";
    case EventKind::queue_overflow: return "queue_overflow";
    case EventKind::interference_detected: return "interference_detected";
    }
    return "unknown";
}

const char* request_outcome_name(RequestOutcome o) {
    switch (o) {
    case RequestOutcome::pending: return "pending";
    case RequestOutcome::rejected: return "rejected";
    case RequestOutcome::overflow: return "overflow";
    case RequestOutcome::queued: return "queued";
    case RequestOutcome::executing: return "executing";
    case RequestOutcome::committed: return "committed";
    }
    return "unknown";
}

std::string format_trace_event(const TraceEvent& ev) {
    std::string line = std::to_string(ev.time);
    line += '\t';
    line += event_kind_name(ev.kind);
    line += '\t';
    line += ev.subject;
    line += '\t';
    if (ev.detail.empty()) {
        line += '-';
    } else {
        bool first = true;
        for (const auto& [key, value] : ev.detail) {
            if (!first) line += ' ';
            first = false;
            line += key;
            line += '=';
            line += value;
        }
    }
    return line;
}

// ---- construction -------------------------------------------------------

Result<Simulation> Simulation::create(SimConfig cfg) {
    if (cfg.horizon < 1)
        return fail<Simulation>(Errc::bad_argument, "horizon must be at least 1 tick");
    if (cfg.queue_capacity < 1)
        return fail<Simulation>(Errc::bad_argument, "queue capacity must be at least 1");

    auto violations = validate_taskset(cfg.initial_state.task_set);
    if (!violations.empty())
        return fail<Simulation>(Errc::invalid_params,
                                "initial task set invalid: " + violations.front().message);

    const ManagementTaskConfig& mgmt = cfg.initial_state.mgmt;
    if (mgmt.cost != max_op_cost(cfg.initial_state.registry))
        return fail<Simulation>(Errc::bad_argument,
                                "management cost must equal the largest registered operation cost");
    if (mgmt.deadline != mgmt.cost)
        return fail<Simulation>(Errc::bad_argument, "management deadline must equal its cost");
    if (mgmt.cost > 0 && mgmt.period < mgmt.cost)
        return fail<Simulation>(Errc::bad_argument, "management period is shorter than its cost");

    Simulation sim;
    sim.cfg_ = std::move(cfg);
    sim.state_ = sim.cfg_.initial_state;
    sim.state_.task_set = assign_rms_priorities(sim.state_.task_set);

    if (!response_time_with_mgmt(sim.state_.task_set, sim.state_.mgmt).schedulable)
        sim.warnings_.push_back("initial state is not schedulable; expect deadline misses");

    std::vector<Request> arrivals = sim.cfg_.scripted_requests;
    for (const auto& r : arrivals) {
        if (r.enqueue_time < 0)
            return fail<Simulation>(Errc::bad_argument, "request arrives before tick 0: " + r.id);
    }
    if (sim.cfg_.sporadic.has_value()) {
        const SporadicSpec& sp = *sim.cfg_.sporadic;
        auto generated = generate_sporadic_requests(sim.state_.task_set, sp.seed, sp.mit,
                                                    sim.cfg_.horizon, sp.kinds);
        if (!generated) return Result<Simulation>(generated.error());
        auto& more = generated.value();
        arrivals.insert(arrivals.end(), more.begin(), more.end());
    }
    std::stable_sort(arrivals.begin(), arrivals.end(),
                     [](const Request& a, const Request& b) { return a.enqueue_time < b.enqueue_time; });
    std::set<std::string> seen;
    for (const auto& r : arrivals) {
        if (r.id.empty())
            return fail<Simulation>(Errc::bad_argument, "request id must not be empty");
        if (!seen.insert(r.id).second)
            return fail<Simulation>(Errc::duplicate_id, "duplicate request id: " + r.id);
    }
    sim.arrivals_ = std::move(arrivals);

    for (const auto& c : sim.state_.task_set.components) {
        CompRuntime rt;
        rt.id = c.id;
        sim.comps_.push_back(std::move(rt));
        ComponentStats cs;
        cs.id = c.id;
        sim.comp_stats_.emplace(c.id, std::move(cs));
    }
    return Result<Simulation>(std::move(sim));
}

// ---- small lookups ------------------------------------------------------

void Simulation::emit(Tick time, EventKind kind, std::string subject,
                      std::vector<std::pair<std::string, std::string>> detail) {
    if (!cfg_.record_trace) return;
    trace_.push_back(TraceEvent{time, kind, std::move(subject), std::move(detail)});
}

Simulation::CompRuntime* Simulation::runtime_of(const std::string& id) {
    for (auto& rt : comps_)
        if (rt.id == id) return &rt;
    return nullptr;
}

const Component* Simulation::def_of(const std::string& id) const {
    return state_.task_set.find(id);
}

bool Simulation::op_targets(const std::string& id) const {
    if (!op_) return false;
    return std::find(op_->targets.begin(), op_->targets.end(), id) != op_->targets.end();
}

// New releases of a targeted component are skipped between the end of the
// operation's execution and its commit, so the drain toward the safe point
// terminates.
bool Simulation::release_suppressed(const std::string& id) const {
    return op_.has_value() && op_->exec_done && op_targets(id);
}

std::vector<Simulation::CompRuntime*> Simulation::by_rank() {
    std::vector<CompRuntime*> order;
    order.reserve(comps_.size());
    for (auto& rt : comps_) order.push_back(&rt);
    std::sort(order.begin(), order.end(), [this](const CompRuntime* a, const CompRuntime* b) {
        return def_of(a->id)->priority < def_of(b->id)->priority;
    });
    return order;
}

RequestStats& Simulation::stats_for(const Request& req) {
    return req_stats_[req_stats_index_.at(req.id)];
}

// ---- request intake -----------------------------------------------------

void Simulation::process_arrival(const Request& req) {
    const Tick u = req.enqueue_time;
    RequestStats rs;
    rs.id = req.id;
    rs.kind = req.kind;
    rs.enqueue_time = u;
    for (const auto& tid : payload_targets(req.payload))
        if (const Component* def = state_.task_set.find(tid))
            rs.max_target_period = std::max(rs.max_target_period, def->period);

    auto adm = admit_request(state_, req);
    if (!adm.ok()) {
        rs.outcome = RequestOutcome::rejected;
        ++total_rejections_;
        emit(u, EventKind::request_rejected, req.id,
             {{"kind", req.kind}, {"reason", errc_name(adm.error().code)}});
    } else if (!adm.value().accepted) {
        rs.outcome = RequestOutcome::rejected;
        ++total_rejections_;
        emit(u, EventKind::request_rejected, req.id,
             {{"kind", req.kind}, {"reason", admission_reason_name(adm.value().reason)}});
    } else if (queue_.size() >= cfg_.queue_capacity) {
        rs.outcome = RequestOutcome::overflow;
        ++total_overflows_;
        emit(u, EventKind::queue_overflow, req.id,
             {{"kind", req.kind}, {"capacity", std::to_string(cfg_.queue_capacity)}});
    } else {
        queue_.push_back(req);
        rs.outcome = RequestOutcome::queued;
        emit(u, EventKind::request_enqueued, req.id,
             {{"kind", req.kind}, {"pos", std::to_string(queue_.size() - 1)}});
    }
    req_stats_index_[req.id] = req_stats_.size();
    req_stats_.push_back(std::move(rs));
}

Result<EnqueueOutcome> Simulation::enqueue_request(const Request& req, Tick at) {
    if (at < now_)
        return fail<EnqueueOutcome>(Errc::bad_argument, "arrival instant already passed");
    if (at > cfg_.horizon)
        return fail<EnqueueOutcome>(Errc::bad_argument, "arrival beyond the horizon");
    if (req.id.empty())
        return fail<EnqueueOutcome>(Errc::bad_argument, "request id must not be empty");
    if (req_stats_index_.count(req.id) != 0)
        return fail<EnqueueOutcome>(Errc::duplicate_id, "duplicate request id: " + req.id);
    for (std::size_t i = next_arrival_; i < arrivals_.size(); ++i)
        if (arrivals_[i].id == req.id)
            return fail<EnqueueOutcome>(Errc::duplicate_id, "duplicate request id: " + req.id);

    Request staged = req;
    staged.enqueue_time = at;
    if (at == now_) {
        process_arrival(staged);
        switch (req_stats_.back().outcome) {
        case RequestOutcome::queued: return EnqueueOutcome::enqueued;
        case RequestOutcome::overflow: return EnqueueOutcome::overflow;
        default: return EnqueueOutcome::rejected;
        }
    }
    auto it = std::upper_bound(arrivals_.begin() + static_cast<std::ptrdiff_t>(next_arrival_),
                               arrivals_.end(), at,
                               [](Tick t, const Request& r) { return t < r.enqueue_time; });
    arrivals_.insert(it, std::move(staged));
    return EnqueueOutcome::scheduled;
}

// ---- the engine ---------------------------------------------------------

// Instant-start phase: everything that becomes visible at the opening of
// instant u, in fixed order: request arrivals, job releases (rank order),
// management activation. Runs exactly once per instant reached.
void Simulation::instant_start(Tick u) {
    while (next_arrival_ < arrivals_.size() && arrivals_[next_arrival_].enqueue_time == u) {
        process_arrival(arrivals_[next_arrival_]);
        ++next_arrival_;
    }

    for (CompRuntime* rt : by_rank()) {
        if (rt->next_release != u) continue;
        const Component* def = def_of(rt->id);
        if (release_suppressed(rt->id)) {
            rt->next_release += def->period;
            continue;
        }
        Job job;
        job.index = rt->next_index++;
        job.release = u;
        job.deadline = u + def->deadline;
        job.remaining = def->wcet;
        rt->live.push_back(job);
        ++comp_stats_[rt->id].released;
        emit(u, EventKind::job_release, rt->id,
             {{"job", std::to_string(job.index)}, {"deadline", tic(job.deadline)}});
        rt->next_release += def->period;
    }

    if (mgmt_active() && u % state_.mgmt.period == 0) {
        const char* action = op_.has_value() ? "busy" : (queue_.empty() ? "idle" : "exec");
        emit(u, EventKind::mgmt_activate, "mgmt",
             {{"queue", std::to_string(queue_.size())}, {"action", action}});
        if (!op_.has_value() && queue_.empty()) {
            emit(u, EventKind::mgmt_idle, "mgmt", {});
        } else if (!op_.has_value()) {
            Request req = queue_.front();
            queue_.pop_front();
            // Re-validate against the live state: earlier commits may have
            // invalidated a request that was admissible on arrival.
            auto adm = admit_request(state_, req);
            const bool still_ok = adm.ok() && adm.value().accepted;
            if (!still_ok) {
                std::string reason =
                    adm.ok() ? admission_reason_name(adm.value().reason) : errc_name(adm.error().code);
                stats_for(req).outcome = RequestOutcome::rejected;
                ++total_rejections_;
                emit(u, EventKind::request_rejected, req.id,
                     {{"kind", req.kind}, {"reason", std::move(reason)}, {"stale", "1"}});
            } else {
                ActiveOp op;
                op.cost = *state_.registry.cost_of(req.kind);
                op.remaining = op.cost;
                op.targets = payload_targets(req.payload);
                op.request = std::move(req);
                stats_for(op.request).outcome = RequestOutcome::executing;
                op_ = std::move(op);
            }
        }
    }
}

Simulation::RunnerRef Simulation::pick_runner() const {
    const CompRuntime* best = nullptr;
    int best_rank = std::numeric_limits<int>::max();
    for (const auto& rt : comps_) {
        if (rt.live.empty()) continue;
        const int rank = def_of(rt.id)->priority;
        if (best == nullptr || rank < best_rank) {
            best = &rt;
            best_rank = rank;
        }
    }
    const bool op_ready = op_.has_value() && !op_->exec_done;

    RunnerRef job_ref;
    if (best != nullptr) {
        job_ref.type = RunnerRef::Type::job;
        job_ref.comp = best->id;
        job_ref.job_index = best->live.front().index;
    }
    RunnerRef op_ref;
    if (op_ready) {
        op_ref.type = RunnerRef::Type::op;
        op_ref.comp = op_->request.id;
    }

    if (cfg_.mgmt_priority == MgmtPriority::highest) {
        if (op_ready) return op_ref;
        if (best != nullptr) return job_ref;
    } else {
        if (best != nullptr) return job_ref;
        if (op_ready) return op_ref;
    }
    return RunnerRef{};
}

void Simulation::handle_transition(const RunnerRef& runner) {
    if (runner == prev_runner_) return;

    std::string by = "idle";
    if (runner.type == RunnerRef::Type::job) by = runner.comp;
    else if (runner.type == RunnerRef::Type::op) by = runner.comp;

    if (prev_runner_.type == RunnerRef::Type::job) {
        if (CompRuntime* rt = runtime_of(prev_runner_.comp)) {
            for (const Job& j : rt->live) {
                if (j.index == prev_runner_.job_index && j.remaining > 0) {
                    emit(now_, EventKind::job_preempt, prev_runner_.comp,
                         {{"job", std::to_string(j.index)}, {"by", by}});
                    break;
                }
            }
        }
    }

    if (runner.type == RunnerRef::Type::job) {
        CompRuntime* rt = runtime_of(runner.comp);
        for (Job& j : rt->live) {
            if (j.index != runner.job_index) continue;
            if (!j.ever_ran) {
                j.ever_ran = true;
                emit(now_, EventKind::job_start, runner.comp, {{"job", std::to_string(j.index)}});
            } else {
                emit(now_, EventKind::job_resume, runner.comp, {{"job", std::to_string(j.index)}});
            }
            break;
        }
        // The anomaly the management task's priority is supposed to rule
        // out: a component getting CPU while its own modification is
        // partially executed.
        if (cfg_.mgmt_priority == MgmtPriority::lowest && op_.has_value() && op_->exec_started &&
            op_targets(runner.comp)) {
            ++total_interference_;
            emit(now_, EventKind::interference_detected, runner.comp,
                 {{"request", op_->request.id}, {"kind", op_->request.kind}});
        }
    } else if (runner.type == RunnerRef::Type::op) {
        if (!op_->exec_started) {
            op_->exec_started = true;
            op_->exec_start_time = now_;
            stats_for(op_->request).exec_start = now_;
            emit(now_, EventKind::op_exec_start, op_->request.id,
                 {{"kind", op_->request.kind}, {"cost", tic(op_->cost)}});
        }
    }
    prev_runner_ = runner;
}

Tick Simulation::next_boundary(const RunnerRef& runner, Tick limit) const {
    Tick best = limit;
    auto consider = [&](Tick t) {
        if (t > now_ && t < best) best = t;
    };

    if (runner.type == RunnerRef::Type::job) {
        for (const auto& rt : comps_) {
            if (rt.id != runner.comp) continue;
            for (const Job& j : rt.live)
                if (j.index == runner.job_index) consider(now_ + j.remaining);
        }
    } else if (runner.type == RunnerRef::Type::op) {
        consider(now_ + op_->remaining);
    }

    if (next_arrival_ < arrivals_.size()) consider(arrivals_[next_arrival_].enqueue_time);
    for (const auto& rt : comps_) {
        consider(rt.next_release);
        for (const Job& j : rt.live)
            if (!j.missed) consider(j.deadline);
    }
    if (mgmt_active()) consider((now_ / state_.mgmt.period + 1) * state_.mgmt.period);
    return best;
}

void Simulation::record_miss(Tick u, const std::string& comp, Job& job) {
    job.missed = true;
    ++comp_stats_[comp].missed;
    ++total_misses_;
    emit(u, EventKind::deadline_miss, comp,
         {{"job", std::to_string(job.index)}, {"deadline", tic(job.deadline)}});
    if (cfg_.stop_on_first_miss) halted_ = true;
}

void Simulation::try_commit(Tick u) {
    if (!op_.has_value() || !op_->exec_done) return;
    for (const auto& tid : op_->targets) {
        CompRuntime* rt = runtime_of(tid);
        if (rt != nullptr && !rt->live.empty()) return; // safe point not reached
    }

    auto next = apply_request(state_, op_->request.payload);
    if (!next.ok()) {
        // Unreachable while operations stay serialized (the dequeue
        // re-validation saw this exact state); surfaced rather than hidden.
        stats_for(op_->request).outcome = RequestOutcome::rejected;
        ++total_rejections_;
        emit(u, EventKind::request_rejected, op_->request.id,
             {{"kind", op_->request.kind}, {"reason", errc_name(next.error().code)}, {"stale", "1"}});
        op_.reset();
        return;
    }

    state_ = std::move(next).value();
    ++total_commits_;
    RequestStats& rs = stats_for(op_->request);
    rs.outcome = RequestOutcome::committed;
    rs.commit = u;
    rs.latency = u - rs.enqueue_time;
    emit(u, EventKind::op_commit, op_->request.id,
         {{"kind", op_->request.kind}, {"latency", tic(*rs.latency)}});

    // Reconcile runtimes with the committed component set. Survivors keep
    // phase, counters and live jobs; targets of a parameter change or a
    // replacement restart as fresh instances at the commit instant, as does
    // an added component.
    std::vector<std::string> restart;
    if (const auto* mp = std::get_if<ModifyParamsPayload>(&op_->request.payload))
        restart.push_back(mp->target);
    else if (const auto* rp = std::get_if<ReplacePayload>(&op_->request.payload))
        restart.push_back(rp->target);

    std::map<std::string, CompRuntime> old;
    for (auto& rt : comps_) {
        std::string key = rt.id;
        old.emplace(std::move(key), std::move(rt));
    }
    std::vector<CompRuntime> reconciled;
    reconciled.reserve(state_.task_set.components.size());
    for (const auto& c : state_.task_set.components) {
        auto it = old.find(c.id);
        if (it != old.end()) {
            reconciled.push_back(std::move(it->second));
        } else {
            CompRuntime fresh;
            fresh.id = c.id;
            fresh.next_release = u;
            reconciled.push_back(std::move(fresh));
            ComponentStats cs;
            cs.id = c.id;
            comp_stats_.emplace(c.id, std::move(cs)); // keeps stats on re-add
        }
    }
    comps_ = std::move(reconciled);
    for (const auto& tid : restart) {
        if (CompRuntime* rt = runtime_of(tid)) rt->next_release = u;
    }
    op_.reset();
}

// Instant-end phase: everything due exactly at the closing of instant u,
// in fixed order: job completions, operation execution end, commit check,
// deadline misses. A job completing at its deadline is on time.
void Simulation::instant_end(Tick u) {
    for (CompRuntime* rt : by_rank()) {
        if (rt->live.empty() || rt->live.front().remaining != 0) continue;
        Job done = rt->live.front();
        rt->live.pop_front();
        ComponentStats& cs = comp_stats_[rt->id];
        ++cs.completed;
        const Tick response = u - done.release;
        if (!cs.worst_response.has_value() || response > *cs.worst_response)
            cs.worst_response = response;
        emit(u, EventKind::job_complete, rt->id,
             {{"job", std::to_string(done.index)}, {"response", tic(response)}});
    }

    if (op_.has_value() && !op_->exec_done && op_->remaining == 0) {
        op_->exec_done = true;
        op_->exec_end_time = u;
        stats_for(op_->request).exec_end = u;
        emit(u, EventKind::op_exec_end, op_->request.id, {{"kind", op_->request.kind}});
    }

    try_commit(u);

    for (CompRuntime* rt : by_rank()) {
        for (Job& j : rt->live) {
            if (!j.missed && j.deadline == u) record_miss(u, rt->id, j);
        }
    }
}

Result<void> Simulation::run_until(Tick t) {
    if (t < now_) return Result<void>(Error{Errc::bad_argument, "cannot run backwards"});
    if (t > cfg_.horizon)
        return Result<void>(Error{Errc::bad_argument, "target instant beyond the horizon"});

    while (now_ < t && !halted_) {
        instant_start(now_);
        const RunnerRef runner = pick_runner();
        handle_transition(runner);
        const Tick next = next_boundary(runner, t);
        assert(next > now_);

        if (runner.type == RunnerRef::Type::job) {
            CompRuntime* rt = runtime_of(runner.comp);
            for (Job& j : rt->live) {
                if (j.index == runner.job_index) {
                    j.remaining -= next - now_;
                    assert(j.remaining >= 0);
                    break;
                }
            }
        } else if (runner.type == RunnerRef::Type::op) {
            op_->remaining -= next - now_;
            assert(op_->remaining >= 0);
        }

        now_ = next;
        instant_end(now_);
    }
    return Result<void>();
}

SimSummary Simulation::summary() const {
    SimSummary s;
    s.components.reserve(comp_stats_.size());
    for (const auto& [id, cs] : comp_stats_) s.components.push_back(cs);
    s.requests = req_stats_;
    s.total_misses = total_misses_;
    s.total_rejections = total_rejections_;
    s.total_overflows = total_overflows_;
    s.total_commits = total_commits_;
    s.total_interference = total_interference_;
    return s;
}

// ---- sporadic workload ----------------------------------------------------

Result<std::vector<Request>> generate_sporadic_requests(const TaskSet& ts, std::uint64_t seed,
                                                        Tick mit, Tick horizon,
                                                        const std::vector<WeightedKind>& kinds) {
    using Out = std::vector<Request>;
    if (mit < 1) return fail<Out>(Errc::bad_argument, "minimum inter-arrival time must be >= 1");
    if (horizon < 0) return fail<Out>(Errc::bad_argument, "horizon must be non-negative");
    if (kinds.empty()) return fail<Out>(Errc::bad_argument, "no request kinds to draw from");
    if (ts.components.empty())
        return fail<Out>(Errc::bad_argument, "no components to target");
    std::int64_t total_weight = 0;
    for (const auto& wk : kinds) {
        if (wk.weight < 1 || wk.weight > 1'000'000'000)
            return fail<Out>(Errc::bad_argument, "kind weight out of range: " + wk.kind);
        total_weight += wk.weight;
    }

    std::mt19937_64 rng(seed);
    Out out;
    Tick t = static_cast<Tick>(uniform_below(rng, static_cast<std::uint64_t>(mit)));
    std::int64_t serial = 1;
    while (t < horizon) {
        std::int64_t pick =
            static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(total_weight)));
        const WeightedKind* chosen = &kinds.front();
        for (const auto& wk : kinds) {
            if (pick < wk.weight) {
                chosen = &wk;
                break;
            }
            pick -= wk.weight;
        }
        const Component& target =
            ts.components[uniform_below(rng, static_cast<std::uint64_t>(ts.components.size()))];

        Request req;
        req.id = "sp" + std::to_string(serial++);
        req.kind = chosen->kind;
        req.payload = ReplacePayload{target.id, target};
        req.enqueue_time = t;
        out.push_back(std::move(req));

        t += mit + static_cast<Tick>(uniform_below(rng, static_cast<std::uint64_t>(mit) + 1));
    }
    return out;
}

} // namespace rtreconf
