#include "rtreconf/admission.hpp"

#include <algorithm>

#include "rtreconf/ops.hpp"

namespace rtreconf {

const char* admission_reason_name(AdmissionReason r) {
    switch (r) {
        case AdmissionReason::fast_path: return "fast_path";
        case AdmissionReason::rta_pass: return "rta_pass";
        case AdmissionReason::rta_fail: return "rta_fail";
        case AdmissionReason::invalid_payload: return "invalid_payload";
        case AdmissionReason::structural_fail: return "structural_fail";
    }
    return "unknown";
}

Result<RegisterOutcome> register_operation(const SystemState& state, const ManagementOpSpec& spec) {
    if (state.registry.has(spec.kind))
        return fail<RegisterOutcome>(Errc::duplicate_kind,
                                     "operation kind " + spec.kind + " already registered");
    if (spec.wcet < 1)
        return fail<RegisterOutcome>(Errc::bad_argument, "operation cost must be >= 1");
    if (state.mgmt.period < 1)
        return fail<RegisterOutcome>(Errc::bad_argument, "management period not configured");
    if (spec.wcet > state.mgmt.period)
        return fail<RegisterOutcome>(Errc::bad_argument,
                                     "operation cost exceeds the management period");

    RegisterOutcome out;
    out.decision.before = state.mgmt;
    out.decision.after = state.mgmt;

    // Fast path: the reserved slot already covers this cost, the analysis
    // outcome cannot change.
    if (spec.wcet <= state.mgmt.cost) {
        out.state = state;
        out.state.registry.specs.emplace(spec.kind, spec);
        out.decision.accepted = true;
        out.decision.reason = AdmissionReason::fast_path;
        out.decision.detail = "cost " + std::to_string(spec.wcet) + " within reserved slot " +
                              std::to_string(state.mgmt.cost);
        return out;
    }

    ManagementTaskConfig grown = state.mgmt;
    grown.cost = std::max(state.mgmt.cost, spec.wcet);
    grown.deadline = grown.cost;

    auto report = response_time_with_mgmt(state.task_set, grown);
    out.decision.report = report;
    if (!report.schedulable) {
        out.state = state; // rejection is a no-op
        out.decision.accepted = false;
        out.decision.reason = AdmissionReason::rta_fail;
        out.decision.detail = "slot " + std::to_string(grown.cost) + " breaks schedulability";
        return out;
    }

    out.state = state;
    out.state.registry.specs.emplace(spec.kind, spec);
    out.state.mgmt = grown;
    out.decision.accepted = true;
    out.decision.reason = AdmissionReason::rta_pass;
    out.decision.after = grown;
    out.decision.detail = "slot grown to " + std::to_string(grown.cost);
    return out;
}

Result<SystemState> unregister_operation(const SystemState& state, const std::string& kind) {
    if (!state.registry.has(kind))
        return fail<SystemState>(Errc::unknown_kind, "operation kind " + kind + " not registered");

    SystemState next = state;
    next.registry.specs.erase(kind);
    next.mgmt.cost = next.registry.max_cost();
    next.mgmt.deadline = next.mgmt.cost;
    return next;
}

namespace {

// Whether applying the payload changes the temporal load or constraints
// of the system. Pure rewiring and removals can only relax the system.
bool changes_temporal_load(const SystemState& state, const RequestPayload& payload) {
    switch (payload_kind(payload)) {
        case PayloadKind::add: return true;
        case PayloadKind::remove: return false;
        case PayloadKind::modify_bindings: return false;
        case PayloadKind::modify_params: {
            const auto& p = std::get<ModifyParamsPayload>(payload);
            const Component* c = state.task_set.find(p.target);
            return !c || c->wcet != p.wcet || c->period != p.period || c->deadline != p.deadline;
        }
        case PayloadKind::replace: {
            const auto& p = std::get<ReplacePayload>(payload);
            const Component* c = state.task_set.find(p.target);
            return !c || c->wcet != p.replacement.wcet || c->period != p.replacement.period ||
                   c->deadline != p.replacement.deadline;
        }
    }
    return true;
}

} // namespace

Result<AdmissionDecision> admit_request(const SystemState& state, const Request& req) {
    if (!state.registry.has(req.kind))
        return fail<AdmissionDecision>(Errc::unknown_kind,
                                       "request kind " + req.kind + " not registered");

    AdmissionDecision decision;
    decision.before = state.mgmt;
    decision.after = state.mgmt;

    if (!payload_matches_kind(req.kind, req.payload)) {
        decision.reason = AdmissionReason::invalid_payload;
        decision.detail = "payload shape does not match kind " + req.kind;
        return decision;
    }

    auto applied = apply_request(state, req.payload);
    if (!applied) {
        decision.reason = AdmissionReason::invalid_payload;
        decision.detail = applied.error().message;
        return decision;
    }

    if (!changes_temporal_load(state, req.payload)) {
        decision.accepted = true;
        decision.reason = AdmissionReason::fast_path;
        decision.detail = "no temporal change";
        return decision;
    }

    auto report = response_time_with_mgmt(applied.value().task_set, state.mgmt);
    decision.report = report;
    if (!report.schedulable) {
        decision.reason = AdmissionReason::structural_fail;
        decision.detail = "post-operation system unschedulable";
        return decision;
    }

    decision.accepted = true;
    decision.reason = AdmissionReason::rta_pass;
    return decision;
}

} // namespace rtreconf
