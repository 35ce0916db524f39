#pragma once

// On-line acceptance control: registering new management-operation kinds
// against a schedulability test (with a fast path when the reserved slot
// already covers the new cost), unregistering kinds, and structural
// admission of individual requests.
//
// All functions are pure state -> (state, decision) transitions. A
// rejection never changes anything: callers keep their input state.

#include <optional>

#include "rtreconf/analysis.hpp"
#include "rtreconf/model.hpp"

namespace rtreconf {

enum class AdmissionReason {
    fast_path,       // accepted without running the schedulability test
    rta_pass,        // accepted, response-time analysis passed
    rta_fail,        // rejected, registration would break schedulability
    invalid_payload, // rejected, payload malformed or preconditions unmet
    structural_fail, // rejected, post-operation system unschedulable
};

const char* admission_reason_name(AdmissionReason r);

struct AdmissionDecision {
    bool accepted = false;
    AdmissionReason reason = AdmissionReason::invalid_payload;
    ManagementTaskConfig before;
    ManagementTaskConfig after; // == before whenever accepted == false
    std::optional<ResponseTimeReport> report;
    std::string detail;
};

struct RegisterOutcome {
    SystemState state; // input state when the decision is a rejection
    AdmissionDecision decision;
};

// Registers a new operation kind. Costs within the already reserved slot
// are accepted without analysis; larger costs re-run the response-time
// test with the grown slot and are rejected (state untouched) when any
// component would miss its deadline. The management period is fixed at
// configuration time and never changes here.
Result<RegisterOutcome> register_operation(const SystemState& state, const ManagementOpSpec& spec);

// Removes a registered kind and shrinks the management slot to the
// remaining maximum. Shrinking interference cannot hurt schedulability,
// so no test is run. Callers must not have pending requests of this kind.
Result<SystemState> unregister_operation(const SystemState& state, const std::string& kind);

// Decides whether one request may be applied: the payload must satisfy
// the structural preconditions of its operation, and when the operation
// changes temporal load (add, parameter change, replacement with
// different timing) the post-operation system must still pass the
// response-time test. Removals and pure rewiring skip the temporal check.
Result<AdmissionDecision> admit_request(const SystemState& state, const Request& req);

} // namespace rtreconf
