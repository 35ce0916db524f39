#pragma once

// Pure state transforms for the five structural management operations.
// Every function either returns a new SystemState satisfying all TaskSet
// invariants (with rate-monotonic ranks recomputed) or an error, leaving
// the input untouched. No hidden state, no partial commits.

#include "rtreconf/model.hpp"

namespace rtreconf {

// Adds a component together with its initial bindings.
Result<SystemState> apply_add(const SystemState& state, const Component& component,
                              const std::vector<Binding>& new_bindings);

// Removes a component and the bindings originating from its required
// ports. Rejected while another component is still bound into the target;
// rebind first.
Result<SystemState> apply_remove(const SystemState& state, const std::string& target);

// Replaces the target's temporal parameters. Bindings are untouched.
Result<SystemState> apply_modify_params(const SystemState& state, const std::string& target,
                                        Tick new_wcet, Tick new_period, Tick new_deadline);

// Removes then adds bindings, atomically.
Result<SystemState> apply_rebind(const SystemState& state, const std::vector<Binding>& remove,
                                 const std::vector<Binding>& add);

// Swaps the target for a new instance with the same id. Bindings survive
// as long as the replacement keeps the bound ports; otherwise the whole
// operation fails.
Result<SystemState> apply_replace(const SystemState& state, const std::string& target,
                                  const Component& replacement);

// Dispatches a request payload to the matching apply_* function.
Result<SystemState> apply_request(const SystemState& state, const RequestPayload& payload);

// Component ids a payload structurally affects (used for quiescence and
// interference bookkeeping in the simulator). The added component of an
// AddPayload is not included: it has no live jobs to wait for.
std::vector<std::string> payload_targets(const RequestPayload& payload);

} // namespace rtreconf
