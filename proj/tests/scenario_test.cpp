#include "doctest.h"

#include "rtreconf/scenario.hpp"

using namespace rtreconf;

namespace {

const char* kFull = R"({
  "name": "demo",
  "tick_unit": "ms",
  "components": [
    {"id": "A", "wcet": 1, "period": 4},
    {"id": "B", "wcet": 2, "period": 6, "deadline": 5, "provides": ["log"]},
    {"id": "C", "wcet": 2, "period": 12, "requires": ["log"]}
  ],
  "bindings": [
    {"from": {"component": "C", "port": "log"}, "to": {"component": "B", "port": "log"}}
  ],
  "operations": [
    {"kind": "replace", "wcet": 1},
    {"kind": "remove", "wcet": 1}
  ],
  "mgmt": {"period": 8},
  "simulation": {
    "horizon": 24,
    "queue_capacity": 4,
    "priority_mode": "lowest",
    "seed": 42,
    "requests": [
      {"at": 0, "id": "r1", "kind": "replace", "payload": {
        "type": "replace", "target": "C",
        "component": {"id": "C", "wcet": 1, "period": 12, "requires": ["log"]}}}
    ],
    "sporadic": {"mit": 8, "kinds": [{"kind": "replace", "weight": 3}, {"kind": "remove"}]}
  }
})";

Result<Scenario> parse(const std::string& text) { return parse_scenario(text); }

std::string error_of(const std::string& text) {
    auto r = parse_scenario(text);
    REQUIRE(!r.ok());
    return r.error().message;
}

} // namespace

TEST_CASE("a full scenario parses field for field") {
    auto r = parse(kFull);
    REQUIRE(r.ok());
    const Scenario& s = r.value();
    CHECK(s.name == "demo");
    CHECK(s.tick_unit == "ms");
    REQUIRE(s.task_set.components.size() == 3);
    CHECK(s.task_set.components[0].deadline == 4); // defaults to the period
    CHECK(s.task_set.components[1].deadline == 5);
    CHECK(s.task_set.components[1].provided_ports == std::set<std::string>{"log"});
    REQUIRE(s.task_set.bindings.size() == 1);
    CHECK(s.task_set.bindings[0].from.component == "C");
    REQUIRE(s.operations.size() == 2);
    CHECK(s.operations[0].kind == "replace");
    CHECK(s.mgmt_period == 8);
    CHECK(!s.mgmt_utilization);
    CHECK(!s.snap_tolerance);
    CHECK(s.has_simulation);
    CHECK(s.horizon == 24);
    CHECK(s.queue_capacity == 4);
    CHECK(s.priority_mode == MgmtPriority::lowest);
    CHECK(s.seed == 42);
    REQUIRE(s.requests.size() == 1);
    CHECK(s.requests[0].enqueue_time == 0);
    CHECK(s.requests[0].kind == "replace");
    CHECK(std::holds_alternative<ReplacePayload>(s.requests[0].payload));
    REQUIRE(s.sporadic);
    CHECK(s.sporadic->mit == 8);
    REQUIRE(s.sporadic->kinds.size() == 2);
    CHECK(s.sporadic->kinds[0].weight == 3);
    CHECK(s.sporadic->kinds[1].weight == 1); // default
}

TEST_CASE("defaults for the minimal scenario") {
    auto r = parse(R"({"components": [{"id": "A", "wcet": 1, "period": 4}]})");
    REQUIRE(r.ok());
    const Scenario& s = r.value();
    CHECK(s.name.empty());
    CHECK(!s.has_simulation);
    CHECK(s.operations.empty());
    CHECK(!s.mgmt_period);

    auto sim = parse(R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                         "simulation": {"horizon": 10}})");
    REQUIRE(sim.ok());
    CHECK(sim.value().queue_capacity == 16);
    CHECK(sim.value().priority_mode == MgmtPriority::highest);
    CHECK(sim.value().seed == 0);
}

TEST_CASE("diagnostics carry the offending path") {
    CHECK(error_of("[1,2]").find("scenario: expected an object") != std::string::npos);
    CHECK(error_of("{nope").find("invalid JSON") != std::string::npos);
    CHECK(error_of(R"({"components": [], "zzz": 1})") == "scenario: unknown key \"zzz\"");
    CHECK(error_of(R"({})") == "components: required");
    CHECK(error_of(R"({"components": [{"id": "A", "period": 4}]})") ==
          "components[0].wcet: required");
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": 0, "period": 4}]})") ==
          "components[0].wcet: must be at least 1");
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": "1", "period": 4}]})") ==
          "components[0].wcet: expected an integer");
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": 1, "period": 4, "extra": 0}]})") ==
          "components[0]: unknown key \"extra\"");
    CHECK(error_of(R"({"components": [{"id": "has space", "wcet": 1, "period": 4}]})") ==
          "components[0].id: must be non-empty without whitespace");
    CHECK(error_of(R"({"components": [{"id": "mgmt", "wcet": 1, "period": 4}]})") ==
          "components[0].id: \"mgmt\" is reserved");
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": 1, "period": 4,
                                       "provides": ["p", "p"]}]})") ==
          "components[0].provides[1]: duplicate port \"p\"");
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                       "operations": [{"kind": "x", "wcet": 1}, {"kind": "x", "wcet": 2}]})") ==
          "operations[1].kind: duplicate operation kind \"x\"");
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                       "simulation": {"horizon": 0}})") ==
          "simulation.horizon: must be at least 1");
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                       "simulation": {"horizon": 5, "priority_mode": "middle"}})") ==
          "simulation.priority_mode: expected \"highest\" or \"lowest\"");
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                       "simulation": {"horizon": 5, "seed": -1}})") ==
          "simulation.seed: expected a non-negative integer");
}

TEST_CASE("management sizing sources are mutually exclusive") {
    const std::string prefix = R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                                   "operations": [{"kind": "x", "wcet": 1}], "mgmt": )";
    auto err = error_of(prefix + R"({"period": 8, "utilization": 10}})");
    CHECK(err.find("mutually exclusive") != std::string::npos);
    CHECK(error_of(prefix + R"({}})").find("mutually exclusive") != std::string::npos);
    CHECK(error_of(prefix + R"({"window": 100}})") == "mgmt.count: required");
    CHECK(parse(prefix + R"({"window": 100, "count": 5}})").ok());
    CHECK(parse(prefix + R"({"utilization": "7.5"}})").ok());
}

TEST_CASE("percent values accept four spellings") {
    const std::string prefix = R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                                   "operations": [{"kind": "x", "wcet": 1}],
                                   "mgmt": {"utilization": )";
    auto intform = parse(prefix + "10}}");
    REQUIRE(intform.ok());
    CHECK(intform.value().mgmt_utilization == Percent{10, 1});

    auto floatform = parse(prefix + "7.5}}");
    REQUIRE(floatform.ok());
    CHECK(floatform.value().mgmt_utilization == Percent{15, 2});

    auto strform = parse(prefix + "\"0.25\"}}");
    REQUIRE(strform.ok());
    CHECK(strform.value().mgmt_utilization == Percent{1, 4});

    auto fracform = parse(prefix + R"({"num": 1, "den": 3}}})");
    REQUIRE(fracform.ok());
    CHECK(fracform.value().mgmt_utilization == Percent{1, 3});

    CHECK(error_of(prefix + "\"ten\"}}").find("mgmt.utilization") != std::string::npos);
    CHECK(error_of(prefix + "-4}}") == "mgmt.utilization: must be non-negative");
}

TEST_CASE("cross-field validation runs at parse time") {
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": 1, "period": 4},
                                      {"id": "A", "wcet": 1, "period": 6}]})") ==
          "components: duplicate component id A");
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                       "bindings": [{"from": {"component": "A", "port": "p"},
                                     "to": {"component": "Z", "port": "q"}}]})")
              .find("bindings:") == 0);
    CHECK(error_of(R"({"components": [{"id": "A", "wcet": 5, "period": 4}]})") ==
          "components: period < wcet for A");

    const std::string head = R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                                 "operations": [{"kind": "remove", "wcet": 1}],
                                 "mgmt": {"period": 8}, "simulation": {"horizon": 10, )";
    CHECK(error_of(head + R"("requests": [
            {"at": 0, "id": "r1", "kind": "vanish",
             "payload": {"type": "remove", "target": "A"}}]}})") ==
          "simulation.requests[0].kind: operation \"vanish\" is not in the operations list");
    CHECK(error_of(head + R"("requests": [
            {"at": 0, "id": "r1", "kind": "remove",
             "payload": {"type": "remove", "target": "A"}},
            {"at": 2, "id": "r1", "kind": "remove",
             "payload": {"type": "remove", "target": "A"}}]}})") ==
          "simulation.requests[1].id: duplicate request id \"r1\"");
    CHECK(error_of(head + R"("sporadic": {"mit": 4, "kinds": [{"kind": "ghost"}]}}})") ==
          "simulation.sporadic.kinds[0].kind: operation \"ghost\" is not in the operations list");
}

TEST_CASE("payload shapes parse strictly") {
    const std::string head = R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                                 "operations": [{"kind": "add", "wcet": 1}],
                                 "mgmt": {"period": 8},
                                 "simulation": {"horizon": 10, "requests": [)";
    const std::string tail = "]}}";

    auto ok = parse(head + R"({"at": 1, "id": "r1", "kind": "add", "payload": {
        "type": "add", "component": {"id": "N", "wcet": 1, "period": 8},
        "bindings": []}})" + tail);
    REQUIRE(ok.ok());
    CHECK(std::holds_alternative<AddPayload>(ok.value().requests[0].payload));

    CHECK(error_of(head + R"({"at": 1, "id": "r1", "kind": "add",
                              "payload": {"type": "teleport"}})" + tail) ==
          "simulation.requests[0].payload.type: unknown payload type \"teleport\"");
    CHECK(error_of(head + R"({"at": 1, "id": "r1", "kind": "add",
                              "payload": {"type": "add"}})" + tail) ==
          "simulation.requests[0].payload.component: required");
    CHECK(error_of(head + R"({"at": 1, "id": "r1", "kind": "add",
                              "payload": {"type": "remove", "target": "A", "junk": 1}})" + tail) ==
          "simulation.requests[0].payload: unknown key \"junk\"");
    CHECK(error_of(head + R"({"at": -1, "id": "r1", "kind": "add",
                              "payload": {"type": "remove", "target": "A"}})" + tail) ==
          "simulation.requests[0].at: must be at least 0");
}

TEST_CASE("serialize then parse is the identity") {
    auto parsed = parse(kFull);
    REQUIRE(parsed.ok());
    auto text = serialize_scenario(parsed.value());
    auto again = parse(text);
    REQUIRE(again.ok());
    CHECK(again.value() == parsed.value());
    CHECK(serialize_scenario(again.value()) == text); // stable rendering

    // a scenario exercising the other sizing sources and payload kinds
    const char* other = R"({
      "components": [
        {"id": "a", "wcet": 1, "period": 4, "requires": ["p"]},
        {"id": "b", "wcet": 1, "period": 6, "provides": ["p"]},
        {"id": "c", "wcet": 1, "period": 12, "provides": ["p"]}
      ],
      "bindings": [
        {"from": {"component": "a", "port": "p"}, "to": {"component": "b", "port": "p"}}
      ],
      "operations": [{"kind": "modify_bindings", "wcet": 2},
                     {"kind": "modify_params", "wcet": 1},
                     {"kind": "remove", "wcet": 1},
                     {"kind": "add", "wcet": 2}],
      "mgmt": {"utilization": {"num": 22, "den": 7}, "snap_tolerance": 15},
      "simulation": {
        "horizon": 100,
        "requests": [
          {"at": 1, "id": "q1", "kind": "modify_bindings", "payload": {
            "type": "modify_bindings",
            "remove": [{"from": {"component": "a", "port": "p"},
                        "to": {"component": "b", "port": "p"}}],
            "add": [{"from": {"component": "a", "port": "p"},
                     "to": {"component": "c", "port": "p"}}]}},
          {"at": 2, "id": "q2", "kind": "modify_params", "payload": {
            "type": "modify_params", "target": "b", "wcet": 1, "period": 8}},
          {"at": 3, "id": "q3", "kind": "remove", "payload": {
            "type": "remove", "target": "c"}},
          {"at": 4, "id": "q4", "kind": "add", "payload": {
            "type": "add", "component": {"id": "d", "wcet": 1, "period": 20}}}
        ]
      }
    })";
    auto p2 = parse(other);
    REQUIRE(p2.ok());
    auto t2 = serialize_scenario(p2.value());
    auto p3 = parse(t2);
    REQUIRE(p3.ok());
    CHECK(p3.value() == p2.value());

    // window sizing round-trips too
    auto p4 = parse(R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                        "operations": [{"kind": "x", "wcet": 3}],
                        "mgmt": {"window": 120000, "count": 60}})");
    REQUIRE(p4.ok());
    auto p5 = parse(serialize_scenario(p4.value()));
    REQUIRE(p5.ok());
    CHECK(p5.value() == p4.value());
}

TEST_CASE("materializing builds the configured system") {
    auto r = parse(kFull);
    REQUIRE(r.ok());
    auto st = materialize_state(r.value());
    REQUIRE(st.ok());
    CHECK(st.value().mgmt == ManagementTaskConfig{1, 8, 1});
    CHECK(st.value().registry.specs.size() == 2);
    CHECK(st.value().task_set.find("A")->priority == 0);
    CHECK(st.value().task_set.find("C")->priority == 2);
}

TEST_CASE("utilization and window sizing feed the management period") {
    auto util = parse(R"({"components": [{"id": "A", "wcet": 1, "period": 40}],
                          "operations": [{"kind": "x", "wcet": 2}],
                          "mgmt": {"utilization": 10}})");
    REQUIRE(util.ok());
    auto st = materialize_state(util.value());
    REQUIRE(st.ok());
    CHECK(st.value().mgmt.period == 20);
    CHECK(st.value().mgmt.cost == 2);

    auto window = parse(R"({"components": [{"id": "A", "wcet": 1, "period": 40}],
                            "operations": [{"kind": "x", "wcet": 3}],
                            "mgmt": {"window": 120000, "count": 60}})");
    REQUIRE(window.ok());
    auto st2 = materialize_state(window.value());
    REQUIRE(st2.ok());
    CHECK(st2.value().mgmt.period == 2000);
}

TEST_CASE("snap tolerance pulls the period onto an existing grid") {
    // candidate 20 with component periods 4,6,12,18: 18 is within 20%
    auto r = parse(R"({"components": [
        {"id": "a", "wcet": 1, "period": 4}, {"id": "b", "wcet": 1, "period": 6},
        {"id": "c", "wcet": 1, "period": 12}, {"id": "d", "wcet": 1, "period": 18}],
      "operations": [{"kind": "x", "wcet": 2}],
      "mgmt": {"utilization": 10, "snap_tolerance": 20}})");
    REQUIRE(r.ok());
    auto st = materialize_state(r.value());
    REQUIRE(st.ok());
    CHECK(st.value().mgmt.period == 18);
    CHECK(st.value().mgmt.cost == 2);
    CHECK(st.value().mgmt.deadline == 2);
}

TEST_CASE("materialize failure modes") {
    // operations without any sizing source
    auto no_sizing = parse(R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                               "operations": [{"kind": "x", "wcet": 1}]})");
    REQUIRE(no_sizing.ok());
    CHECK(!materialize_state(no_sizing.value()).ok());

    // sizing without operations
    auto no_ops = parse(R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                            "mgmt": {"utilization": 10}})");
    REQUIRE(no_ops.ok());
    auto err = materialize_state(no_ops.value());
    REQUIRE(!err.ok());
    CHECK(err.error().message.find("registered operations") != std::string::npos);

    // period shorter than the largest cost
    auto tight = parse(R"({"components": [{"id": "A", "wcet": 1, "period": 4}],
                           "operations": [{"kind": "x", "wcet": 9}],
                           "mgmt": {"period": 8}})");
    REQUIRE(tight.ok());
    CHECK(!materialize_state(tight.value()).ok());

    // no operations at all: inert management task
    auto inert = parse(R"({"components": [{"id": "A", "wcet": 1, "period": 4}]})");
    REQUIRE(inert.ok());
    auto st = materialize_state(inert.value());
    REQUIRE(st.ok());
    CHECK(st.value().mgmt.inert());
}

TEST_CASE("materialize_sim wires the simulation section through") {
    auto r = parse(kFull);
    REQUIRE(r.ok());
    auto cfg = materialize_sim(r.value());
    REQUIRE(cfg.ok());
    CHECK(cfg.value().horizon == 24);
    CHECK(cfg.value().queue_capacity == 4);
    CHECK(cfg.value().mgmt_priority == MgmtPriority::lowest);
    REQUIRE(cfg.value().scripted_requests.size() == 1);
    REQUIRE(cfg.value().sporadic);
    CHECK(cfg.value().sporadic->seed == 42); // scenario seed feeds the source
    CHECK(cfg.value().sporadic->mit == 8);

    auto plain = parse(R"({"components": [{"id": "A", "wcet": 1, "period": 4}]})");
    REQUIRE(plain.ok());
    CHECK(!materialize_sim(plain.value()).ok());
}

TEST_CASE("loading a missing file reports an io error") {
    auto r = load_scenario_file("/nonexistent/scenario.json");
    REQUIRE(!r.ok());
    CHECK(r.error().code == Errc::io_error);
}
