#include "rtreconf/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rtreconf/analysis.hpp"

namespace rtreconf {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string field(const std::string& path, const char* key) {
    return path.empty() ? std::string(key) : path + "." + key;
}

std::string elem(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

template <typename T>
Result<T> bad(const std::string& path, const std::string& what) {
    return fail<T>(Errc::bad_payload, path + ": " + what);
}

Result<void> check_keys(const json& j, const std::string& path,
                        std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known)
            return Error{Errc::bad_payload, path + ": unknown key \"" + item.key() + "\""};
    }
    return Result<void>();
}

Result<void> want_object(const json& j, const std::string& path) {
    if (!j.is_object()) return Error{Errc::bad_payload, path + ": expected an object"};
    return Result<void>();
}

Result<void> want_array(const json& j, const std::string& path) {
    if (!j.is_array()) return Error{Errc::bad_payload, path + ": expected an array"};
    return Result<void>();
}

Result<Tick> tick_at(const json& obj, const std::string& path, const char* key,
                     std::optional<Tick> def, Tick min_value) {
    const std::string full = field(path, key);
    if (!obj.contains(key)) {
        if (def.has_value()) return *def;
        return bad<Tick>(full, "required");
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) return bad<Tick>(full, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        return bad<Tick>(full, "out of range");
    const Tick t = v.get<Tick>();
    if (t < min_value) return bad<Tick>(full, "must be at least " + std::to_string(min_value));
    return t;
}

Result<std::string> string_at(const json& obj, const std::string& path, const char* key,
                              std::optional<std::string> def) {
    const std::string full = field(path, key);
    if (!obj.contains(key)) {
        if (def.has_value()) return *def;
        return bad<std::string>(full, "required");
    }
    const json& v = obj.at(key);
    if (!v.is_string()) return bad<std::string>(full, "expected a string");
    return v.get<std::string>();
}

bool clean_token(const std::string& s) {
    if (s.empty()) return false;
    return std::none_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isspace(c) != 0 || std::iscntrl(c) != 0;
    });
}

// Identifiers end up as trace subjects and key=value details; whitespace
// would break the line format, and "mgmt" is the management task's subject.
Result<std::string> id_at(const json& obj, const std::string& path, const char* key) {
    auto s = string_at(obj, path, key, std::nullopt);
    if (!s) return s;
    if (!clean_token(s.value()))
        return bad<std::string>(field(path, key), "must be non-empty without whitespace");
    if (s.value() == "mgmt") return bad<std::string>(field(path, key), "\"mgmt\" is reserved");
    return s;
}

Result<Percent> percent_at(const json& obj, const std::string& path, const char* key) {
    const std::string full = field(path, key);
    const json& v = obj.at(key);
    if (v.is_number_integer()) {
        if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
            return bad<Percent>(full, "out of range");
        const std::int64_t n = v.get<std::int64_t>();
        if (n < 0) return bad<Percent>(full, "must be non-negative");
        return Percent::of(n);
    }
    if (v.is_number_float()) {
        auto p = Percent::parse(v.dump());
        if (!p) return bad<Percent>(full, "not representable as a plain decimal; use a string");
        return *p;
    }
    if (v.is_string()) {
        auto p = Percent::parse(v.get<std::string>());
        if (!p) return bad<Percent>(full, "expected a plain non-negative decimal like \"7.5\"");
        return *p;
    }
    if (v.is_object()) {
        if (auto r = check_keys(v, full, {"num", "den"}); !r) return r.error();
        auto num = tick_at(v, full, "num", std::nullopt, 0);
        if (!num) return num.error();
        auto den = tick_at(v, full, "den", std::nullopt, 1);
        if (!den) return den.error();
        return Percent{num.value(), den.value()};
    }
    return bad<Percent>(full, "expected a number, a decimal string, or {num, den}");
}

Result<std::set<std::string>> ports_at(const json& obj, const std::string& path, const char* key) {
    std::set<std::string> out;
    if (!obj.contains(key)) return out;
    const std::string full = field(path, key);
    const json& v = obj.at(key);
    if (auto r = want_array(v, full); !r) return r.error();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const json& p = v[i];
        if (!p.is_string() || !clean_token(p.get<std::string>()))
            return bad<std::set<std::string>>(elem(full, i),
                                              "expected a non-empty port name without whitespace");
        if (!out.insert(p.get<std::string>()).second)
            return bad<std::set<std::string>>(elem(full, i),
                                              "duplicate port \"" + p.get<std::string>() + "\"");
    }
    return out;
}

Result<Component> parse_component(const json& j, const std::string& path) {
    if (auto r = want_object(j, path); !r) return r.error();
    if (auto r = check_keys(j, path, {"id", "wcet", "period", "deadline", "provides", "requires"});
        !r)
        return r.error();
    Component c;
    auto id = id_at(j, path, "id");
    if (!id) return id.error();
    c.id = std::move(id).value();
    auto wcet = tick_at(j, path, "wcet", std::nullopt, 1);
    if (!wcet) return wcet.error();
    c.wcet = wcet.value();
    auto period = tick_at(j, path, "period", std::nullopt, 1);
    if (!period) return period.error();
    c.period = period.value();
    auto deadline = tick_at(j, path, "deadline", c.period, 1);
    if (!deadline) return deadline.error();
    c.deadline = deadline.value();
    auto provides = ports_at(j, path, "provides");
    if (!provides) return provides.error();
    c.provided_ports = std::move(provides).value();
    auto requires_ = ports_at(j, path, "requires");
    if (!requires_) return requires_.error();
    c.required_ports = std::move(requires_).value();
    return c;
}

Result<PortRef> parse_portref(const json& j, const std::string& path) {
    if (auto r = want_object(j, path); !r) return r.error();
    if (auto r = check_keys(j, path, {"component", "port"}); !r) return r.error();
    auto comp = id_at(j, path, "component");
    if (!comp) return comp.error();
    auto port = string_at(j, path, "port", std::nullopt);
    if (!port) return port.error();
    if (!clean_token(port.value()))
        return bad<PortRef>(field(path, "port"), "must be non-empty without whitespace");
    return PortRef{std::move(comp).value(), std::move(port).value()};
}

Result<Binding> parse_binding(const json& j, const std::string& path) {
    if (auto r = want_object(j, path); !r) return r.error();
    if (auto r = check_keys(j, path, {"from", "to"}); !r) return r.error();
    if (!j.contains("from")) return bad<Binding>(field(path, "from"), "required");
    if (!j.contains("to")) return bad<Binding>(field(path, "to"), "required");
    auto from = parse_portref(j.at("from"), field(path, "from"));
    if (!from) return from.error();
    auto to = parse_portref(j.at("to"), field(path, "to"));
    if (!to) return to.error();
    return Binding{std::move(from).value(), std::move(to).value()};
}

Result<std::vector<Binding>> parse_bindings(const json& j, const std::string& path) {
    if (auto r = want_array(j, path); !r) return r.error();
    std::vector<Binding> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto b = parse_binding(j[i], elem(path, i));
        if (!b) return b.error();
        out.push_back(std::move(b).value());
    }
    return out;
}

Result<RequestPayload> parse_payload(const json& j, const std::string& path) {
    if (auto r = want_object(j, path); !r) return r.error();
    auto type = string_at(j, path, "type", std::nullopt);
    if (!type) return type.error();
    const std::string& t = type.value();

    if (t == "add") {
        if (auto r = check_keys(j, path, {"type", "component", "bindings"}); !r) return r.error();
        if (!j.contains("component")) return bad<RequestPayload>(field(path, "component"), "required");
        auto comp = parse_component(j.at("component"), field(path, "component"));
        if (!comp) return comp.error();
        AddPayload p;
        p.component = std::move(comp).value();
        if (j.contains("bindings")) {
            auto bs = parse_bindings(j.at("bindings"), field(path, "bindings"));
            if (!bs) return bs.error();
            p.bindings = std::move(bs).value();
        }
        return RequestPayload{std::move(p)};
    }
    if (t == "remove") {
        if (auto r = check_keys(j, path, {"type", "target"}); !r) return r.error();
        auto target = id_at(j, path, "target");
        if (!target) return target.error();
        return RequestPayload{RemovePayload{std::move(target).value()}};
    }
    if (t == "modify_params") {
        if (auto r = check_keys(j, path, {"type", "target", "wcet", "period", "deadline"}); !r)
            return r.error();
        auto target = id_at(j, path, "target");
        if (!target) return target.error();
        auto wcet = tick_at(j, path, "wcet", std::nullopt, 1);
        if (!wcet) return wcet.error();
        auto period = tick_at(j, path, "period", std::nullopt, 1);
        if (!period) return period.error();
        auto deadline = tick_at(j, path, "deadline", period.value(), 1);
        if (!deadline) return deadline.error();
        return RequestPayload{ModifyParamsPayload{std::move(target).value(), wcet.value(),
                                                  period.value(), deadline.value()}};
    }
    if (t == "modify_bindings") {
        if (auto r = check_keys(j, path, {"type", "remove", "add"}); !r) return r.error();
        RebindPayload p;
        if (j.contains("remove")) {
            auto bs = parse_bindings(j.at("remove"), field(path, "remove"));
            if (!bs) return bs.error();
            p.remove = std::move(bs).value();
        }
        if (j.contains("add")) {
            auto bs = parse_bindings(j.at("add"), field(path, "add"));
            if (!bs) return bs.error();
            p.add = std::move(bs).value();
        }
        return RequestPayload{std::move(p)};
    }
    if (t == "replace") {
        if (auto r = check_keys(j, path, {"type", "target", "component"}); !r) return r.error();
        auto target = id_at(j, path, "target");
        if (!target) return target.error();
        if (!j.contains("component")) return bad<RequestPayload>(field(path, "component"), "required");
        auto comp = parse_component(j.at("component"), field(path, "component"));
        if (!comp) return comp.error();
        return RequestPayload{ReplacePayload{std::move(target).value(), std::move(comp).value()}};
    }
    return bad<RequestPayload>(field(path, "type"), "unknown payload type \"" + t + "\"");
}

Result<Request> parse_request(const json& j, const std::string& path) {
    if (auto r = want_object(j, path); !r) return r.error();
    if (auto r = check_keys(j, path, {"at", "id", "kind", "payload"}); !r) return r.error();
    Request req;
    auto at = tick_at(j, path, "at", std::nullopt, 0);
    if (!at) return at.error();
    req.enqueue_time = at.value();
    auto id = id_at(j, path, "id");
    if (!id) return id.error();
    req.id = std::move(id).value();
    auto kind = id_at(j, path, "kind");
    if (!kind) return kind.error();
    req.kind = std::move(kind).value();
    if (!j.contains("payload")) return bad<Request>(field(path, "payload"), "required");
    auto payload = parse_payload(j.at("payload"), field(path, "payload"));
    if (!payload) return payload.error();
    req.payload = std::move(payload).value();
    return req;
}

Result<void> parse_mgmt(const json& j, const std::string& path, Scenario& out) {
    if (auto r = want_object(j, path); !r) return r;
    if (auto r = check_keys(j, path, {"period", "utilization", "window", "count", "snap_tolerance"});
        !r)
        return r;
    int sources = 0;
    if (j.contains("period")) {
        auto p = tick_at(j, path, "period", std::nullopt, 1);
        if (!p) return p.error();
        out.mgmt_period = p.value();
        ++sources;
    }
    if (j.contains("utilization")) {
        auto u = percent_at(j, path, "utilization");
        if (!u) return u.error();
        out.mgmt_utilization = u.value();
        ++sources;
    }
    if (j.contains("window") || j.contains("count")) {
        auto w = tick_at(j, path, "window", std::nullopt, 1);
        if (!w) return w.error();
        auto c = tick_at(j, path, "count", std::nullopt, 1);
        if (!c) return c.error();
        out.mgmt_window = WindowSizing{w.value(), c.value()};
        ++sources;
    }
    if (sources != 1)
        return Error{Errc::bad_payload,
                     path + ": period, utilization, and window/count are mutually exclusive; "
                            "give exactly one"};
    if (j.contains("snap_tolerance")) {
        auto t = percent_at(j, path, "snap_tolerance");
        if (!t) return t.error();
        out.snap_tolerance = t.value();
    }
    return Result<void>();
}

Result<void> parse_simulation(const json& j, const std::string& path, Scenario& out) {
    if (auto r = want_object(j, path); !r) return r;
    if (auto r = check_keys(
            j, path, {"horizon", "queue_capacity", "priority_mode", "seed", "requests", "sporadic"});
        !r)
        return r;
    out.has_simulation = true;
    auto horizon = tick_at(j, path, "horizon", std::nullopt, 1);
    if (!horizon) return horizon.error();
    out.horizon = horizon.value();
    auto cap = tick_at(j, path, "queue_capacity", 16, 1);
    if (!cap) return cap.error();
    out.queue_capacity = static_cast<std::size_t>(cap.value());
    auto mode = string_at(j, path, "priority_mode", std::string("highest"));
    if (!mode) return mode.error();
    if (mode.value() == "highest") out.priority_mode = MgmtPriority::highest;
    else if (mode.value() == "lowest") out.priority_mode = MgmtPriority::lowest;
    else return Error{Errc::bad_payload,
                      field(path, "priority_mode") + ": expected \"highest\" or \"lowest\""};
    if (j.contains("seed")) {
        const json& v = j.at("seed");
        if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
            return Error{Errc::bad_payload, field(path, "seed") + ": expected a non-negative integer"};
        out.seed = v.get<std::uint64_t>();
    }
    if (j.contains("requests")) {
        const std::string full = field(path, "requests");
        if (auto r = want_array(j.at("requests"), full); !r) return r;
        for (std::size_t i = 0; i < j.at("requests").size(); ++i) {
            auto req = parse_request(j.at("requests")[i], elem(full, i));
            if (!req) return req.error();
            out.requests.push_back(std::move(req).value());
        }
    }
    if (j.contains("sporadic")) {
        const std::string full = field(path, "sporadic");
        const json& sp = j.at("sporadic");
        if (auto r = want_object(sp, full); !r) return r;
        if (auto r = check_keys(sp, full, {"mit", "kinds"}); !r) return r;
        SporadicSpec spec;
        auto mit = tick_at(sp, full, "mit", std::nullopt, 1);
        if (!mit) return mit.error();
        spec.mit = mit.value();
        if (!sp.contains("kinds")) return Error{Errc::bad_payload, field(full, "kinds") + ": required"};
        const std::string kpath = field(full, "kinds");
        if (auto r = want_array(sp.at("kinds"), kpath); !r) return r;
        if (sp.at("kinds").empty())
            return Error{Errc::bad_payload, kpath + ": must not be empty"};
        for (std::size_t i = 0; i < sp.at("kinds").size(); ++i) {
            const json& k = sp.at("kinds")[i];
            const std::string kp = elem(kpath, i);
            if (auto r = want_object(k, kp); !r) return r;
            if (auto r = check_keys(k, kp, {"kind", "weight"}); !r) return r;
            WeightedKind wk;
            auto kind = id_at(k, kp, "kind");
            if (!kind) return kind.error();
            wk.kind = std::move(kind).value();
            auto weight = tick_at(k, kp, "weight", 1, 1);
            if (!weight) return weight.error();
            wk.weight = weight.value();
            spec.kinds.push_back(std::move(wk));
        }
        out.sporadic = std::move(spec);
    }
    return Result<void>();
}

// ---- serialization ------------------------------------------------------

std::optional<std::string> exact_decimal(const Percent& p) {
    std::int64_t den = p.den;
    int twos = 0;
    int fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return std::nullopt;
    const int k = std::max(twos, fives);
    if (k == 0) return std::to_string(p.num);
    if (k > 18) return std::nullopt;
    __int128 pow10 = 1;
    for (int i = 0; i < k; ++i) pow10 *= 10;
    const __int128 scaled = static_cast<__int128>(p.num) * pow10 / p.den;
    const auto whole = static_cast<std::int64_t>(scaled / pow10);
    auto frac = static_cast<std::int64_t>(scaled % pow10);
    std::string digits(static_cast<std::size_t>(k), '0');
    for (int i = k - 1; i >= 0; --i) {
        digits[static_cast<std::size_t>(i)] = static_cast<char>('0' + frac % 10);
        frac /= 10;
    }
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    if (digits.empty()) return std::to_string(whole);
    return std::to_string(whole) + "." + digits;
}

ojson dump_percent(const Percent& p) {
    if (p.den == 1) return ojson(p.num);
    if (auto dec = exact_decimal(p)) return ojson(*dec);
    ojson o;
    o["num"] = p.num;
    o["den"] = p.den;
    return o;
}

ojson dump_component(const Component& c) {
    ojson o;
    o["id"] = c.id;
    o["wcet"] = c.wcet;
    o["period"] = c.period;
    o["deadline"] = c.deadline;
    if (!c.provided_ports.empty()) o["provides"] = c.provided_ports;
    if (!c.required_ports.empty()) o["requires"] = c.required_ports;
    return o;
}

ojson dump_portref(const PortRef& p) {
    ojson o;
    o["component"] = p.component;
    o["port"] = p.port;
    return o;
}

ojson dump_binding(const Binding& b) {
    ojson o;
    o["from"] = dump_portref(b.from);
    o["to"] = dump_portref(b.to);
    return o;
}

ojson dump_payload(const RequestPayload& p) {
    ojson o;
    o["type"] = payload_kind_name(payload_kind(p));
    if (const auto* add = std::get_if<AddPayload>(&p)) {
        o["component"] = dump_component(add->component);
        if (!add->bindings.empty()) {
            ojson arr = ojson::array();
            for (const auto& b : add->bindings) arr.push_back(dump_binding(b));
            o["bindings"] = std::move(arr);
        }
    } else if (const auto* rem = std::get_if<RemovePayload>(&p)) {
        o["target"] = rem->target;
    } else if (const auto* mp = std::get_if<ModifyParamsPayload>(&p)) {
        o["target"] = mp->target;
        o["wcet"] = mp->wcet;
        o["period"] = mp->period;
        o["deadline"] = mp->deadline;
    } else if (const auto* rb = std::get_if<RebindPayload>(&p)) {
        if (!rb->remove.empty()) {
            ojson arr = ojson::array();
            for (const auto& b : rb->remove) arr.push_back(dump_binding(b));
            o["remove"] = std::move(arr);
        }
        if (!rb->add.empty()) {
            ojson arr = ojson::array();
            for (const auto& b : rb->add) arr.push_back(dump_binding(b));
            o["add"] = std::move(arr);
        }
    } else if (const auto* rp = std::get_if<ReplacePayload>(&p)) {
        o["target"] = rp->target;
        o["component"] = dump_component(rp->replacement);
    }
    return o;
}

} // namespace

Result<Scenario> parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        return fail<Scenario>(Errc::bad_payload, std::string("invalid JSON: ") + e.what());
    }
    const std::string root;
    if (auto r = want_object(j, "scenario"); !r) return r.error();
    if (auto r = check_keys(j, "scenario",
                            {"name", "tick_unit", "components", "bindings", "operations", "mgmt",
                             "simulation"});
        !r)
        return r.error();

    Scenario s;
    auto name = string_at(j, root, "name", std::string());
    if (!name) return name.error();
    s.name = std::move(name).value();
    auto unit = string_at(j, root, "tick_unit", std::string());
    if (!unit) return unit.error();
    s.tick_unit = std::move(unit).value();

    if (!j.contains("components")) return bad<Scenario>("components", "required");
    if (auto r = want_array(j.at("components"), "components"); !r) return r.error();
    for (std::size_t i = 0; i < j.at("components").size(); ++i) {
        auto c = parse_component(j.at("components")[i], elem("components", i));
        if (!c) return c.error();
        s.task_set.components.push_back(std::move(c).value());
    }
    if (j.contains("bindings")) {
        auto bs = parse_bindings(j.at("bindings"), "bindings");
        if (!bs) return bs.error();
        s.task_set.bindings = std::move(bs).value();
    }
    if (j.contains("operations")) {
        if (auto r = want_array(j.at("operations"), "operations"); !r) return r.error();
        for (std::size_t i = 0; i < j.at("operations").size(); ++i) {
            const json& op = j.at("operations")[i];
            const std::string path = elem("operations", i);
            if (auto r = want_object(op, path); !r) return r.error();
            if (auto r = check_keys(op, path, {"kind", "wcet"}); !r) return r.error();
            ManagementOpSpec spec;
            auto kind = id_at(op, path, "kind");
            if (!kind) return kind.error();
            spec.kind = std::move(kind).value();
            auto wcet = tick_at(op, path, "wcet", std::nullopt, 1);
            if (!wcet) return wcet.error();
            spec.wcet = wcet.value();
            for (const auto& prev : s.operations)
                if (prev.kind == spec.kind)
                    return bad<Scenario>(field(path, "kind"),
                                         "duplicate operation kind \"" + spec.kind + "\"");
            s.operations.push_back(std::move(spec));
        }
    }
    if (j.contains("mgmt")) {
        if (auto r = parse_mgmt(j.at("mgmt"), "mgmt", s); !r) return r.error();
    }
    if (j.contains("simulation")) {
        if (auto r = parse_simulation(j.at("simulation"), "simulation", s); !r) return r.error();
    }

    // Cross-field checks: the task set must satisfy its invariants, request
    // ids must be unique, and every request kind must name a listed operation.
    for (const auto& v : validate_taskset(s.task_set)) {
        const bool binding_rule = v.rule == "dangling-binding" || v.rule == "duplicate-required-port";
        return bad<Scenario>(binding_rule ? "bindings" : "components", v.message);
    }
    auto known_kind = [&](const std::string& kind) {
        return std::any_of(s.operations.begin(), s.operations.end(),
                           [&](const ManagementOpSpec& op) { return op.kind == kind; });
    };
    std::set<std::string> request_ids;
    for (std::size_t i = 0; i < s.requests.size(); ++i) {
        const std::string path = elem("simulation.requests", i);
        if (!request_ids.insert(s.requests[i].id).second)
            return bad<Scenario>(field(path, "id"),
                                 "duplicate request id \"" + s.requests[i].id + "\"");
        if (!known_kind(s.requests[i].kind))
            return bad<Scenario>(field(path, "kind"), "operation \"" + s.requests[i].kind +
                                                          "\" is not in the operations list");
    }
    if (s.sporadic) {
        for (std::size_t i = 0; i < s.sporadic->kinds.size(); ++i) {
            if (!known_kind(s.sporadic->kinds[i].kind))
                return bad<Scenario>(field(elem("simulation.sporadic.kinds", i), "kind"),
                                     "operation \"" + s.sporadic->kinds[i].kind +
                                         "\" is not in the operations list");
        }
    }
    return s;
}

Result<Scenario> load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail<Scenario>(Errc::io_error, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return fail<Scenario>(Errc::io_error, "cannot read " + path);
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    ojson o;
    if (!s.name.empty()) o["name"] = s.name;
    if (!s.tick_unit.empty()) o["tick_unit"] = s.tick_unit;
    ojson comps = ojson::array();
    for (const auto& c : s.task_set.components) comps.push_back(dump_component(c));
    o["components"] = std::move(comps);
    if (!s.task_set.bindings.empty()) {
        ojson arr = ojson::array();
        for (const auto& b : s.task_set.bindings) arr.push_back(dump_binding(b));
        o["bindings"] = std::move(arr);
    }
    if (!s.operations.empty()) {
        ojson arr = ojson::array();
        for (const auto& op : s.operations) {
            ojson e;
            e["kind"] = op.kind;
            e["wcet"] = op.wcet;
            arr.push_back(std::move(e));
        }
        o["operations"] = std::move(arr);
    }
    if (s.mgmt_period || s.mgmt_utilization || s.mgmt_window || s.snap_tolerance) {
        ojson m;
        if (s.mgmt_period) m["period"] = *s.mgmt_period;
        if (s.mgmt_utilization) m["utilization"] = dump_percent(*s.mgmt_utilization);
        if (s.mgmt_window) {
            m["window"] = s.mgmt_window->window;
            m["count"] = s.mgmt_window->count;
        }
        if (s.snap_tolerance) m["snap_tolerance"] = dump_percent(*s.snap_tolerance);
        o["mgmt"] = std::move(m);
    }
    if (s.has_simulation) {
        ojson sim;
        sim["horizon"] = s.horizon;
        sim["queue_capacity"] = s.queue_capacity;
        sim["priority_mode"] = s.priority_mode == MgmtPriority::highest ? "highest" : "lowest";
        sim["seed"] = s.seed;
        if (!s.requests.empty()) {
            ojson arr = ojson::array();
            for (const auto& r : s.requests) {
                ojson e;
                e["at"] = r.enqueue_time;
                e["id"] = r.id;
                e["kind"] = r.kind;
                e["payload"] = dump_payload(r.payload);
                arr.push_back(std::move(e));
            }
            sim["requests"] = std::move(arr);
        }
        if (s.sporadic) {
            ojson sp;
            sp["mit"] = s.sporadic->mit;
            ojson kinds = ojson::array();
            for (const auto& wk : s.sporadic->kinds) {
                ojson e;
                e["kind"] = wk.kind;
                e["weight"] = wk.weight;
                kinds.push_back(std::move(e));
            }
            sp["kinds"] = std::move(kinds);
            sim["sporadic"] = std::move(sp);
        }
        o["simulation"] = std::move(sim);
    }
    return o.dump(2) + "\n";
}

Result<SystemState> materialize_state(const Scenario& s) {
    SystemState st;
    st.task_set = s.task_set;
    auto violations = validate_taskset(st.task_set);
    if (!violations.empty())
        return fail<SystemState>(Errc::invalid_params,
                                 violations.front().rule + ": " + violations.front().message);
    st.task_set = assign_rms_priorities(st.task_set);
    for (const auto& op : s.operations) st.registry.specs[op.kind] = op;

    const Tick cost = st.registry.max_cost();
    if (cost > 0) {
        Tick period = 0;
        if (s.mgmt_period) {
            period = *s.mgmt_period;
        } else if (s.mgmt_utilization) {
            auto p = period_from_utilization(cost, *s.mgmt_utilization);
            if (!p) return p.error();
            period = p.value();
        } else if (s.mgmt_window) {
            auto p = period_from_window(s.mgmt_window->window, s.mgmt_window->count);
            if (!p) return p.error();
            period = p.value();
        } else {
            return fail<SystemState>(Errc::bad_argument,
                                     "operations are registered but mgmt gives no period sizing");
        }
        if (s.snap_tolerance) period = snap_period_to_existing(period, st.task_set, *s.snap_tolerance);
        if (period < cost)
            return fail<SystemState>(Errc::bad_argument,
                                     "management period " + std::to_string(period) +
                                         " is shorter than the operation cost " + std::to_string(cost));
        st.mgmt = ManagementTaskConfig{cost, period, cost};
    } else {
        if (s.mgmt_utilization || s.mgmt_window)
            return fail<SystemState>(Errc::bad_argument,
                                     "utilization/window sizing needs registered operations");
        st.mgmt = ManagementTaskConfig{0, s.mgmt_period.value_or(0), 0};
    }
    return st;
}

Result<SimConfig> materialize_sim(const Scenario& s) {
    if (!s.has_simulation)
        return fail<SimConfig>(Errc::bad_argument, "scenario has no simulation section");
    auto st = materialize_state(s);
    if (!st) return st.error();
    SimConfig cfg;
    cfg.initial_state = std::move(st).value();
    cfg.horizon = s.horizon;
    cfg.queue_capacity = s.queue_capacity;
    cfg.mgmt_priority = s.priority_mode;
    cfg.scripted_requests = s.requests;
    if (s.sporadic) {
        cfg.sporadic = *s.sporadic;
        cfg.sporadic->seed = s.seed;
    }
    return cfg;
}

} // namespace rtreconf
