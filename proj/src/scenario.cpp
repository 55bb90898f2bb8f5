#include "linemarch/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace linemarch {

using nlohmann::json;

std::int64_t SimParams::steps() const { return std::llround(duration / T); }

std::string to_string(PlantModel m) {
    switch (m) {
        case PlantModel::continuous: return "continuous";
        case PlantModel::discrete: return "discrete";
        case PlantModel::unicycle: return "unicycle";
    }
    return "?";
}

std::string to_string(ControllerKind c) {
    switch (c) {
        case ControllerKind::dynamic: return "dynamic";
        case ControllerKind::virtual_structure: return "virtual_structure";
        case ControllerKind::fixed_chain: return "fixed_chain";
    }
    return "?";
}

std::string to_string(Execution e) { return e == Execution::ring ? "ring" : "centralized"; }

namespace {

template <typename E>
E enum_from(const std::string& s, std::initializer_list<E> all) {
    for (E e : all)
        if (to_string(e) == s) return e;
    throw ParseError("unknown enum value '" + s + "'");
}

json vec_json(const Vec2& v) { return json::array({v.x, v.y}); }

Vec2 vec_from(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(std::string(what) + " must be a [x, y] pair of numbers");
    return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw ParseError(std::string("expected an object around '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
    return *it;
}

template <typename T>
T get(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    return get<T>(j, key);
}

}  // namespace

json to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["march"] = {{"v_l", vec_json(s.march.v_l)}, {"rho", s.march.rho}};
    j["gains"] = {{"kappa1", s.gains.kappa1}, {"kappa2", s.gains.kappa2},
                  {"a", s.gains.amplitude_deg}, {"omega", s.gains.omega},
                  {"alpha", s.gains.alpha},     {"beta", s.gains.beta}};
    j["sim"] = {{"model", to_string(s.sim.model)}, {"T", s.sim.T},
                {"dt_internal", s.sim.dt_internal}, {"duration", s.sim.duration},
                {"v_max", s.sim.v_max}, {"w_max", s.sim.w_max},
                {"noise_std", s.sim.noise_std}, {"rng_seed", s.sim.rng_seed}};
    j["robots"] = json::array();
    for (const RobotState& r : s.robots) {
        json rj = {{"label", r.label},         {"p", vec_json(r.p)},
                   {"delta", r.delta},         {"heading", r.heading},
                   {"wheelbase", r.wheelbase}, {"offset_d", r.offset_d}};
        if (r.amplitude_deg) rj["a"] = *r.amplitude_deg;
        if (r.omega) rj["omega"] = *r.omega;
        j["robots"].push_back(rj);
    }
    j["obstacles"] = json::array();
    for (const ObstacleState& o : s.obstacles)
        j["obstacles"].push_back({{"q", vec_json(o.q)}, {"u", vec_json(o.u)}, {"nu", o.nu}});
    j["failures"] = json::array();
    for (const FailureEvent& f : s.failures) {
        json fj = {{"robot", f.robot}, {"t_fail", f.t_fail}};
        fj["t_recover"] = f.t_recover ? json(*f.t_recover) : json(nullptr);
        j["failures"].push_back(fj);
    }
    j["controller"] = to_string(s.controller);
    j["execution"] = to_string(s.execution);
    j["co_head_rule"] = s.co_head_rule;
    j["fixed_order"] = s.fixed_order;
    j["virtual_structure_ca"] = s.virtual_structure_ca;
    j["ring_faults"] = json::array();
    for (const SliceFault& f : s.ring_faults)
        j["ring_faults"].push_back({{"robot", f.robot}, {"t_start", f.t_start}, {"t_end", f.t_end}});
    return j;
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.name = get_or<std::string>(j, "name", "custom");

    const json& mj = field(j, "march");
    const Vec2 v_l = vec_from(field(mj, "v_l"), "march.v_l");
    const double rho = get<double>(mj, "rho");
    try {
        s.march = MarchSpec::make(v_l, rho);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }

    const json& gj = field(j, "gains");
    s.gains.kappa1 = get<double>(gj, "kappa1");
    s.gains.kappa2 = get<double>(gj, "kappa2");
    s.gains.amplitude_deg = get<double>(gj, "a");
    s.gains.omega = get<double>(gj, "omega");
    s.gains.alpha = get<double>(gj, "alpha");
    s.gains.beta = get<double>(gj, "beta");

    const json& sj = field(j, "sim");
    s.sim.model = enum_from(get<std::string>(sj, "model"),
                            {PlantModel::continuous, PlantModel::discrete, PlantModel::unicycle});
    s.sim.T = get<double>(sj, "T");
    s.sim.dt_internal = get_or<double>(sj, "dt_internal", s.sim.T);
    s.sim.duration = get<double>(sj, "duration");
    s.sim.v_max = get_or<double>(sj, "v_max", s.sim.v_max);
    s.sim.w_max = get_or<double>(sj, "w_max", s.sim.w_max);
    s.sim.noise_std = get_or<double>(sj, "noise_std", 0.0);
    s.sim.rng_seed = get_or<std::uint64_t>(sj, "rng_seed", 0);

    for (const json& rj : field(j, "robots")) {
        RobotState r;
        r.label = get<int>(rj, "label");
        r.p = vec_from(field(rj, "p"), "robot.p");
        r.delta = get<double>(rj, "delta");
        r.heading = get_or<double>(rj, "heading", 0.0);
        r.wheelbase = get_or<double>(rj, "wheelbase", r.wheelbase);
        r.offset_d = get_or<double>(rj, "offset_d", r.offset_d);
        if (rj.contains("a")) r.amplitude_deg = get<double>(rj, "a");
        if (rj.contains("omega")) r.omega = get<double>(rj, "omega");
        s.robots.push_back(r);
    }
    if (j.contains("obstacles"))
        for (const json& oj : j["obstacles"])
            s.obstacles.push_back({vec_from(field(oj, "q"), "obstacle.q"),
                                   vec_from(field(oj, "u"), "obstacle.u"), get<double>(oj, "nu")});
    if (j.contains("failures"))
        for (const json& fj : j["failures"]) {
            FailureEvent f{get<int>(fj, "robot"), get<double>(fj, "t_fail"), std::nullopt};
            if (fj.contains("t_recover") && !fj["t_recover"].is_null())
                f.t_recover = get<double>(fj, "t_recover");
            s.failures.push_back(f);
        }
    s.controller = enum_from(get_or<std::string>(j, "controller", "dynamic"),
                             {ControllerKind::dynamic, ControllerKind::virtual_structure,
                              ControllerKind::fixed_chain});
    s.execution = enum_from(get_or<std::string>(j, "execution", "centralized"),
                            {Execution::centralized, Execution::ring});
    s.co_head_rule = get_or<bool>(j, "co_head_rule", true);
    s.fixed_order = get_or<std::vector<int>>(j, "fixed_order", {});
    s.virtual_structure_ca = get_or<bool>(j, "virtual_structure_ca", true);
    if (j.contains("ring_faults"))
        for (const json& fj : j["ring_faults"])
            s.ring_faults.push_back(
                {get<int>(fj, "robot"), get<double>(fj, "t_start"), get<double>(fj, "t_end")});

    std::sort(s.robots.begin(), s.robots.end(),
              [](const RobotState& a, const RobotState& b) { return a.label < b.label; });
    return s;
}

void validate(const Scenario& s) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ValidationError(what);
    };
    try {
        s.gains.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    require(s.march.v_l.finite() && s.march.v_l.norm() > kZeroNorm, "v_l must be nonzero");
    require(std::isfinite(s.sim.T) && s.sim.T > 0.0, "sim.T must be positive");
    require(std::isfinite(s.sim.dt_internal) && s.sim.dt_internal > 0.0 &&
                s.sim.dt_internal <= s.sim.T,
            "sim.dt_internal must lie in (0, T]");
    require(std::isfinite(s.sim.duration) && s.sim.duration >= 0.0, "sim.duration must be >= 0");
    require(std::isfinite(s.sim.noise_std) && s.sim.noise_std >= 0.0, "sim.noise_std must be >= 0");
    if (s.sim.model == PlantModel::unicycle)
        require(s.sim.v_max > 0.0 && s.sim.w_max > 0.0, "v_max and w_max must be positive");

    require(!s.robots.empty(), "scenario needs at least one robot");
    for (std::size_t k = 0; k < s.robots.size(); ++k) {
        const RobotState& r = s.robots[k];
        require(r.label == static_cast<int>(k) + 1,
                "robot labels must be unique and contiguous from 1");
        require(r.p.finite(), "robot positions must be finite");
        require(std::isfinite(r.delta) && r.delta > 0.0, "robot delta must be positive");
        if (s.sim.model == PlantModel::unicycle) {
            require(r.wheelbase > 0.0, "wheelbase must be positive");
            require(r.offset_d > 0.0, "offset_d must be positive");
            require(std::isfinite(r.heading), "heading must be finite");
        }
        if (r.amplitude_deg) require(*r.amplitude_deg > 0.0, "per-robot a must be positive");
        if (r.omega) require(*r.omega > 0.0, "per-robot omega must be positive");
    }
    for (std::size_t i = 0; i < s.robots.size(); ++i)
        for (std::size_t j = i + 1; j < s.robots.size(); ++j)
            require(s.march.rho > s.robots[i].delta + s.robots[j].delta,
                    "rho must exceed combined safety radii");
    for (const ObstacleState& o : s.obstacles) {
        require(o.q.finite() && o.u.finite(), "obstacle state must be finite");
        require(std::isfinite(o.nu) && o.nu > 0.0, "obstacle nu must be positive");
    }
    const auto n = static_cast<int>(s.robots.size());
    for (const FailureEvent& f : s.failures) {
        require(f.robot >= 1 && f.robot <= n, "failure names an unknown robot");
        require(std::isfinite(f.t_fail) && f.t_fail >= 0.0, "failure times must be >= 0");
        if (f.t_recover) require(*f.t_recover > f.t_fail, "t_fail must precede t_recover");
    }
    if (!s.fixed_order.empty()) {
        std::vector<int> sorted = s.fixed_order;
        std::sort(sorted.begin(), sorted.end());
        bool perm = static_cast<int>(sorted.size()) == n;
        for (int k = 0; perm && k < n; ++k) perm = sorted[k] == k + 1;
        require(perm, "fixed_order must be a permutation of 1..N");
    }
    require(s.execution == Execution::centralized || s.controller == ControllerKind::dynamic,
            "ring execution is only defined for the dynamic controller");
    for (const SliceFault& f : s.ring_faults) {
        require(f.robot >= 1 && f.robot <= n, "ring fault names an unknown robot");
        require(f.t_start >= 0.0 && f.t_end >= f.t_start, "ring fault window is malformed");
    }
}

Scenario load_scenario(const std::string& name_or_path) {
    Scenario s;
    if (auto b = builtin_scenario(name_or_path)) {
        s = *b;
    } else {
        std::ifstream in(name_or_path);
        if (!in) throw ParseError("no built-in scenario or readable file named '" + name_or_path + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ParseError(name_or_path + ": " + e.what());
        }
        s = scenario_from_json(j);
    }
    validate(s);
    return s;
}

Scenario apply_override(const Scenario& s, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ParseError("override must look like key=value: " + std::string(assignment));
    const std::string key(assignment.substr(0, eq));
    const std::string raw(assignment.substr(eq + 1));

    json value;
    try {
        value = json::parse(raw);
    } catch (const json::exception&) {
        value = raw;
    }
    // "x,y" is accepted as shorthand for a vector.
    if (value.is_string() && raw.find(',') != std::string::npos) {
        try {
            value = json::parse("[" + raw + "]");
        } catch (const json::exception&) {
        }
    }

    json doc = to_json(s);
    json* node = &doc;
    std::stringstream path(key);
    std::string part;
    while (std::getline(path, part, '.')) {
        if (node->is_object() && node->contains(part)) {
            node = &(*node)[part];
        } else if (node->is_array() && !part.empty() &&
                   std::all_of(part.begin(), part.end(), ::isdigit) &&
                   std::stoul(part) < node->size()) {
            node = &(*node)[std::stoul(part)];
        } else {
            throw ParseError("override touches undeclared field '" + key + "'");
        }
    }
    if (node->is_number() && !value.is_number())
        throw ParseError("override for '" + key + "' needs a number");
    *node = value;
    return scenario_from_json(doc);
}

// ---------------------------------------------------------------------------
// Built-in library

namespace {

Robots robots_at(std::initializer_list<Vec2> positions, double delta) {
    Robots out;
    int label = 1;
    for (const Vec2& p : positions) {
        RobotState r;
        r.label = label++;
        r.p = p;
        r.delta = delta;
        out.push_back(r);
    }
    return out;
}

Scenario base_kinematic() {
    Scenario s;
    s.march = MarchSpec::make({-8.0, 12.0}, 4.0);
    s.gains = {1.5, 10.0, 10.0, 1.0, 10.0, 10.0};
    return s;
}

}  // namespace

Scenario case_a() {
    Scenario s = base_kinematic();
    s.name = "case-a";
    s.sim.model = PlantModel::continuous;
    s.sim.T = 0.001;
    s.sim.dt_internal = 0.001;
    s.sim.duration = 30.0;
    s.robots = robots_at({{-5, 10}, {1, 20}, {-10, 5}, {5, 10}, {10, 5},
                          {0, 10}, {5, -10}, {15, -5}, {-5, -10}, {-10, -5}},
                         1.0);
    s.obstacles = {{{-90.0, 60.0}, {15.0, 0.0}, 10.0}};
    return s;
}

Scenario case_b(ControllerKind controller, bool corrected) {
    Scenario s = base_kinematic();
    s.name = "case-b-" + std::string(controller == ControllerKind::dynamic           ? "dynamic"
                                     : controller == ControllerKind::fixed_chain ? "fixed"
                                                                                 : "vs");
    s.controller = controller;
    s.sim.model = PlantModel::continuous;
    s.sim.T = 0.001;
    s.sim.dt_internal = 0.001;
    s.sim.duration = 30.0;
    // Robot 9 as published: (2.5, -17). The line geometry suggests (2.5, 17).
    const Vec2 p9 = corrected ? Vec2{2.5, 17.0} : Vec2{2.5, -17.0};
    s.robots = robots_at({{-12, 40}, {-15, 44}, {-10, 37}, {-8, 34}, {-6, 30},
                          {-4, 27}, {-1.5, 24}, {0.5, 20.5}, p9, {5, 14}},
                         1.0);
    s.failures = {{4, 1.0, std::nullopt}};
    if (controller == ControllerKind::fixed_chain) s.fixed_order = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    return s;
}

Scenario discrete_four_phase() {
    Scenario s = base_kinematic();
    s.name = "discrete-4phase";
    s.sim.model = PlantModel::discrete;
    s.sim.T = 0.001;
    s.sim.dt_internal = 0.001;
    s.sim.duration = 15.0;  // k = 0 .. 15000
    s.robots = robots_at({{-5, 10}, {1, 20}, {-10, 5}, {5, 10}, {10, 5},
                          {0, 10}, {5, -10}, {15, -5}, {-5, -10}, {-10, -5}},
                         1.0);
    s.obstacles = {{{-80.0, 60.0}, {15.0, 0.0}, 10.0}};
    s.failures = {{4, 8.0, 11.0}};
    return s;
}

Scenario unicycle_four_phase() {
    Scenario s;
    s.name = "unicycle-4phase";
    s.march = MarchSpec::make({-0.25, 0.433}, 2.0);
    s.gains = {2.5, 10.0, 10.0, 0.3, 1.0, 0.5};
    s.sim.model = PlantModel::unicycle;
    s.sim.T = 0.02;
    s.sim.dt_internal = 0.02;
    s.sim.duration = 218.8;
    s.sim.v_max = 1.0;
    s.sim.w_max = 2.0;
    s.co_head_rule = false;
    s.robots = robots_at({{-4, 8}, {0, 12}, {-8, 4}, {4, 8}, {8, 4},
                          {0, 8}, {4, -8}, {12, -4}, {-4, -8}, {-8, -4}},
                         0.35);
    for (RobotState& r : s.robots) {
        r.heading = 0.0;
        r.offset_d = 0.2;
        r.wheelbase = 0.16;
    }
    s.obstacles = {{{-30.0, 23.0}, {0.2133, 0.211}, 2.0}};
    s.failures = {{6, 130.0, 160.0}};
    return s;
}

std::vector<std::string> builtin_scenario_names() {
    return {"case-a",          "case-b-vs",       "case-b-fixed", "case-b-dynamic",
            "discrete-4phase", "unicycle-4phase"};
}

std::optional<Scenario> builtin_scenario(std::string_view name) {
    if (name == "case-a") return case_a();
    if (name == "case-b-vs") return case_b(ControllerKind::virtual_structure);
    if (name == "case-b-fixed") return case_b(ControllerKind::fixed_chain);
    if (name == "case-b" || name == "case-b-dynamic") return case_b(ControllerKind::dynamic);
    if (name == "discrete-4phase") return discrete_four_phase();
    if (name == "unicycle-4phase") return unicycle_four_phase();
    return std::nullopt;
}

}  // namespace linemarch
