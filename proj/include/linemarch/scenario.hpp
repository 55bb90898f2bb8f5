#pragma once
/**
 * @file scenario.hpp
 * @brief Experiment description, JSON (de)serialization, validation and the
 * built-in scenario library.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "linemarch/state.hpp"

namespace linemarch {

/// Malformed document or unknown name.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Well-formed document that violates an invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PlantModel { continuous, discrete, unicycle };
enum class ControllerKind { dynamic, virtual_structure, fixed_chain };
enum class Execution { centralized, ring };

struct SimParams {
    PlantModel model = PlantModel::continuous;
    double T = 0.001;
    double dt_internal = 0.001;
    double duration = 0.0;  // seconds
    double v_max = 1.0;
    double w_max = 2.0;
    double noise_std = 0.0;
    std::uint64_t rng_seed = 0;

    std::int64_t steps() const;
};

struct FailureEvent {
    int robot = 0;
    double t_fail = 0.0;
    std::optional<double> t_recover;
};

/// Window during which a ring agent misses its slices.
struct SliceFault {
    int robot = 0;
    double t_start = 0.0;
    double t_end = 0.0;
};

struct Scenario {
    std::string name;
    MarchSpec march;
    ControlGains gains;
    SimParams sim;
    Robots robots;  // initial states; p is the body position for unicycles
    Obstacles obstacles;
    std::vector<FailureEvent> failures;
    ControllerKind controller = ControllerKind::dynamic;
    Execution execution = Execution::centralized;
    bool co_head_rule = true;
    std::vector<int> fixed_order;  // empty means 1..N
    bool virtual_structure_ca = true;
    std::vector<SliceFault> ring_faults;
};

/// Throws ValidationError naming the first violated invariant.
void validate(const Scenario& s);

nlohmann::json to_json(const Scenario& s);
/// Throws ParseError on missing/ill-typed fields; does not validate.
Scenario scenario_from_json(const nlohmann::json& j);

/// Built-in name or path to a JSON file; always validated.
Scenario load_scenario(const std::string& name_or_path);

/// Applies "a.b.0.c=value" to the JSON form. Only existing fields may be set;
/// value is parsed as JSON, falling back to a plain string.
Scenario apply_override(const Scenario& s, std::string_view assignment);

std::vector<std::string> builtin_scenario_names();
std::optional<Scenario> builtin_scenario(std::string_view name);

// Built-ins, also usable with tweaks from code.
Scenario case_a();
/// The published initial condition places robot 9 at (2.5, -17), which looks
/// like a sign slip for (2.5, 17); pass corrected = true for the latter.
Scenario case_b(ControllerKind controller, bool corrected = false);
Scenario discrete_four_phase();
Scenario unicycle_four_phase();

std::string to_string(PlantModel m);
std::string to_string(ControllerKind c);
std::string to_string(Execution e);

}  // namespace linemarch
