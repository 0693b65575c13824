#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fpp/lattice.hpp"
#include "fpp/passage_law.hpp"
#include "fpp/percolation.hpp"

namespace fpp::cli {

/// Line of every JSON value in a document, keyed by JSON pointer ("" is the root).
class JsonLineIndex {
public:
    JsonLineIndex() = default;
    explicit JsonLineIndex(std::string_view text);

    /// Line of the value at `pointer`, or of its nearest recorded ancestor.
    int line_of(std::string pointer) const;

private:
    std::map<std::string, int> lines_;
};

/// Reference limit shape for shape and measure runs.
struct ReferenceSpec {
    enum class Kind { l1, values, profile };
    Kind kind = Kind::l1;
    std::vector<double> class_values; // kind values: g_1..g_d
    int profile_n = 64;               // kind profile: direction estimates at this n
    int profile_reps = 20;
    bool chamber_linear = false;      // kinds values and profile: polytope instead of radial interpolation
    bool operator==(const ReferenceSpec&) const = default;
};

struct ThetaSpec {
    int half_width = 128;
    double window_fraction = 0.5;
    int reps = 200;
    bool operator==(const ThetaSpec&) const = default;
};

struct FunctionSpec {
    enum class Kind { constant, monomial, bump, zero };
    Kind kind = Kind::constant;
    double value = 1.0;
    std::vector<int> powers;
    std::vector<double> center;
    double radius = 1.0;
    bool operator==(const FunctionSpec&) const = default;
};

struct TimeConstantParams {
    LatticePoint direction;
    std::vector<int> n_grid;
    int reps = 0;
    bool operator==(const TimeConstantParams&) const = default;
};

struct DirectionsParams {
    std::vector<LatticePoint> directions; // empty: the 3^d - 1 symmetry-class directions
    int n = 0;
    int reps = 0;
    bool operator==(const DirectionsParams&) const = default;
};

struct ShapeParams {
    std::vector<double> t_grid;
    int reps = 0;
    ReferenceSpec reference;
    bool operator==(const ShapeParams&) const = default;
};

struct LawSplitParams {
    LatticePoint direction;
    int n = 0;
    int reps = 0;
    std::optional<ThetaSpec> theta;
    bool operator==(const LawSplitParams&) const = default;
};

struct MeasureParams {
    std::vector<double> t_grid;
    int reps = 0;
    std::vector<FunctionSpec> functions;
    ReferenceSpec reference;
    ThetaSpec theta;
    bool operator==(const MeasureParams&) const = default;
};

struct PositivityParams {
    std::vector<double> p_zero_grid;
    std::vector<int> n_grid;
    int reps = 0;
    bool operator==(const PositivityParams&) const = default;
};

struct TailsParams {
    TailEvent event = TailEvent::hole;
    std::vector<int> grid;
    int reps = 0;
    int half_width = 40;
    double window_fraction = 0.5;
    double chem_factor = 4.0;
    bool operator==(const TailsParams&) const = default;
};

struct LdParams {
    std::vector<int> n_grid;
    int reps = 0;
    std::optional<double> epsilon;          // absolute epsilon
    std::optional<double> epsilon_fraction; // epsilon = fraction * mu_hat
    std::optional<double> mu_hat;           // estimated along e_1 when absent
    int mu_n = 128;
    int mu_reps = 50;
    bool operator==(const LdParams&) const = default;
};

struct MInvarianceParams {
    std::vector<double> M_values;
    LatticePoint direction;
    int n = 0;
    int reps = 0;
    bool operator==(const MInvarianceParams&) const = default;
};

struct PointToLineParams {
    std::vector<int> n_grid;
    int reps = 0;
    bool operator==(const PointToLineParams&) const = default;
};

using ExperimentParams = std::variant<TimeConstantParams, DirectionsParams, ShapeParams, LawSplitParams, MeasureParams,
                                      PositivityParams, TailsParams, LdParams, MInvarianceParams, PointToLineParams>;

/// Kind names, in the order of ExperimentParams alternatives.
const std::vector<std::string>& experiment_kinds();
std::string kind_name(const ExperimentParams& params);

struct ExperimentConfig {
    int dimension = 2;
    std::optional<double> p_c_given;
    PassageLaw law = PassageLaw::dirac(1.0);
    std::optional<double> M;
    std::uint64_t master_seed = 1;
    std::optional<std::string> output_dir;
    bool plots = true;
    ExperimentParams experiment;

    /// 0.5 for d = 2, the given value otherwise.
    double p_c() const;
    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and schema-checks a config document. `source` names the document in
/// error messages. Throws ConfigError whose message reads "source:line: pointer: reason".
ExperimentConfig parse_config(std::string_view text, const std::string& source);
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical JSON form; parse_config(config_to_json(c).dump()) == c.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Checks every simulation precondition that can be checked without sampling.
/// Throws ConfigError (exit 2) or SupercriticalityError (exit 3).
void validate_config(const ExperimentConfig& config);

/// True for kinds that regularize through C_M and therefore need M.
bool needs_M(const ExperimentParams& params);

} // namespace fpp::cli
