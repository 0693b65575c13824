#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fpp/cli/config.hpp"

namespace fpp::cli {

/// Reading or writing an artifact failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunSettings {
    unsigned threads = 1;
};

struct RunOutput {
    /// File name -> content, manifest.json last. Contents are byte-deterministic
    /// for a given config, whatever the thread count.
    std::vector<std::pair<std::string, std::string>> files;
    nlohmann::json manifest;
    double wall_seconds = 0.0; // kept out of the manifest
};

std::string tool_version();

/// Validates the config, runs the experiment and renders every artifact in
/// memory. Nothing touches the file system.
RunOutput run_experiment(const ExperimentConfig& config, const RunSettings& settings);

/// Writes the artifacts plus timing.txt into `dir`, creating it if needed.
void write_outputs(const std::filesystem::path& dir, const RunOutput& output);

} // namespace fpp::cli
