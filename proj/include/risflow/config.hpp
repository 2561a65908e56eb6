#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "risflow/experiment.hpp"

namespace risflow {

/// Config problem anchored to a source line (0 when not tied to one).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& origin, int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

/// Parses the sectioned key-value format:
///
///   # comment
///   [traffic]
///   queue_l_gbit = 10
///
/// Missing keys keep their defaults, unknown keys or sections are rejected.
ExperimentConfig parse_config_text(std::string_view text, const std::string& origin = "<config>");
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Every effective value, written so that parse_config_text reproduces the
/// config exactly.
std::string format_config(const ExperimentConfig& config);

}  // namespace risflow
