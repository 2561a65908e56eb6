#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "risflow/experiment.hpp"

namespace risflow {

enum class RunKind { Static, Dynamic };

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kStaticSamplesHeader = "d_count,technique,replication,lambda,t_max_gbit";
inline constexpr const char* kStaticSummaryHeader = "d_count,technique,mean_lambda,ci_half_width,mean_gain";
inline constexpr const char* kDynamicHeader = "epoch_index,epoch_minutes,lambda_pddt,lambda_sddt,gain";

/// Reals use 6 significant digits; absent values are empty fields.
std::string format_real(double v);

std::string static_samples_csv(const RunResult& result, double chunk_gbit);
std::string static_summary_csv(const RunResult& result);
std::string dynamic_csv(const RunResult& result);

/// Creates `dir` if needed and proves it writable. Throws OutputError.
void preflight_output_dir(const std::filesystem::path& dir);

/// Writes the CSVs for `kind` plus `effective_config.ini`; returns the paths.
std::vector<std::filesystem::path> emit_results(const RunResult& result, RunKind kind, const ExperimentConfig& config,
                                                const std::filesystem::path& out_dir);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace risflow
