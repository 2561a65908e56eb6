#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "risflow/experiment.hpp"
#include "risflow/results.hpp"

namespace risflow {

class PlotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ChartSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> error;  // symmetric half-widths; empty or same size as y
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::optional<double> reference_y;  // dashed horizontal guide
};

/// Self-contained SVG line chart. Output depends only on the inputs.
std::string line_chart_svg(const ChartSpec& spec, const std::vector<ChartSeries>& series);

/// Static: lambda_vs_d.svg and gain_vs_d.svg. Dynamic: lambda_vs_time.svg and
/// gain_vs_time.svg.
std::vector<std::filesystem::path> plot_results(const RunResult& result, RunKind kind,
                                                const std::filesystem::path& out_dir);

/// Reads any CSV written by emit_results (schema picked from its header) and
/// plots it. Sample CSVs are summarised with 95% intervals. Throws PlotError
/// naming the offending row.
std::vector<std::filesystem::path> plot_csv(const std::filesystem::path& csv, const std::filesystem::path& out_dir);

}  // namespace risflow
