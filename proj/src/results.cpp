#include "risflow/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "risflow/config.hpp"

namespace risflow {

namespace fs = std::filesystem;

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

}  // namespace

std::string static_samples_csv(const RunResult& result, double chunk_gbit) {
    std::string s = std::string(kStaticSamplesHeader) + "\n";
    for (const auto& sp : result.sweep) {
        for (auto t : {Technique::Pddt, Technique::Sddt}) {
            const auto& series = t == Technique::Pddt ? sp.pddt : sp.sddt;
            for (std::size_t r = 0; r < series.lambdas.size(); ++r) {
                const double lambda = series.lambdas[r];
                s += std::to_string(sp.d_count) + "," + std::string(to_string(t)) + "," + std::to_string(r) + "," +
                     format_real(lambda) + "," + format_real(chunk_gbit * lambda) + "\n";
            }
        }
    }
    return s;
}

std::string static_summary_csv(const RunResult& result) {
    std::string s = std::string(kStaticSummaryHeader) + "\n";
    for (const auto& sp : result.sweep) {
        for (auto t : {Technique::Pddt, Technique::Sddt}) {
            const auto& series = t == Technique::Pddt ? sp.pddt : sp.sddt;
            s += std::to_string(sp.d_count) + "," + std::string(to_string(t)) + "," +
                 format_real(series.interval.mean) + "," + opt(series.interval.half_width) + "," + opt(sp.mean_gain) +
                 "\n";
        }
    }
    return s;
}

std::string dynamic_csv(const RunResult& result) {
    std::string s = std::string(kDynamicHeader) + "\n";
    for (const auto& e : result.epochs) {
        s += std::to_string(e.index) + "," + format_real(e.minutes) + "," + format_real(e.lambda_pddt) + "," +
             format_real(e.lambda_sddt) + "," + opt(e.gain) + "\n";
    }
    return s;
}

void write_text_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write " + path.string());
    out << contents;
    if (!out) throw OutputError("write failed for " + path.string());
}

void preflight_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw OutputError("cannot create output directory " + dir.string());
    const auto probe = dir / ".risflow-write-probe";
    {
        std::ofstream out(probe, std::ios::binary | std::ios::trunc);
        if (!out || !(out << "ok")) throw OutputError("output directory " + dir.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

std::vector<fs::path> emit_results(const RunResult& result, RunKind kind, const ExperimentConfig& config,
                                   const fs::path& out_dir) {
    preflight_output_dir(out_dir);
    std::vector<fs::path> written;
    auto emit = [&](const std::string& name, const std::string& body) {
        written.push_back(out_dir / name);
        write_text_file(written.back(), body);
    };
    if (kind == RunKind::Static) {
        emit("static_samples.csv", static_samples_csv(result, config.chunk_gbit));
        emit("static_summary.csv", static_summary_csv(result));
    } else {
        emit("dynamic.csv", dynamic_csv(result));
    }
    emit("effective_config.ini", format_config(config));
    return written;
}

}  // namespace risflow
