#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "risflow/plot.hpp"
#include "risflow/results.hpp"

using namespace risflow;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("risflow_test_" + name);
    fs::remove_all(p);
    return p;
}

RunResult fake_static(std::size_t points, std::size_t reps) {
    RunResult r;
    for (std::size_t p = 0; p < points; ++p) {
        SweepPoint sp;
        sp.d_count = static_cast<int>(20 * (p + 1));
        for (std::size_t k = 0; k < reps; ++k) {
            sp.pddt.lambdas.push_back(3.0 / (p + 1) + 0.01 * k);
            sp.sddt.lambdas.push_back(2.0 / (p + 1));
            sp.gains.push_back(sp.pddt.lambdas.back() / sp.sddt.lambdas.back());
        }
        sp.pddt.interval = confidence_interval(sp.pddt.lambdas, 0.95);
        sp.sddt.interval = confidence_interval(sp.sddt.lambdas, 0.95);
        sp.mean_gain = 1.5;
        r.sweep.push_back(sp);
    }
    return r;
}

}  // namespace

TEST_CASE("real formatting uses 6 significant digits") {
    CHECK(format_real(1.86089123) == "1.86089");
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(1234567.0) == "1.23457e+06");
    CHECK(format_real(INFINITY) == "inf");
}

TEST_CASE("static CSVs: 6 points x 2 techniques x 10 reps") {
    const auto r = fake_static(6, 10);
    const auto samples = static_samples_csv(r, 0.5);
    const auto summary = static_summary_csv(r);
    CHECK(lines(samples) == 1 + 120);
    CHECK(lines(summary) == 1 + 12);
    CHECK(samples.rfind(kStaticSamplesHeader, 0) == 0);
    CHECK(summary.rfind(kStaticSummaryHeader, 0) == 0);
    CHECK(samples.find("\n20,pddt,0,3,1.5\n") != std::string::npos);  // t_max = 0.5 * lambda
    CHECK(samples.find('\r') == std::string::npos);
}

TEST_CASE("empty dynamic run gives a header-only CSV") {
    CHECK(dynamic_csv(RunResult{}) == std::string(kDynamicHeader) + "\n");
}

TEST_CASE("absent gains are empty fields") {
    RunResult r;
    r.epochs.push_back({0, 0.0, 1.0, 0.0, std::nullopt});
    CHECK(dynamic_csv(r) == std::string(kDynamicHeader) + "\n0,0,1,0,\n");
}

TEST_CASE("emit_results writes CSVs and the config echo, byte-identically on rerun") {
    const auto dir = scratch("emit");
    const auto r = fake_static(3, 4);
    const ExperimentConfig cfg;
    const auto files = emit_results(r, RunKind::Static, cfg, dir);
    REQUIRE(files.size() == 3);
    const auto first = slurp(dir / "static_samples.csv");
    emit_results(r, RunKind::Static, cfg, dir);
    CHECK(slurp(dir / "static_samples.csv") == first);
    CHECK(fs::exists(dir / "effective_config.ini"));
    fs::remove_all(dir);
}

TEST_CASE("preflight rejects an unwritable location") {
    const auto blocker = scratch("blocker");
    std::ofstream(blocker) << "file, not a directory";
    CHECK_THROWS_AS(preflight_output_dir(blocker / "sub"), OutputError);
    fs::remove(blocker);
}

TEST_CASE("SVG chart is self-contained and deterministic") {
    ChartSeries s{"PDDT", {20, 50, 100}, {3.0, 2.0, 1.0}, {0.2, 0.0, 0.1}};
    const ChartSpec spec{"lambda", "|D|", "lambda", 1.0};
    const auto a = line_chart_svg(spec, {s});
    CHECK(a == line_chart_svg(spec, {s}));
    CHECK(a.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("href") == std::string::npos);
    CHECK(a.find("<polyline") != std::string::npos);
    // Two non-zero half-widths give two error bars.
    std::size_t bars = 0;
    for (auto pos = a.find("<path d=\"M"); pos != std::string::npos; pos = a.find("<path d=\"M", pos + 1)) ++bars;
    CHECK(bars == 2);
}

TEST_CASE("single point and zero-width intervals do not break the chart") {
    ChartSeries s{"only", {100}, {1.5}, {0.0}};
    const auto svg = line_chart_svg({"t", "x", "y", std::nullopt}, {s});
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.find("<polyline") == std::string::npos);
    CHECK(svg.find("<path d=\"M") == std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
}

TEST_CASE("every emitted CSV can be plotted") {
    const auto dir = scratch("plot");
    const ExperimentConfig cfg;
    emit_results(fake_static(4, 3), RunKind::Static, cfg, dir);
    RunResult dyn;
    for (std::size_t e = 0; e < 8; ++e) dyn.epochs.push_back({e, 30.0 * e, 1.0 + 0.1 * e, 0.6, (1.0 + 0.1 * e) / 0.6});
    emit_results(dyn, RunKind::Dynamic, cfg, dir);

    auto out = plot_csv(dir / "static_summary.csv", dir / "a");
    CHECK(out.size() == 2);
    CHECK(fs::exists(dir / "a" / "lambda_vs_d.svg"));
    CHECK(fs::exists(dir / "a" / "gain_vs_d.svg"));
    out = plot_csv(dir / "static_samples.csv", dir / "b");
    CHECK(out.size() == 2);
    out = plot_csv(dir / "dynamic.csv", dir / "c");
    CHECK(fs::exists(dir / "c" / "lambda_vs_time.svg"));
    CHECK(fs::exists(dir / "c" / "gain_vs_time.svg"));
    fs::remove_all(dir);
}

TEST_CASE("malformed CSV names the row") {
    const auto dir = scratch("bad");
    fs::create_directories(dir);
    std::ofstream(dir / "bad.csv") << kDynamicHeader << "\n0,0,1,1,1\n1,30,abc,1,1\n";
    try {
        plot_csv(dir / "bad.csv", dir);
        FAIL("expected PlotError");
    } catch (const PlotError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
    std::ofstream(dir / "short.csv") << kStaticSummaryHeader << "\n20,pddt,1\n";
    CHECK_THROWS_AS(plot_csv(dir / "short.csv", dir), PlotError);
    std::ofstream(dir / "unknown.csv") << "a,b\n1,2\n";
    CHECK_THROWS_AS(plot_csv(dir / "unknown.csv", dir), PlotError);
    fs::remove_all(dir);
}
