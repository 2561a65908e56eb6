#include "risflow/plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace risflow {

namespace fs = std::filesystem;

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string f2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    const double m = r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0;
    return m * mag;
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    double step = 0.2;
};

Axis make_axis(double lo, double hi, bool from_zero) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (from_zero) lo = std::min(lo, 0.0);
    if (hi - lo < 1e-12) {
        const double pad = std::abs(hi) > 1e-12 ? std::abs(hi) * 0.5 : 1.0;
        lo -= pad;
        hi += pad;
        if (from_zero) lo = std::min(std::max(lo, 0.0), hi - pad);
    }
    Axis a;
    a.step = nice_step(hi - lo, 5);
    a.lo = std::floor(lo / a.step) * a.step;
    a.hi = std::ceil(hi / a.step) * a.step;
    return a;
}

}  // namespace

std::string line_chart_svg(const ChartSpec& spec, const std::vector<ChartSeries>& series) {
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            const double e = i < s.error.size() && std::isfinite(s.error[i]) ? s.error[i] : 0.0;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i] - e);
            ymax = std::max(ymax, s.y[i] + e);
        }
    }
    if (spec.reference_y && std::isfinite(ymin)) {
        ymin = std::min(ymin, *spec.reference_y);
        ymax = std::max(ymax, *spec.reference_y);
    }
    const Axis ax = make_axis(xmin, xmax, false);
    const Axis ay = make_axis(ymin, ymax, true);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double y) { return kTop + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << f2(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(spec.title)
      << "</text>\n";

    const int xticks = static_cast<int>(std::lround((ax.hi - ax.lo) / ax.step));
    for (int i = 0; i <= xticks; ++i) {
        const double v = ax.lo + i * ax.step;
        o << "<line x1=\"" << f2(px(v)) << "\" y1=\"" << f2(kTop) << "\" x2=\"" << f2(px(v)) << "\" y2=\""
          << f2(kTop + ph) << "\" stroke=\"#e0e0e0\"/>\n";
        o << "<text x=\"" << f2(px(v)) << "\" y=\"" << f2(kTop + ph + 16) << "\" text-anchor=\"middle\">"
          << tick_label(v) << "</text>\n";
    }
    const int yticks = static_cast<int>(std::lround((ay.hi - ay.lo) / ay.step));
    for (int i = 0; i <= yticks; ++i) {
        const double v = ay.lo + i * ay.step;
        o << "<line x1=\"" << f2(kLeft) << "\" y1=\"" << f2(py(v)) << "\" x2=\"" << f2(kLeft + pw) << "\" y2=\""
          << f2(py(v)) << "\" stroke=\"#e0e0e0\"/>\n";
        o << "<text x=\"" << f2(kLeft - 6) << "\" y=\"" << f2(py(v) + 4) << "\" text-anchor=\"end\">"
          << tick_label(v) << "</text>\n";
    }
    o << "<rect x=\"" << f2(kLeft) << "\" y=\"" << f2(kTop) << "\" width=\"" << f2(pw) << "\" height=\"" << f2(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << f2(kLeft + pw / 2) << "\" y=\"" << f2(kHeight - 14) << "\" text-anchor=\"middle\">"
      << escape(spec.x_label) << "</text>\n";
    o << "<text transform=\"translate(18," << f2(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(spec.y_label) << "</text>\n";

    if (spec.reference_y) {
        o << "<line x1=\"" << f2(kLeft) << "\" y1=\"" << f2(py(*spec.reference_y)) << "\" x2=\"" << f2(kLeft + pw)
          << "\" y2=\"" << f2(py(*spec.reference_y)) << "\" stroke=\"#555\" stroke-dasharray=\"6 4\"/>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kColors[si % std::size(kColors)];
        std::string points;
        for (std::size_t i = 0; i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            if (!points.empty()) points += ' ';
            points += f2(px(s.x[i])) + "," + f2(py(s.y[i]));
        }
        if (points.find(' ') != std::string::npos) {
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << points
              << "\"/>\n";
        }
        for (std::size_t i = 0; i < s.y.size(); ++i) {
            if (!std::isfinite(s.y[i])) continue;
            const double cx = px(s.x[i]);
            if (i < s.error.size() && std::isfinite(s.error[i]) && s.error[i] > 0.0) {
                const double top = py(s.y[i] + s.error[i]);
                const double bot = py(s.y[i] - s.error[i]);
                o << "<path d=\"M" << f2(cx) << " " << f2(top) << "V" << f2(bot) << "M" << f2(cx - 4) << " "
                  << f2(top) << "H" << f2(cx + 4) << "M" << f2(cx - 4) << " " << f2(bot) << "H" << f2(cx + 4)
                  << "\" stroke=\"" << color << "\" fill=\"none\"/>\n";
            }
            o << "<circle cx=\"" << f2(cx) << "\" cy=\"" << f2(py(s.y[i])) << "\" r=\"3.5\" fill=\"" << color
              << "\"/>\n";
        }
        const double ly = kTop + 14 + 16 * static_cast<double>(si);
        o << "<line x1=\"" << f2(kLeft + pw - 110) << "\" y1=\"" << f2(ly) << "\" x2=\"" << f2(kLeft + pw - 90)
          << "\" y2=\"" << f2(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << f2(kLeft + pw - 84) << "\" y=\"" << f2(ly + 4) << "\">" << escape(s.name)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

namespace {

struct StaticRow {
    int d = 0;
    Technique technique = Technique::Pddt;
    double mean = 0.0;
    double half_width = 0.0;
    std::optional<double> gain;
};

std::vector<fs::path> plot_static_rows(const std::vector<StaticRow>& rows, const fs::path& out_dir) {
    ChartSeries pddt{"PDDT", {}, {}, {}};
    ChartSeries sddt{"SDDT", {}, {}, {}};
    ChartSeries gain{"G = PDDT/SDDT", {}, {}, {}};
    for (const auto& r : rows) {
        auto& s = r.technique == Technique::Pddt ? pddt : sddt;
        s.x.push_back(r.d);
        s.y.push_back(r.mean);
        s.error.push_back(r.half_width);
        if (r.technique == Technique::Pddt && r.gain) {
            gain.x.push_back(r.d);
            gain.y.push_back(*r.gain);
        }
    }
    preflight_output_dir(out_dir);
    const std::vector<fs::path> out{out_dir / "lambda_vs_d.svg", out_dir / "gain_vs_d.svg"};
    write_text_file(out[0], line_chart_svg({"Maximum multiplier lambda", "Number of traffic chunks |D|",
                                            "lambda (mean, 95% CI)", 1.0},
                                           {pddt, sddt}));
    write_text_file(out[1], line_chart_svg({"Throughput gain", "Number of traffic chunks |D|", "G", 1.0}, {gain}));
    return out;
}

std::vector<fs::path> plot_epochs(const std::vector<EpochRecord>& epochs, const fs::path& out_dir) {
    ChartSeries pddt{"PDDT", {}, {}, {}};
    ChartSeries sddt{"SDDT", {}, {}, {}};
    ChartSeries gain{"G = PDDT/SDDT", {}, {}, {}};
    for (const auto& e : epochs) {
        const double hours = e.minutes / 60.0;
        pddt.x.push_back(hours);
        pddt.y.push_back(e.lambda_pddt);
        sddt.x.push_back(hours);
        sddt.y.push_back(e.lambda_sddt);
        if (e.gain) {
            gain.x.push_back(hours);
            gain.y.push_back(*e.gain);
        }
    }
    preflight_output_dir(out_dir);
    const std::vector<fs::path> out{out_dir / "lambda_vs_time.svg", out_dir / "gain_vs_time.svg"};
    write_text_file(out[0], line_chart_svg({"Maximum multiplier lambda", "Time (hours)", "lambda", 1.0}, {pddt, sddt}));
    write_text_file(out[1], line_chart_svg({"Throughput gain", "Time (hours)", "G", 1.0}, {gain}));
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_number(const std::string& s, std::size_t row, const char* column) {
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
        throw PlotError("row " + std::to_string(row) + ": column " + column + " is not a number: '" + s + "'");
    }
    return v;
}

std::optional<double> parse_optional(const std::string& s, std::size_t row, const char* column) {
    if (s.empty()) return std::nullopt;
    return parse_number(s, row, column);
}

Technique parse_technique(const std::string& s, std::size_t row) {
    if (s == "pddt") return Technique::Pddt;
    if (s == "sddt") return Technique::Sddt;
    throw PlotError("row " + std::to_string(row) + ": unknown technique '" + s + "'");
}

int parse_count(const std::string& s, std::size_t row) {
    const double v = parse_number(s, row, "d_count");
    if (v != std::floor(v) || v < 1) throw PlotError("row " + std::to_string(row) + ": d_count must be a positive integer");
    return static_cast<int>(v);
}

}  // namespace

std::vector<fs::path> plot_results(const RunResult& result, RunKind kind, const fs::path& out_dir) {
    if (kind == RunKind::Dynamic) return plot_epochs(result.epochs, out_dir);
    std::vector<StaticRow> rows;
    for (const auto& sp : result.sweep) {
        rows.push_back({sp.d_count, Technique::Pddt, sp.pddt.interval.mean, sp.pddt.interval.half_width.value_or(0.0),
                        sp.mean_gain});
        rows.push_back({sp.d_count, Technique::Sddt, sp.sddt.interval.mean, sp.sddt.interval.half_width.value_or(0.0),
                        sp.mean_gain});
    }
    return plot_static_rows(rows, out_dir);
}

std::vector<fs::path> plot_csv(const fs::path& csv, const fs::path& out_dir) {
    std::ifstream in(csv, std::ios::binary);
    if (!in) throw PlotError("cannot open " + csv.string());
    std::string header;
    if (!std::getline(in, header)) throw PlotError(csv.string() + ": empty file");
    if (!header.empty() && header.back() == '\r') header.pop_back();

    std::vector<std::vector<std::string>> rows;
    std::string line;
    const std::size_t columns = split(header).size();
    for (std::size_t row = 2; std::getline(in, line); ++row) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split(line);
        if (fields.size() != columns) {
            throw PlotError("row " + std::to_string(row) + ": expected " + std::to_string(columns) + " fields, got " +
                            std::to_string(fields.size()));
        }
        fields.push_back(std::to_string(row));
        rows.push_back(std::move(fields));
    }
    auto row_no = [](const std::vector<std::string>& f) { return static_cast<std::size_t>(std::stoul(f.back())); };

    if (header == kDynamicHeader) {
        std::vector<EpochRecord> epochs;
        for (const auto& f : rows) {
            const auto n = row_no(f);
            EpochRecord e;
            e.index = static_cast<std::size_t>(parse_number(f[0], n, "epoch_index"));
            e.minutes = parse_number(f[1], n, "epoch_minutes");
            e.lambda_pddt = parse_number(f[2], n, "lambda_pddt");
            e.lambda_sddt = parse_number(f[3], n, "lambda_sddt");
            e.gain = parse_optional(f[4], n, "gain");
            epochs.push_back(e);
        }
        return plot_epochs(epochs, out_dir);
    }
    if (header == kStaticSummaryHeader) {
        std::vector<StaticRow> out;
        for (const auto& f : rows) {
            const auto n = row_no(f);
            out.push_back({parse_count(f[0], n), parse_technique(f[1], n), parse_number(f[2], n, "mean_lambda"),
                           parse_optional(f[3], n, "ci_half_width").value_or(0.0), parse_optional(f[4], n, "mean_gain")});
        }
        return plot_static_rows(out, out_dir);
    }
    if (header == kStaticSamplesHeader) {
        // (d, technique) -> replication -> lambda
        std::map<std::pair<int, int>, std::map<int, double>> samples;
        for (const auto& f : rows) {
            const auto n = row_no(f);
            const int d = parse_count(f[0], n);
            const auto t = parse_technique(f[1], n);
            const int rep = static_cast<int>(parse_number(f[2], n, "replication"));
            samples[{d, static_cast<int>(t)}][rep] = parse_number(f[3], n, "lambda");
        }
        std::vector<StaticRow> out;
        for (const auto& [key, reps] : samples) {
            std::vector<double> v;
            for (const auto& [rep, lambda] : reps) v.push_back(lambda);
            const auto ci = confidence_interval(v, 0.95);
            StaticRow row{key.first, static_cast<Technique>(key.second), ci.mean, ci.half_width.value_or(0.0), {}};
            auto other = samples.find({key.first, static_cast<int>(Technique::Sddt)});
            if (row.technique == Technique::Pddt && other != samples.end()) {
                std::vector<double> gains;
                for (const auto& [rep, lambda] : reps) {
                    auto it = other->second.find(rep);
                    if (it == other->second.end()) continue;
                    if (auto g = throughput_gain(lambda, it->second)) gains.push_back(*g);
                }
                if (!gains.empty()) row.gain = confidence_interval(gains, 0.95).mean;
            }
            out.push_back(row);
        }
        return plot_static_rows(out, out_dir);
    }
    throw PlotError(csv.string() + ": unrecognised CSV header '" + header + "'");
}

}  // namespace risflow
