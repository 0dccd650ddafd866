#include "qkdlink/scenario/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace qkdlink::scenario {

namespace {

std::string num(double v, const char* fmt = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

// --- minimal static SVG writer ---------------------------------------------

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct Marker {
    std::string label;
    double x;
};

const char* kPalette[] = {"#1f6fb4", "#d9541e", "#2f9e44", "#845ef7",
                          "#c2255c", "#0b7285"};

class SvgChart {
public:
    SvgChart(std::string title, std::string xlabel, std::string ylabel)
        : title_(std::move(title)),
          xlabel_(std::move(xlabel)),
          ylabel_(std::move(ylabel)) {}

    void add_series(Series s) {
        for (const auto& [x, y] : s.points) extend_bounds(x, y);
        series_.push_back(std::move(s));
    }
    void add_marker(Marker m) { markers_.push_back(std::move(m)); }
    void add_bar(const std::string& label, double value) {
        bars_.emplace_back(label, value);
        extend_bounds(static_cast<double>(bars_.size()), value);
        extend_bounds(0.0, 0.0);
    }

    bool empty() const { return series_.empty() && bars_.empty(); }

    void write(const std::filesystem::path& path) const {
        std::ofstream out(path);
        const double w = 800, h = 500;
        const double ml = 80, mr = 30, mt = 50, mb = 60;
        double x0 = xmin_, x1 = xmax_, y0 = std::min(ymin_, 0.0), y1 = ymax_;
        if (x1 <= x0) x1 = x0 + 1;
        if (y1 <= y0) y1 = y0 + 1;
        y1 += 0.05 * (y1 - y0); // headroom
        auto px = [&](double x) {
            return ml + (x - x0) / (x1 - x0) * (w - ml - mr);
        };
        auto py = [&](double y) {
            return h - mb - (y - y0) / (y1 - y0) * (h - mt - mb);
        };

        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
            << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
            << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
               "font-size=\"16\">"
            << title_ << "</text>\n";
        // axes
        out << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\""
            << w - mr << "\" y2=\"" << h - mb
            << "\" stroke=\"black\"/>\n<line x1=\"" << ml << "\" y1=\"" << mt
            << "\" x2=\"" << ml << "\" y2=\"" << h - mb
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 16
            << "\" text-anchor=\"middle\" font-size=\"12\">" << xlabel_
            << "</text>\n";
        out << "<text x=\"20\" y=\"" << (mt + h - mb) / 2
            << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate("
               "-90 20 "
            << (mt + h - mb) / 2 << ")\">" << ylabel_ << "</text>\n";
        // tick labels (5 per axis)
        for (int i = 0; i <= 4; ++i) {
            const double xv = x0 + (x1 - x0) * i / 4;
            const double yv = y0 + (y1 - y0) * i / 4;
            out << "<text x=\"" << px(xv) << "\" y=\"" << h - mb + 16
                << "\" text-anchor=\"middle\" font-size=\"10\">" << num(xv)
                << "</text>\n";
            out << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4
                << "\" text-anchor=\"end\" font-size=\"10\">" << num(yv)
                << "</text>\n";
        }
        // series
        for (std::size_t s = 0; s < series_.size(); ++s) {
            const char* color = kPalette[s % 6];
            out << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : series_[s].points)
                out << num(px(x), "%.2f") << "," << num(py(y), "%.2f") << " ";
            out << "\"/>\n";
            out << "<text x=\"" << w - mr - 8 << "\" y=\""
                << mt + 16 * static_cast<double>(s)
                << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color
                << "\">" << series_[s].label << "</text>\n";
        }
        // bars
        if (!bars_.empty()) {
            const double slot = (w - ml - mr) / static_cast<double>(bars_.size());
            for (std::size_t i = 0; i < bars_.size(); ++i) {
                const double bx = ml + slot * (static_cast<double>(i) + 0.2);
                const double by = py(bars_[i].second);
                out << "<rect x=\"" << num(bx, "%.2f") << "\" y=\""
                    << num(by, "%.2f") << "\" width=\"" << num(slot * 0.6, "%.2f")
                    << "\" height=\"" << num(py(0.0) - by, "%.2f")
                    << "\" fill=\"" << kPalette[0] << "\"/>\n";
                out << "<text x=\"" << num(bx + slot * 0.3, "%.2f") << "\" y=\""
                    << h - mb + 30
                    << "\" text-anchor=\"middle\" font-size=\"9\">"
                    << bars_[i].first << "</text>\n";
            }
        }
        // vertical markers
        for (std::size_t i = 0; i < markers_.size(); ++i) {
            const auto& m = markers_[i];
            const char* color = kPalette[(i + 1) % 6];
            out << "<line x1=\"" << num(px(m.x), "%.2f") << "\" y1=\"" << mt
                << "\" x2=\"" << num(px(m.x), "%.2f") << "\" y2=\"" << h - mb
                << "\" stroke=\"" << color
                << "\" stroke-dasharray=\"4 3\"/>\n";
            out << "<text x=\"" << num(px(m.x) + 4, "%.2f") << "\" y=\""
                << mt + 14 + 14 * static_cast<double>(i)
                << "\" font-size=\"11\" fill=\"" << color << "\">" << m.label
                << "</text>\n";
        }
        out << "</svg>\n";
    }

private:
    void extend_bounds(double x, double y) {
        xmin_ = std::min(xmin_, x);
        xmax_ = std::max(xmax_, x);
        ymin_ = std::min(ymin_, y);
        ymax_ = std::max(ymax_, y);
    }

    std::string title_, xlabel_, ylabel_;
    std::vector<Series> series_;
    std::vector<Marker> markers_;
    std::vector<std::pair<std::string, double>> bars_;
    double xmin_ = 1e300, xmax_ = -1e300, ymin_ = 1e300, ymax_ = -1e300;
};

std::string cell_key(std::int64_t n, double fs, crypto::Algorithm alg) {
    return "N=" + std::to_string(n) + " f_s=" + num(fs) + "Hz " +
           crypto::algorithm_name(alg);
}

} // namespace

void write_lead_csv(const LeadSweepResult& result, std::ostream& out) {
    out << "distance_km,n_signals,sampling_rate_hz,algorithm,lead_min,error\n";
    for (const auto& c : result.cells) {
        out << num(c.distance_km) << ',' << c.n_signals << ','
            << num(c.sampling_rate_hz) << ','
            << crypto::algorithm_name(c.algorithm) << ',';
        if (!c.error.empty())
            out << "!,";
        else if (c.lead_s)
            out << num(*c.lead_s / 60.0) << ',';
        else
            out << "-,";
        out << c.error << '\n';
    }
}

void write_fail_csv(const FailSweepResult& result, std::ostream& out) {
    out << "distance_km,n_signals,sampling_rate_hz,fail_offset_s,lead_min,"
           "uptime_h,uptime_switch_h,error\n";
    for (const auto& c : result.cells) {
        out << num(c.distance_km) << ',' << c.n_signals << ','
            << num(c.sampling_rate_hz) << ',' << num(c.fail_offset_s) << ',';
        auto cell = [&](const std::optional<double>& v, double scale) {
            if (!c.error.empty())
                out << "!,";
            else if (v)
                out << num(*v / scale) << ',';
            else
                out << "-,";
        };
        cell(c.lead_s, 60.0);
        cell(c.uptime_s, 3600.0);
        cell(c.uptime_switch_s, 3600.0);
        out << c.error << '\n';
    }
}

void write_model_csv(const ScenarioConfig& cfg, std::ostream& out) {
    out << "distance_km,skr_bps,qber\n";
    for (double d : cfg.sweep.distances_km) {
        const auto m = cfg.channel.at_length(d);
        out << num(d) << ',' << num(qkd::secret_key_rate(m), "%.3f") << ','
            << num(m.qber()) << '\n';
    }
}

void render_model_outputs(const ScenarioConfig& cfg,
                          const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "model_curves.csv");
        write_model_csv(cfg, out);
    }
    if (cfg.sweep.distances_km.empty()) return;
    Series skr{"SKR", {}}, qber{"QBER", {}};
    for (double d : cfg.sweep.distances_km) {
        const auto m = cfg.channel.at_length(d);
        skr.points.emplace_back(d, qkd::secret_key_rate(m));
        qber.points.emplace_back(d, m.qber());
    }
    SvgChart skr_chart("Secret key rate vs distance", "distance (km)",
                       "SKR (bit/s)");
    skr_chart.add_series(std::move(skr));
    skr_chart.write(out_dir / "skr_vs_distance.svg");
    SvgChart qber_chart("QBER vs distance", "distance (km)", "QBER");
    qber_chart.add_series(std::move(qber));
    qber_chart.write(out_dir / "qber_vs_distance.svg");
}

void render_lead_outputs(const ScenarioConfig& cfg,
                         const LeadSweepResult& result,
                         const std::filesystem::path& out_dir) {
    (void)cfg;
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "lead_times.csv");
        write_lead_csv(result, out);
    }
    std::map<std::string, Series> by_config;
    for (const auto& c : result.cells) {
        if (!c.lead_s || !c.error.empty()) continue;
        auto key = cell_key(c.n_signals, c.sampling_rate_hz, c.algorithm);
        auto& s = by_config[key];
        s.label = key;
        s.points.emplace_back(c.distance_km, *c.lead_s / 60.0);
    }
    if (by_config.empty()) return;
    SvgChart chart("Minimum lead time vs distance", "distance (km)",
                   "lead time (min)");
    for (auto& [_, s] : by_config) chart.add_series(std::move(s));
    chart.write(out_dir / "lead_vs_distance.svg");
}

void render_fail_outputs(const ScenarioConfig& cfg,
                         const FailSweepResult& result,
                         const std::filesystem::path& out_dir) {
    (void)cfg;
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "fail_uptimes.csv");
        write_fail_csv(result, out);
    }
    SvgChart chart("Post-failure uptime", "configuration", "uptime (h)");
    bool any = false;
    for (const auto& c : result.cells) {
        if (!c.uptime_s || !c.error.empty()) continue;
        const double capped = std::isfinite(*c.uptime_s) ? *c.uptime_s / 3600.0
                                                         : 0.0;
        chart.add_bar(num(c.distance_km) + "km/N" +
                          std::to_string(c.n_signals) + "/" +
                          num(c.sampling_rate_hz) + "Hz",
                      capped);
        any = true;
    }
    if (any) chart.write(out_dir / "uptime_bars.svg");
}

void render_pool_outputs(const pool::PoolTimeline& timeline,
                         const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "pool_timeline.csv");
        timeline.write_csv(out);
    }
    if (timeline.entries.empty()) return;
    Series d{"pool size d[k]", {}};
    for (const auto& e : timeline.entries)
        d.points.emplace_back(static_cast<double>(e.k) * timeline.step_s,
                              static_cast<double>(e.d_bits));
    SvgChart chart("Key pool timeline", "time (s)", "pool size (bits)");
    chart.add_series(std::move(d));
    chart.add_marker({"lead", static_cast<double>(timeline.k_lead) *
                                  timeline.step_s});
    if (timeline.k_fail)
        chart.add_marker({"fail", static_cast<double>(*timeline.k_fail) *
                                      timeline.step_s});
    if (timeline.k_exhaust)
        chart.add_marker({"exhaust", static_cast<double>(*timeline.k_exhaust) *
                                         timeline.step_s});
    chart.write(out_dir / "pool_timeline.svg");
}

} // namespace qkdlink::scenario
