// Copyright 2026 The chaoscorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Static SVG rendering of the fig1 and fig2 CSV files. Output depends only on the CSV
 * contents, so identical inputs give byte-identical images.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "chaoscorr/harness/io.hpp"

namespace chaoscorr::harness {

enum class CsvSchema { Fig1, Fig2 };

inline const std::vector<std::string> &fig1_header() {
    static const std::vector<std::string> h{"ensemble", "N", "samples", "e_max_mean", "e_max_std", "e_min_mean",
                                            "e_min_std"};
    return h;
}

inline const std::vector<std::string> &fig2_header() {
    static const std::vector<std::string> h{"source", "m", "neg_log2_mean_purity", "std", "analytic", "bound"};
    return h;
}

/// Identifies a published schema by its exact header. Tables without data rows are
/// rejected as well.
inline CsvSchema detect_schema(const CsvTable &t) {
    if (t.rows.empty()) {
        throw SchemaError("CSV has no data rows");
    }
    if (t.header == fig1_header()) {
        return CsvSchema::Fig1;
    }
    if (t.header == fig2_header()) {
        return CsvSchema::Fig2;
    }
    throw SchemaError("CSV header matches no plottable schema");
}

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> err; ///< empty: no error bars
    bool dashed = false;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

inline double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double f : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (f * mag >= raw) {
            return f * mag;
        }
    }
    return 10.0 * mag;
}

inline const char *palette(std::size_t i) {
    static const char *colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    return colors[i % 6];
}

} // namespace detail

/// Line chart with optional symmetric error bars.
inline std::string render_svg(const std::string &title, const std::string &x_label, const std::string &y_label,
                              const std::vector<Series> &series) {
    constexpr double W = 640, H = 440, L = 70, R = 170, T = 40, B = 55;
    double x0 = std::numeric_limits<double>::infinity();
    double x1 = -x0;
    double y0 = x0;
    double y1 = -x0;
    for (const auto &s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double e = s.err.empty() ? 0.0 : s.err[i];
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i] - e);
            y1 = std::max(y1, s.y[i] + e);
        }
    }
    if (!std::isfinite(x0) || !std::isfinite(y0)) {
        throw SchemaError("nothing to plot");
    }
    if (x1 == x0) {
        x0 -= 1.0;
        x1 += 1.0;
    }
    if (y1 == y0) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    const double ystep = detail::nice_step(y1 - y0, 6);
    y0 = std::floor(y0 / ystep) * ystep;
    y1 = std::ceil(y1 / ystep) * ystep;
    const double xstep = detail::nice_step(x1 - x0, 8);

    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    using detail::fmt;

    std::string o;
    o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o += "<text x=\"" + fmt(W / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + title + "</text>\n";
    o += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(H - B) + "\" x2=\"" + fmt(W - R) + "\" y2=\"" + fmt(H - B) +
         "\" stroke=\"black\"/>\n";
    o += "<line x1=\"" + fmt(L) + "\" y1=\"" + fmt(T) + "\" x2=\"" + fmt(L) + "\" y2=\"" + fmt(H - B) +
         "\" stroke=\"black\"/>\n";
    for (double x = std::ceil(x0 / xstep) * xstep; x <= x1 + 1e-9 * xstep; x += xstep) {
        o += "<line x1=\"" + fmt(px(x)) + "\" y1=\"" + fmt(H - B) + "\" x2=\"" + fmt(px(x)) + "\" y2=\"" +
             fmt(H - B + 5) + "\" stroke=\"black\"/>\n";
        o += "<text x=\"" + fmt(px(x)) + "\" y=\"" + fmt(H - B + 18) + "\" text-anchor=\"middle\">" +
             detail::tick_label(x) + "</text>\n";
    }
    for (double y = y0; y <= y1 + 1e-9 * ystep; y += ystep) {
        o += "<line x1=\"" + fmt(L - 5) + "\" y1=\"" + fmt(py(y)) + "\" x2=\"" + fmt(L) + "\" y2=\"" + fmt(py(y)) +
             "\" stroke=\"black\"/>\n";
        o += "<text x=\"" + fmt(L - 8) + "\" y=\"" + fmt(py(y) + 4) + "\" text-anchor=\"end\">" +
             detail::tick_label(y) + "</text>\n";
    }
    o += "<text x=\"" + fmt((L + W - R) / 2) + "\" y=\"" + fmt(H - 12) + "\" text-anchor=\"middle\">" + x_label +
         "</text>\n";
    o += "<text x=\"18\" y=\"" + fmt((T + H - B) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         fmt((T + H - B) / 2) + ")\">" + y_label + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto &s = series[k];
        const char *color = detail::palette(k);
        std::string points;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            points += (i ? " " : "") + fmt(px(s.x[i])) + "," + fmt(py(s.y[i]));
        }
        o += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\"" +
             (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + " points=\"" + points + "\"/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!s.err.empty() && s.err[i] > 0.0) {
                const double cx = px(s.x[i]);
                o += "<line x1=\"" + fmt(cx) + "\" y1=\"" + fmt(py(s.y[i] - s.err[i])) + "\" x2=\"" + fmt(cx) +
                     "\" y2=\"" + fmt(py(s.y[i] + s.err[i])) + "\" stroke=\"" + color + "\"/>\n";
            }
            if (!s.dashed) {
                o += "<circle cx=\"" + fmt(px(s.x[i])) + "\" cy=\"" + fmt(py(s.y[i])) + "\" r=\"3\" fill=\"" +
                     color + "\"/>\n";
            }
        }
        const double ly = T + 10 + 18.0 * static_cast<double>(k);
        o += "<line x1=\"" + fmt(W - R + 15) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(W - R + 40) + "\" y2=\"" +
             fmt(ly) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"" +
             (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        o += "<text x=\"" + fmt(W - R + 46) + "\" y=\"" + fmt(ly + 4) + "\">" + s.label + "</text>\n";
    }
    o += "</svg>\n";
    return o;
}

namespace detail {

/// Groups rows by the first column, keeping first-appearance order.
inline std::vector<std::pair<std::string, std::vector<const std::vector<std::string> *>>>
group_rows(const CsvTable &t) {
    std::vector<std::pair<std::string, std::vector<const std::vector<std::string> *>>> out;
    for (const auto &row : t.rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto &g) { return g.first == row[0]; });
        if (it == out.end()) {
            out.emplace_back(row[0], std::vector<const std::vector<std::string> *>{});
            it = std::prev(out.end());
        }
        it->second.push_back(&row);
    }
    return out;
}

} // namespace detail

/// fig1: e_max and e_min against N for each ensemble, error bars = standard deviation.
inline std::string render_fig1(const CsvTable &t) {
    const auto n = t.column("N");
    std::vector<Series> series;
    for (const auto &[name, rows] : detail::group_rows(t)) {
        Series hi{name + " e_max", {}, {}, {}, false};
        Series lo{name + " e_min", {}, {}, {}, false};
        for (const auto *r : rows) {
            const double x = parse_number((*r)[n]);
            hi.x.push_back(x);
            lo.x.push_back(x);
            hi.y.push_back(parse_number((*r)[t.column("e_max_mean")]));
            hi.err.push_back(parse_number((*r)[t.column("e_max_std")]));
            lo.y.push_back(parse_number((*r)[t.column("e_min_mean")]));
            lo.err.push_back(parse_number((*r)[t.column("e_min_std")]));
        }
        series.push_back(std::move(hi));
        series.push_back(std::move(lo));
    }
    return render_svg("Extremal VCM eigenvalues", "N", "eigenvalue", series);
}

/// fig2: -log2 of the mean purity against m, one curve per source, with the bound line.
inline std::string render_fig2(const CsvTable &t) {
    const auto m = t.column("m");
    std::vector<Series> series;
    Series bound{"bound min(m, N-m)", {}, {}, {}, true};
    for (const auto &[name, rows] : detail::group_rows(t)) {
        Series s{name, {}, {}, {}, false};
        for (const auto *r : rows) {
            const double x = parse_number((*r)[m]);
            s.x.push_back(x);
            s.y.push_back(parse_number((*r)[t.column("neg_log2_mean_purity")]));
            s.err.push_back(parse_number((*r)[t.column("std")]));
            if (series.empty()) { // every source carries the same bound column
                bound.x.push_back(x);
                bound.y.push_back(parse_number((*r)[t.column("bound")]));
            }
        }
        series.push_back(std::move(s));
    }
    series.insert(series.begin(), std::move(bound));
    return render_svg("-log2 mean purity", "m", "-log2 Tr rho_m^2", series);
}

/// Renders each CSV to `<stem>.svg` in `out_dir`. Every input is read and rendered before
/// anything is written, so a schema error leaves no files behind.
inline std::vector<std::filesystem::path> emit_plots(const std::vector<std::filesystem::path> &csv_paths,
                                                     const std::filesystem::path &out_dir) {
    std::vector<std::pair<std::filesystem::path, std::string>> pending;
    for (const auto &p : csv_paths) {
        const CsvTable t = read_csv(p);
        try {
            const std::string svg = detect_schema(t) == CsvSchema::Fig1 ? render_fig1(t) : render_fig2(t);
            pending.emplace_back(out_dir / (p.stem().string() + ".svg"), svg);
        } catch (const SchemaError &e) {
            throw SchemaError(p.string() + ": " + e.what());
        }
    }
    ensure_directory(out_dir);
    std::vector<std::filesystem::path> written;
    for (const auto &[path, svg] : pending) {
        write_text(path, svg);
        written.push_back(path);
    }
    return written;
}

} // namespace chaoscorr::harness
