#include "roucir/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace roucir::io {

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_noise_csv(std::ostream& out, const noise::NoisePath& path) {
    out << "t,increment,cum\n";
    double cum = 0.0;
    for (std::size_t k = 0; k < path.increments.size(); ++k) {
        cum += path.increments[k];
        out << format_number(path.grid.time(k + 1)) << ',' << format_number(path.increments[k])
            << ',' << format_number(cum) << '\n';
    }
}

void write_sample_path_csv(std::ostream& out, const models::SamplePath& path) {
    out << "t,value\n";
    for (std::size_t k = 0; k < path.values.size(); ++k)
        out << format_number(path.grid.time(k)) << ',' << format_number(path.values[k]) << '\n';
}

void write_scheme_output_csv(std::ostream& out, const schemes::SchemeOutput& o) {
    out << "t,Y,L\n";
    for (std::size_t k = 0; k < o.path.values.size(); ++k)
        out << format_number(o.path.grid.time(k)) << ',' << format_number(o.path.values[k]) << ','
            << format_number(o.reflection.values[k]) << '\n';
}

void write_reflection_csv(std::ostream& out, const models::ReflectionPath& path) {
    out << "t,L\n";
    for (std::size_t k = 0; k < path.values.size(); ++k)
        out << format_number(path.grid.time(k)) << ',' << format_number(path.values[k]) << '\n';
}

void write_columns_csv(std::ostream& out, const std::vector<std::string>& headers,
                       const std::vector<std::vector<double>>& columns) {
    if (headers.size() != columns.size())
        throw std::invalid_argument("write_columns_csv: header/column count mismatch");
    for (std::size_t c = 0; c < headers.size(); ++c)
        out << headers[c] << (c + 1 < headers.size() ? ',' : '\n');
    if (columns.empty()) return;
    const std::size_t rows = columns.front().size();
    for (const auto& col : columns)
        if (col.size() != rows) throw std::invalid_argument("write_columns_csv: ragged columns");
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << format_number(columns[c][r]) << (c + 1 < columns.size() ? ',' : '\n');
}

namespace {

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void expand(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

void write_svg_chart(std::ostream& out, const std::vector<Curve>& curves,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label) {
    constexpr double kWidth = 900.0, kHeight = 560.0;
    constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 50.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;

    Range xr{1e300, -1e300}, yr{1e300, -1e300};
    for (const auto& c : curves) {
        for (double v : c.x) xr.expand(v);
        for (double v : c.y) yr.expand(v);
    }
    if (xr.lo > xr.hi) xr = {0.0, 1.0};
    if (yr.lo > yr.hi) yr = {0.0, 1.0};
    if (xr.hi == xr.lo) xr.hi = xr.lo + 1.0;
    if (yr.hi == yr.lo) yr.hi = yr.lo + 1.0;
    const double pad = 0.04 * (yr.hi - yr.lo);
    yr.lo -= pad;
    yr.hi += pad;

    const auto sx = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    const auto sy = [&](double v) { return kTop + plot_h - (v - yr.lo) / (yr.hi - yr.lo) * plot_h; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << title << "</text>\n";

    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
        const double fy = yr.lo + (yr.hi - yr.lo) * i / kTicks;
        const double px = sx(fx), py = sy(fy);
        out << "<line x1=\"" << px << "\" y1=\"" << kTop << "\" x2=\"" << px << "\" y2=\""
            << kTop + plot_h << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << kLeft << "\" y1=\"" << py << "\" x2=\"" << kLeft + plot_w
            << "\" y2=\"" << py << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << kTop + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(fx) << "</text>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(fy) << "</text>\n";
    }
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
        << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

    for (const auto& c : curves) {
        out << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"" << c.width
            << "\" points=\"";
        const std::size_t n = std::min(c.x.size(), c.y.size());
        for (std::size_t k = 0; k < n; ++k) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", sx(c.x[k]), sy(c.y[k]));
            out << buf;
        }
        out << "\"/>\n";
    }

    double legend_y = kTop + 14;
    for (const auto& c : curves) {
        if (c.label.empty()) continue;
        out << "<line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << legend_y - 4 << "\" x2=\""
            << kLeft + plot_w - 120 << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << c.color
            << "\" stroke-width=\"" << std::max(2.0, c.width) << "\"/>\n";
        out << "<text x=\"" << kLeft + plot_w - 114 << "\" y=\"" << legend_y
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << c.label << "</text>\n";
        legend_y += 16;
    }
    out << "</svg>\n";
}

void RunManifest::set(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
}

void RunManifest::set(const std::string& key, double value) {
    entries_.emplace_back(key, format_number(value));
}

void RunManifest::set(const std::string& key, std::uint64_t value) {
    entries_.emplace_back(key, std::to_string(value));
}

void RunManifest::add_warning(const std::string& warning) { warnings_.push_back(warning); }

void RunManifest::add_file(const std::string& path) { files_.push_back(path); }

void RunManifest::write(std::ostream& out) const {
    for (const auto& [key, value] : entries_) out << key << " = " << value << '\n';
    for (const auto& f : files_) out << "file = " << f << '\n';
    for (const auto& w : warnings_) out << "warning = " << w << '\n';
}

}  // namespace roucir::io
