#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "roucir/models.hpp"
#include "roucir/noise.hpp"
#include "roucir/schemes.hpp"

namespace roucir::io {

/// Shortest round-trippable decimal text (17 significant digits, '.' decimal
/// separator, locale independent).
std::string format_number(double value);

// CSV writers: LF line endings, one header row.
void write_noise_csv(std::ostream& out, const noise::NoisePath& path);            // t,increment,cum
void write_sample_path_csv(std::ostream& out, const models::SamplePath& path);    // t,value
void write_scheme_output_csv(std::ostream& out, const schemes::SchemeOutput& o);  // t,Y,L
void write_reflection_csv(std::ostream& out, const models::ReflectionPath& path); // t,L
void write_columns_csv(std::ostream& out, const std::vector<std::string>& headers,
                       const std::vector<std::vector<double>>& columns);

struct Curve {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "black";
    double width = 1.0;
    std::string label;
};

/// Minimal self-contained SVG line chart: fixed viewport, axes with tick
/// labels, one polyline per curve, optional legend from curve labels.
void write_svg_chart(std::ostream& out, const std::vector<Curve>& curves,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label);

/// Ordered `key = value` run manifest. Everything needed to reproduce a run
/// bit-for-bit goes through set(); warnings and produced files are listed
/// explicitly.
class RunManifest {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::uint64_t value);
    void add_warning(const std::string& warning);
    void add_file(const std::string& path);

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    const std::vector<std::string>& files() const { return files_; }

    void write(std::ostream& out) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::vector<std::string> warnings_;
    std::vector<std::string> files_;
};

}  // namespace roucir::io
