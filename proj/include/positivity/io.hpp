#pragma once

// JSON and CSV formats.
//
// Domain:  {"type": "polygon", "vertices": [[x, y], ...]}
//          {"type": "disk", "center": [x, y], "radius": r}
//          {"type": "tube", "spine": [[x, y], ...], "epsilon": e}
// Wave:    {"k": .., "M": .., "a0": .., "ac": [..], "as": [..], "origin": [x, y]}
// Density: {"k": .., "M": .., "c_re": [..], "c_im": [..], "origin": [x, y]}, m = -M..M
// Target set: {"points": [[x, y], ...]} or {"polyline": [[x, y], ...], "spacing": h}
//
// "origin" is optional on input and defaults to [0, 0].

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "positivity/geometry.hpp"
#include "positivity/helmholtz.hpp"
#include "positivity/herglotz.hpp"
#include "positivity/verify.hpp"

namespace positivity::io {

using json = nlohmann::json;

/// Throws InputError on unknown keys, missing keys or invalid geometry.
geometry::Domain2D domain_from_json(const json& j);
json to_json(const geometry::Domain2D& domain);

geometry::TargetSet target_set_from_json(const json& j);
json to_json(const geometry::TargetSet& set);

herglotz::FourierBesselWave wave_from_json(const json& j);
json to_json(const herglotz::FourierBesselWave& wave);

herglotz::HerglotzDensity density_from_json(const json& j);
json to_json(const herglotz::HerglotzDensity& density);

json to_json(const verify::PositivityCertificate& c);
json to_json(const verify::SignChangeReport& r);
json to_json(const helmholtz::SpectralGate& g);
json to_json(const helmholtz::StrongPositivityReport& r);
json to_json(const herglotz::FitReport& r);
json to_json(const herglotz::FarFieldReport& r);

/// Reads and parses a JSON file; throws InputError on I/O or parse errors.
json read_json_file(const std::string& path);
/// Writes with two-space indentation and a trailing newline.
void write_json_file(const std::string& path, const json& j);

/// Doubles formatted with 17 significant digits.
std::string format_double(double v);

/// CSV with a header row; every value printed with format_double.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_csv_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<double>>& rows);

}  // namespace positivity::io
