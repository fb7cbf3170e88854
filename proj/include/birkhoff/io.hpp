#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "birkhoff/discrepancy.hpp"
#include "birkhoff/linear_form.hpp"
#include "birkhoff/measure.hpp"
#include "birkhoff/rotation.hpp"
#include "birkhoff/sums.hpp"

namespace birkhoff {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr int kDefaultBits = 48;

std::string library_version();

/// {"a":"n/d","b":"n/d","float":x} with x certified to `bits`.
nlohmann::json to_json(const LinearForm& v, const RotationNumber& rho, int bits = kDefaultBits);

nlohmann::json to_json(const StepDensity& dens, int bits = kDefaultBits);

/// Shortest round-trip text of a double ("%.17g" trimmed).
std::string format_double(double x);

/// A starting point x0 inside Q + Q·rho. Accepts "p", "p/q", decimals, and
/// "<rational>+<rational>*rho" style forms. Throws DomainError for anything else.
LinearForm parse_field_value(std::string_view text);

void write_orbit_csv_header(std::ostream& out, bool approximate = false);
void write_orbit_row(std::ostream& out, const OrbitRecord& rec, const RotationNumber& rho, int bits = kDefaultBits);

struct FloatOrbitRecord {
  std::int64_t index = 0;
  double value = 0.0;
  bool is_running_max = false;
  bool is_running_min = false;
};

/// Double-precision orbit for starting points outside the exact field.
std::vector<FloatOrbitRecord> float_orbit(const RotationNumber& rho, double x0, std::int64_t count);
void write_float_orbit_row(std::ostream& out, const FloatOrbitRecord& rec);

void write_discrepancy_csv_header(std::ostream& out);
void write_discrepancy_row(std::ostream& out, const ClumpinessRecord& rec, const RotationNumber& rho,
                           int bits = kDefaultBits);

}  // namespace birkhoff
