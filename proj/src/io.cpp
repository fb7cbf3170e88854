#include "birkhoff/io.hpp"

#include <cmath>
#include <cstdio>
#include <regex>

#include "birkhoff/errors.hpp"

namespace birkhoff {

std::string library_version() { return BIRKHOFF_VERSION; }

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  for (int digits = 6; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

nlohmann::json to_json(const LinearForm& v, const RotationNumber& rho, int bits) {
  LinearForm w = rho.normalize(v);
  CertifiedFloat f = lf_to_float(w, rho, bits);
  nlohmann::json out;
  out["a"] = to_fraction_string(w.a());
  out["b"] = to_fraction_string(w.b());
  out["float"] = f.value;
  return out;
}

nlohmann::json to_json(const StepDensity& dens, int bits) {
  const RotationNumber& rho = dens.angle.field;
  nlohmann::json out;
  out["schema"] = kSchemaVersion;
  out["rho"] = rho.spec();
  if (!dens.angle.is_generator()) out["angle"] = to_json(dens.angle.value, rho, bits);
  out["n"] = dens.n;
  nlohmann::json bp = nlohmann::json::array();
  for (const auto& z : dens.breakpoints) bp.push_back(to_json(z, rho, bits));
  out["breakpoints"] = std::move(bp);
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : dens.values) {
    Rational scaled = v * dens.n;
    values.push_back(to_string(scaled) + "/" + std::to_string(dens.n));
  }
  out["values"] = std::move(values);
  return out;
}

LinearForm parse_field_value(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (s.empty()) throw DomainError("empty starting point");
  try {
    return LinearForm(parse_rational(s));
  } catch (const ParseError&) {
  }
  // [a] (+|-) [b*] rho
  static const std::regex form(R"(^(?:([-+]?[0-9./]+)(?=[-+]))?([-+])?(?:([0-9./]+)\*)?rho$)");
  std::smatch m;
  if (!std::regex_match(s, m, form)) {
    throw DomainError("starting point '" + std::string(text) + "' is not of the form a + b*rho with rational a, b");
  }
  try {
    Rational a = m[1].matched ? parse_rational(m[1].str()) : Rational(0);
    Rational b = m[3].matched ? parse_rational(m[3].str()) : Rational(1);
    if (m[2].matched && m[2].str() == "-") b = -b;
    return LinearForm(a, b);
  } catch (const ParseError& err) {
    throw DomainError(err.what());
  }
}

void write_orbit_csv_header(std::ostream& out, bool approximate) {
  out << "i,a,b,float,is_running_max,is_running_min";
  if (approximate) out << ",approx";
  out << '\n';
}

void write_orbit_row(std::ostream& out, const OrbitRecord& rec, const RotationNumber& rho, int bits) {
  LinearForm v = rho.normalize(rec.value);
  out << rec.index << ',' << to_string(v.a()) << ',' << to_string(v.b()) << ','
      << format_double(lf_to_float(v, rho, bits).value) << ',' << (rec.is_running_max ? "true" : "false") << ','
      << (rec.is_running_min ? "true" : "false") << '\n';
}

std::vector<FloatOrbitRecord> float_orbit(const RotationNumber& rho, double x0, std::int64_t count) {
  if (count < 1) throw PreconditionError("orbit needs N >= 1");
  const double alpha = lf_to_float(LinearForm::rho(), rho, 60).value;
  std::vector<FloatOrbitRecord> out;
  out.reserve(static_cast<std::size_t>(count));
  double sum = 0.0;
  double hi = 0.0;
  double lo = 0.0;
  for (std::int64_t i = 1; i <= count; ++i) {
    double y = x0 + static_cast<double>(i) * alpha;
    sum += (y - std::floor(y)) - 0.5;
    FloatOrbitRecord rec{i, sum, i == 1 || sum > hi, i == 1 || sum < lo};
    if (rec.is_running_max) hi = sum;
    if (rec.is_running_min) lo = sum;
    out.push_back(rec);
  }
  return out;
}

void write_float_orbit_row(std::ostream& out, const FloatOrbitRecord& rec) {
  out << rec.index << ",,," << format_double(rec.value) << ',' << (rec.is_running_max ? "true" : "false") << ','
      << (rec.is_running_min ? "true" : "false") << ",true\n";
}

void write_discrepancy_csv_header(std::ostream& out) { out << "n,a,b,float,method\n"; }

void write_discrepancy_row(std::ostream& out, const ClumpinessRecord& rec, const RotationNumber& rho, int bits) {
  LinearForm v = rho.normalize(rec.value);
  out << rec.n << ',' << to_string(v.a()) << ',' << to_string(v.b()) << ','
      << format_double(lf_to_float(v, rho, bits).value) << ',' << rec.method << '\n';
}

}  // namespace birkhoff
