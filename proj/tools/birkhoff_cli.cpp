#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "birkhoff/discrepancy.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/figures.hpp"
#include "birkhoff/io.hpp"
#include "birkhoff/measure.hpp"
#include "birkhoff/ostrowski.hpp"
#include "birkhoff/rotation.hpp"
#include "birkhoff/sums.hpp"
#include "birkhoff/svg.hpp"

using namespace birkhoff;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kIo = 3, kInconsistent = 4 };

struct UsageError : Error {
  using Error::Error;
};

int bits = kDefaultBits;

std::string show(const LinearForm& v, const RotationNumber& rho) {
  CertifiedFloat f = lf_to_float(v, rho, bits);
  return v.to_string() + " ~ " + format_double(f.value);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path);
}

RotationNumber parse_rho(const std::string& spec) {
  try {
    return RotationNumber::parse(spec);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const InvalidDigitError& e) {
    throw UsageError(e.what());
  }
}

LinearForm parse_x0(const std::string& text) {
  try {
    return parse_field_value(text);
  } catch (const DomainError& e) {
    throw UsageError(std::string(e.what()) + " (use --float-x0 for an approximate orbit)");
  }
}

int cmd_cf(const std::string& spec, std::size_t depth, bool as_json) {
  RotationNumber rho = parse_rho(spec);
  std::size_t last = depth;
  if (auto len = rho.cf_length()) last = std::min(last, *len);
  json rows = json::array();
  std::ostringstream text;
  text << "n,a,p,q,d_a,d_b,d_float\n";
  for (std::size_t n = 0; n <= last; ++n) {
    const Convergent& c = rho.convergent(n);
    std::string a = n == 0 ? "" : std::to_string(rho.digit(n));
    json d = to_json(c.d, rho, bits);
    rows.push_back({{"n", n}, {"a", a}, {"p", to_string(c.p)}, {"q", to_string(c.q)}, {"d", d}});
    text << n << ',' << a << ',' << c.p << ',' << c.q << ',' << d["a"].get<std::string>() << ','
         << d["b"].get<std::string>() << ',' << format_double(d["float"].get<double>()) << '\n';
  }
  if (as_json) {
    json doc = {{"schema", kSchemaVersion}, {"rho", rho.spec()}, {"convergents", rows}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << text.str();
  }
  return kOk;
}

int cmd_sum(const std::string& spec, const std::string& n_text, const std::string& x0_text, bool fast) {
  RotationNumber rho = parse_rho(spec);
  Integer n;
  try {
    n = parse_integer(n_text);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (sign(n) < 0) throw UsageError("n must be nonnegative");
  LinearForm x0 = parse_x0(x0_text);
  LinearForm value;
  std::string method;
  if (fast) {
    if (!x0.is_zero()) throw UsageError("--fast needs x0 = 0");
    if (rho.is_rational()) throw UsageError("--fast needs an irrational rotation number");
    value = sum_fast(rho, n);
    method = "fast";
    if (n <= 100000) {
      LinearForm direct = sum_direct(rho, to_int64(n));
      if (!(direct == value)) throw InconsistencyError("fast and direct sums differ: " + direct.to_string());
      method = "fast,direct";
    }
  } else {
    if (n > Integer(100000000L)) throw UsageError("n too large for direct summation; use --fast");
    value = rho.normalize(sum_direct(rho, to_int64(n), x0));
    method = "direct";
  }
  CertifiedFloat f = lf_to_float(value, rho, bits);
  std::cout << "rho=" << rho.spec() << "\nn=" << n << "\nmethod=" << method << "\na=" << to_string(value.a())
            << "\nb=" << to_string(value.b()) << "\nvalue=" << value.to_string() << "\nfloat=" << format_double(f.value)
            << "\nerror_bound=" << format_double(f.error) << '\n';
  return kOk;
}

int cmd_orbit(const std::string& spec, std::int64_t count, const std::string& x0_text, bool float_x0,
              const std::string& out) {
  RotationNumber rho = parse_rho(spec);
  if (count < 1) throw UsageError("N must be at least 1");
  std::ostringstream s;
  if (float_x0) {
    char* end = nullptr;
    double x0 = std::strtod(x0_text.c_str(), &end);
    if (end == x0_text.c_str() || *end != '\0') throw UsageError("cannot parse x0 '" + x0_text + "'");
    write_orbit_csv_header(s, true);
    for (const auto& rec : float_orbit(rho, x0, count)) write_float_orbit_row(s, rec);
  } else {
    LinearForm x0 = parse_x0(x0_text);
    write_orbit_csv_header(s, false);
    Orbit orb(Angle(rho), count, x0);
    while (auto rec = orb.next()) write_orbit_row(s, *rec, rho, bits);
  }
  emit(s.str(), out);
  return kOk;
}

std::string density_svg(const StepDensity& dens) {
  const RotationNumber& rho = dens.angle.field;
  std::vector<double> z;
  std::vector<double> v;
  for (const auto& b : dens.breakpoints) z.push_back(lf_to_float(b, rho, bits).value);
  double top = 0;
  for (const auto& x : dens.values) {
    v.push_back(x.get_d());
    top = std::max(top, x.get_d());
  }
  const double pad = 0.05 * (z.back() - z.front());
  SvgDocument svg(720, 360, "Birkhoff measure, rho = " + rho.spec() + ", n = " + std::to_string(dens.n));
  svg.metadata("schema", kSchemaVersion);
  svg.metadata("version", library_version());
  svg.metadata("rho", rho.spec());
  svg.metadata("n", std::to_string(dens.n));
  svg.metadata("support_length", support_length(dens).to_string());
  std::size_t p = svg.add_panel(60, 30, 620, 290, z.front() - pad, z.back() + pad, 0.0, top * 1.05,
                                "nu(rho, " + std::to_string(dens.n) + ", z)");
  svg.steps(p, z, v, "#b22222", 1.2);
  return svg.str();
}

int cmd_density(const std::string& spec, std::int64_t n, bool as_svg, const std::string& out) {
  RotationNumber rho = parse_rho(spec);
  if (n < 1) throw UsageError("n must be at least 1");
  StepDensity dens = density(rho, n);
  emit(as_svg ? density_svg(dens) : to_json(dens, bits).dump(2) + "\n", out);
  return kOk;
}

int cmd_discrepancy(const std::string& spec, std::int64_t n, const std::string& method, bool as_json) {
  RotationNumber rho = parse_rho(spec);
  if (n < 1) throw UsageError("n must be at least 1");
  std::vector<ClumpinessRecord> recs;
  const bool all = method == "all";
  if (all || method == "points") recs.push_back({n, clumpiness_points(orbit_points(rho, n)), "points"});
  if (all || method == "oracle") {
    if (static_cast<std::size_t>(n) > kOracleCap) {
      if (!all) throw UsageError("the oracle is limited to n <= " + std::to_string(kOracleCap));
    } else {
      recs.push_back({n, discrepancy_oracle(orbit_points(rho, n)), "oracle"});
    }
  }
  if (all || method == "range") recs.push_back({n, clumpiness_range(rho, n), "range"});
  if (all || method == "ramshaw") {
    if (rho.is_rational()) {
      if (!all) throw UsageError("the reflected-sum formula needs an irrational rotation number");
    } else {
      recs.push_back({n, clumpiness_ramshaw(rho, n), "ramshaw"});
    }
  }
  if (recs.empty()) throw UsageError("unknown method '" + method + "'");
  for (auto& r : recs) r.value = rho.normalize(r.value);

  bool agree = true;
  for (const auto& r : recs) agree = agree && lf_equal(r.value, recs.front().value, rho);
  if (as_json) {
    json rows = json::array();
    for (const auto& r : recs) rows.push_back({{"method", r.method}, {"value", to_json(r.value, rho, bits)}});
    json doc = {{"schema", kSchemaVersion}, {"rho", rho.spec()}, {"n", n}, {"nD_n", rows}, {"agree", agree}};
    std::cout << doc.dump(2) << '\n';
  } else {
    write_discrepancy_csv_header(std::cout);
    for (const auto& r : recs) write_discrepancy_row(std::cout, r, rho, bits);
  }
  if (!agree) {
    std::cerr << "error: discrepancy methods disagree\n";
    return kInconsistent;
  }
  return kOk;
}

int cmd_trapezoid(const std::string& spec, std::size_t k) {
  RotationNumber rho = parse_rho(spec);
  if (k < 1) throw UsageError("k must be at least 1");
  if (auto len = rho.cf_length(); len && k > *len) throw UsageError("k exceeds the continued fraction length");
  const Convergent& c = rho.convergent(k);
  const std::int64_t q = to_int64(c.q);
  StepDensity dens = density(rho, q);
  TrapezoidReport rep = trapezoid_classify(dens, q);
  LinearForm ad = lf_abs(c.d, rho);
  LinearForm expected_plateau = LinearForm(1) - ad * Integer(q - 1);
  LinearForm expected_support = LinearForm(1) + ad * Integer(q - 1);
  LinearForm supp = support_length(dens);

  std::cout << "rho=" << rho.spec() << "\nk=" << k << "\nq=" << q << "\nd=" << show(c.d, rho)
            << "\nstep_trapezoid=" << (rep.is_step_trapezoid ? "true" : "false") << "\nstep_count=" << rep.step_count
            << "\nisosceles=" << (rep.isosceles ? "true" : "false") << '\n';
  bool ok = rep.is_step_trapezoid && rep.isosceles && lf_equal(supp, expected_support, rho);
  std::cout << "support_length=" << show(supp, rho) << "\nexpected_support=" << show(expected_support, rho) << '\n';
  if (rep.top) {
    LinearForm width = rep.top->second - rep.top->first;
    std::cout << "plateau=[" << rep.top->first.to_string() << ", " << rep.top->second.to_string() << "]\n"
              << "plateau_width=" << show(width, rho) << "\nexpected_plateau=" << show(expected_plateau, rho) << '\n';
    ok = ok && lf_equal(width, expected_plateau, rho);
  } else {
    ok = false;
  }
  if (!rep.reason.empty()) std::cout << "reason=" << rep.reason << '\n';
  std::cout << "result=" << (ok ? "pass" : "fail") << '\n';
  if (!ok) {
    std::cerr << "error: density at q_" << k << " is not the expected trapezoid\n";
    return kInconsistent;
  }
  return kOk;
}

int cmd_figures(const std::vector<std::string>& which, const std::string& outdir, std::int64_t orbit_length,
                const std::vector<std::int64_t>& n_list) {
  FigureOptions opt;
  opt.bits = bits;
  opt.orbit_length = orbit_length;
  opt.bestiary_n = n_list;
  std::vector<std::string> ids = which.empty() ? figure_ids() : which;
  for (const auto& id : ids) {
    const auto& known = figure_ids();
    if (std::find(known.begin(), known.end(), id) == known.end()) throw UsageError("unknown figure '" + id + "'");
  }
  bool ok = true;
  for (const auto& id : ids) {
    FigureResult res = emit_figure(id, outdir, opt);
    std::cout << res.path << '\n';
    for (const auto& c : res.checks) {
      std::cout << "  " << (c.passed ? "ok   " : "FAIL ") << c.name;
      if (!c.detail.empty()) std::cout << " (" << c.detail << ')';
      std::cout << '\n';
    }
    ok = ok && res.ok();
  }
  if (!ok) {
    std::cerr << "error: a figure cross-check failed\n";
    return kInconsistent;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birkhoff sums, measures and discrepancy for irrational rotations"};
  app.require_subcommand(0, 1);
  app.add_option("--bits", bits, "Precision of rendered floats")->check(CLI::Range(8, 52));
  app.set_version_flag("--version", library_version() + " (schema " + kSchemaVersion + ")");

  std::string rho;
  std::string out;
  bool as_json = false;

  auto* cf = app.add_subcommand("cf", "Continued fraction convergents");
  std::size_t depth = 10;
  cf->add_option("rho", rho, "Rotation number")->required();
  cf->add_option("--depth", depth, "Last convergent index");
  cf->add_flag("--json", as_json, "JSON output");

  auto* sum = app.add_subcommand("sum", "S(rho, n, x0)");
  std::string n_text;
  std::string x0_text = "0";
  bool fast = false;
  sum->add_option("rho", rho, "Rotation number")->required();
  sum->add_option("-n", n_text, "Number of terms")->required();
  sum->add_option("--x0", x0_text, "Starting point a or a+b*rho");
  sum->add_flag("--fast", fast, "Ostrowski evaluation (x0 = 0)");

  auto* orb = app.add_subcommand("orbit", "Orbit of S as CSV");
  std::int64_t count = 0;
  bool float_x0 = false;
  orb->add_option("rho", rho, "Rotation number")->required();
  orb->add_option("-N", count, "Orbit length")->required();
  orb->add_option("--x0", x0_text, "Starting point");
  orb->add_flag("--float-x0", float_x0, "Approximate orbit for a real x0 outside the field");
  orb->add_option("-o,--output", out, "Output file");

  auto* den = app.add_subcommand("density", "Birkhoff measure as JSON or SVG");
  std::int64_t n = 0;
  den->add_option("rho", rho, "Rotation number")->required();
  den->add_option("-n", n, "Number of terms")->required();
  auto* den_json = den->add_flag("--json", "JSON output (default)");
  bool as_svg = false;
  den->add_flag("--svg", as_svg, "SVG step plot")->excludes(den_json);
  den->add_option("-o,--output", out, "Output file");

  auto* dis = app.add_subcommand("discrepancy", "n*D_n by one or all methods");
  std::string method = "points";
  dis->add_option("rho", rho, "Rotation number")->required();
  dis->add_option("-n", n, "Number of points")->required();
  dis->add_option("--method", method, "points|oracle|range|ramshaw|all")
      ->check(CLI::IsMember({"points", "oracle", "range", "ramshaw", "all"}));
  dis->add_flag("--json", as_json, "JSON output");

  auto* trap = app.add_subcommand("trapezoid", "Classify the density at q_k");
  std::size_t k = 0;
  trap->add_option("rho", rho, "Rotation number")->required();
  trap->add_option("-k", k, "Convergent index")->required();

  auto* fig = app.add_subcommand("figures", "Write the SVG figures");
  std::vector<std::string> which;
  std::string outdir = ".";
  std::int64_t orbit_length = 500;
  std::vector<std::int64_t> n_list;
  fig->add_option("--which", which, "Figure ids (default all)")->delimiter(',')->allow_extra_args(false);
  fig->add_option("outdir", outdir, "Output directory");
  fig->add_option("-N", orbit_length, "Orbit length for figure 1.2");
  fig->add_option("--n-list", n_list, "Bestiary n values for figure C.1")->delimiter(',')->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*cf) return cmd_cf(rho, depth, as_json);
    if (*sum) return cmd_sum(rho, n_text, x0_text, fast);
    if (*orb) return cmd_orbit(rho, count, x0_text, float_x0, out);
    if (*den) return cmd_density(rho, n, as_svg, out);
    if (*dis) return cmd_discrepancy(rho, n, method, as_json);
    if (*trap) return cmd_trapezoid(rho, k);
    if (*fig) return cmd_figures(which, outdir, orbit_length, n_list);
    std::cout << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << '\n';
    return kInconsistent;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
