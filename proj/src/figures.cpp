#include "birkhoff/figures.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "birkhoff/discrepancy.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/io.hpp"
#include "birkhoff/measure.hpp"
#include "birkhoff/ostrowski.hpp"
#include "birkhoff/svg.hpp"
#include "birkhoff/sums.hpp"

namespace birkhoff {

namespace {

const char* kBlue = "#1f4e9c";
const char* kRed = "#b22222";
const char* kGreen = "#2e7d32";
const char* kGray = "#666666";

struct Rendered {
  std::vector<double> breakpoints;
  std::vector<double> values;
};

Rendered render(const StepDensity& dens, int bits) {
  Rendered r;
  for (const auto& z : dens.breakpoints) r.breakpoints.push_back(lf_to_float(z, dens.angle.field, bits).value);
  for (const auto& v : dens.values) r.values.push_back(v.get_d());
  return r;
}

double fl(const LinearForm& v, const RotationNumber& rho, int bits) { return lf_to_float(v, rho, bits).value; }

// Graph of x -> S(alpha, n, x) over [0, 1) as one segment per branch.
void draw_branches(SvgDocument& svg, std::size_t panel, const BranchDecomposition& bd, int bits) {
  const RotationNumber& rho = bd.angle.field;
  const double n = static_cast<double>(bd.n);
  for (const Branch& b : bd.branches) {
    double x0 = fl(b.left, rho, bits);
    double len = fl(b.length, rho, bits);
    double v0 = fl(b.v_min, rho, bits);
    if (x0 + len <= 1.0) {
      svg.segment(panel, x0, v0, x0 + len, v0 + n * len, kBlue, 1.2);
    } else {
      double cut = 1.0 - x0;
      svg.segment(panel, x0, v0, 1.0, v0 + n * cut, kBlue, 1.2);
      svg.segment(panel, 0.0, v0 + n * cut, len - cut, v0 + n * len, kBlue, 1.2);
    }
  }
}

FigureCheck check(std::string name, bool passed, std::string detail = {}) {
  return {std::move(name), passed, std::move(detail)};
}

std::string path_for(const std::string& outdir, const std::string& id) {
  std::string stem = id;
  std::replace(stem.begin(), stem.end(), '.', '_');
  return (std::filesystem::path(outdir) / ("figure_" + stem + ".svg")).string();
}

FigureResult figure_1_1(const std::string& outdir, const FigureOptions& opt) {
  FigureResult res{"1.1", path_for(outdir, "1.1"), {}};
  RotationNumber rho = RotationNumber::golden();
  const std::int64_t n = 13;
  BranchDecomposition bd = branch_decomposition(rho, n);
  StepDensity dens = density(bd);
  auto [lo, hi] = support(dens);
  LinearForm length = support_length(dens);
  LinearForm clump = clumpiness_points(orbit_points(rho, n));
  res.checks.push_back(check("support length equals 13*D_13", lf_equal(length, clump, rho),
                             length.to_string() + " vs " + clump.to_string()));
  res.checks.push_back(check("density has mass 1", total_mass(dens) == LinearForm(1)));
  res.checks.push_back(check("tiling", tiling_check(dens).passed));

  const double zlo = fl(lo, rho, opt.bits);
  const double zhi = fl(hi, rho, opt.bits);
  SvgDocument svg(720, 640, "Birkhoff measure for the golden mean, n = 13");
  svg.metadata("rho", rho.spec());
  svg.metadata("n", std::to_string(n));
  svg.metadata("support_length", length.to_string());
  std::size_t top = svg.add_panel(60, 30, 620, 330, 0.0, 1.0, zlo - 0.1, zhi + 0.1, "S(rho, 13, x) for x in [0, 1)");
  draw_branches(svg, top, bd, opt.bits);
  svg.segment(top, 0.0, zlo, 1.0, zlo, kGray, 0.6, true);
  svg.segment(top, 0.0, zhi, 1.0, zhi, kGray, 0.6, true);
  std::size_t bottom = svg.add_panel(60, 410, 620, 200, zlo - 0.1, zhi + 0.1, 0.0, 1.05, "nu(rho, 13, z)");
  Rendered r = render(dens, opt.bits);
  svg.steps(bottom, r.breakpoints, r.values, kRed, 1.4);
  svg.save(res.path);
  return res;
}

FigureResult figure_1_2(const std::string& outdir, const FigureOptions& opt) {
  FigureResult res{"1.2", path_for(outdir, "1.2"), {}};
  RotationNumber rho = RotationNumber::golden();
  const std::int64_t count = opt.orbit_length;
  if (count < 1) throw PreconditionError("figure 1.2 needs N >= 1");

  std::vector<OrbitRecord> exact = orbit(rho, count);
  const double x0 = 1.0 / std::sqrt(5.0);
  std::vector<FloatOrbitRecord> approx = float_orbit(rho, x0, count);

  std::vector<std::pair<double, double>> upper, lower, path0, path1;
  bool inside = true;
  bool inside_float = true;
  double ymax = 0.5;
  for (std::int64_t n = 1; n <= count; ++n) {
    BranchDecomposition bd = branch_decomposition(rho, n);
    LinearForm lo = bd.branches.front().v_min;
    LinearForm hi = bd.branches.front().v_sup;
    for (const Branch& b : bd.branches) {
      lo = lf_min(lo, b.v_min, rho);
      hi = lf_max(hi, b.v_sup, rho);
    }
    const auto k = static_cast<std::size_t>(n - 1);
    if (lf_less(exact[k].value, lo, rho) || !lf_less(exact[k].value, hi, rho)) inside = false;
    double flo = fl(lo, rho, opt.bits);
    double fhi = fl(hi, rho, opt.bits);
    if (approx[k].value < flo - 1e-9 || approx[k].value > fhi + 1e-9) inside_float = false;
    ymax = std::max({ymax, fhi, -flo});
    upper.emplace_back(static_cast<double>(n), fhi);
    lower.emplace_back(static_cast<double>(n), flo);
    path0.emplace_back(static_cast<double>(n), fl(exact[k].value, rho, opt.bits));
    path1.emplace_back(static_cast<double>(n), approx[k].value);
  }
  res.checks.push_back(check("exact orbit from x0 = 0 stays in the range of S", inside));
  res.checks.push_back(check("approximate orbit from x0 = 1/sqrt(5) stays in the range of S", inside_float));

  SvgDocument svg(760, 420, "Range of S(golden, n, .) and two orbits");
  svg.metadata("rho", rho.spec());
  svg.metadata("N", std::to_string(count));
  svg.metadata("x0", "0 (exact) and 1/sqrt(5) (approximate, double precision)");
  std::size_t p = svg.add_panel(60, 30, 670, 350, 0.0, static_cast<double>(count), -ymax - 0.05, ymax + 0.05,
                                "S(rho, n, x0), n = 1.." + std::to_string(count));
  svg.polyline(p, upper, kGray, 0.8);
  svg.polyline(p, lower, kGray, 0.8);
  svg.polyline(p, path0, kBlue, 0.9);
  svg.polyline(p, path1, kRed, 0.9);
  svg.text(80, 400, "blue: x0 = 0 (exact)   red: x0 = 1/sqrt(5) (approximate)   gray: range", 10);
  svg.save(res.path);
  return res;
}

FigureResult figure_2_1(const std::string& outdir, const FigureOptions& opt) {
  FigureResult res{"2.1", path_for(outdir, "2.1"), {}};
  RotationNumber rho = RotationNumber::e_minus_2();
  const std::int64_t n = 2024;
  StepDensity dens = density(rho, n);
  CheckResult tiling = tiling_check(dens);
  res.checks.push_back(check("sum of integer translates is identically 1", tiling.passed, tiling.witness));
  res.checks.push_back(check("density has mass 1", total_mass(dens) == LinearForm(1)));

  Rendered r = render(dens, opt.bits);
  const double zlo = r.breakpoints.front();
  const double zhi = r.breakpoints.back();
  SvgDocument svg(760, 420, "Seven translates of the Birkhoff measure for e - 2, n = 2024");
  svg.metadata("rho", rho.spec());
  svg.metadata("n", std::to_string(n));
  svg.metadata("support_length", support_length(dens).to_string());
  std::size_t p = svg.add_panel(60, 30, 670, 350, zlo - 3.5, zhi + 3.5, 0.0, 1.15,
                                "nu(z + i) for i = -3..3 and their sum");
  const char* palette[] = {"#1f4e9c", "#b22222", "#2e7d32", "#6a1b9a", "#ef6c00", "#00838f", "#5d4037"};
  std::vector<double> cuts;
  for (int i = -3; i <= 3; ++i) {
    std::vector<double> shifted = r.breakpoints;
    for (double& z : shifted) z -= i;
    svg.steps(p, shifted, r.values, palette[i + 3], 0.7);
    cuts.insert(cuts.end(), shifted.begin(), shifted.end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto value_at = [&](double z) {
    auto it = std::upper_bound(r.breakpoints.begin(), r.breakpoints.end(), z);
    if (it == r.breakpoints.begin() || it == r.breakpoints.end()) return 0.0;
    return r.values[static_cast<std::size_t>(it - r.breakpoints.begin()) - 1];
  };
  std::vector<std::pair<double, double>> sum;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    double mid = 0.5 * (cuts[j] + cuts[j + 1]);
    double s = 0.0;
    for (int i = -3; i <= 3; ++i) s += value_at(mid + i);
    sum.emplace_back(cuts[j], s);
    sum.emplace_back(cuts[j + 1], s);
  }
  svg.polyline(p, sum, "#000000", 1.2);
  svg.segment(p, 0.0, 0.0, 0.0, 1.15, kGray, 0.5, true);
  svg.segment(p, 1.0, 0.0, 1.0, 1.15, kGray, 0.5, true);
  svg.save(res.path);
  return res;
}

FigureResult figure_4_2(const std::string& outdir, const FigureOptions& opt) {
  FigureResult res{"4.2", path_for(outdir, "4.2"), {}};
  RotationNumber rho = RotationNumber::e_minus_2();
  const std::int64_t q = 32;
  Angle shifted(rho, LinearForm::rho() - LinearForm(make_rational(22, 32)));
  CheckResult same = reduced_residue_check(q, rho, 23, 1);
  res.checks.push_back(check("nu(e-2, 32) equals nu(e-2-22/32, 32)", same.passed, same.witness));
  StepDensity dens = density(rho, q);
  TrapezoidReport trap = trapezoid_classify(dens, q);
  res.checks.push_back(check("isosceles trapezoid of step 32", trap.is_step_trapezoid && trap.isosceles, trap.reason));
  PlateauReport plat = plateau(23, q, rho);
  res.checks.push_back(check("plateau width 1 - 31|d|", plat.verified, plat.reason));

  BranchDecomposition left = branch_decomposition(shifted, q);
  BranchDecomposition right = branch_decomposition(rho, q);
  Rendered r = render(dens, opt.bits);
  const double zlo = r.breakpoints.front();
  const double zhi = r.breakpoints.back();
  SvgDocument svg(900, 560, "Reduced residues: e - 2 and e - 2 - 22/32 at n = 32");
  svg.metadata("rho", rho.spec());
  svg.metadata("angles", "rho and rho - 22/32");
  std::size_t a = svg.add_panel(60, 30, 370, 260, 0.0, 1.0, zlo - 0.1, zhi + 0.1, "S(e-2, 32, x)");
  draw_branches(svg, a, right, opt.bits);
  std::size_t b = svg.add_panel(500, 30, 370, 260, 0.0, 1.0, zlo - 0.1, zhi + 0.1, "S(e-2-22/32, 32, x)");
  draw_branches(svg, b, left, opt.bits);
  std::size_t c = svg.add_panel(60, 340, 370, 190, zlo - 0.1, zhi + 0.1, 0.0, 1.05, "nu(e-2, 32, z)");
  svg.steps(c, r.breakpoints, r.values, kRed, 1.2);
  Rendered r2 = render(density(shifted, q), opt.bits);
  std::size_t d = svg.add_panel(500, 340, 370, 190, zlo - 0.1, zhi + 0.1, 0.0, 1.05, "nu(e-2-22/32, 32, z)");
  svg.steps(d, r2.breakpoints, r2.values, kGreen, 1.2);
  svg.save(res.path);
  return res;
}

FigureResult figure_b_1(const std::string& outdir, const FigureOptions& opt) {
  FigureResult res{"B.1", path_for(outdir, "B.1"), {}};
  RotationNumber rho = RotationNumber::from_cf({}, std::vector<std::int64_t>{6, 11, 2, 1});
  const std::int64_t q5 = to_int64(rho.convergent(5).q);
  std::vector<LinearForm> s = orbit_values(rho, q5);
  bool closed_forms = true;
  for (std::size_t k = 2; k <= 5; ++k) {
    const auto qk = static_cast<std::size_t>(to_int64(rho.convergent(k).q));
    if (!(s_qn(rho, k) == s[qk])) closed_forms = false;
  }
  res.checks.push_back(check("S(q_k) matches the closed form for k = 2..5", closed_forms));
  bool fast = true;
  for (std::int64_t m = 0; m <= q5; ++m) {
    if (!(sum_fast(rho, Integer(m)) == s[static_cast<std::size_t>(m)])) fast = false;
  }
  res.checks.push_back(check("fast sums agree with the orbit up to q_5", fast));
  res.checks.push_back(check("q_5 from the recursion is 1382", q5 == 1382, "q_5 = " + std::to_string(q5)));

  SvgDocument svg(900, 620, "Fractabolae for rho = [6, 11, 2, 1, 6, 11, 2, 1, ...]");
  svg.metadata("rho", rho.spec());
  svg.metadata("q", "q_2 = 67, q_3 = 140, q_4 = 207, q_5 = " + std::to_string(q5));
  svg.metadata("note", "q_5 follows the convergent recursion 6*207 + 140 = 1382; a caption value of 1388 does not");
  std::vector<double> fs;
  for (const auto& v : s) fs.push_back(fl(v, rho, opt.bits));
  for (std::size_t k = 2; k <= 5; ++k) {
    const auto qk = static_cast<std::size_t>(to_int64(rho.convergent(k).q));
    double lo = 0.0, hi = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t m = 0; m <= qk; ++m) {
      lo = std::min(lo, fs[m]);
      hi = std::max(hi, fs[m]);
      pts.emplace_back(static_cast<double>(m), fs[m]);
    }
    const double x = (k % 2 == 0) ? 60 : 500;
    const double y = (k < 4) ? 30 : 330;
    std::size_t p = svg.add_panel(x, y, 370, 250, 0.0, static_cast<double>(qk), lo - 0.1, hi + 0.1,
                                  "S(rho, m, 0), m <= q_" + std::to_string(k) + " = " + std::to_string(qk));
    if (qk <= 300) {
      svg.dots(p, pts, kBlue, 1.2);
    } else {
      svg.dots(p, pts, kBlue, 0.6);
    }
  }
  svg.save(res.path);
  return res;
}

FigureResult figure_c_1(const std::string& outdir, const FigureOptions& opt) {
  FigureResult res{"C.1", path_for(outdir, "C.1"), {}};
  RotationNumber rho = RotationNumber::e_minus_2();
  std::vector<std::int64_t> ns = opt.bestiary_n.empty() ? default_bestiary_n() : opt.bestiary_n;
  std::vector<Integer> qs;
  for (std::size_t k = 0; k <= 11; ++k) qs.push_back(rho.convergent(k).q);

  const std::size_t columns = 5;
  const std::size_t rows = (ns.size() + columns - 1) / columns;
  SvgDocument svg(1000, 40 + 190.0 * static_cast<double>(rows), "Bestiary of Birkhoff measures for e - 2");
  svg.metadata("rho", rho.spec());
  std::string list;
  for (auto n : ns) list += (list.empty() ? "" : ",") + std::to_string(n);
  svg.metadata("n", list);
  bool mass = true;
  bool tiling = true;
  bool trapezoids = true;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const std::int64_t n = ns[i];
    StepDensity dens = density(rho, n);
    if (!(total_mass(dens) == LinearForm(1))) mass = false;
    if (!tiling_check(dens).passed) tiling = false;
    if (std::find(qs.begin(), qs.end(), Integer(n)) != qs.end()) {
      TrapezoidReport t = trapezoid_classify(dens, n);
      if (!t.is_step_trapezoid || !t.isosceles) trapezoids = false;
    }
    Rendered r = render(dens, opt.bits);
    const double x = 50 + 190.0 * static_cast<double>(i % columns);
    const double y = 40 + 190.0 * static_cast<double>(i / columns);
    double top = *std::max_element(r.values.begin(), r.values.end());
    std::size_t p = svg.add_panel(x, y, 150, 130, r.breakpoints.front() - 0.05, r.breakpoints.back() + 0.05, 0.0,
                                  top * 1.05, "n = " + std::to_string(n));
    svg.steps(p, r.breakpoints, r.values, kRed, 0.8);
  }
  res.checks.push_back(check("every panel has mass 1", mass));
  res.checks.push_back(check("every panel tiles", tiling));
  res.checks.push_back(check("panels at denominators are isosceles trapezoids", trapezoids));
  svg.save(res.path);
  return res;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"1.1", "1.2", "2.1", "4.2", "B.1", "C.1"};
  return ids;
}

std::vector<std::int64_t> default_bestiary_n() {
  return {3, 4, 7, 32, 39, 71, 465, 536, 999, 1000, 1001, 1002, 1003, 2002, 8544};
}

FigureResult emit_figure(const std::string& id, const std::string& outdir, const FigureOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw IoError("cannot create " + outdir + ": " + ec.message());
  if (id == "1.1") return figure_1_1(outdir, options);
  if (id == "1.2") return figure_1_2(outdir, options);
  if (id == "2.1") return figure_2_1(outdir, options);
  if (id == "4.2") return figure_4_2(outdir, options);
  if (id == "B.1") return figure_b_1(outdir, options);
  if (id == "C.1") return figure_c_1(outdir, options);
  throw PreconditionError("unknown figure '" + id + "'");
}

}  // namespace birkhoff
