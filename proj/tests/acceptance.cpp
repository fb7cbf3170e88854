// One line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "birkhoff/discrepancy.hpp"
#include "birkhoff/figures.hpp"
#include "birkhoff/measure.hpp"
#include "birkhoff/ostrowski.hpp"
#include "birkhoff/sums.hpp"
#include "oracle.hpp"

using namespace birkhoff;
namespace fs = std::filesystem;

namespace {

const LinearForm rho_ = LinearForm::rho();

struct Named {
  std::string name;
  RotationNumber rho;
};

std::vector<Named> rho_set() {
  return {{"golden", RotationNumber::golden()},
          {"silver", RotationNumber::silver()},
          {"e-2", RotationNumber::e_minus_2()},
          {"metallic:6", RotationNumber::metallic(6)},
          {"[6,11,2,1]", RotationNumber::from_cf({}, std::vector<std::int64_t>{6, 11, 2, 1})}};
}

// Collects failures for one criterion; keeps the first few for the report.
struct Tally {
  long checks = 0;
  long failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what();
  }
  bool ok() const { return failures == 0; }
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::mt19937_64 gen(20240601);

std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
}

int failed = 0;

void report(int id, const Tally& t, const std::string& summary, double secs) {
  if (!t.ok()) ++failed;
  std::printf("[%s] criterion %d: %s (%ld checks, %ld failed, %.1fs)%s%s\n", t.ok() ? "PASS" : "FAIL", id,
              summary.c_str(), t.checks, t.failures, secs, t.ok() ? "" : "; first: ", t.first.c_str());
  std::fflush(stdout);
}

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const auto& r : rho_set()) {
    for (std::int64_t n = 1; n <= 300; ++n) {
      PointSet pts = orbit_points(r.rho, n);
      LinearForm points = clumpiness_points(pts);
      LinearForm oracle_value = discrepancy_oracle(pts);
      LinearForm range = clumpiness_range(r.rho, n);
      LinearForm ramshaw = clumpiness_ramshaw(r.rho, n);
      t.expect(points == oracle_value && points == range && points == ramshaw,
               [&] { return r.name + " n=" + std::to_string(n) + ": " + points.to_string() + ", " +
                            oracle_value.to_string() + ", " + range.to_string() + ", " + ramshaw.to_string(); });
    }
  }
  report(1, t, "four-way exact nD_n agreement, 5 rho x n<=300", seconds_since(t0));
}

std::vector<std::int64_t> tiling_range() {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= 100; ++n) ns.push_back(n);
  ns.push_back(1001);
  ns.push_back(2024);
  return ns;
}

void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const auto& r : rho_set()) {
    for (std::int64_t n : tiling_range()) {
      CheckResult c = tiling_check(density(r.rho, n));
      t.expect(c.passed, [&] { return r.name + " n=" + std::to_string(n) + ": " + c.witness; });
    }
  }
  report(2, t, "tiling, 5 rho x n in 1..100, 1001, 2024", seconds_since(t0));
}

void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  struct Case {
    std::string name;
    RotationNumber rho;
    std::vector<std::int64_t> qs;
  };
  for (const auto& c : {Case{"e-2", RotationNumber::e_minus_2(), {3, 4, 7, 32, 39, 71, 465, 536, 1001}},
                        Case{"golden", RotationNumber::golden(), {2, 3, 5, 8, 13, 21}}}) {
    for (std::int64_t q : c.qs) {
      std::size_t k = 1;
      while (c.rho.convergent(k).q != q) ++k;
      LinearForm abs_d = lf_abs(c.rho.convergent(k).d, c.rho);
      StepDensity dens = density(c.rho, q);
      TrapezoidReport tr = trapezoid_classify(dens, q);
      std::string where = c.name + " q=" + std::to_string(q);
      t.expect(tr.is_step_trapezoid && tr.isosceles, where + ": " + tr.reason);
      if (!tr.top) continue;
      LinearForm width = tr.top->second - tr.top->first;
      t.expect(lf_equal(width, LinearForm(1) - (q - 1) * abs_d, c.rho), where + ": plateau width");
      t.expect(lf_equal(support_length(dens), LinearForm(1) + (q - 1) * abs_d, c.rho), where + ": support");
      t.expect(lf_equal(clumpiness_points(orbit_points(c.rho, q)), LinearForm(1) + (q - 1) * abs_d, c.rho),
               where + ": q D_q");
    }
  }
  report(3, t, "isosceles step-q trapezoids with exact plateau, support and qD_q", seconds_since(t0));
}

void criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const auto& r : rho_set()) {
    std::vector<LinearForm> direct = orbit_values(r.rho, 1000000);
    for (std::int64_t m = 0; m <= 10000; ++m) {
      t.expect(sum_fast(r.rho, Integer(m)) == direct[m], [&] { return r.name + " m=" + std::to_string(m); });
    }
    for (int k = 0; k < 500; ++k) {
      std::int64_t m = uniform(1, 1000000);
      t.expect(sum_fast(r.rho, Integer(m)) == direct[m], [&] { return r.name + " m=" + std::to_string(m); });
    }
  }
  auto t1 = std::chrono::steady_clock::now();
  LinearForm big = sum_fast(RotationNumber::golden(), Integer(1000000000000L));
  double secs = seconds_since(t1);
  t.expect(secs < 1.0, "sum_fast(golden, 10^12) took " + num(secs) + "s");
  t.expect(big.b() == Rational(Integer(1000000000000L) * Integer(1000000000001L) / 2), "sum_fast(golden, 10^12) b");
  report(4, t, "sum_fast = direct for m<=10^4 and 500 random m<=10^6 per rho; golden 10^12 in " + num(secs) + "s",
         seconds_since(t0));
}

// sum_{i=1}^{q} floor(i alpha) with alpha = (p + d)/q evaluated by the oracle.
Integer oracle_floor_sum(std::int64_t p, std::int64_t q, const Rational& d_rat, const LinearForm& d_form,
                         const oracle::Real& rho, bool rational) {
  Integer total = 0;
  for (std::int64_t i = 1; i <= q; ++i) {
    if (rational) {
      Rational x = Rational(Integer(i)) * (Rational(Integer(p)) + d_rat) / Rational(Integer(q));
      Integer f;
      mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
      total += f;
    } else {
      oracle::Real x = oracle::Real::from_si(i) * (oracle::Real::from_si(p) + oracle::eval(d_form, rho)) /
                       oracle::Real::from_si(q);
      total += x.floor();
    }
  }
  return total;
}

std::vector<std::int64_t> random_digits(const RotationNumber& rho, std::size_t depth) {
  // top down: b_i = a_{i+1} forces b_{i-1} = 0
  auto cap = [&](std::size_t i) { return i == 0 ? rho.digit(1) - 1 : rho.digit(i + 1); };
  std::vector<std::int64_t> b(depth);
  b[depth - 1] = uniform(1, cap(depth - 1));
  for (std::size_t i = depth - 1; i-- > 0;) {
    b[i] = b[i + 1] == rho.digit(i + 2) ? 0 : uniform(0, cap(i));
  }
  return b;
}

void criterion5() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const auto& r : rho_set()) {
    std::vector<LinearForm> direct = orbit_values(r.rho, 10000);
    for (std::size_t n = 1; r.rho.convergent(n).q <= 10000; ++n) {
      std::int64_t q = r.rho.convergent(n).q.get_si();
      t.expect(s_qn(r.rho, n) == direct[q], [&] { return r.name + " s_qn n=" + std::to_string(n); });
    }
  }

  RotationNumber g = RotationNumber::golden();
  oracle::Real golden = oracle::metallic(1);
  for (int k = 0; k < 100; ++k) {
    std::int64_t q = uniform(2, 500);
    std::int64_t p;
    do p = uniform(1, q - 1); while (std::gcd(p, q) != 1);
    std::int64_t u = uniform(-999, 999);
    bool rational = k % 2 == 0;
    if (!rational && u == 0) u = 1;
    Rational d_rat = Rational(Integer(u)) / Rational(Integer(1000 * (q - 1)));
    LinearForm d_form = rational ? LinearForm(d_rat) : (2 * rho_ - LinearForm(1)) * d_rat;
    Angle alpha = rational ? Angle(RotationNumber::rational((Rational(Integer(p)) + d_rat) / Rational(Integer(q))))
                           : Angle(g, (LinearForm(Rational(Integer(p))) + d_form) * (Rational(1) / Rational(Integer(q))));
    Integer want_floor = oracle_floor_sum(p, q, d_rat, d_form, golden, rational);
    LinearForm want_frac = alpha.value * Rational(Integer(q * (q + 1) / 2)) - LinearForm(Rational(want_floor));
    std::string where = "p=" + std::to_string(p) + " q=" + std::to_string(q) + " u=" + std::to_string(u);
    t.expect(floor_sum(p, q, alpha) == want_floor, where + ": floor sum");
    t.expect(lf_equal(frac_sum(p, q, alpha), want_frac, alpha.field), where + ": frac sum");
  }

  for (const auto& r : rho_set()) {
    for (std::int64_t n = 1; n <= 200; ++n) {
      std::vector<LinearForm> v;
      for (std::int64_t k = 1; k <= n; ++k) v.push_back(shifted_sum(r.rho, n, k));
      for (std::int64_t k = 1; k <= n; ++k) {
        t.expect(v[k - 1] + v[n - k] == LinearForm(-1),
                 [&] { return r.name + " pair sum n=" + std::to_string(n) + " k=" + std::to_string(k); });
      }
    }
  }

  for (int s = 0; s < 50; ++s) {
    const auto all = rho_set();
    const Named& r = all[s % all.size()];
    std::size_t depth = static_cast<std::size_t>(uniform(2, 12));
    OstrowskiExpansion e = OstrowskiExpansion::from_digits(r.rho, random_digits(r.rho, depth));
    for (std::size_t m = 0; m < e.digits().size(); ++m) {
      std::optional<LinearForm> first;
      for (std::int64_t b = 0; b <= e.admissible_max(m); ++b) {
        LinearForm residual = digit_influence_residual(e, m, b);
        OstrowskiExpansion moved = e.with_digit(m, b);
        t.expect(residual + digit_influence(moved, m, b) == sum_fast(r.rho, moved.value()),
                 [&] { return r.name + " digit split at m=" + std::to_string(m); });
        if (!first) first = residual;
        t.expect(residual == *first, [&] { return r.name + " residual varies at m=" + std::to_string(m); });
      }
    }
  }
  report(5, t, "s_qn, floor/frac sums, shifted-sum pairs, digit-influence residuals", seconds_since(t0));
}

void criterion6() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const auto& r : rho_set()) {
    for (std::int64_t n = 1; n <= 200; ++n) {
      std::vector<LinearForm> v;
      for (std::int64_t k = 1; k <= n; ++k) v.push_back(shifted_sum(r.rho, n, k));
      std::size_t lo = 0, hi = 0;
      for (std::size_t k = 1; k < v.size(); ++k) {
        if (lf_less(v[k], v[lo], r.rho)) lo = k;
        if (lf_less(v[hi], v[k], r.rho)) hi = k;
      }
      std::int64_t k_star = static_cast<std::int64_t>(lo) + 1;
      const LinearForm& paired = v[n - k_star];
      std::string where = r.name + " n=" + std::to_string(n) + " k*=" + std::to_string(k_star);
      t.expect(lf_equal(paired, v[hi], r.rho), where + ": max not at n+1-k*");
      t.expect(paired + LinearForm(1) == -v[lo], where + ": pairing identity");
      // the pair also brackets the range of S, through the branch decomposition
      BranchDecomposition bd = branch_decomposition(r.rho, n);
      LinearForm v_min = bd.branches[0].v_min, v_sup = bd.branches[0].v_sup;
      for (const auto& b : bd.branches) {
        v_min = lf_min(v_min, b.v_min, r.rho);
        v_sup = lf_max(v_sup, b.v_sup, r.rho);
      }
      t.expect(v_min == v[lo] && v_sup == paired + LinearForm(1), where + ": range of S");
    }
  }

  std::string lines;
  for (const auto& [name, rho] : std::vector<Named>{{"golden", RotationNumber::golden()}, {"silver", RotationNumber::silver()}}) {
    std::int64_t count = rho.convergent(9).q.get_si();
    ClumpinessMaxima cm = running_clumpiness_maxima(rho, count);
    int checked = 0;
    for (const auto& p : cm.predictions) {
      std::string h = p.hypothesis ? (*p.hypothesis ? "T" : "F") : "-";
      std::string m = p.is_running_max ? (*p.is_running_max ? "yes" : "no") : "beyond N";
      lines += "    " + name + " N=" + std::to_string(count) + " j=" + std::to_string(p.j) +
               " M=" + std::to_string(p.big_m) + (p.big_m_in_bracket ? "" : "(out of bracket)") +
               " m=" + std::to_string(p.small_m) + (p.small_m_in_bracket ? "" : "(out of bracket)") +
               " hypothesis=" + h + " predicted=" + std::to_string(p.predicted) + " running max: " + m + "\n";
      if (p.hypothesis.value_or(false) && p.is_running_max) {
        ++checked;
        t.expect(*p.is_running_max, name + " predicted index " + std::to_string(p.predicted) + " is not a running max");
      }
    }
    t.expect(checked >= 3, name + ": fewer than three predictions with the hypothesis in force");
  }
  report(6, t, "pairing of min at k* and max at n+1-k* for n<=200; predicted iD_i running maxima to q_9",
         seconds_since(t0));
  std::fputs(lines.c_str(), stdout);
}

void criterion7() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  for (const auto& r : rho_set()) {
    RotationNumber c = r.rho.complement();
    for (std::int64_t n : tiling_range()) {
      StepDensity d = density(r.rho, n);
      std::string where = r.name + " n=" + std::to_string(n);
      t.expect(identical(d, density(Angle(r.rho, LinearForm(1) - rho_), n)), where + ": angle 1-rho");
      t.expect(identical(d, rebase(density(c, n), r.rho, LinearForm(1) - rho_)), where + ": complement field");
      CheckResult s = symmetry_check(d);
      t.expect(s.passed, [&] { return where + ": " + s.witness; });
    }
  }
  report(7, t, "nu(rho) = nu(1-rho) by two routes and nu(z) = nu(-z), same ranges as 2", seconds_since(t0));
}

void criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  RotationNumber g = RotationNumber::golden();
  StepDensity dg = density(g, 20);
  oracle::Real golden = oracle::metallic(1);
  std::string row;
  std::optional<L1Distance> prev;
  for (std::size_t k = 4; k <= 10; ++k) {
    const Convergent& cv = g.convergent(k);
    Rational pq = Rational(cv.p) / Rational(cv.q);
    L1Distance l = l1_distance(density(RotationNumber::rational(pq), 20), dg);
    double bound = 2.0 * 400 * (golden - oracle::Real::from_q(pq)).abs().to_double();
    std::string where = "k=" + std::to_string(k);
    t.expect(l.value - l.error <= bound, where + ": " + num(l.value) + " > bound " + num(bound));
    if (prev) t.expect(l.value + l.error < prev->value - prev->error, where + ": not decreasing");
    prev = l;
    row += " " + std::to_string(cv.p.get_si()) + "/" + std::to_string(cv.q.get_si()) + ":" + num(l.value) + "<=" +
           num(bound);
  }
  report(8, t, "l1(nu(p_k/q_k,20), nu(golden,20)) within 2n^2|rho-p/q| and decreasing, k=4..10", seconds_since(t0));
  std::printf("   %s\n", row.c_str());
}

void criterion9() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  std::string lines;
  for (std::int64_t a : {1, 2}) {
    AsymptoticReport r = asymptotic_report(a, 9, 5);
    double c = r.c.mid();
    for (const auto& row : r.sums) {
      if (row.decade >= 7) {
        lines += "    a=" + std::to_string(a) + " S up to 10^" + std::to_string(row.decade) + ": max at " +
                 row.index.get_str() + ", S/ln = " + num(row.ratio) + " = " + num(row.ratio_to_limit) + " c\n";
        t.expect(std::fabs(row.ratio_to_limit - 1) <= 0.15,
                 "a=" + std::to_string(a) + " decade " + std::to_string(row.decade) + ": S/ln is " +
                     num(row.ratio_to_limit) + " c");
      }
    }
    for (std::size_t i = r.sums.size() - 2; i < r.sums.size(); ++i) {
      t.expect(r.sums[i - 1].ratio <= r.sums[i].ratio,
               "a=" + std::to_string(a) + ": S/ln decreases from 10^" + std::to_string(r.sums[i - 1].decade) + " (" +
                   num(r.sums[i - 1].ratio) + ") to 10^" + std::to_string(r.sums[i].decade) + " (" +
                   num(r.sums[i].ratio) + ")");
    }
    const AsymptoticRow& cl = r.clumpiness.back();
    lines += "    a=" + std::to_string(a) + " iD_i up to 10^5: max at " + cl.index.get_str() + ", iD_i/ln i = " +
             num(cl.ratio) + " = " + num(cl.ratio_to_limit) + " x 4c, 4c = " + num(4 * c) + "\n";
    t.expect(std::fabs(cl.ratio_to_limit - 1) <= 0.15,
             "a=" + std::to_string(a) + ": iD_i/ln i at 10^5 is " + num(cl.ratio_to_limit) + " x 4c");
  }
  report(9, t, "metallic limsup ratios within 15% of c(a), 4c(a) and nondecreasing", seconds_since(t0));
  std::fputs(lines.c_str(), stdout);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion10() {
  auto t0 = std::chrono::steady_clock::now();
  Tally t;
  fs::path base = fs::temp_directory_path() / "birkhoff_acceptance";
  fs::remove_all(base);
  fs::create_directories(base / "a");
  fs::create_directories(base / "b");
  for (const std::string id : {"1.1", "2.1", "4.2"}) {
    FigureResult first = emit_figure(id, base / "a");
    FigureResult second = emit_figure(id, base / "b");
    for (const auto& c : first.checks) t.expect(c.passed, "figure " + id + ": " + c.name + " " + c.detail);
    t.expect(first.ok() && second.ok(), "figure " + id + " checks");
    t.expect(!slurp(first.path).empty() && slurp(first.path) == slurp(second.path), "figure " + id + " not byte-stable");
  }
  fs::remove_all(base);
  report(10, t, "figures 1.1, 2.1, 4.2 byte-stable with embedded checks passing", seconds_since(t0));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
