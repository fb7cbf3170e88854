#include "birkhoff/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "birkhoff/errors.hpp"
#include "birkhoff/sums.hpp"

namespace birkhoff {

namespace {

struct Keyed {
  LinearForm value;
  FloatForm approx;
  std::int64_t tag = 0;
};

void sort_keyed(std::vector<Keyed>& items, const RotationNumber& field) {
  std::stable_sort(items.begin(), items.end(), [&](const Keyed& u, const Keyed& v) {
    Ordering o = filtered_compare(u.value, u.approx, v.value, v.approx, field);
    if (o != Ordering::Equal) return o == Ordering::Less;
    return u.tag < v.tag;
  });
}

bool same_value(const Keyed& u, const Keyed& v, const RotationNumber& field) {
  return filtered_compare(u.value, u.approx, v.value, v.approx, field) == Ordering::Equal;
}

Keyed keyed(LinearForm v, const RotationNumber& field, std::int64_t tag) {
  v = field.normalize(v);
  FloatForm f = float_form(v, field);
  return {std::move(v), f, tag};
}

std::string describe(const LinearForm& lo, const LinearForm& hi, const RotationNumber& field) {
  return "[" + lo.to_string() + ", " + hi.to_string() + ") ~ [" + std::to_string(lf_approx(lo, field)) + ", " +
         std::to_string(lf_approx(hi, field)) + ")";
}

bool same_field(const StepDensity& d1, const StepDensity& d2) {
  return d1.angle.field.same_as(d2.angle.field) || d1.angle.field.spec() == d2.angle.field.spec();
}

}  // namespace

BranchDecomposition branch_decomposition(const Angle& alpha, std::int64_t n) {
  if (n < 1) throw PreconditionError("branch decomposition needs n >= 1");
  const RotationNumber& field = alpha.field;
  LinearForm step = lf_frac(alpha.value, field);

  // Discontinuities {−i·alpha}, i = 1..n.
  std::vector<Keyed> points;
  points.reserve(static_cast<std::size_t>(n));
  LinearForm y;
  for (std::int64_t i = 1; i <= n; ++i) {
    y -= step;
    if (lf_sign(y, field) < 0) y += LinearForm(1);
    points.push_back(keyed(y, field, i));
  }
  sort_keyed(points, field);

  BranchDecomposition out{alpha, n, {}};
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (!out.branches.empty() && same_value(points[j - 1], points[j], field)) {
      ++out.branches.back().multiplicity;
      continue;
    }
    Branch b;
    b.left = points[j].value;
    b.source = points[j].tag;
    out.branches.push_back(std::move(b));
  }

  auto& br = out.branches;
  const std::size_t k = br.size();
  for (std::size_t j = 0; j < k; ++j) {
    br[j].length = j + 1 < k ? br[j + 1].left - br[j].left : LinearForm(1) - br[j].left + br[0].left;
  }
  br[0].v_min = field.normalize(sum_direct(alpha, n, br[0].left));
  for (std::size_t j = 0; j < k; ++j) {
    br[j].v_sup = br[j].v_min + br[j].length * n;
    if (j + 1 < k) br[j + 1].v_min = br[j].v_sup - LinearForm(br[j + 1].multiplicity);
  }
  LinearForm closing = br[k - 1].v_sup - LinearForm(br[0].multiplicity);
  if (!lf_equal(closing, br[0].v_min, field)) {
    throw InconsistencyError("branch values do not close up around the circle");
  }
  return out;
}

StepDensity density(const Angle& alpha, std::int64_t n) { return density(branch_decomposition(alpha, n)); }

StepDensity density(const BranchDecomposition& decomposition) {
  const RotationNumber& field = decomposition.angle.field;
  std::vector<Keyed> events;
  events.reserve(2 * decomposition.branches.size());
  for (const Branch& b : decomposition.branches) {
    events.push_back(keyed(b.v_min, field, +1));
    events.push_back(keyed(b.v_sup, field, -1));
  }
  sort_keyed(events, field);

  StepDensity out{decomposition.angle, decomposition.n, {}, {}};
  std::int64_t count = 0;
  std::size_t j = 0;
  while (j < events.size()) {
    std::int64_t delta = 0;
    std::size_t k = j;
    while (k < events.size() && same_value(events[j], events[k], field)) delta += events[k++].tag;
    if (delta != 0) {
      count += delta;
      out.breakpoints.push_back(events[j].value);
      if (k < events.size()) out.values.push_back(make_rational(count, decomposition.n));
    }
    j = k;
  }
  if (count != 0 || out.breakpoints.size() != out.values.size() + 1) {
    throw InconsistencyError("density sweep did not return to zero");
  }
  return out;
}

std::pair<LinearForm, LinearForm> support(const StepDensity& dens) {
  return {dens.breakpoints.front(), dens.breakpoints.back()};
}

LinearForm support_length(const StepDensity& dens) { return dens.breakpoints.back() - dens.breakpoints.front(); }

LinearForm total_mass(const StepDensity& dens) {
  LinearForm mass;
  for (std::size_t j = 0; j < dens.values.size(); ++j) {
    mass += (dens.breakpoints[j + 1] - dens.breakpoints[j]) * dens.values[j];
  }
  return dens.angle.field.normalize(mass);
}

Rational density_at(const StepDensity& dens, const LinearForm& z) {
  const RotationNumber& field = dens.angle.field;
  const auto& bp = dens.breakpoints;
  // Last breakpoint <= z.
  auto it = std::upper_bound(bp.begin(), bp.end(), z, [&](const LinearForm& x, const LinearForm& b) {
    return lf_less(x, b, field);
  });
  if (it == bp.begin() || it == bp.end()) return Rational(0);
  return dens.values[static_cast<std::size_t>(it - bp.begin()) - 1];
}

bool identical(const StepDensity& d1, const StepDensity& d2) {
  if (!same_field(d1, d2)) throw DomainError("densities over different fields; rebase one of them first");
  if (d1.n != d2.n || d1.values != d2.values || d1.breakpoints.size() != d2.breakpoints.size()) return false;
  const RotationNumber& field = d1.angle.field;
  for (std::size_t j = 0; j < d1.breakpoints.size(); ++j) {
    if (!(field.normalize(d1.breakpoints[j]) == field.normalize(d2.breakpoints[j]))) return false;
  }
  return true;
}

StepDensity rebase(const StepDensity& dens, const RotationNumber& field, const LinearForm& image) {
  StepDensity out{Angle(field, dens.angle.value.substitute(image)), dens.n, {}, dens.values};
  out.breakpoints.reserve(dens.breakpoints.size());
  for (const auto& z : dens.breakpoints) out.breakpoints.push_back(field.normalize(z.substitute(image)));
  return out;
}

CheckResult tiling_check(const StepDensity& dens) {
  const RotationNumber& field = dens.angle.field;
  const auto& bp = dens.breakpoints;
  const auto& v = dens.values;
  auto ceil_of = [&](const LinearForm& z) { return Integer(-lf_floor(-z, field)); };

  Rational base(0);
  for (std::size_t j = 0; j < v.size(); ++j) base += v[j] * Rational(ceil_of(bp[j + 1]) - ceil_of(bp[j]));

  std::vector<Keyed> events;
  std::vector<Rational> jumps;
  for (std::size_t j = 0; j < bp.size(); ++j) {
    LinearForm f = lf_frac(bp[j], field);
    if (lf_sign(f, field) == 0) continue;
    Rational after = j < v.size() ? v[j] : Rational(0);
    Rational before = j > 0 ? v[j - 1] : Rational(0);
    events.push_back(keyed(f, field, static_cast<std::int64_t>(jumps.size())));
    jumps.push_back(after - before);
  }
  sort_keyed(events, field);

  Rational total = base;
  LinearForm lo(0);
  std::size_t j = 0;
  while (true) {
    LinearForm hi = j < events.size() ? events[j].value : LinearForm(1);
    if (lf_less(lo, hi, field) && total != 1) {
      return {false, "translates sum to " + to_string(total) + " on " + describe(lo, hi, field)};
    }
    if (j == events.size()) break;
    std::size_t k = j;
    while (k < events.size() && same_value(events[j], events[k], field)) {
      total += jumps[static_cast<std::size_t>(events[k].tag)];
      ++k;
    }
    lo = hi;
    j = k;
  }
  return {};
}

CheckResult symmetry_check(const StepDensity& dens) {
  const RotationNumber& field = dens.angle.field;
  const auto& bp = dens.breakpoints;
  const auto& v = dens.values;
  const std::size_t m = v.size();
  for (std::size_t j = 0; j <= m; ++j) {
    if (!lf_equal(bp[j], -bp[m - j], field)) {
      return {false, "breakpoint " + bp[j].to_string() + " has no mirror image " + (-bp[j]).to_string()};
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (v[j] != v[m - 1 - j]) {
      return {false, "value " + to_string(v[j]) + " on " + describe(bp[j], bp[j + 1], field) + " is not mirrored"};
    }
  }
  return {};
}

PlateauReport plateau(std::int64_t p, std::int64_t q, const Angle& alpha) {
  const RotationNumber& field = alpha.field;
  LinearForm d = admissible_closeness(p, q, alpha);
  PlateauReport report;
  report.width = field.normalize(LinearForm(1) - lf_abs(d, field) * (q - 1));
  report.hi = report.width * make_rational(1, 2);
  report.lo = -report.hi;

  StepDensity dens = density(alpha, q);
  std::vector<std::size_t> full;
  for (std::size_t j = 0; j < dens.values.size(); ++j) {
    if (dens.values[j] > 1) {
      report.reason = "density exceeds 1 on " + describe(dens.breakpoints[j], dens.breakpoints[j + 1], field);
      return report;
    }
    if (dens.values[j] == 1) full.push_back(j);
  }
  if (full.size() != 1) {
    report.reason = "density equals 1 on " + std::to_string(full.size()) + " separate pieces";
    return report;
  }
  const LinearForm& lo = dens.breakpoints[full[0]];
  const LinearForm& hi = dens.breakpoints[full[0] + 1];
  if (!lf_equal(lo, report.lo, field) || !lf_equal(hi, report.hi, field)) {
    report.reason = "density equals 1 on " + describe(lo, hi, field) + " instead of " +
                    describe(report.lo, report.hi, field);
    return report;
  }
  report.verified = true;
  return report;
}

CheckResult reduced_residue_check(std::int64_t q, const Angle& alpha, std::int64_t p, std::int64_t p_prime) {
  admissible_closeness(p, q, alpha);
  if (gcd(Integer(p_prime), Integer(q)) != 1) throw PreconditionError("reduced residue check needs gcd(p', q) = 1");
  Angle other(alpha.field, alpha.value + LinearForm(make_rational(p_prime - p, q)));
  StepDensity d1 = density(alpha, q);
  StepDensity d2 = density(other, q);
  if (identical(d1, d2)) return {};
  std::size_t pieces = std::min(d1.values.size(), d2.values.size());
  for (std::size_t j = 0; j <= pieces; ++j) {
    if (!(d1.breakpoints[j] == d2.breakpoints[j]) || (j < pieces && d1.values[j] != d2.values[j])) {
      return {false, "densities differ at piece " + std::to_string(j) + ": " + d1.breakpoints[j].to_string() +
                         " vs " + d2.breakpoints[j].to_string()};
    }
  }
  return {false, "densities have " + std::to_string(d1.values.size()) + " and " + std::to_string(d2.values.size()) +
                     " pieces"};
}

TrapezoidReport trapezoid_classify(const StepDensity& dens, std::int64_t q) {
  const RotationNumber& field = dens.angle.field;
  TrapezoidReport report;
  report.isosceles = symmetry_check(dens).passed;

  std::map<Rational, std::vector<std::size_t>> level;
  for (std::size_t j = 0; j < dens.values.size(); ++j) {
    if (sgn(dens.values[j]) <= 0) {
      report.reason = "density vanishes on " + describe(dens.breakpoints[j], dens.breakpoints[j + 1], field);
      return report;
    }
    level[dens.values[j]].push_back(j);
  }
  report.step_count = level.size();
  auto length = [&](std::size_t j) { return dens.breakpoints[j + 1] - dens.breakpoints[j]; };

  const auto& top = level.rbegin()->second;
  if (top.size() != 1) {
    report.reason = "top value is taken on " + std::to_string(top.size()) + " intervals";
    return report;
  }
  report.top = {dens.breakpoints[top[0]], dens.breakpoints[top[0] + 1]};

  std::optional<LinearForm> side;
  std::optional<LinearForm> previous_left;
  for (const auto& [value, pieces] : level) {
    const LinearForm& left = dens.breakpoints[pieces.front()];
    if (previous_left && !lf_less(*previous_left, left, field)) {
      report.reason = "left endpoints do not increase with the value at " + to_string(value);
      return report;
    }
    previous_left = left;
    if (&pieces == &top) break;
    if (pieces.size() != 2) {
      report.reason = "value " + to_string(value) + " is taken on " + std::to_string(pieces.size()) + " intervals";
      return report;
    }
    for (std::size_t j : pieces) {
      if (!side) side = length(j);
      if (!lf_equal(*side, length(j), field)) {
        report.reason = "side intervals have different lengths at value " + to_string(value);
        return report;
      }
    }
  }
  report.side_length = side;
  if (static_cast<std::int64_t>(report.step_count) != q) {
    report.reason = "trapezoid has " + std::to_string(report.step_count) + " steps, expected " + std::to_string(q);
    return report;
  }
  report.is_step_trapezoid = true;
  return report;
}

namespace {

struct Rendered {
  std::vector<Rational> at;  // dyadic centers
  std::vector<double> error;
};

Rendered render(const StepDensity& dens, int bits) {
  Rendered out;
  const RotationNumber& field = dens.angle.field;
  for (const auto& z : dens.breakpoints) {
    CertifiedFloat f = lf_to_float(z, field, bits);
    if (!out.at.empty()) {
      double prev_hi = mpq_get_d(out.at.back().get_mpq_t()) + out.error.back();
      if (!(prev_hi < f.value - f.error)) {
        throw PrecisionInsufficientError("breakpoints of " + field.spec() + " overlap at " + std::to_string(bits) +
                                         " bits");
      }
    }
    out.at.emplace_back(f.value);
    out.error.push_back(f.error);
  }
  return out;
}

Rational value_at(const std::vector<Rational>& at, const std::vector<Rational>& values, const Rational& x) {
  auto it = std::upper_bound(at.begin(), at.end(), x);
  if (it == at.begin() || it == at.end()) return Rational(0);
  return values[static_cast<std::size_t>(it - at.begin()) - 1];
}

}  // namespace

L1Distance l1_distance(const StepDensity& d1, const StepDensity& d2, int bits) {
  Rendered r1 = render(d1, bits);
  Rendered r2 = render(d2, bits);
  std::vector<Rational> cuts = r1.at;
  cuts.insert(cuts.end(), r2.at.begin(), r2.at.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  Rational integral(0);
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    Rational diff = value_at(r1.at, d1.values, cuts[j]) - value_at(r2.at, d2.values, cuts[j]);
    integral += abs(diff) * (cuts[j + 1] - cuts[j]);
  }

  // Moving a breakpoint by e changes the integral by at most |jump|·e.
  double bound = 0.0;
  auto add = [&](const Rendered& r, const std::vector<Rational>& values) {
    for (std::size_t j = 0; j < r.at.size(); ++j) {
      Rational after = j < values.size() ? values[j] : Rational(0);
      Rational before = j > 0 ? values[j - 1] : Rational(0);
      bound += std::nextafter(mpq_get_d(Rational(abs(Rational(after - before))).get_mpq_t()) * r.error[j], INFINITY);
    }
  };
  add(r1, d1.values);
  add(r2, d2.values);
  double value = mpq_get_d(integral.get_mpq_t());
  double rounding = std::fabs(mpq_get_d(Rational(integral - Rational(value)).get_mpq_t()));
  return {value, std::nextafter(bound * (1 + 0x1p-50) + 2 * rounding, INFINITY)};
}

}  // namespace birkhoff
