#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "birkhoff/linear_form.hpp"
#include "birkhoff/rotation.hpp"

namespace birkhoff {

/// One branch of x -> S(alpha, n, x): the arc [left, left + length) of the
/// circle, on which S rises with slope n from v_min to v_sup (not attained).
struct Branch {
  LinearForm left;    // {−i·alpha}
  LinearForm length;
  LinearForm v_min;
  LinearForm v_sup;   // v_min + n·length
  std::int64_t source = 0;        // smallest i with left = {−i·alpha}
  std::int64_t multiplicity = 1;  // drop of S across `left`
};

struct BranchDecomposition {
  Angle angle;
  std::int64_t n = 0;
  std::vector<Branch> branches;  // sorted by left endpoint
};

/// Right-continuous step function: values[j] on [breakpoints[j], breakpoints[j+1]).
struct StepDensity {
  Angle angle;
  std::int64_t n = 0;
  std::vector<LinearForm> breakpoints;
  std::vector<Rational> values;

  std::size_t pieces() const { return values.size(); }
};

BranchDecomposition branch_decomposition(const Angle& alpha, std::int64_t n);

/// nu(alpha, n, z) = #S^{-1}(z) / n as an exact step function.
StepDensity density(const Angle& alpha, std::int64_t n);
StepDensity density(const BranchDecomposition& branches);

/// Closed support [lo, hi].
std::pair<LinearForm, LinearForm> support(const StepDensity& dens);
LinearForm support_length(const StepDensity& dens);

/// Integral of the density (exactly 1 for a probability density).
LinearForm total_mass(const StepDensity& dens);

/// Value of the density at z.
Rational density_at(const StepDensity& dens, const LinearForm& z);

/// Breakpoints and values coincide. Both densities must share a field.
bool identical(const StepDensity& d1, const StepDensity& d2);

/// Moves a density into another field, where `image` is the old generator
/// written in the new one (e.g. rho = 1 − rho' gives image 1 − rho').
StepDensity rebase(const StepDensity& dens, const RotationNumber& field, const LinearForm& image);

struct CheckResult {
  bool passed = true;
  std::string witness;  // empty on success
};

/// sum_i nu(z + i) == 1 on every elementary interval of [0, 1).
CheckResult tiling_check(const StepDensity& dens);

/// nu(z) == nu(−z).
CheckResult symmetry_check(const StepDensity& dens);

struct PlateauReport {
  LinearForm lo;
  LinearForm hi;
  LinearForm width;  // 1 − (q − 1)|d|
  bool verified = false;
  std::string reason;
};

/// The interval where nu(alpha, q, ·) = 1, for d = q·alpha − p with
/// gcd(p, q) = 1, q >= 2 and |d| < 1/(q − 1). Verified against density().
PlateauReport plateau(std::int64_t p, std::int64_t q, const Angle& alpha);

/// Compares the densities at (p + d)/q and (p' + d)/q, d = q·alpha − p.
CheckResult reduced_residue_check(std::int64_t q, const Angle& alpha, std::int64_t p, std::int64_t p_prime);

struct TrapezoidReport {
  bool is_step_trapezoid = false;
  std::size_t step_count = 0;
  std::optional<std::pair<LinearForm, LinearForm>> top;
  std::optional<LinearForm> side_length;
  bool isosceles = false;
  std::string reason;  // first violated condition, empty on success
};

TrapezoidReport trapezoid_classify(const StepDensity& dens, std::int64_t q);

struct L1Distance {
  double value = 0.0;
  double error = 0.0;
};

/// Integral of |nu_1 − nu_2| with breakpoints rendered at `bits` of precision.
/// Throws PrecisionInsufficientError when a density's own breakpoints cannot
/// be separated at that precision.
L1Distance l1_distance(const StepDensity& d1, const StepDensity& d2, int bits = 48);

}  // namespace birkhoff
