#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "birkhoff/discrepancy.hpp"
#include "birkhoff/errors.hpp"
#include "birkhoff/ostrowski.hpp"
#include "birkhoff/sums.hpp"
#include "oracle.hpp"

using namespace birkhoff;

namespace {

const LinearForm rho_ = LinearForm::rho();

struct Named {
  RotationNumber rho;
  oracle::Real value;
};

std::vector<Named> test_set() {
  return {{RotationNumber::golden(), oracle::metallic(1)},
          {RotationNumber::silver(), oracle::metallic(2)},
          {RotationNumber::e_minus_2(), oracle::e_minus_2()},
          {RotationNumber::metallic(6), oracle::metallic(6)},
          {RotationNumber::from_cf({}, std::vector<std::int64_t>{6, 11, 2, 1}), oracle::periodic({6, 11, 2, 1})}};
}

LinearForm half(long num) { return LinearForm(make_rational(num, 2)); }

}  // namespace

TEST_SUITE("sums") {
  TEST_CASE("direct sum examples") {
    RotationNumber g = RotationNumber::golden();
    CHECK(sum_direct(g, 1) == rho_ - half(1));
    CHECK(sum_direct(g, 2) == 3 * rho_ - LinearForm(2));
    CHECK(sum_direct(g, 0) == LinearForm());
    CHECK(sum_direct(g, 4) == 10 * rho_ - LinearForm(6));
    CHECK(sum_direct(RotationNumber::e_minus_2(), 0, LinearForm(Rational(1, 3))) == LinearForm());
  }

  TEST_CASE("direct sums match the floor-sum oracle") {
    std::uniform_int_distribution<long> num(0, 999);
    for (auto& t : test_set()) {
      for (std::int64_t n : {1, 2, 3, 7, 13, 50, 233, 1000}) {
        CHECK(sum_direct(t.rho, n) == oracle::birkhoff_sum(t.value, n));
        Rational x = make_rational(num(oracle::rng()), 1000);
        CHECK(sum_direct(t.rho, n, LinearForm(x)) == oracle::birkhoff_sum(t.value, n, x));
      }
    }
  }

  TEST_CASE("sum_hat") {
    RotationNumber g = RotationNumber::golden();
    CHECK(sum_hat(g, 1) == -half(1));
    CHECK(sum_hat(g, 2, rho_) == 3 * rho_ - LinearForm(2));
    for (auto& t : test_set()) {
      for (std::int64_t n : {1, 5, 40}) {
        LinearForm x(Rational(1, 7), Rational(1, 3));
        CHECK(sum_hat(t.rho, n, x) == sum_direct(t.rho, n, lf_frac(x - rho_, t.rho)));
      }
    }
  }

  TEST_CASE("orbit examples") {
    RotationNumber g = RotationNumber::golden();
    auto two = orbit(g, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0].value == rho_ - half(1));
    CHECK(two[1].value == 3 * rho_ - LinearForm(2));
    CHECK(two[0].is_running_max);
    CHECK(two[0].is_running_min);
    CHECK(two[1].is_running_min);
    CHECK_FALSE(two[1].is_running_max);
    auto four = orbit(g, 4);
    CHECK(four[2].value == 6 * rho_ - LinearForm(Rational(7, 2)));
    CHECK(four[2].is_running_max);
    CHECK_FALSE(four[3].is_running_max);
    CHECK(orbit(g, 1).size() == 1);
    CHECK_THROWS_AS(orbit(g, 0), PreconditionError);
  }

  TEST_CASE("orbit increments are fractional parts") {
    for (auto& t : test_set()) {
      LinearForm x0(Rational(2, 9), Rational(-1, 2));
      auto recs = orbit(t.rho, 300, x0);
      LinearForm prev;
      for (const auto& r : recs) {
        LinearForm step = r.value - prev;
        CHECK(step == lf_frac(x0 + rho_ * Integer(r.index), t.rho) - half(1));
        prev = r.value;
      }
    }
  }

  TEST_CASE("shifted sums") {
    RotationNumber g = RotationNumber::golden();
    CHECK(shifted_sum(g, 3, 1) == 3 * rho_ - half(5));  // −1/2 + (rho − 1/2) + (2rho − 3/2)
    CHECK(shifted_sum(g, 3, 1) + shifted_sum(g, 3, 3) == LinearForm(-1));
    CHECK(shifted_sum(g, 3, 2) == -half(1));
    CHECK_THROWS_AS(shifted_sum(RotationNumber::rational(Rational(1, 3)), 3, 1), DomainError);
    CHECK_THROWS_AS(shifted_sum(g, 3, 4), PreconditionError);
  }

  TEST_CASE("shifted sums are S at the discontinuities") {
    for (auto& t : test_set()) {
      for (std::int64_t n : {4, 9, 30}) {
        for (std::int64_t k = 1; k <= n; ++k) {
          LinearForm y = lf_frac(-(rho_ * Integer(k)), t.rho);
          CHECK(shifted_sum(t.rho, n, k) == sum_direct(t.rho, n, y));
        }
      }
    }
  }

  TEST_CASE("symmetry and shift identities") {
    for (auto& t : test_set()) {
      RotationNumber c = t.rho.complement();
      for (std::int64_t n : {3, 11, 40}) {
        for (Rational x : {Rational(1, 5), Rational(3, 7), Rational(0)}) {
          LinearForm rhs = sum_direct(t.rho, n, LinearForm(x));
          if (sgn(x) != 0) {
            // S(1 − rho, n, {−x}) = −S(rho, n, x) away from discontinuities.
            LinearForm lhs = sum_direct(c, n, LinearForm(1 - x));
            CHECK(lhs.substitute(LinearForm(1) - rho_) == -rhs);
          }
          // S(1 − rho, n, {x + (n + 1) rho}) = S(rho, n, x)
          LinearForm shifted = lf_frac(LinearForm(x) + rho_ * Integer(n + 1), t.rho);
          Angle comp(t.rho, LinearForm(1) - rho_);
          CHECK(sum_direct(comp, n, shifted) == rhs);
        }
      }
    }
  }

  TEST_CASE("closed form at convergent denominators") {
    RotationNumber g = RotationNumber::golden();
    CHECK(s_qn(g, 1) == rho_ - half(1));
    CHECK(s_qn(g, 2) == 3 * rho_ - LinearForm(2));
    RotationNumber e = RotationNumber::e_minus_2();
    // (−1)^{n+1} = +1 at n = 5
    LinearForm expected = ((32 * rho_ - LinearForm(23)) * Integer(33) + LinearForm(1)) * make_rational(1, 2);
    CHECK(s_qn(e, 5) == expected);
    CHECK(s_qn(e, 5) == sum_direct(e, 32));
    for (auto& t : test_set()) {
      for (std::size_t n = 0; t.rho.convergent(n).q <= 10000; ++n) {
        CHECK(s_qn(t.rho, n) == oracle::birkhoff_sum(t.value, to_int64(t.rho.convergent(n).q)));
      }
    }
  }

  TEST_CASE("floor and fractional sums") {
    RotationNumber two_thirds = RotationNumber::rational(Rational(2, 3));
    CHECK(floor_sum(2, 3, two_thirds) == 3);
    CHECK(lf_equal(frac_sum(2, 3, two_thirds), LinearForm(1), two_thirds));
    RotationNumber e = RotationNumber::e_minus_2();
    CHECK(floor_sum(23, 32, e) == 363);
    CHECK_THROWS_AS(floor_sum(2, 4, e), PreconditionError);
    CHECK_THROWS_AS(floor_sum(1, 3, e), PreconditionError);
  }

  TEST_CASE("floor and fractional sums over random admissible angles") {
    RotationNumber g = RotationNumber::golden();
    std::uniform_int_distribution<long> qd(2, 500);
    int done = 0;
    while (done < 100) {
      const long q = qd(oracle::rng());
      std::uniform_int_distribution<long> pd(1, q - 1);
      const long p = pd(oracle::rng());
      if (gcd(Integer(p), Integer(q)) != 1) continue;
      // alpha = (p + d)/q with d = (golden − 1/2)/(q·k), well inside |d| < 1/(q − 1).
      std::uniform_int_distribution<long> kd(1, 50);
      LinearForm d = (rho_ - half(1)) * make_rational(1, q * kd(oracle::rng()));
      if (done % 2 == 1) d = -d;
      Angle alpha(g, (LinearForm(p) + d) * make_rational(1, q));
      oracle::Real av = oracle::eval(alpha.value, oracle::metallic(1));
      Integer direct = 0;
      for (long i = 1; i <= q; ++i) direct += (oracle::Real::from_si(i) * av).floor();
      CHECK(floor_sum(p, q, alpha) == direct);
      Rational qq(q);
      LinearForm fracs = alpha.value * (qq * (qq + 1) / 2) - LinearForm(Rational(direct));
      CHECK(frac_sum(p, q, alpha) == fracs);
      ++done;
    }
  }

  TEST_CASE("recursion step") {
    RotationNumber g = RotationNumber::golden();
    CHECK(recursion_step(g, 2, 1) == 6 * rho_ - LinearForm(Rational(7, 2)));
    CHECK(recursion_step(g, 3, 0) == sum_direct(g, 3));
    RotationNumber e = RotationNumber::e_minus_2();
    CHECK(recursion_step(e, 5, 6) == sum_direct(e, 38));
    CHECK_THROWS_AS(recursion_step(g, 2, 3), PreconditionError);
    for (auto& t : test_set()) {
      std::vector<LinearForm> s = orbit_values(t.rho, 1500);
      for (std::size_t n = 0; n < 5; ++n) {
        const auto qn = to_int64(t.rho.convergent(n).q);
        const auto qn1 = to_int64(t.rho.convergent(n + 1).q);
        for (std::int64_t k = 0; k < qn1 && qn + k <= 1500; ++k) {
          CHECK(recursion_step(t.rho, n, k) == s[static_cast<std::size_t>(qn + k)]);
        }
      }
    }
  }

  TEST_CASE("running extrema") {
    RotationNumber g = RotationNumber::golden();
    RunningExtrema four = running_extrema(g, 4);
    REQUIRE(four.maxima.size() == 2);
    CHECK(four.maxima[0].index == 1);
    CHECK(four.maxima[1].index == 3);
    REQUIRE(four.minima.size() == 2);
    CHECK(four.minima[1].index == 2);
    CHECK(four.minima[1].in_expected_bracket);
    RunningExtrema one = running_extrema(g, 1);
    CHECK(one.maxima.size() == 1);
    CHECK(one.minima.size() == 1);
  }

  TEST_CASE("running extrema sit in their brackets") {
    for (auto& t : test_set()) {
      // Below q_2 the first brackets can hold several indices of either kind.
      const Integer q2 = t.rho.convergent(2).q;
      RunningExtrema ext = running_extrema(t.rho, 20000);
      std::size_t misplaced = 0;
      for (const auto& r : ext.maxima) misplaced += (r.index >= q2 && !r.in_expected_bracket);
      for (const auto& r : ext.minima) misplaced += (r.index >= q2 && !r.in_expected_bracket);
      CHECK(misplaced == 0);
    }
  }
}

TEST_SUITE("ostrowski") {
  TEST_CASE("expansion examples") {
    RotationNumber g = RotationNumber::golden();
    CHECK(ostrowski_expand(g, 4).digits() == std::vector<std::int64_t>{0, 1, 0, 1});
    CHECK(ostrowski_expand(g, 0).digits().empty());
    CHECK_FALSE(ostrowski_expand(g, 0).leading_index().has_value());
    auto eight = ostrowski_expand(g, 8);
    CHECK(eight.leading_index() == 5u);
    CHECK(eight.digit(5) == 1);
    for (std::size_t i = 0; i < 5; ++i) CHECK(eight.digit(i) == 0);
  }

  TEST_CASE("value") {
    RotationNumber g = RotationNumber::golden();
    CHECK(ostrowski_value(g, {0, 1, 0, 1}) == 4);
    CHECK(ostrowski_value(g, {}) == 0);
    CHECK(ostrowski_value(RotationNumber::e_minus_2(), {0, 0, 0, 0, 0, 1}) == 32);
    CHECK_THROWS_AS(ostrowski_value(g, {1}), InvalidExpansionError);        // b_0 <= a_1 − 1 = 0
    CHECK_THROWS_AS(ostrowski_value(g, {0, 1, 1}), InvalidExpansionError);  // b_2 = a_3 needs b_1 = 0
    CHECK_THROWS_AS(ostrowski_value(g, {0, 2}), InvalidExpansionError);
  }

  TEST_CASE("round trip and admissibility up to 10^5") {
    for (auto& t : test_set()) {
      for (long m = 0; m <= 100000; ++m) {
        OstrowskiExpansion x = ostrowski_expand(t.rho, m);
        if (ostrowski_value(x) != m) {
          FAIL("round trip failed at m = " << m);
        }
        for (std::size_t k = 0; k + 1 < x.digits().size(); ++k) {
          if (x.partial(k) >= t.rho.convergent(k + 1).q) FAIL("L_k >= q_{k+1} at m = " << m);
        }
      }
    }
  }

  TEST_CASE("rational numbers have a bounded basis") {
    RotationNumber r = RotationNumber::rational(Rational(5, 13));
    CHECK(ostrowski_value(ostrowski_expand(r, 12)) == 12);
    CHECK_THROWS_AS(ostrowski_expand(r, 13), OutOfRangeError);
  }
}

TEST_SUITE("fast sums") {
  TEST_CASE("examples") {
    RotationNumber g = RotationNumber::golden();
    CHECK(sum_fast(g, 4) == 10 * rho_ - LinearForm(6));
    CHECK(sum_fast(g, 2) == s_qn(g, 2));
    CHECK(sum_fast(g, 0) == LinearForm());
    CHECK_THROWS_AS(sum_fast(RotationNumber::rational(Rational(1, 2)), 1), DomainError);
  }

  TEST_CASE("hand evaluation of the digit terms for m = 4") {
    RotationNumber g = RotationNumber::golden();
    OstrowskiExpansion x = ostrowski_expand(g, 4);
    CHECK(digit_influence(x, 3, 1) == 9 * rho_ - LinearForm(Rational(11, 2)));
    CHECK(digit_influence_residual(x, 3, 1) == rho_ - half(1));
    CHECK(digit_influence(x, 3, 0) == LinearForm());
  }

  TEST_CASE("agrees with the oracle on every m up to 2000") {
    for (auto& t : test_set()) {
      for (long m = 0; m <= 2000; m += 1) {
        if (!(sum_fast(t.rho, m) == oracle::birkhoff_sum(t.value, m))) FAIL("m = " << m);
      }
    }
  }

  TEST_CASE("agrees with the orbit at random m up to 2*10^5") {
    for (auto& t : test_set()) {
      std::vector<LinearForm> s = orbit_values(t.rho, 200000);
      std::uniform_int_distribution<long> md(0, 200000);
      for (int k = 0; k < 200; ++k) {
        long m = md(oracle::rng());
        CHECK(sum_fast(t.rho, m) == s[static_cast<std::size_t>(m)]);
      }
    }
  }

  TEST_CASE("huge index") {
    RotationNumber g = RotationNumber::golden();
    Integer m("1000000000000");
    OstrowskiExpansion x = ostrowski_expand(g, m);
    CHECK(x.digits().size() <= 60u);
    LinearForm s = sum_fast(g, m);
    CHECK(s.b() == Rational(m) * Rational(m + 1) / 2);
    oracle::Real v = oracle::eval(s, oracle::metallic(1));
    CHECK(std::fabs(v.to_double()) < 10.0);
  }
}

TEST_SUITE("digit influence") {
  TEST_CASE("residual is constant in the varied digit") {
    std::uniform_int_distribution<int> depth_d(1, 12);
    int tried = 0;
    for (auto& t : test_set()) {
      for (int s = 0; s < 12; ++s) {
        const int depth = depth_d(oracle::rng());
        // Random admissible digits, top-down.
        std::vector<std::int64_t> digits(static_cast<std::size_t>(depth), 0);
        for (int i = depth - 1; i >= 0; --i) {
          const auto k = static_cast<std::size_t>(i);
          std::int64_t hi = k == 0 ? t.rho.digit(1) - 1 : t.rho.digit(k + 1);
          std::uniform_int_distribution<std::int64_t> bd(0, hi);
          digits[k] = bd(oracle::rng());
          if (k + 1 < digits.size() && digits[k + 1] == t.rho.digit(k + 2)) digits[k] = 0;
        }
        OstrowskiExpansion x = OstrowskiExpansion::from_digits(t.rho, digits);
        for (std::size_t m = 0; m < digits.size(); ++m) {
          std::optional<LinearForm> residual;
          for (std::int64_t b = 0; b <= x.admissible_max(m); ++b) {
            OstrowskiExpansion y = x.with_digit(m, b);
            LinearForm r = ostrowski_sum(y) - digit_influence(y, m, b);
            CHECK(r == digit_influence_residual(x, m, b));
            if (residual) CHECK(r == *residual);
            residual = r;
          }
        }
        ++tried;
      }
    }
    CHECK(tried == 60);
  }

  TEST_CASE("inadmissible digits are rejected") {
    RotationNumber g = RotationNumber::golden();
    OstrowskiExpansion x = ostrowski_expand(g, 4);
    CHECK_THROWS_AS(digit_influence(x, 2, 1), InvalidDigitError);  // b_3 = a_4 forces b_2 = 0
    CHECK_THROWS_AS(digit_influence(x, 1, 2), InvalidDigitError);
  }

  TEST_CASE("sign of the quadratic coefficient") {
    RotationNumber e = RotationNumber::e_minus_2();
    for (std::size_t m = 1; m < 12; ++m) {
      const Convergent& c = e.convergent(m);
      CHECK(lf_sign(c.d * c.q, e) == (m % 2 == 1 ? -1 : 1));
    }
  }

  TEST_CASE("maximize_digit agrees with an exhaustive scan") {
    for (auto& t : test_set()) {
      for (long m : {4L, 100L, 1381L, 54321L, 999999L}) {
        OstrowskiExpansion x = ostrowski_expand(t.rho, m);
        for (std::size_t k = 1; k < x.digits().size(); k += 2) {
          std::int64_t best = 0;
          for (std::int64_t b = 1; b <= x.admissible_max(k); ++b) {
            if (lf_less(digit_influence(x, k, best), digit_influence(x, k, b), t.rho)) best = b;
          }
          CHECK(maximize_digit(x, k) == best);
        }
        if (x.digits().size() > 2) CHECK_THROWS_AS(maximize_digit(x, 2), PreconditionError);
      }
    }
  }
}

TEST_SUITE("maximum search") {
  TEST_CASE("agrees with a brute-force running maximum") {
    for (auto& t : test_set()) {
      std::vector<LinearForm> s = orbit_values(t.rho, 200000);
      LinearForm best;
      std::int64_t at = 0;
      std::size_t next = 0;
      std::vector<std::int64_t> probes = {1, 2, 3, 10, 55, 99, 100, 377, 1000, 4181, 10000, 99999, 200000};
      for (std::int64_t m = 1; m <= 200000; ++m) {
        if (lf_less(best, s[static_cast<std::size_t>(m)], t.rho)) {
          best = s[static_cast<std::size_t>(m)];
          at = m;
        }
        if (next < probes.size() && m == probes[next]) {
          SumMaximum r = max_sum_up_to(t.rho, m);
          CHECK(r.value == best);
          CHECK(r.index == at);
          ++next;
        }
      }
    }
  }
}
