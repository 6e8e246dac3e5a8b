#include <cmath>
#include <initializer_list>

#include "doctest.h"
#include "mesgencov/special.hpp"

using namespace mesgencov::special;

namespace {

// Bisection oracle inverting a CDF, independent of the Newton-based quantiles.
template <typename Cdf>
double invert_by_bisection(Cdf cdf, double p, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("normal cdf/quantile reference values") {
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(norm_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-10));
  CHECK(norm_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(norm_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  // Symmetry.
  for (double p : {0.01, 0.1, 0.3, 0.45}) {
    CHECK(norm_quantile(p) == doctest::Approx(-norm_quantile(1.0 - p)).epsilon(1e-10));
    CHECK(norm_cdf(norm_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
  }
}

TEST_CASE("incomplete beta basics") {
  CHECK(inc_beta(2.0, 3.0, 0.0) == doctest::Approx(0.0));
  CHECK(inc_beta(2.0, 3.0, 1.0) == doctest::Approx(1.0));
  // I_x(1,1) = x.
  CHECK(inc_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
  // Complement identity I_x(a,b) = 1 - I_{1-x}(b,a).
  for (double x : {0.1, 0.5, 0.9})
    CHECK(inc_beta(2.5, 4.0, x) ==
          doctest::Approx(1.0 - inc_beta(4.0, 2.5, 1.0 - x)).epsilon(1e-12));
  // I_x(2,2) = 3x^2 - 2x^3 (closed form).
  const double x = 0.3;
  CHECK(inc_beta(2.0, 2.0, x) == doctest::Approx(3 * x * x - 2 * x * x * x).epsilon(1e-12));
}

TEST_CASE("incomplete gamma basics") {
  // P(1, x) = 1 - e^{-x}.
  for (double x : {0.5, 1.0, 3.0})
    CHECK(inc_gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
  CHECK(inc_gamma_p(4.5, 0.0) == doctest::Approx(0.0));
  CHECK(inc_gamma_p(4.5, 1e6) == doctest::Approx(1.0));
}

TEST_CASE("t quantile matches bisection oracle") {
  for (double nu : {2.0, 5.0, 30.0, 70.0}) {
    for (double p : {0.6, 0.9, 0.975, 0.995}) {
      const double q = t_quantile(p, nu);
      const double oracle =
          invert_by_bisection([nu](double t) { return t_cdf(t, nu); }, p, -500.0, 500.0);
      CHECK(q == doctest::Approx(oracle).epsilon(1e-8));
      CHECK(t_cdf(q, nu) == doctest::Approx(p).epsilon(1e-10));
    }
  }
  // Known value: t_{0.975, 10} = 2.228138852.
  CHECK(t_quantile(0.975, 10.0) == doctest::Approx(2.228138852).epsilon(1e-8));
}

TEST_CASE("chi-square quantile reference values") {
  // chisq_{0.95, 1225} used by the m=50 independence threshold.
  CHECK(chisq_quantile(0.95, 1225.0) == doctest::Approx(1307.54).epsilon(0.01 / 1307.54));
  CHECK(chisq_quantile(0.95, 1.0) == doctest::Approx(3.841458821).epsilon(1e-8));
  CHECK(chisq_quantile(0.5, 4.0) == doctest::Approx(3.356694).epsilon(1e-6));
  for (double k : {1.0, 7.0, 50.0}) {
    for (double p : {0.05, 0.5, 0.95}) {
      CHECK(chisq_cdf(chisq_quantile(p, k), k) == doctest::Approx(p).epsilon(1e-10));
    }
  }
}
