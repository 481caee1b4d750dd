#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "varspc/distributions.hpp"

namespace dist = varspc::dist;

TEST_SUITE_BEGIN("distributions");

// Anchors below were frozen from an independent implementation
// (scipy.stats) at full double precision.

TEST_CASE("chi-square upper quantiles") {
  const double a370 = 1.0 / 370.0;
  CHECK(dist::chi2_quantile_upper(a370, 2) ==
        doctest::Approx(11.8270060112765).epsilon(1e-9));
  CHECK(dist::chi2_quantile_upper(a370, 3) ==
        doctest::Approx(14.1541185227815).epsilon(1e-9));
  CHECK(dist::chi2_quantile_upper(0.005, 2) ==
        doctest::Approx(10.5966347330961).epsilon(1e-9));
  CHECK(dist::chi2_quantile_upper(0.005, 3) ==
        doctest::Approx(12.8381564665987).epsilon(1e-9));
  CHECK(dist::chi2_quantile_upper(0.0027, 2) ==
        doctest::Approx(11.8290070119437).epsilon(1e-9));
  CHECK(dist::chi2_quantile_upper(0.05, 5) ==
        doctest::Approx(11.0704976935164).epsilon(1e-9));
  CHECK(dist::chi2_quantile_upper(0.01, 10) ==
        doctest::Approx(23.2092511589544).epsilon(1e-9));
}

TEST_CASE("chi-square CDF") {
  CHECK(dist::chi2_cdf(11.827, 2) ==
        doctest::Approx(0.997297289173938).epsilon(1e-11));
  CHECK(dist::chi2_cdf(1.0, 1) ==
        doctest::Approx(0.682689492137086).epsilon(1e-11));
  CHECK(dist::chi2_cdf(25.0, 10) ==
        doctest::Approx(0.994654494512866).epsilon(1e-11));
  CHECK(dist::chi2_cdf(0.5, 4) ==
        doctest::Approx(0.0264990211607439).epsilon(1e-11));
  CHECK(dist::chi2_cdf(3.0, 2) ==
        doctest::Approx(0.77686983985157).epsilon(1e-11));
  CHECK(dist::chi2_cdf(0.0, 3) == 0.0);
  CHECK(dist::chi2_cdf(100.0, 2) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("quantile and CDF are mutual inverses") {
  for (double alpha : {0.05, 0.01, 0.005, 1.0 / 370.0}) {
    for (int v = 1; v <= 10; ++v) {
      const double q = dist::chi2_quantile_upper(alpha, v);
      CHECK(dist::chi2_cdf(q, v) == doctest::Approx(1.0 - alpha).epsilon(1e-10));
    }
  }
}

TEST_CASE("noncentral chi-square CDF anchors") {
  CHECK(dist::noncentral_chi2_cdf(11.8270068924306, 2, 0.712622307716567) ==
        doctest::Approx(0.989517920424415).epsilon(1e-11));
  CHECK(dist::noncentral_chi2_cdf(11.8270068924306, 2, 5.0) ==
        doctest::Approx(0.846163276113193).epsilon(1e-11));
  CHECK(dist::noncentral_chi2_cdf(14.154119, 3, 2.0) ==
        doctest::Approx(0.972645927183578).epsilon(1e-11));
  CHECK(dist::noncentral_chi2_cdf(10.0, 4, 0.5) ==
        doctest::Approx(0.936818519482488).epsilon(1e-11));
  // large noncentrality exercises the two-sided Poisson mixture sweep
  CHECK(dist::noncentral_chi2_cdf(5.0, 2, 25.0) ==
        doctest::Approx(0.00179578732429219).epsilon(1e-9));
  CHECK(dist::noncentral_chi2_cdf(30.0, 2, 25.0) ==
        doctest::Approx(0.648445954363138).epsilon(1e-11));
}

TEST_CASE("noncentral chi-square degenerates to central at d = 0") {
  for (double x : {0.5, 3.0, 11.827, 30.0}) {
    for (int v : {1, 2, 3, 6}) {
      CHECK(dist::noncentral_chi2_cdf(x, v, 0.0) ==
            doctest::Approx(dist::chi2_cdf(x, v)).epsilon(1e-12));
    }
  }
}

TEST_CASE("noncentral chi-square CDF decreases in the noncentrality") {
  const double x = 11.827;
  double prev = 2.0;
  for (double d : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0}) {
    const double f = dist::noncentral_chi2_cdf(x, 2, d);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(f < prev + 1e-12);
    prev = f;
  }
}

TEST_CASE("noncentral chi-square CDF stays in [0,1] on a stress grid") {
  for (double x : {1e-3, 0.5, 5.0, 20.0, 50.0}) {
    for (double d : {0.0, 1e-3, 1.0, 10.0, 100.0, 500.0}) {
      for (int v : {1, 2, 4, 8}) {
        const double f = dist::noncentral_chi2_cdf(x, v, d);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
      }
    }
  }
}

TEST_CASE("F upper quantiles") {
  CHECK(dist::f_quantile_upper(0.005, 2, 79) ==
        doctest::Approx(5.67009662393681).epsilon(1e-9));
  CHECK(dist::f_quantile_upper(0.05, 3, 12) ==
        doctest::Approx(3.4902948194976).epsilon(1e-9));
  CHECK(dist::f_quantile_upper(0.01, 5, 40) ==
        doctest::Approx(3.51383983313737).epsilon(1e-9));
  CHECK(dist::f_quantile_upper(0.005, 3, 96) ==
        doctest::Approx(4.55377307143591).epsilon(1e-9));
}

TEST_CASE("F quantile agrees with the incomplete-beta CDF") {
  struct Pt {
    double alpha, d1, d2;
  };
  for (const Pt pt : {Pt{0.005, 2, 79}, Pt{0.05, 3, 12}, Pt{0.01, 5, 40}}) {
    const double q = dist::f_quantile_upper(pt.alpha, pt.d1, pt.d2);
    const double cdf = dist::reg_inc_beta(pt.d1 / 2.0, pt.d2 / 2.0,
                                          pt.d1 * q / (pt.d1 * q + pt.d2));
    CHECK(cdf == doctest::Approx(1.0 - pt.alpha).epsilon(1e-9));
  }
}

TEST_CASE("regularized lower gamma matches erf at a = 1/2") {
  for (double x : {0.01, 0.25, 1.0, 4.0, 9.0}) {
    CHECK(dist::reg_lower_gamma(0.5, x) ==
          doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
  }
}

TEST_SUITE_END();
