#include <cmath>
#include <memory>

#include "doctest.h"
#include "maxdist/errors.hpp"
#include "maxdist/functionals.hpp"
#include "support/test_support.hpp"

using namespace maxdist;

namespace {

std::shared_ptr<const SpatialDomain> unit_domain() {
  return std::make_shared<const SpatialDomain>(SpatialDomain::homogeneous(1.0));
}

}  // namespace

TEST_CASE("F of the unit maxwellian: quadrature vs closed form") {
  auto g = std::make_shared<const VelocityGrid>(1, 8.0, 256);
  const MaxwellianParams p(1.0, zero_vec(), 1.0, 1.0, 1);
  const DistributionField f = maxwellian_eval(p, g, unit_domain());
  // F(M) = -rho log(rho / (V (2 pi T)^{n/2})) = log(2 pi)/2
  CHECK(functional_F(f, 1.0) == doctest::Approx(0.91893853320467267).epsilon(1e-8));
  CHECK(maxwellian_F_closed(p, 1.0) == doctest::Approx(0.91893853320467267).epsilon(1e-14));
  CHECK_THROWS_AS((void)functional_F(f, 0.0), domain_error);
  CHECK_THROWS_AS((void)maxwellian_F_closed(p, -1.0), domain_error);
}

TEST_CASE("F vanishes on the empty field") {
  auto g = std::make_shared<const VelocityGrid>(1, 4.0, 16);
  const DistributionField zero(g, unit_domain(), std::vector<double>(16, 0.0));
  CHECK(functional_F(zero, 1.0) == 0.0);
}

TEST_CASE("F at an off-temperature maxwellian matches the closed form") {
  auto g = std::make_shared<const VelocityGrid>(3, 8.0 * std::sqrt(2.0), 64);
  const MaxwellianParams p(1.0, zero_vec(), 2.0, 1.0, 3);
  const DistributionField f = maxwellian_eval(p, g, unit_domain());
  // closed form at T1=2, n=3, T_ref=1: (3/2) log(4 pi) - 3/2
  CHECK(maxwellian_F_closed(p, 1.0) == doctest::Approx(2.2965363704539361).epsilon(1e-14));
  CHECK(functional_F(f, 1.0) == doctest::Approx(2.2965363704539361).epsilon(1e-6));
}

TEST_CASE("drifted closed form matches quadrature") {
  auto g = std::make_shared<const VelocityGrid>(2, 12.0, 144);
  auto dom = std::make_shared<const SpatialDomain>(SpatialDomain::homogeneous(2.0));
  const MaxwellianParams p(1.3, VecN{0.7, -0.4, 0.0}, 1.7, 2.0, 2);
  const DistributionField f = maxwellian_eval(p, g, dom);
  const double T_ref = 0.9;
  CHECK(functional_F(f, T_ref) == doctest::Approx(maxwellian_F_closed(p, T_ref)).epsilon(1e-8));
}

TEST_CASE("the two F formulations agree to machine precision") {
  auto g = std::make_shared<const VelocityGrid>(2, 8.0, 64);
  auto dom = unit_domain();
  testing::Rng rng(21);
  const MaxwellianParams M(1.0, zero_vec(), 1.0, 1.0, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const DistributionField f = testing::random_matched_field(M, g, dom, rng, trial % 2 == 0);
    const double T = 0.5 + trial * 0.4;
    const MomentSummary ms = moments(f);
    const double via_moments = -ms.E_total / T + ms.S;
    CHECK(functional_F(f, T) == doctest::Approx(via_moments).epsilon(1e-12));
  }
}

TEST_CASE("distance: equality case and strict positivity for a mixture") {
  auto g = std::make_shared<const VelocityGrid>(1, 8.0, 256);
  auto dom = unit_domain();
  const MaxwellianParams M(1.0, zero_vec(), 1.0, 1.0, 1);
  {
    const DistanceReport r = distance(M, maxwellian_eval(M, g, dom));
    CHECK(std::abs(r.dist) < 1e-6);
    CHECK(r.dist == r.F_M - r.F_f);  // method=difference contract
    CHECK(r.method == DistanceReport::Method::difference);
  }
  {
    testing::Rng rng(3);
    const DistributionField f = testing::random_matched_field(M, g, dom, rng, false);
    const DistanceReport r = distance(M, f);
    CHECK(r.dist > 1e-4);
  }
}

TEST_CASE("distance reproduces the two-maxwellian closed form") {
  auto g = std::make_shared<const VelocityGrid>(3, 8.0 * std::sqrt(2.0), 64);
  const MaxwellianParams M(1.0, zero_vec(), 1.0, 1.0, 3);
  const MaxwellianParams M1(1.0, zero_vec(), 2.0, 1.0, 3);
  const DistanceReport r = distance(M, maxwellian_eval(M1, g, unit_domain()));
  // -rho n (log(T1/T) - T1/T + 1)/2 = (3/2)(1 - log 2)
  CHECK(r.dist == doctest::Approx(0.46027922916008207).epsilon(1e-6));
}

TEST_CASE("distance preconditions") {
  auto g = std::make_shared<const VelocityGrid>(1, 8.0, 128);
  auto dom = unit_domain();
  const MaxwellianParams M(1.0, zero_vec(), 1.0, 1.0, 1);
  {
    const MaxwellianParams off(1.5, zero_vec(), 1.0, 1.0, 1);
    try {
      (void)distance(M, maxwellian_eval(off, g, dom));
      FAIL("expected domain_error");
    } catch (const domain_error& e) {
      CHECK(std::string(e.what()).find("density mismatch") != std::string::npos);
    }
  }
  CHECK_THROWS_AS((void)distance(M, maxwellian_eval(M, g, dom), 2.0), domain_error);
  {
    const MaxwellianParams drifted(1.0, VecN{0.5, 0.0, 0.0}, 1.0, 1.0, 1);
    CHECK_THROWS_AS((void)distance(drifted, maxwellian_eval(M, g, dom)), domain_error);
  }
}

TEST_CASE("bregman route: zero at M, agreement, pointwise non-negative integrand") {
  auto g = std::make_shared<const VelocityGrid>(2, 8.0, 80);
  auto dom = unit_domain();
  const MaxwellianParams M(1.0, zero_vec(), 1.0, 1.0, 2);
  {
    const DistanceReport r = distance_bregman(M, maxwellian_eval(M, g, dom));
    CHECK(std::abs(r.dist) < 1e-10);
    CHECK(r.method == DistanceReport::Method::bregman);
  }
  testing::Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const DistributionField f = testing::random_matched_field(M, g, dom, rng, trial % 3 == 0);
    const DistanceReport a = distance(M, f);
    const DistanceReport b = distance_bregman(M, f);
    CHECK(std::abs(a.dist - b.dist) < 1e-6);
    CHECK(b.dist >= 0.0);  // sum of non-negative terms
  }
  for (int trial = 0; trial < 2000; ++trial) {
    const double m_val = rng.uniform(1e-8, 1.0);
    const double f_val = rng.uniform(0.0, 2.0) * m_val;
    CHECK(bregman_integrand(f_val, m_val) >= -1e-14);
  }
  CHECK(bregman_integrand(0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("closed-form maxwellian distance: zero case, frozen value, scaling, monotonicity") {
  CHECK(maxwellian_distance_closed(1.7, 1.7, 2.0, 3) == 0.0);
  CHECK(maxwellian_distance_closed(1.0, 2.0, 1.0, 3) ==
        doctest::Approx(0.46027922916008207).epsilon(1e-14));
  // depends only on T1/T
  for (double c : {0.1, 2.0, 17.0})
    CHECK(maxwellian_distance_closed(c * 1.0, c * 2.0, 1.0, 3) ==
          doctest::Approx(0.46027922916008207).epsilon(1e-12));
  // strictly decreasing below T, strictly increasing above
  double prev = maxwellian_distance_closed(1.0, 0.05, 1.0, 2);
  for (double t1 = 0.1; t1 < 1.0; t1 += 0.05) {
    const double cur = maxwellian_distance_closed(1.0, t1, 1.0, 2);
    CHECK(cur < prev);
    prev = cur;
  }
  prev = 0.0;
  for (double t1 = 1.2; t1 < 4.0; t1 += 0.2) {
    const double cur = maxwellian_distance_closed(1.0, t1, 1.0, 2);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK(maxwellian_distance_closed(1.0, 2.0, 1.0, 3) >= 0.0);
  CHECK_THROWS_AS((void)maxwellian_distance_closed(0.0, 1.0, 1.0, 1), domain_error);
  CHECK_THROWS_AS((void)maxwellian_distance_closed(1.0, -1.0, 1.0, 1), domain_error);
}

TEST_CASE("class distance bound: both variants, zero-drift collapse, frozen example") {
  {
    const DistanceBoundPair b = class_distance_bound(1.3, 0.8, 1.1, zero_vec(), 2);
    const double base = maxwellian_distance_closed(1.3, 0.8, 1.1, 2);
    CHECK(b.via_class_temperature == doctest::Approx(base).epsilon(1e-14));
    CHECK(b.via_reference_temperature == doctest::Approx(base).epsilon(1e-14));
  }
  {
    // T=1, T1=5/3, rho=2, U=(2,0,0), n=3
    const DistanceBoundPair b = class_distance_bound(1.0, 5.0 / 3.0, 2.0, VecN{2.0, 0.0, 0.0}, 3);
    CHECK(b.via_class_temperature == doctest::Approx(1.0675231287020281).epsilon(1e-14));
    CHECK(b.via_reference_temperature == doctest::Approx(1.4675231287020281).epsilon(1e-14));
  }
}

TEST_CASE("quadrature resolves which bound variant is the distance to the drifted minimizer") {
  const MomentClass cls(2.0, 6.0, VecN{2.0, 0.0, 0.0}, 1.0, 3);
  const double T1 = cls.class_temperature();
  REQUIRE(T1 == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  const ProjectionResult pr = project(cls, 1.0);
  auto g = std::make_shared<const VelocityGrid>(3, 1.0 + 8.0 * std::sqrt(T1), 72);
  const DistributionField f1 = maxwellian_eval(pr.minimizer, g, unit_domain());
  const MaxwellianParams ref(2.0, zero_vec(), 1.0, 1.0, 3);
  const DistanceReport r = distance(ref, f1);
  const DistanceBoundPair b = class_distance_bound(1.0, T1, 2.0, cls.U, 3);
  // the reference-temperature variant is the one realized by dist{M, M1}
  CHECK(std::abs(r.dist - b.via_reference_temperature) < 1e-5);
  CHECK(std::abs(r.dist - b.via_class_temperature) > 0.1);
}
