#include <cmath>
#include <memory>
#include <sstream>

#include "doctest.h"
#include "maxdist/errors.hpp"
#include "maxdist/field.hpp"
#include "support/test_support.hpp"

using namespace maxdist;

namespace {

std::shared_ptr<const VelocityGrid> grid1d(double L, int m) {
  return std::make_shared<const VelocityGrid>(1, L, m);
}

std::shared_ptr<const SpatialDomain> unit_domain() {
  return std::make_shared<const SpatialDomain>(SpatialDomain::homogeneous(1.0));
}

}  // namespace

TEST_CASE("maxwellian peak value at the origin node") {
  auto g = std::make_shared<const VelocityGrid>(1, 8.0, 255);  // odd m: zeta = 0 is a node
  const MaxwellianParams p(1.0, zero_vec(), 1.0, 1.0, 1);
  const DistributionField f = maxwellian_eval(p, g, unit_domain());
  const std::size_t center = 127;
  REQUIRE(g->node(center)[0] == 0.0);
  CHECK(f.value(0, center) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
}

TEST_CASE("maxwellian quadrature moments reproduce the parameters") {
  auto g = grid1d(8.0, 256);
  const MaxwellianParams p(1.0, zero_vec(), 1.0, 1.0, 1);
  const MomentSummary ms = moments(maxwellian_eval(p, g, unit_domain()));
  CHECK(ms.rho_total == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(ms.U[0] == 0.0);  // exact odd-moment cancellation
  CHECK(ms.E_total == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("drifted 2d maxwellian: per-cell mean velocity") {
  auto g = std::make_shared<const VelocityGrid>(2, 11.0, 160);
  auto dom = std::make_shared<const SpatialDomain>(SpatialDomain::uniform(1, 2, 1.0));
  const MaxwellianParams p(1.0, VecN{2.0, 0.0, 0.0}, 1.0, 1.0, 2);
  const MomentSummary ms = moments(maxwellian_eval(p, g, dom));
  REQUIRE(ms.mean_u_per_cell.size() == 2);
  for (const VecN& u : ms.mean_u_per_cell) {
    CHECK(u[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(u[1] == doctest::Approx(0.0).epsilon(1e-8));
  }
}

TEST_CASE("maxwellian parameter and dimension validation") {
  CHECK_THROWS_AS(MaxwellianParams(-1.0, zero_vec(), 1.0, 1.0, 1), domain_error);
  CHECK_THROWS_AS(MaxwellianParams(1.0, zero_vec(), 0.0, 1.0, 1), domain_error);
  CHECK_THROWS_AS(MaxwellianParams(1.0, zero_vec(), 1.0, -2.0, 1), domain_error);
  auto g = grid1d(4.0, 16);
  const MaxwellianParams p2(1.0, zero_vec(), 1.0, 1.0, 2);
  CHECK_THROWS_AS((void)maxwellian_eval(p2, g, unit_domain()), domain_error);
}

TEST_CASE("local maxwellian: zero density, density and energy quadratures") {
  {
    VelocityGrid g(1, 6.0, 32);
    const auto zero = local_maxwellian(0.0, zero_vec(), 1.0, g);
    for (double v : zero) CHECK(v == 0.0);
    CHECK_THROWS_AS((void)local_maxwellian(1.0, zero_vec(), 0.0, g), domain_error);
    CHECK_THROWS_AS((void)local_maxwellian(1.0, zero_vec(), -1.0, g), domain_error);
  }
  {
    VelocityGrid g(1, 8.0, 256);
    const auto vals = local_maxwellian(1.0, zero_vec(), 1.0, g);
    CHECK(cell_moments(g, vals).rho == doctest::Approx(1.0).epsilon(1e-8));
  }
  {
    VelocityGrid g(3, 8.0 * std::sqrt(2.0), 48);
    const auto vals = local_maxwellian(1.0, zero_vec(), 2.0, g);
    const CellMoments cm = cell_moments(g, vals);
    CHECK(cm.E == doctest::Approx(3.0).epsilon(1e-6));  // n T / 2 with n=3, T=2
    CHECK(cm.T == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("moments of simple fields") {
  {
    auto g = grid1d(8.0, 256);
    const MaxwellianParams p(2.0, zero_vec(), 1.0, 1.0, 1);
    const MomentSummary ms = moments(maxwellian_eval(p, g, unit_domain()));
    CHECK(ms.rho_total == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(ms.U[0] == 0.0);
    CHECK(ms.E_total == doctest::Approx(1.0).epsilon(1e-6));  // rho n T / 2
  }
  {
    auto g = grid1d(2.0, 8);
    DistributionField zero(g, unit_domain(), std::vector<double>(8, 0.0));
    const MomentSummary ms = moments(zero);
    CHECK(ms.rho_total == 0.0);
    CHECK(ms.E_total == 0.0);
    CHECK(ms.S == 0.0);
    CHECK(ms.U[0] == 0.0);
    CHECK(ms.mean_u_per_cell[0][0] == 0.0);  // empty cell reports zero mean velocity
  }
  {
    auto g = grid1d(9.5, 256);
    const MaxwellianParams p(1.0, VecN{1.0, 0.0, 0.0}, 1.0, 1.0, 1);
    const MomentSummary ms = moments(maxwellian_eval(p, g, unit_domain()));
    CHECK(ms.U[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(ms.E_total == doctest::Approx(1.0).epsilon(1e-6));  // rho (n T + |u|^2)/2
  }
}

TEST_CASE("field invariant validation names the offending index") {
  auto g = grid1d(2.0, 8);
  std::vector<double> vals(8, 0.1);
  vals[5] = -0.25;
  try {
    DistributionField f(g, unit_domain(), vals);
    FAIL("expected domain_error");
  } catch (const domain_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("index 5") != std::string::npos);
    CHECK(msg.find("negative") != std::string::npos);
  }
  vals[5] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(DistributionField(g, unit_domain(), vals), domain_error);
}

TEST_CASE("entropy: flat field, maxwellian closed form, scaling law") {
  {
    auto g = grid1d(0.5, 8);  // box measure 1
    DistributionField f(g, unit_domain(), std::vector<double>(8, 1.0));
    CHECK(entropy(f) == 0.0);
  }
  {
    auto g = grid1d(8.0, 256);
    const MaxwellianParams p(1.0, zero_vec(), 1.0, 1.0, 1);
    // S(M) = rho (n/2 + log(V (2 pi T)^{n/2} / rho)) = 1/2 + log(2 pi)/2
    CHECK(entropy(maxwellian_eval(p, g, unit_domain())) ==
          doctest::Approx(1.4189385332046727).epsilon(1e-10));
  }
  {
    auto g = grid1d(8.0, 256);
    const MaxwellianParams p1(1.0, zero_vec(), 1.0, 1.0, 1);
    const MaxwellianParams p2(2.0, zero_vec(), 1.0, 1.0, 1);
    const double s1 = entropy(maxwellian_eval(p1, g, unit_domain()));
    const double s2 = entropy(maxwellian_eval(p2, g, unit_domain()));
    CHECK(s2 == doctest::Approx(2.0 * s1 - 2.0 * std::log(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("entropy is invariant under velocity reflection") {
  auto g = std::make_shared<const VelocityGrid>(2, 6.0, 24);
  auto dom = unit_domain();
  testing::Rng rng(77);
  const MaxwellianParams M(1.0, zero_vec(), 1.0, 1.0, 2);
  const DistributionField f = testing::random_matched_field(M, g, dom, rng, false);
  std::vector<double> refl(f.values().size());
  for (std::size_t i = 0; i < refl.size(); ++i) refl[g->reflected_index(i)] = f.values()[i];
  const DistributionField fr(g, dom, std::move(refl));
  CHECK(entropy(f) == entropy(fr));  // bit-exact via paired summation
}

TEST_CASE("linear moments are linear in the field") {
  auto g = grid1d(8.0, 128);
  auto dom = unit_domain();
  testing::Rng rng(5);
  const MaxwellianParams M(1.0, zero_vec(), 1.0, 1.0, 1);
  const DistributionField f = testing::random_matched_field(M, g, dom, rng, false);
  const DistributionField h = testing::random_matched_field(M, g, dom, rng, false);
  const double a = 0.7;
  const double b = 1.9;
  std::vector<double> combo(f.values().size());
  for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = a * f.values()[i] + b * h.values()[i];
  const MomentSummary mc = moments(DistributionField(g, dom, std::move(combo)));
  const MomentSummary mf = moments(f);
  const MomentSummary mh = moments(h);
  CHECK(mc.rho_total == doctest::Approx(a * mf.rho_total + b * mh.rho_total).epsilon(1e-12));
  CHECK(mc.U[0] == doctest::Approx(a * mf.U[0] + b * mh.U[0]).epsilon(1e-10));
  CHECK(mc.E_total == doctest::Approx(a * mf.E_total + b * mh.E_total).epsilon(1e-12));
}

TEST_CASE("moments agree with explicit collision-invariant quadratures") {
  auto g = std::make_shared<const VelocityGrid>(2, 6.0, 20);
  auto dom = unit_domain();
  testing::Rng rng(9);
  const MaxwellianParams M(1.3, zero_vec(), 1.0, 1.0, 2);
  const DistributionField f = testing::random_matched_field(M, g, dom, rng, false);
  const MomentSummary ms = moments(f);
  std::vector<double> phi(f.grid().node_count());
  const auto v = f.cell_values(0);
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = v[i];
  CHECK(g->integrate(phi) == doctest::Approx(ms.rho_total).epsilon(1e-13));
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = g->node(i)[0] * v[i];
  CHECK(g->integrate(phi) == doctest::Approx(ms.U[0]).epsilon(1e-12));
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = 0.5 * g->sq_norms()[i] * v[i];
  CHECK(g->integrate(phi) == doctest::Approx(ms.E_total).epsilon(1e-13));
}

TEST_CASE("field file round-trip is exact") {
  auto g = std::make_shared<const VelocityGrid>(2, 5.0, 12);
  auto dom = std::make_shared<const SpatialDomain>(SpatialDomain::uniform(1, 2, 3.0));
  testing::Rng rng(31);
  const MaxwellianParams M(1.0, zero_vec(), 0.8, 3.0, 2);
  const DistributionField f = testing::random_matched_field(M, g, dom, rng, false);

  std::ostringstream out;
  write_field(out, f);
  std::istringstream in(out.str());
  const DistributionField f2 = read_field(in, 3.0);
  REQUIRE(f2.values().size() == f.values().size());
  for (std::size_t i = 0; i < f.values().size(); ++i)
    CHECK(f2.values()[i] == f.values()[i]);  // 17 significant digits round-trip doubles
  CHECK(f2.grid().points_per_axis() == 12);
  CHECK(f2.grid().half_width() == 5.0);
  CHECK(f2.domain().cell_count() == 2);
  CHECK(f2.domain().total_volume() == doctest::Approx(3.0));

  // write(read(text)) reproduces the text bytes
  std::ostringstream out2;
  write_field(out2, f2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("field file error paths") {
  {
    std::istringstream in("1 1 4 2.0 1\n0.1 0.2 -0.3 0.4\n");
    try {
      (void)read_field(in, 1.0);
      FAIL("expected domain_error");
    } catch (const domain_error& e) {
      CHECK(std::string(e.what()).find("index 2") != std::string::npos);
    }
  }
  {
    std::istringstream in("1 1 4 2.0 1\n0.1 0.2\n");  // truncated
    CHECK_THROWS_AS((void)read_field(in, 1.0), io_error);
  }
  {
    std::istringstream in("nonsense header\n");
    CHECK_THROWS_AS((void)read_field(in, 1.0), io_error);
  }
  {
    std::istringstream in("1 1 4 2.0 1\n0.1 0.2 0.3 0.4 0.5\n");  // trailing value
    CHECK_THROWS_AS((void)read_field(in, 1.0), io_error);
  }
}
