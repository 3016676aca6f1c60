#include <doctest.h>

#include <cmath>
#include <limits>

#include "digs/errors.hpp"
#include "digs/model.hpp"

using namespace digs;

TEST_CASE("level names round-trip") {
  for (Level l : kAllLevels) CHECK(parse_level(level_name(l)) == l);
  CHECK_FALSE(parse_level("d").has_value());
}

TEST_CASE("delta is delta_p minus delta_mu") {
  AtomParams p;
  p.delta_p = 0.3;
  p.delta_mu = 0.1;
  CHECK(p.delta() == doctest::Approx(0.2));
  CHECK(p.with_probe_detuning(-1.0).delta_p == -1.0);
  CHECK(p.weak_probe());
  p.omega_p = 2e-3;
  CHECK_FALSE(p.weak_probe());
}

TEST_CASE("relaxation matrix stays symmetric") {
  RelaxationModel r(0.5);
  r.set(Level::a, Level::c, 0.7);
  CHECK(r.gamma(Level::c, Level::a) == 0.7);
  r.set_gamma_C(0.01);
  CHECK(r.gamma(Level::c, Level::bp) == 0.01);
  CHECK(r.gamma(Level::b, Level::cp) == 0.5);
  CHECK(r.gamma_C() == 0.01);
}

TEST_CASE("gamma_C is undefined once its three elements disagree") {
  RelaxationModel r = RelaxationModel::figure_default(1e-4);
  CHECK(r.gamma_C() == 1e-4);
  r.set(Level::b, Level::c, 2e-4);
  CHECK_THROWS_AS((void)r.gamma_C(), DomainError);
}

TEST_CASE("figure relaxation defaults") {
  const auto r = RelaxationModel::figure_default(1e-4, 5e-5, 0.023);
  CHECK(r.gamma(Level::a, Level::a) == 2.0);
  for (Level k : {Level::b, Level::bp, Level::c, Level::cp}) CHECK(r.gamma(Level::a, k) == 1.0);
  CHECK(r.gamma(Level::b, Level::cp) == 1e-4);
  CHECK(r.gamma(Level::cp, Level::cp) == 1e-4);
  CHECK(r.r_b() == 5e-5);
  CHECK(r.r_cp() == 0.023);
  CHECK(r.scaled(2.0).gamma(Level::a, Level::a) == 4.0);
  CHECK(r.scaled(2.0).r_cp() == 0.046);
}

TEST_CASE("validation of atom and relaxation") {
  AtomParams p;
  p.omega_b = 0.65;
  p.omega_c = 0.15;
  const auto good = RelaxationModel::figure_default(1e-4, 5e-5, 0.023);
  CHECK(validate(p, good).ok());
  CHECK(validate(p, good).warnings.empty());

  SUBCASE("gamma_ab must be the unit") {
    RelaxationModel r = good;
    r.set(Level::a, Level::b, 2.0);
    CHECK_FALSE(validate(p, r).ok());
  }
  SUBCASE("negative rates") {
    RelaxationModel r = good;
    r.set(Level::b, Level::c, -1e-4);
    CHECK_FALSE(validate(p, r).ok());
    r = good;
    r.set_pumping(-1.0, 0.0);
    CHECK_FALSE(validate(p, r).ok());
  }
  SUBCASE("zero population decay") {
    RelaxationModel r = good;
    r.set(Level::c, Level::c, 0.0);
    CHECK_FALSE(validate(p, r).ok());
  }
  SUBCASE("non-finite detuning") {
    AtomParams q = p;
    q.delta_p = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(validate(q, good).ok());
  }
  SUBCASE("non-positive control") {
    AtomParams q = p;
    q.omega_mu = 0.0;
    CHECK_FALSE(validate(q, good).ok());
  }
  SUBCASE("ordering violations are warnings") {
    AtomParams q = p;
    q.omega_c = 3.0;
    const auto report = validate(q, good);
    CHECK(report.ok());
    CHECK_FALSE(report.warnings.empty());
  }
  SUBCASE("strong probe is a warning") {
    AtomParams q = p;
    q.omega_p = 0.05;
    CHECK(validate(q, good).ok());
    CHECK_FALSE(validate(q, good).warnings.empty());
  }
}

TEST_CASE("medium prefactor") {
  const MediumParams m{1e15, 800e-7};
  CHECK(m.susceptibility_prefactor() ==
        doctest::Approx(3.0 * 1e15 * std::pow(800e-7, 3) / (4.0 * M_PI * M_PI)).epsilon(1e-14));
  CHECK(validate(m).ok());
  CHECK_FALSE(validate(MediumParams{-1.0, 800e-7}).ok());
  CHECK_FALSE(validate(MediumParams{1e15, 0.0}).ok());
}

TEST_CASE("doppler spec validation") {
  DopplerSpec d;
  CHECK(validate(d).ok());
  CHECK_FALSE(d.enabled());
  d.quadrature_order = 40;
  CHECK_FALSE(validate(d).ok());
  d.quadrature_order = 41;
  d.sigma_delta = -0.1;
  CHECK_FALSE(validate(d).ok());
}

TEST_CASE("linspace endpoints") {
  const auto g = linspace(-2.0, 2.0, 2001);
  REQUIRE(g.size() == 2001);
  CHECK(g.front() == -2.0);
  CHECK(g.back() == 2.0);
  CHECK(g[1000] == doctest::Approx(0.0));
}

TEST_CASE("backend names") {
  CHECK(parse_backend("numeric") == Backend::numeric);
  CHECK(backend_name(Backend::analytic) == "analytic");
  CHECK_FALSE(parse_backend("exact").has_value());
}
