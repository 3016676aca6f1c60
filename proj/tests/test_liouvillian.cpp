#include <cmath>

#include "digs/errors.hpp"
#include "digs/liouvillian.hpp"
#include "fixtures.hpp"

using namespace digs;

// Independent reference values (numpy Kronecker assembly, fig1-red preset).
TEST_CASE("numeric susceptibility against the reference solver") {
  const auto cfg = preset("fig1-red");
  struct Point {
    double delta_p;
    complex chi;
  };
  const Point points[] = {{-1.0, {0.020463274913822202, 0.16876778134111536}},
                          {-0.6, {0.07859322098322466, 0.1299538654458754}},
                          {-0.325, {0.0710038174270609, -0.8044414670769362}},
                          {0.0, {0.0, 0.025515104197018378}},
                          {0.5, {-0.10026204663465255, 0.10943788345983319}}};
  for (const auto& pt : points) {
    CAPTURE(pt.delta_p);
    const complex chi = susceptibility_numeric(cfg.atom.with_probe_detuning(pt.delta_p), cfg.relaxation);
    CHECK(close(chi, pt.chi, 1e-9));
  }
}

TEST_CASE("steady-state populations at resonance") {
  const auto cfg = preset("fig1-red");
  const DensityMatrix rho = steady_state(cfg.atom, cfg.relaxation);
  CHECK(rho.population(Level::a) == doctest::Approx(0.01139809220425085).epsilon(1e-9));
  CHECK(rho.population(Level::cp) == doctest::Approx(2.0266955567187974).epsilon(1e-9));
  CHECK(rho.population(Level::b) == doctest::Approx(0.24999936761036065).epsilon(1e-9));
  CHECK(excited_population(cfg.atom, cfg.relaxation) == doctest::Approx(0.01139809220425085).epsilon(1e-9));
}

TEST_CASE("steady state is Hermitian with non-negative populations") {
  const auto cfg = preset("fig1-red");
  for (double dp : {-1.5, -0.4, 0.0, 0.3, 1.2}) {
    const DensityMatrix rho = steady_state(cfg.atom.with_probe_detuning(dp), cfg.relaxation);
    CHECK(rho.hermiticity_error() < 1e-12);
    CHECK(rho.min_population() >= -1e-12);
    CHECK(rho.physical());
  }
}

TEST_CASE("fields off: populations are pump over decay") {
  AtomParams p;
  p.omega_mu = 0.0;
  p.omega_p = 0.0;
  auto relax = RelaxationModel::figure_default(1e-4, 5e-5, 0.023);
  relax.set(Level::b, Level::b, 2e-4);
  const DensityMatrix rho = steady_state(p, relax);
  CHECK(rho.population(Level::b) == doctest::Approx(0.25));
  CHECK(rho.population(Level::cp) == doctest::Approx(230.0));
  CHECK(std::abs(rho(Level::a, Level::b)) == 0.0);
}

TEST_CASE("hamiltonian layout") {
  AtomParams p;
  p.omega_b = 0.65;
  p.omega_c = 0.15;
  p.delta_p = 0.3;
  p.delta_mu = 0.1;
  p.delta_b = 0.02;
  p.delta_c = 0.05;
  const Matrix5c h = build_hamiltonian(p);
  CHECK(h(0, 0).real() == 0.3);
  CHECK(h(1, 1).real() == 0.0);
  CHECK(h(2, 2).real() == 0.02);
  CHECK(h(3, 3).real() == doctest::Approx(0.2));
  CHECK(h(4, 4).real() == doctest::Approx(0.25));
  CHECK(h(0, 1).real() == -p.omega_p / 2);
  CHECK(h(0, 3).real() == -1.0);
  CHECK(h(2, 1).real() == -0.325);
  CHECK(h(4, 3).real() == -0.075);
  CHECK((h - h.adjoint()).norm() == 0.0);
}

TEST_CASE("equations carry the pumps on the right-hand side only") {
  const auto cfg = preset("fig1-red");
  const LinearSystem sys = build_equations(cfg.atom, cfg.relaxation);
  for (int i = 0; i < 25; ++i) {
    const bool pumped = i == vec_index(Level::b, Level::b) || i == vec_index(Level::cp, Level::cp);
    CHECK((sys.rhs(i) != complex{0.0}) == pumped);
  }
}

TEST_CASE("linear response in the probe") {
  const auto cfg = preset("fig1-red");
  for (double dp : {-0.8, -0.34, 0.0, 0.6}) {
    AtomParams p = cfg.atom.with_probe_detuning(dp);
    const complex full = susceptibility_numeric(p, cfg.relaxation);
    p.omega_p /= 2;
    const complex half = susceptibility_numeric(p, cfg.relaxation);
    CHECK(std::abs(full - half) / std::abs(full) < 1e-3);
  }
}

TEST_CASE("strong probe is refused") {
  const auto cfg = preset("fig1-red");
  AtomParams p = cfg.atom;
  p.omega_p = 0.01;
  CHECK_THROWS_AS(susceptibility_numeric(p, cfg.relaxation), DomainError);
}

TEST_CASE("unit change leaves chi_reduced invariant") {
  const auto cfg = preset("fig1-red");
  const double k = 3.0;
  AtomParams p = cfg.atom.with_probe_detuning(-0.4);
  const complex base = susceptibility_numeric(p, cfg.relaxation);
  AtomParams q = p;
  q.omega_mu *= k;
  q.omega_b *= k;
  q.omega_c *= k;
  q.omega_p *= k;
  q.delta_p *= k;
  const complex scaled = susceptibility_numeric(q, cfg.relaxation.scaled(k));
  CHECK(close(scaled, base, 1e-9));
}

TEST_CASE("singular system is reported") {
  AtomParams p;
  RelaxationModel relax(0.0);
  CHECK_THROWS_AS(steady_state(p, relax), SingularSystem);
}

TEST_CASE("excited population estimate has the right magnitude") {
  const auto cfg = preset("fig1-red");
  const double exact = excited_population(cfg.atom, cfg.relaxation);
  const double estimate = excited_population_estimate(cfg.atom, cfg.relaxation);
  CHECK(estimate > exact / 10);
  CHECK(estimate < exact * 10);
}
