#include <doctest.h>

#include <cmath>
#include <string>

#include "dd/units.hpp"

using namespace dd;

namespace {

SimParams operating_point(double u0, double gamma0, double dt) {
  SimParams p;
  p.lattice.u0 = u0;
  p.lattice.gamma0 = gamma0;
  p.drive.alpha0 = 8.0;
  p.drive.a_amp = 0.5;
  p.drive.b_amp = 0.5;
  p.drive.omega = 0.87 * vibrational_frequency(p.lattice);
  p.dt = dt;
  p.t_total = 10.0;
  p.t_transient = 2.0;
  p.n_traj = 10;
  return p;
}

std::string validation_message(const SimParams& p) {
  try {
    validate(p);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("vibrational frequency") {
  CHECK(vibrational_frequency({0.125, 1.0, true}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(vibrational_frequency({100.0, 1.0, true}) == doctest::Approx(2.0 * std::sqrt(200.0)));
  CHECK(vibrational_frequency({75.0, 1.0, true}) == doctest::Approx(24.494897).epsilon(1e-7));

  for (double u0 : {0.01, 0.3, 7.0, 150.0}) {
    const double ratio =
        vibrational_frequency({2.0 * u0, 1.0, true}) / vibrational_frequency({u0, 1.0, true});
    CHECK(std::abs(ratio - std::sqrt(2.0)) < 1e-12);
    CHECK(vibrational_frequency({u0 * 1.001, 1.0, true}) > vibrational_frequency({u0, 1.0, true}));
  }
}

TEST_CASE("light-shift helpers") {
  CHECK(depth_from_light_shift(-150.0) == doctest::Approx(100.0));
  // Delta = -5 Gamma, light shift -150: Gamma'_0 = 30, gamma0 = 4/9 * 30.
  CHECK(pumping_from_light_shift(-150.0, -5.0) == doctest::Approx(40.0 / 3.0));
}

TEST_CASE("validate accepts a resolved u0 = 75 operating point") {
  // u0 = 75, omega = 0.87 Omega_v. dt = 0.005 gives Omega_v dt = 0.122 and is rejected by the
  // resolution bound; 0.004 is the largest round step that passes.
  const SimParams ok = operating_point(75.0, 1.0, 0.004);
  CHECK_NOTHROW(validate(ok));
  CHECK(validation_message(operating_point(75.0, 1.0, 0.005)).find("resolution") != std::string::npos);
}

TEST_CASE("validate error reports") {
  SimParams p = operating_point(100.0, 1.0, 0.001);
  p.dt = 0.0;
  CHECK(validation_message(p) == "dt must be positive");

  p = operating_point(100.0, 500.0, 0.001);  // gamma0 dt = 0.5
  CHECK(validation_message(p).find("jump thinning invalid") != std::string::npos);

  p = operating_point(100.0, 1.0, 0.001);
  p.t_transient = p.t_total;
  CHECK(validation_message(p).find("t_transient") != std::string::npos);

  p = operating_point(100.0, 1.0, 0.001);
  p.lattice.u0 = -1.0;
  CHECK(validation_message(p) == "u0 must be positive");

  p = operating_point(100.0, 1.0, 0.001);
  p.n_traj = 0;
  CHECK(validation_message(p) == "n_traj must be at least 1");

  p = operating_point(100.0, 1.0, 0.001);
  p.drive.omega = 0.0;
  CHECK(validation_message(p) == "omega must be positive");
}

TEST_CASE("validate is idempotent") {
  const SimParams p = operating_point(100.0, 13.0, 0.002);
  const SimParams once = validate(p);
  const SimParams twice = validate(once);
  CHECK(twice.dt == once.dt);
  CHECK(twice.lattice.u0 == once.lattice.u0);
  CHECK(twice.drive.phi == once.drive.phi);
  CHECK(twice.t_transient == once.t_transient);
}

TEST_CASE("auto time step resolves every rate and divides the period") {
  for (double u0 : {1.0, 100.0, 400.0}) {
    LatticeParams lat{u0, 13.0, true};
    DriveParams d;
    d.omega = 0.87 * vibrational_frequency(lat);
    const double dt = auto_time_step(lat, d);
    SimParams p = operating_point(u0, 13.0, dt);
    p.drive.omega = d.omega;
    CHECK_NOTHROW(validate(p));
    const double steps = d.period() / dt;
    CHECK(std::abs(steps - std::round(steps)) < 1e-9);
    CHECK(effective_sample_stride(p) == static_cast<std::size_t>(std::round(steps)));
  }
}
