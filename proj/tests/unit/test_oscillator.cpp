#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tnorder/errors.hpp"
#include "tnorder/oscillator.hpp"

using namespace tnorder;
using std::numbers::pi;

TEST_CASE("free momentum rotates with the vacuum correlator e^{-i tau}/2") {
  auto p = heisenberg_momentum(FrequencySchedule::constant(1.0));
  CHECK(std::abs(vacuum_two_point(p, p, pi / 2, 0.0) - cplx(0.0, -0.5)) < 1e-14);
  for (double t1 : {-3.0, 0.4, 11.0})
    for (double t2 : {-1.0, 2.0})
      CHECK(std::abs(vacuum_two_point(p, p, t1, t2) - 0.5 * std::polar(1.0, -(t1 - t2))) < 1e-13);
}

TEST_CASE("momentum variance follows the closed form") {
  auto p = heisenberg_momentum(FrequencySchedule::half_frequency_switch(1.0));
  for (double t = -6.0; t < 20.0; t += 0.37) {
    const double expect =
        (t > 0.0 && t < 4 * pi) ? 0.5 * (1.0 - 0.75 * std::pow(std::sin(t / 2), 2)) : 0.5;
    CHECK(std::abs(momentum_variance(p, t) - expect) < 1e-12);
  }
  CHECK(std::abs(momentum_variance(p, 3 * pi) - 0.125) < 1e-12);
}

TEST_CASE("canonical commutator is preserved by the transfer matrices") {
  auto s = FrequencySchedule::half_frequency_switch(1.0);
  auto p = heisenberg_momentum(s);
  auto x = heisenberg_position(s);
  for (double t : {-2.0, 1.0, 7.0, 30.0})
    CHECK(std::abs(commutator(p, x, t, t) - cplx(0.0, -1.0)) < 1e-12);
  CHECK(std::abs(symplectic_check(p, 2.0, 2.0)) < 1e-14);
}

TEST_CASE("units scale the vacuum moments") {
  Units u{2.0, 3.0, 0.5};
  const auto m = VacuumMoments::of(u);
  CHECK(std::abs(m.pp - 2.0 * 3.0 * 0.5 / 2) < 1e-15);
  CHECK(std::abs(m.xx - 2.0 / (2 * 3.0 * 0.5)) < 1e-15);
  auto p = heisenberg_momentum(FrequencySchedule::constant(0.5), u);
  CHECK(std::abs(momentum_variance(p, 4.0) - m.pp) < 1e-13);
}

TEST_CASE("first segment must run at omega0") {
  FrequencySchedule s({{-kInf, 0.0, 2.0}, {0.0, kInf, 1.0}});
  CHECK_THROWS_AS(heisenberg_momentum(s), ConfigError);
}

TEST_CASE("schedule validation and comparison") {
  CHECK_THROWS_AS(FrequencySchedule({{-kInf, 0.0, 1.0}, {1.0, kInf, 1.0}}), ConfigError);
  CHECK_THROWS_AS(FrequencySchedule({{-kInf, kInf, -1.0}}), ConfigError);
  auto a = FrequencySchedule::half_frequency_switch(1.0);
  CHECK(first_difference(a, a) == kInf);
  auto b = a.switched_after(20.0, 3.0);
  CHECK(first_difference(a, b) == doctest::Approx(20.0));
  CHECK(b.omega_at(21.0) == 3.0);
  CHECK(a.omega_at(1.0) == 0.5);
}
