#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tnorder/errors.hpp"
#include "tnorder/projector.hpp"

using namespace tnorder;
using std::numbers::pi;

namespace {

const auto kPlus = ProjectorSign::positive;
const auto kMinus = ProjectorSign::negative;

PiecewiseHarmonic box(double a, double b, cplx c = 1.0) {
  return PiecewiseHarmonic({a, b}, {{}, {{c, 0.0}}, {}});
}

}  // namespace

TEST_CASE("pure exponentials are fixed points or annihilated") {
  auto pos = PiecewiseHarmonic::harmonic({{1.0, 2.0}});
  for (double t : {-4.0, 0.0, 3.3}) {
    CHECK(std::abs(freq_part(pos, kPlus)(t) - pos(t)) < 1e-13);
    CHECK(std::abs(freq_part(pos, kMinus)(t)) < 1e-13);
  }
}

TEST_CASE("cos t has positive part e^{-it}/2") {
  auto f = PiecewiseHarmonic::cosine(1.0, 1.0);
  const double t = 0.9;
  CHECK(std::abs(freq_part(f, kPlus)(t) - 0.5 * std::polar(1.0, -t)) < 1e-13);
  CHECK(std::abs(freq_part(f, kMinus)(t) - 0.5 * std::polar(1.0, t)) < 1e-13);
}

TEST_CASE("a constant splits evenly") {
  auto f = PiecewiseHarmonic::constant(3.0);
  CHECK(std::abs(freq_part(f, kPlus)(1.0) - 1.5) < 1e-14);
  CHECK(std::abs(freq_part(f, kMinus)(-7.0) - 1.5) < 1e-14);
}

TEST_CASE("box function has a logarithmic image") {
  // PV int_0^1 dt'/(t - t') = ln|t| - ln|t - 1|
  auto f = box(0.0, 1.0);
  const cplx at2 = freq_part(f, kPlus)(2.0);
  CHECK(std::abs(at2 - std::log(2.0) / cplx(0.0, 2.0 * pi)) < 1e-14);
  const cplx mid = freq_part(f, kPlus)(0.5);
  CHECK(std::abs(mid - 0.5) < 1e-14);
}

TEST_CASE("windowed cosine matches frozen high-precision values") {
  // cos t on (0, 2); references from arbitrary-precision quadrature.
  PiecewiseHarmonic f({0.0, 2.0}, {{}, {{0.5, 1.0}, {0.5, -1.0}}, {}});
  const cplx inside = freq_part(f, kPlus)(0.7);
  CHECK(std::abs(inside - cplx(0.382421093642244213, -0.149214178375127184)) < 1e-13);
  const cplx outside = freq_part(f, kPlus)(3.0);
  CHECK(std::abs(outside - cplx(0.0, -0.0545846340424560383)) < 1e-13);
}

TEST_CASE("evaluation on a jump throws, finite part does not") {
  auto img = freq_part(box(0.0, 1.0), kPlus);
  CHECK_THROWS_AS(img(1.0), SingularPointError);
  CHECK(std::isfinite(img.finite_part(1.0).value.real()));
}

TEST_CASE("conjugation swaps the projections of real functions") {
  auto f = PiecewiseHarmonic({-1.0, 2.0}, {{}, {{0.5, 1.3}, {0.5, -1.3}}, {}}) +
           PiecewiseHarmonic::cosine(0.4, 0.7, 0.1);
  for (double t : {-3.0, 0.1, 2.5}) {
    CHECK(std::abs(std::conj(freq_part(f, kPlus)(t)) - freq_part(f, kMinus)(t)) < 1e-13);
    CHECK(std::abs(freq_part(f, kPlus).conj()(t) - freq_part(f, kMinus)(t)) < 1e-13);
  }
}

TEST_CASE("sum rule on random piecewise harmonics") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> bps{-2.0 + u(rng), 0.5 + u(rng)};
    std::vector<std::vector<HarmonicTerm>> pieces(3);
    for (auto& p : pieces)
      for (int k = 0; k < 3; ++k) p.push_back({{u(rng), u(rng)}, 2.0 * u(rng)});
    PiecewiseHarmonic f(bps, pieces);
    for (double t : {-5.0, -1.0, 0.2, 3.0}) {
      if (f.is_breakpoint(t)) continue;
      const cplx s = freq_part(f, kPlus)(t) + freq_part(f, kMinus)(t);
      CHECK(std::abs(s - f(t)) < 1e-10);
    }
  }
}

TEST_CASE("truncated projections collapse to a step") {
  auto f = PiecewiseHarmonic::cosine(1.0, 1.0, 0.3);
  const double upper = 1.0;
  for (double t : {-2.0, 0.5, 2.0}) {
    const cplx s = truncated_freq_part(f, kPlus, t, upper).value +
                   truncated_freq_part(f, kMinus, t, upper).value;
    const cplx expect = t < upper ? f(t) : 0.0;
    CHECK(std::abs(s - expect) < 1e-12);
  }
  const cplx edge = truncated_freq_part(f, kPlus, upper, upper).value +
                    truncated_freq_part(f, kMinus, upper, upper).value;
  CHECK(std::abs(edge - 0.5 * f(upper)) < 1e-12);
}

TEST_CASE("closed form agrees with the quadrature oracle") {
  PiecewiseHarmonic f({-1.0, 1.5}, {{{0.5, 1.0}, {0.5, -1.0}},
                                    {{0.3, 0.5}, {0.3, -0.5}, {0.2, 0.0}},
                                    {{cplx(0.0, 0.5), 1.0}, {cplx(0.0, -0.5), -1.0}}});
  for (double t : {-4.0, -1.2, 0.3, 1.4, 6.0}) {
    for (auto s : {kPlus, kMinus}) {
      CAPTURE(t);
      const cplx closed = freq_part(f, s)(t);
      const auto quad = pv_project(f, s, t);
      CHECK(std::abs(closed - quad.value) < 1e-7);
    }
  }
}

TEST_CASE("truncated closed form agrees with the quadrature oracle") {
  auto f = PiecewiseHarmonic::cosine(1.0, 1.0) + PiecewiseHarmonic::cosine(0.5, 0.5, 1.0);
  for (double t : {-2.0, 0.7, 1.0}) {
    for (auto s : {kPlus, kMinus}) {
      CAPTURE(t);
      const auto closed = truncated_freq_part(f, s, t, 1.0);
      const auto quad = pv_project_truncated(f, s, t, 1.0);
      CHECK(std::abs(closed.value - quad.value) < 1e-7);
    }
  }
}
