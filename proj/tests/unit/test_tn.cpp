#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tnorder/oscillator.hpp"
#include "tnorder/tn.hpp"

using namespace tnorder;
using std::numbers::pi;

namespace {

LinearOperator paper_p() {
  return heisenberg_momentum(FrequencySchedule::half_frequency_switch(1.0)).as_linear();
}
LinearOperator free_p() { return heisenberg_momentum(FrequencySchedule::constant(1.0)).as_linear(); }

}  // namespace

TEST_CASE("ordered correlator resolves the four orderings") {
  auto p = free_p();
  OrderedCorrelator c(p, p);
  const cplx later_first = 0.5 * std::polar(1.0, -1.0);  // <p(1) p(0)>
  CHECK(std::abs(c(Ordering::left_right, 1.0, 0.0) - later_first) < 1e-14);
  CHECK(std::abs(c(Ordering::right_left, 1.0, 0.0) - std::conj(later_first)) < 1e-14);
  CHECK(std::abs(c(Ordering::time_ordered, 1.0, 0.0) - later_first) < 1e-14);
  CHECK(std::abs(c(Ordering::time_ordered, 0.0, 1.0) - later_first) < 1e-14);
  CHECK(std::abs(c(Ordering::anti_time_ordered, 1.0, 0.0) - std::conj(later_first)) < 1e-14);
  CHECK(std::abs(c(Ordering::time_ordered, 2.0, 2.0) - 0.5) < 1e-14);
}

TEST_CASE("free oscillator TN vanishes for both engines") {
  auto p = free_p();
  for (double t1 : {-2.0, 0.5, 3.0}) {
    for (double t2 : {-1.0, 0.5, 4.0}) {
      CHECK(std::abs(tn_pair_exact(p, p, t1, t2).value) < 1e-12);
      CHECK(std::abs(tn_pair_kk(p, p, t1, t2).value) < 1e-12);
    }
  }
}

TEST_CASE("exact TN vanishes before the switch, KK does not") {
  auto p = paper_p();
  for (double t : {-5.0, -1.0, -0.05}) {
    CHECK(std::abs(tn_pair_exact(p, p, t, t).value) < 1e-10);
  }
  // Derived with an independent prototype of the KK formulas.
  CHECK(tn_pair_kk(p, p, -1.0, -1.0).value.real() == doctest::Approx(-0.0259037608).epsilon(1e-6));
  CHECK(tn_pair_kk(p, p, -5.0, -5.0).value.real() == doctest::Approx(0.0102731784).epsilon(1e-6));
}

TEST_CASE("plateau value inside the half-frequency interval") {
  auto p = paper_p();
  const auto e = tn_pair_exact(p, p, 3 * pi, 3 * pi);
  CHECK(e.value.real() == doctest::Approx(-0.12929021633).epsilon(1e-8));
  CHECK(std::abs(e.value.real() - (0.125 - 0.25)) < 0.02);
  CHECK(e.path == TnPath::rearranged);
  CHECK(e.method == TnMethod::exact);
}

TEST_CASE("TN pair is symmetric in its labels") {
  auto s = FrequencySchedule::half_frequency_switch(1.0);
  auto p = heisenberg_momentum(s).as_linear();
  auto x = heisenberg_position(s).as_linear();
  for (auto [t1, t2] : {std::pair{1.0, 5.0}, {8.0, -2.0}, {3.0, 3.0}}) {
    CHECK(std::abs(tn_pair_exact(p, x, t1, t2).value - tn_pair_exact(x, p, t2, t1).value) < 1e-12);
    CHECK(std::abs(tn_pair_kk(p, x, t1, t2).value - tn_pair_kk(x, p, t2, t1).value) < 1e-12);
  }
}

TEST_CASE("semi-analytic and quadrature evaluation agree") {
  auto p = paper_p();
  for (auto [t1, t2] : {std::pair{2.0, 6.0}, {9.0, 9.0}}) {
    const auto a = tn_pair_exact(p, p, t1, t2);
    const auto b = tn_pair_exact(p, p, t1, t2, Evaluation::quadrature);
    CHECK(std::abs(a.value - b.value) < 1e-7);
    const auto c = tn_pair_kk(p, p, t1, t2);
    const auto d = tn_pair_kk(p, p, t1, t2, Evaluation::quadrature);
    CHECK(std::abs(c.value - d.value) < 1e-7);
  }
}

TEST_CASE("direct and rearranged paths agree") {
  auto p = paper_p();
  for (auto [t1, t2] : {std::pair{3 * pi, 3 * pi}, {7.0, 5.5}}) {
    const auto r = tn_pair_exact(p, p, t1, t2);
    const auto d = tn_pair_exact_direct(p, p, t1, t2);
    CHECK(d.path == TnPath::direct);
    CHECK(std::abs(r.value - d.value) < 1e-4 * std::abs(r.value));
    CHECK(std::abs(r.value - d.value) <= d.error_estimate + r.error_estimate + 1e-12);
  }
}

TEST_CASE("Wick extension edge cases") {
  auto p = paper_p();
  std::vector<LinearOperator> none;
  std::vector<double> no_times;
  CHECK(tn_multi_exact(none, no_times).value == cplx(1.0));
  std::vector<LinearOperator> three(3, p);
  std::vector<double> t3{1.0, 2.0, 3.0};
  CHECK(tn_multi_exact(three, t3).value == cplx(0.0));
  std::vector<LinearOperator> nine(9, p);
  std::vector<double> t9(9, 1.0);
  CHECK_THROWS_AS(tn_multi_exact(nine, t9), std::invalid_argument);
  std::vector<LinearOperator> two(2, p);
  std::vector<double> t2{1.0, 2.0};
  CHECK(std::abs(tn_multi_exact(two, t2).value - tn_pair_exact(p, p, 1.0, 2.0).value) < 1e-15);
}

TEST_CASE("four-point Wick sum from rearranged and direct pairs") {
  auto p = paper_p();
  const double t[4] = {2.0, 5.0, 7.5, 9.0};
  std::vector<LinearOperator> ops(4, p);
  const cplx wick = tn_multi_exact(ops, t).value;
  auto pair = [&](int i, int j) { return tn_pair_exact_direct(p, p, t[i], t[j]).value; };
  const cplx direct = pair(0, 1) * pair(2, 3) + pair(0, 2) * pair(1, 3) + pair(0, 3) * pair(1, 2);
  CHECK(std::abs(wick - direct) < 1e-2 * std::max(1.0, std::abs(wick)));
}

TEST_CASE("no-peep check rejects overlapping modifications") {
  auto s = FrequencySchedule::half_frequency_switch(1.0);
  Observable p{1.0, 0.0};
  std::vector<Observable> obs{p, p};
  std::vector<double> times{3.0, 5.0};
  CHECK(no_peep_check(obs, times, s, s.switched_after(6.0, 2.0)) < 1e-10);
  CHECK_THROWS_AS(no_peep_check(obs, times, s, s.switched_after(4.0, 2.0)), std::invalid_argument);
  // KK has no such protection.
  CHECK(schedule_sensitivity(obs, times, s, s.switched_after(6.0, 2.0), {}, TnMethod::kk) > 1e-4);
}
