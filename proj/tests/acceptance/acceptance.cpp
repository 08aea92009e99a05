// Acceptance criteria, one line per criterion. Units hbar = m = omega0 = 1.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cli.hpp"
#include "tnorder/field.hpp"
#include "tnorder/oscillator.hpp"
#include "tnorder/projector.hpp"
#include "tnorder/tn.hpp"

using namespace tnorder;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::mt19937_64& rng() {
  static std::mt19937_64 r(0x7e57u);
  return r;
}
double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }
// Frequencies on a half-integer lattice, zero included.
double lattice_omega() { return std::round(uniform(-4.0, 4.0)) / 2.0; }

PiecewiseHarmonic random_function() {
  const int pieces = 1 + static_cast<int>(uniform(0.0, 4.0));
  std::vector<double> bps;
  double b = uniform(-3.0, -1.0);
  for (int i = 1; i < pieces; ++i) {
    bps.push_back(b);
    b += uniform(0.5, 2.5);
  }
  std::vector<std::vector<HarmonicTerm>> terms(pieces);
  for (auto& piece : terms) {
    const int n = static_cast<int>(uniform(0.0, 4.0));
    for (int k = 0; k < n; ++k) piece.push_back({{uniform(-1, 1), uniform(-1, 1)}, lattice_omega()});
  }
  return PiecewiseHarmonic(bps, terms);
}

double away_from_breakpoints(const PiecewiseHarmonic& f, double lo, double hi) {
  for (;;) {
    const double t = uniform(lo, hi);
    bool ok = true;
    for (double b : f.breakpoints()) ok = ok && std::abs(t - b) > 1e-3;
    if (ok) return t;
  }
}

LinearOperator momentum(const FrequencySchedule& s) { return heisenberg_momentum(s).as_linear(); }

ModeSet random_modes(std::size_t n, std::size_t labels) {
  std::vector<Mode> modes;
  for (std::size_t k = 0; k < n; ++k) {
    Mode m{uniform(0.2, 3.0), {}};
    for (std::size_t l = 0; l < labels; ++l) m.amplitudes.emplace_back(uniform(-1, 1), uniform(-1, 1));
    modes.push_back(m);
  }
  return ModeSet(modes, 1.0);
}

PiecewiseHarmonic random_pulse(double a, double b) {
  auto c = PiecewiseHarmonic::cosine(uniform(-1, 1), uniform(0.0, 2.0), uniform(0.0, 2 * pi));
  std::vector<HarmonicTerm> terms(c.terms(0).begin(), c.terms(0).end());
  return PiecewiseHarmonic({a, b}, {{}, terms, {}});
}

// 1. f+ + f- = f
Outcome sum_rule() {
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    const auto f = random_function();
    const auto fp = freq_part(f, ProjectorSign::positive), fm = freq_part(f, ProjectorSign::negative);
    for (int k = 0; k < 10; ++k) {
      const double t = away_from_breakpoints(f, -8.0, 8.0);
      worst = std::max(worst, std::abs(fp(t) + fm(t) - f(t)));
    }
  }
  return {worst < 1e-8, "max residual " + num(worst) + " (limit 1e-8, 30 functions)"};
}

// 2. closed form vs quadrature oracle
Outcome oracle() {
  double worst = 0.0;
  int points = 0;
  while (points < 200) {
    const auto f = random_function();
    for (int k = 0; k < 10; ++k, ++points) {
      const double t = away_from_breakpoints(f, -6.0, 6.0);
      const auto s = k % 2 ? ProjectorSign::positive : ProjectorSign::negative;
      worst = std::max(worst, std::abs(freq_part(f, s)(t) - pv_project(f, s, t).value));
    }
  }
  return {worst < 1e-6, "max difference " + num(worst) + " over " + std::to_string(points) +
                            " points (limit 1e-6)"};
}

// 3. TN of free fields vanishes
Outcome free_vanishing() {
  double worst = 0.0;
  const auto osc = FrequencySchedule::constant(1.0);
  const auto p = heisenberg_momentum(osc), x = heisenberg_position(osc);
  for (int i = 0; i < 50; ++i) {
    std::vector<LinearOperator> ops;
    if (i % 2 == 0) {
      for (int k = 0; k < 4; ++k) {
        const cplx a = uniform(-1, 1), b = uniform(-1, 1);
        ops.push_back(QuadratureOperator{a * p.coeff_p + b * x.coeff_p, a * p.coeff_x + b * x.coeff_x, {}}
                          .as_linear());
      }
    } else {
      const auto ms = random_modes(3, 2);
      for (int k = 0; k < 4; ++k) ops.push_back(field_operator(ms, k % 2));
    }
    std::vector<double> t(4);
    for (auto& v : t) v = uniform(-10.0, 10.0);
    for (std::size_t m : {2u, 4u}) {
      std::span<const LinearOperator> o(ops.data(), m);
      std::span<const double> tm(t.data(), m);
      worst = std::max({worst, std::abs(tn_multi_exact(o, tm).value), std::abs(tn_multi_kk(o, tm).value)});
    }
  }
  return {worst < 1e-8, "max |TN| " + num(worst) + " over 50 tuples, m = 2 and 4, both engines (limit 1e-8)"};
}

// 4. exact TN causal, KK not
Outcome causality() {
  const auto p = momentum(FrequencySchedule::half_frequency_switch(1.0));
  double sup_exact = 0.0, sup_kk = 0.0;
  const int n = 400;
  for (int i = 0; i <= n; ++i) {
    const double t = -4 * pi + (-0.05 + 4 * pi) * i / n;
    sup_exact = std::max(sup_exact, std::abs(tn_pair_exact(p, p, t, t).value));
    sup_kk = std::max(sup_kk, std::abs(tn_pair_kk(p, p, t, t).value));
  }
  return {sup_exact < 1e-6 && sup_kk > 1e-3,
          "sup |exact| " + num(sup_exact) + " (limit 1e-6), max |KK| " + num(sup_kk) +
              " (threshold 1e-3) on [-4pi, -0.05]"};
}

// 5. rearranged vs direct closed-time-loop expansion
Outcome rearrangement() {
  const auto p = momentum(FrequencySchedule::half_frequency_switch(1.0));
  const std::pair<double, double> pairs[] = {{3 * pi, 3 * pi}, {3 * pi, 2.5 * pi}, {1.0, 2.0}, {7.0, 5.5}, {15.0, 11.0}};
  double worst = 0.0;
  for (auto [t1, t2] : pairs) {
    const cplx r = tn_pair_exact(p, p, t1, t2).value;
    const cplx d = tn_pair_exact_direct(p, p, t1, t2).value;
    worst = std::max(worst, std::abs(r - d) / std::abs(r));
  }
  return {worst < 1e-4, "max relative difference " + num(worst) + " over 5 pairs (limit 1e-4)"};
}

// 6. plateau relation and KK closeness
Outcome plateau() {
  const auto pq = heisenberg_momentum(FrequencySchedule::half_frequency_switch(1.0));
  const auto p = pq.as_linear();
  double worst = 0.0;
  bool closer = true;
  for (double t : {2 * pi, 2.5 * pi, 3 * pi, 3.5 * pi}) {
    const double ex = tn_pair_exact(p, p, t, t).value.real();
    const double kk = tn_pair_kk(p, p, t, t).value.real();
    const double p2 = momentum_variance(pq, t);
    worst = std::max(worst, std::abs(ex - (p2 - 0.25)));
    closer = closer && std::abs(kk - ex) < std::abs(ex - p2);
  }
  return {worst < 0.02 && closer, "max |TN - (<p^2> - 1/4)| " + num(worst) +
                                      " (limit 0.02); KK closer to exact than <p^2>: " +
                                      (closer ? "yes" : "no")};
}

// 7. momentum variance
Outcome variance() {
  const auto p = heisenberg_momentum(FrequencySchedule::half_frequency_switch(1.0));
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double t = -4 * pi + 20 * pi * i / 2000.0;
    const double expect = (t > 0 && t < 4 * pi) ? 0.5 * (1 - 0.75 * std::pow(std::sin(t / 2), 2)) : 0.5;
    worst = std::max(worst, std::abs(momentum_variance(p, t) - expect));
  }
  const double late = std::abs(momentum_variance(p, 40.0) - 0.5);
  return {worst < 1e-12 && late < 1e-12,
          "max deviation " + num(worst) + ", vacuum value after the switch off by " + num(late) + " (limit 1e-12)"};
}

// 8. wave quantisation
Outcome wave() {
  double worst = 0.0;
  for (int set = 0; set < 10; ++set) {
    const auto ms = random_modes(5, 3);
    for (int k = 0; k < 100; ++k) {
      const std::size_t x = static_cast<std::size_t>(uniform(0, 3)), y = static_cast<std::size_t>(uniform(0, 3));
      worst = std::max(worst, wave_quantization_check(ms, uniform(-20, 20), uniform(-20, 20), x, y));
    }
  }
  return {worst < 1e-10, "max residual " + num(worst) + " over 10 mode sets x 100 pairs (limit 1e-10)"};
}

// 9. radiation law against numerically convolved classical responses
double convolved(const ModeSet& ms, const ClassicalCurrent& j, FieldPoint at) {
  double r = 0.0;
  for (std::size_t l = 0; l < j.densities().size(); ++l) {
    const auto& d = j.densities()[l];
    if (d.breakpoints().empty()) continue;
    const double lo = d.breakpoints().front(), hi = std::min(d.breakpoints().back(), at.t);
    if (!(hi > lo)) continue;
    auto g = [&](double tp) { return delta_R(ms, at.label, l, at.t - tp) * d(tp).real(); };
    std::vector<double> cuts(d.breakpoints().begin(), d.breakpoints().end());
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      if (cuts[k + 1] > hi) break;
      r += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, cuts[k], cuts[k + 1], 20, 1e-14);
    }
  }
  for (const auto& imp : j.impulses()) r += imp.weight * delta_R(ms, at.label, imp.label, at.t - imp.time);
  return r;
}

Outcome radiation() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto ms = random_modes(1 + i % 5, 2);
    const double a = uniform(-3, 0), b = a + uniform(0.5, 3.0);
    const double c = uniform(-2, 1);
    ClassicalCurrent j({random_pulse(a, b), PiecewiseHarmonic({c, c + 1.5}, {{}, {{uniform(-1, 1), 0.0}}, {}})},
                       {{static_cast<std::size_t>(i % 2), uniform(-2, 2), uniform(-1, 1)}});
    FieldPoint pts[2] = {{0, uniform(-1, 6)}, {1, uniform(-1, 6)}};
    const double r1 = convolved(ms, j, pts[0]), r2 = convolved(ms, j, pts[1]);
    const cplx one = driven_field_tn(ms, j, std::span(pts, 1));
    const cplx two = driven_field_tn(ms, j, pts);
    worst = std::max(worst, std::abs(one - r1) / std::max(std::abs(r1), 1e-12));
    worst = std::max(worst, std::abs(two - r1 * r2) / std::max(std::abs(r1 * r2), 1e-12));
  }
  return {worst < 1e-6, "max relative deviation " + num(worst) + " over 20 instances, m = 1 and 2 (limit 1e-6)"};
}

// 10. no-peep invariance
Outcome no_peep() {
  const auto base = FrequencySchedule::half_frequency_switch(1.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    std::vector<Observable> obs;
    std::vector<double> t;
    const std::size_t m = i % 2 ? 4 : 2;
    for (std::size_t k = 0; k < m; ++k) {
      obs.push_back({uniform(-1, 1), uniform(-1, 1)});
      t.push_back(uniform(-3.0, 18.0));
    }
    const double latest = *std::max_element(t.begin(), t.end());
    const auto modified = base.switched_after(latest + uniform(0.01, 3.0), uniform(0.3, 3.0));
    worst = std::max(worst, no_peep_check(obs, t, base, modified));
  }
  return {worst < 1e-6, "max change " + num(worst) + " over 10 modifications, m = 2 and 4 (limit 1e-6)"};
}

// 11. truncated kernels collapse to a step
Outcome collapse() {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto f = random_function();
    const double upper = away_from_breakpoints(f, -4.0, 4.0);
    double t = away_from_breakpoints(f, -6.0, 6.0);
    if (i % 5 == 0) t = upper;
    const cplx sum = truncated_freq_part(f, ProjectorSign::positive, t, upper).value +
                     truncated_freq_part(f, ProjectorSign::negative, t, upper).value;
    const cplx expect = t < upper ? f(t) : (t == upper ? 0.5 * f(t) : 0.0);
    worst = std::max(worst, std::abs(sum - expect));
  }
  return {worst < 1e-8, "max residual " + num(worst) + " over 20 cases (limit 1e-8)"};
}

// 12. byte-identical CLI output
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const std::string dir = TNORDER_ACCEPTANCE_TMP;
  const std::string a = dir + "/figure1_a.csv", b = dir + "/figure1_b.csv";
  const std::string cli = TNORDER_CLI_PATH;
  const int ra = std::system((cli + " figure1 --threads 1 --output " + a + " 2>/dev/null").c_str());
  const int rb = std::system((cli + " figure1 --threads 4 --output " + b + " 2>/dev/null").c_str());
  const std::string sa = slurp(a), sb = slurp(b);
  const auto rows = std::count(sa.begin(), sa.end(), '\n') - 1;
  const bool same = ra == 0 && rb == 0 && !sa.empty() && sa == sb;
  return {same && rows == 401, std::string(same ? "identical" : "different") + " output, " +
                                   std::to_string(rows) + " rows"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "kernel sum rule", 5, sum_rule},
      {2, "projector oracle agreement", 60, oracle},
      {3, "free-field TN vanishing", 30, free_vanishing},
      {4, "causality contrast", 60, causality},
      {5, "rearrangement exactness", 180, rearrangement},
      {6, "plateau relation", 60, plateau},
      {7, "momentum variance closed form", 1, variance},
      {8, "wave quantisation identity", 5, wave},
      {9, "radiation law", 30, radiation},
      {10, "no-peep invariance", 60, no_peep},
      {11, "truncated-kernel collapse", 5, collapse},
      {12, "CLI determinism", 120, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("[%s] %2d %-30s %s; %.2f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.time_limit_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
