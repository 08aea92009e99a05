#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "tnorder/config_text.hpp"
#include "tnorder/errors.hpp"
#include "tnorder/expint.hpp"
#include "tnorder/field.hpp"
#include "tnorder/projector.hpp"

namespace tnorder::cli {

using std::numbers::pi;

namespace {

constexpr double kBreakpointMargin = 0.05;

std::string sci(double v, int digits = 11) {
  if (v == 0.0) v = 0.0;  // no negative zero in output
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

std::string short_sci(double v) { return sci(v, 2); }

bool near_breakpoint(const FrequencySchedule& s, double t) {
  for (double b : s.breakpoints())
    if (std::abs(t - b) <= kBreakpointMargin) return true;
  return false;
}

Evaluation evaluation_at(const RunConfig& c, const FrequencySchedule& s,
                         std::initializer_list<double> times) {
  for (double t : times)
    if (near_breakpoint(s, t)) return Evaluation::quadrature;
  return c.method;
}

// Runs body(i) for i in [0, n) on a few threads. Exceptions are rethrown in
// index order so the reported failure does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Check {
  std::string name;
  enum { pass, fail, skipped } status;
  std::string detail;
};

const char* label(const Check& c) {
  switch (c.status) {
    case Check::pass: return "PASS";
    case Check::fail: return "FAIL";
    default: return "SKIP";
  }
}

}  // namespace

RunConfig::RunConfig() : t_min(-4.0 * pi), t_max(16.0 * pi), dt(pi / 20.0) {}

void RunConfig::validate() const {
  units.validate();
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min < t_max))
    throw ConfigError("t-min must be below t-max");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  quadrature().validate();
}

FrequencySchedule RunConfig::schedule() const {
  if (schedule_path.empty()) return FrequencySchedule::half_frequency_switch(units.omega0);
  return load_schedule(schedule_path);
}

QuadratureControls RunConfig::quadrature() const {
  QuadratureControls q = controls;
  q.tolerance = tolerance;
  return q;
}

std::vector<double> RunConfig::grid() const {
  const auto n = static_cast<std::size_t>(std::floor((t_max - t_min) / dt + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = t_min + static_cast<double>(k) * dt;
  return g;
}

std::vector<Figure1Row> figure1_rows(const RunConfig& config) {
  config.validate();
  const auto sched = config.schedule();
  const auto pq = heisenberg_momentum(sched, config.units);
  const auto p = pq.as_linear();
  const auto q = config.quadrature();
  const auto ts = config.grid();
  std::vector<Figure1Row> rows(ts.size());
  parallel_for(ts.size(), config.threads, [&](std::size_t i) {
    const double t = ts[i];
    const auto how = evaluation_at(config, sched, {t});
    rows[i] = {t, tn_pair_exact(p, p, t, t, how, q).value.real(),
               tn_pair_kk(p, p, t, t, how, q).value.real(), momentum_variance(pq, t)};
  });
  return rows;
}

void write_csv(std::ostream& out, const std::vector<Figure1Row>& rows) {
  out << "t,tn_exact,tn_kk,p2\n";
  for (const auto& r : rows)
    out << sci(r.t) << ',' << sci(r.tn_exact) << ',' << sci(r.tn_kk) << ',' << sci(r.p2) << '\n';
}

void write_svg(std::ostream& out, const std::vector<Figure1Row>& rows, const RunConfig& config) {
  const double W = 800, H = 420, pad = 50;
  const double shift = config.units.hbar * config.units.mass * config.units.omega0 / 4.0;
  double lo = 0.0, hi = 0.0;
  for (const auto& r : rows) {
    for (double v : {r.tn_exact, r.tn_kk, r.p2 - shift}) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double t0 = rows.empty() ? 0.0 : rows.front().t;
  const double t1 = rows.empty() ? 1.0 : rows.back().t;
  auto X = [&](double t) { return pad + (W - 2 * pad) * (t - t0) / std::max(t1 - t0, 1e-12); };
  auto Y = [&](double v) { return H - pad - (H - 2 * pad) * (v - lo) / (hi - lo); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  auto polyline = [&](auto value, const char* colour, const char* dash) {
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
    if (*dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << " points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i)
      out << (i ? " " : "") << num(X(rows[i].t)) << ',' << num(Y(value(rows[i])));
    out << "\"/>\n";
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << num(Y(0.0)) << "\" x2=\"" << W - pad << "\" y2=\""
      << num(Y(0.0)) << "\" stroke=\"#999\"/>\n";
  out << "<line x1=\"" << num(X(0.0)) << "\" y1=\"" << pad << "\" x2=\"" << num(X(0.0))
      << "\" y2=\"" << H - pad << "\" stroke=\"#ccc\"/>\n";
  polyline([](const Figure1Row& r) { return r.tn_exact; }, "#1f4e9c", "");
  polyline([](const Figure1Row& r) { return r.tn_kk; }, "#c0392b", "6 4");
  polyline([&](const Figure1Row& r) { return r.p2 - shift; }, "#2e8b57", "2 3");
  out << "<text x=\"" << pad << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">"
      << "exact TN (solid), KK (dashed), &lt;p&#178;&gt; - hbar m w0/4 (dotted); t from "
      << num(t0) << " to " << num(t1) << ", values " << num(lo) << " to " << num(hi)
      << "</text>\n";
  out << "</svg>\n";
}

int cmd_figure1(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto rows = figure1_rows(config);
  if (config.output.empty() || config.output == "-") {
    write_csv(out, rows);
  } else {
    std::ofstream f(config.output, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + config.output + "'");
    write_csv(f, rows);
    err << "wrote " << rows.size() << " rows to " << config.output << '\n';
  }
  if (!config.svg.empty()) {
    std::ofstream f(config.svg, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + config.svg + "'");
    write_svg(f, rows, config);
  }
  return kOk;
}

int cmd_causality_report(const RunConfig& config, std::ostream& out) {
  config.validate();
  const auto sched = config.schedule();
  const auto& units = config.units;
  const auto pq = heisenberg_momentum(sched, units);
  const auto p = pq.as_linear();
  const auto q = config.quadrature();
  const auto ts = config.grid();
  const double scale = units.hbar * units.mass * units.omega0;
  std::vector<Check> checks;

  // Before the first switch.
  const auto bps = sched.breakpoints();
  std::vector<double> pre;
  if (!bps.empty())
    for (double t : ts)
      if (t <= bps.front() - kBreakpointMargin) pre.push_back(t);
  if (pre.empty()) {
    checks.push_back({"exact TN zero before the switch", Check::skipped, "no grid points"});
    checks.push_back({"KK TN nonzero before the switch", Check::skipped, "no grid points"});
  } else {
    std::vector<double> ex(pre.size()), kk(pre.size());
    parallel_for(pre.size(), config.threads, [&](std::size_t i) {
      const auto how = evaluation_at(config, sched, {pre[i]});
      ex[i] = std::abs(tn_pair_exact(p, p, pre[i], pre[i], how, q).value);
      kk[i] = std::abs(tn_pair_kk(p, p, pre[i], pre[i], how, q).value);
    });
    const double sup_ex = *std::max_element(ex.begin(), ex.end());
    const double sup_kk = *std::max_element(kk.begin(), kk.end());
    checks.push_back({"exact TN zero before the switch",
                      sup_ex < 1e-6 * scale ? Check::pass : Check::fail,
                      "sup |TN| = " + short_sci(sup_ex) + " over " + std::to_string(pre.size()) +
                          " points (limit 1e-6)"});
    checks.push_back({"KK TN nonzero before the switch",
                      sup_kk > 1e-3 * scale ? Check::pass : Check::fail,
                      "max |TN_KK| = " + short_sci(sup_kk) + " (threshold 1e-3)"});
  }

  // Changing the schedule after the latest time leaves TN untouched.
  {
    const std::size_t n = ts.size();
    const double ta = ts[n / 3], tb = ts[(2 * n) / 3], tc = ts[n / 2], td = ts[(5 * n) / 6];
    const double latest = std::max({ta, tb, tc, td});
    const auto modified = sched.switched_after(latest + 1.0, 2.0 * units.omega0);
    const Observable mom{1.0, 0.0}, pos{0.0, 1.0};
    std::vector<Observable> two{mom, mom}, four{mom, pos, mom, pos};
    std::vector<double> t2{ta, tb}, t4{ta, tb, tc, td};
    const auto how = evaluation_at(config, sched, {ta, tb, tc, td});
    const double d2 = no_peep_check(two, t2, sched, modified, units, how);
    const double d4 = no_peep_check(four, t4, sched, modified, units, how);
    const double worst = std::max(d2, d4);
    checks.push_back({"no-peep invariance", worst < 1e-6 * scale ? Check::pass : Check::fail,
                      "max change " + short_sci(worst) + " for m = 2 and m = 4 (limit 1e-6)"});
  }

  // Direct four-term expansion against the rearranged single integral.
  {
    const std::size_t n = ts.size();
    const std::pair<double, double> pairs[] = {{ts[(2 * n) / 3], ts[(2 * n) / 3]},
                                               {ts[n / 2], ts[(2 * n) / 3]}};
    double worst = 0.0;
    for (auto [t1, t2] : pairs) {
      const auto how = evaluation_at(config, sched, {t1, t2});
      const cplx r = tn_pair_exact(p, p, t1, t2, how, q).value;
      const cplx d = tn_pair_exact_direct(p, p, t1, t2, q).value;
      worst = std::max(worst, std::abs(r - d) / std::max(std::abs(r), 1e-2 * scale));
    }
    checks.push_back({"rearranged and direct paths agree",
                      worst < 1e-4 ? Check::pass : Check::fail,
                      "max relative difference " + short_sci(worst) + " (limit 1e-4)"});
  }

  // Plateau: late in each bounded segment whose frequency differs from omega0.
  {
    std::vector<std::pair<double, double>> plateau;  // (t, omega)
    for (const auto& seg : sched.segments()) {
      if (!std::isfinite(seg.start) || !std::isfinite(seg.end) || seg.omega == units.omega0)
        continue;
      const double a = seg.start + pi / seg.omega, b = seg.end - pi / (4.0 * seg.omega);
      for (double t : ts)
        if (t >= a - 1e-9 && t <= b + 1e-9) plateau.emplace_back(t, seg.omega);
    }
    if (plateau.empty()) {
      checks.push_back({"plateau relation", Check::skipped, "no grid points on a plateau"});
      checks.push_back({"KK closer to exact than to <p^2>", Check::skipped,
                        "no grid points on a plateau"});
    } else {
      std::vector<double> dev(plateau.size()), margin(plateau.size());
      parallel_for(plateau.size(), config.threads, [&](std::size_t i) {
        const auto [t, w] = plateau[i];
        const auto how = evaluation_at(config, sched, {t});
        const double ex = tn_pair_exact(p, p, t, t, how, q).value.real();
        const double kk = tn_pair_kk(p, p, t, t, how, q).value.real();
        const double p2 = momentum_variance(pq, t);
        dev[i] = std::abs(ex - (p2 - units.hbar * units.mass * w / 2.0));
        margin[i] = std::abs(ex - p2) - std::abs(kk - ex);
      });
      const double worst = *std::max_element(dev.begin(), dev.end());
      const double least = *std::min_element(margin.begin(), margin.end());
      checks.push_back({"plateau relation", worst < 0.02 * scale ? Check::pass : Check::fail,
                        "max |TN - (<p^2> - hbar m w/2)| = " + short_sci(worst) + " over " +
                            std::to_string(plateau.size()) + " points (limit 0.02)"});
      checks.push_back({"KK closer to exact than to <p^2>",
                        least > 0.0 ? Check::pass : Check::fail,
                        "smallest margin " + short_sci(least)});
    }
  }

  bool ok = true;
  for (const auto& c : checks) {
    out << label(c) << "  " << c.name << ": " << c.detail << '\n';
    ok = ok && c.status != Check::fail;
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_selftest(const RunConfig& config, std::ostream& out) {
  config.validate();
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_function = [&] {
    std::vector<double> bps{-1.5 + 0.5 * u(rng), 1.0 + 0.5 * u(rng)};
    std::vector<std::vector<HarmonicTerm>> pieces(3);
    for (auto& piece : pieces)
      for (int k = 0; k < 3; ++k) piece.push_back({{u(rng), u(rng)}, std::round(4.0 * u(rng)) / 2.0});
    return PiecewiseHarmonic(bps, pieces);
  };
  struct Suite {
    std::string name;
    double residual, limit;
  };
  std::vector<Suite> suites;

  double sum_rule = 0.0, oracle = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_function();
    const auto fp = freq_part(f, ProjectorSign::positive);
    const auto fm = freq_part(f, ProjectorSign::negative);
    for (double t : {-4.0, -0.3, 0.4, 2.7}) {
      sum_rule = std::max(sum_rule, std::abs(fp(t) + fm(t) - f(t)));
      if (trial < 5)
        oracle = std::max(oracle, std::abs(fp(t) - pv_project(f, ProjectorSign::positive, t,
                                                               config.quadrature()).value));
    }
  }
  suites.push_back({"kernel sum rule", sum_rule, 1e-8});

  // E1 against 30-digit references.
  const std::pair<cplx, cplx> refs[] = {
      {{1.0, 0.0}, {0.21938393439552027368, 0.0}},
      {{0.0, 3.0}, {-0.11962978600800032763, 0.27785620120457163717}},
      {{0.0, 0.1}, {1.7278683866572965838, -1.4708518656866196635}},
      {{2.0, 1.0}, {0.0093881613104844667173, -0.04446299414138538559}},
  };
  double e1 = 0.0;
  for (const auto& [z, v] : refs) e1 = std::max(e1, std::abs(exp_integral(z) - v) / std::abs(v));
  suites.push_back({"E1 relative accuracy", e1, 1e-12});
  suites.push_back({"projector oracle agreement", oracle, 1e-6});

  std::uniform_real_distribution<double> w(0.2, 3.0), tt(-10.0, 10.0);
  auto random_modes = [&] {
    std::vector<Mode> modes;
    for (int k = 0; k < 5; ++k) modes.push_back({w(rng), {{u(rng), u(rng)}, {u(rng), u(rng)}}});
    return ModeSet(modes, config.units.hbar);
  };
  double wave = 0.0;
  const auto ms = random_modes();
  for (int k = 0; k < 100; ++k) wave = std::max(wave, wave_quantization_check(ms, tt(rng), tt(rng), 0, 1));
  suites.push_back({"wave quantisation", wave, 1e-10});

  double radiation = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const auto modes = random_modes();
    const double a = u(rng), b = a + 1.0 + u(rng) * 0.5;
    auto c = PiecewiseHarmonic::cosine(1.0, w(rng), u(rng));
    std::vector<HarmonicTerm> terms(c.terms(0).begin(), c.terms(0).end());
    ClassicalCurrent j({PiecewiseHarmonic({a, b}, {{}, terms, {}}), PiecewiseHarmonic()},
                       {{1, u(rng), u(rng)}});
    FieldPoint pts[2] = {{0, 3.0 + u(rng)}, {1, 4.0 + u(rng)}};
    const double prod = classical_response(modes, j, pts[0]) * classical_response(modes, j, pts[1]);
    radiation = std::max(radiation, std::abs(driven_field_tn(modes, j, pts) - prod) /
                                        std::max(std::abs(prod), 1e-12));
  }
  suites.push_back({"radiation law (m = 2)", radiation, 1e-6});

  bool ok = true;
  for (const auto& s : suites) {
    const bool pass = s.residual < s.limit;
    ok = ok && pass;
    out << (pass ? "PASS" : "FAIL") << "  " << s.name << ": residual " << short_sci(s.residual)
        << " (limit " << short_sci(s.limit) << ")\n";
  }
  return ok ? kOk : kCheckFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-normal averages of a parametric oscillator"};
  app.require_subcommand(1);
  RunConfig config;
  std::string method = "semianalytic";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--omega0", config.units.omega0, "Reference frequency")->capture_default_str();
    sub->add_option("--mass", config.units.mass, "Oscillator mass")->capture_default_str();
    sub->add_option("--hbar", config.units.hbar, "Reduced Planck constant")->capture_default_str();
    sub->add_option("--t-min", config.t_min, "First grid time")->capture_default_str();
    sub->add_option("--t-max", config.t_max, "Last grid time")->capture_default_str();
    sub->add_option("--dt", config.dt, "Grid step")->capture_default_str();
    sub->add_option("--method", method, "Projection evaluation")
        ->check(CLI::IsMember({"semianalytic", "quadrature"}))
        ->capture_default_str();
    sub->add_option("--tolerance", config.tolerance, "Quadrature window-spread tolerance")
        ->capture_default_str();
    sub->add_option("--window-multiplier", config.controls.window_multiplier,
                    "Cutoff window in tail periods")
        ->capture_default_str();
    sub->add_option("--max-subdivisions", config.controls.max_subdivisions,
                    "Adaptive bisection depth per panel")
        ->capture_default_str();
    sub->add_option("--schedule", config.schedule_path, "Frequency schedule file");
    sub->add_option("--threads", config.threads, "Worker threads (0: all cores)");
  };
  auto* fig = app.add_subcommand("figure1", "Equal-time TN curves as CSV");
  add_common(fig);
  fig->add_option("--output", config.output, "CSV path (default stdout)");
  fig->add_option("--svg", config.svg, "Optional SVG plot path");
  auto* report = app.add_subcommand("causality-report", "Causality and consistency checks");
  add_common(report);
  auto* self = app.add_subcommand("selftest", "Internal accuracy suites");
  add_common(self);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  config.method = method == "quadrature" ? Evaluation::quadrature : Evaluation::semianalytic;

  try {
    if (fig->parsed()) return cmd_figure1(config, out, err);
    if (report->parsed()) return cmd_causality_report(config, out);
    return cmd_selftest(config, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NonConvergenceError& e) {
    err << "non-convergence: " << e.what() << " (spread " << e.spread() << ")\n";
    return kNonConvergence;
  } catch (const SingularPointError& e) {
    err << "singular evaluation: " << e.what() << " at t = " << e.where() << '\n';
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

}  // namespace tnorder::cli
