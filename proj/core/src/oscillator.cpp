#include "tnorder/oscillator.hpp"

#include <array>
#include <cmath>

#include "tnorder/errors.hpp"

namespace tnorder {

void Units::validate() const {
  auto ok = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!ok(hbar) || !ok(mass) || !ok(omega0)) {
    throw ConfigError("units: hbar, mass and omega0 must be finite and positive");
  }
}

GaussianBasis canonical_basis(const Units& units) {
  const auto m = VacuumMoments::of(units);
  // order (p, x): <pp> <px> / <xp> <xx>
  return GaussianBasis(2, {m.pp, m.px, m.xp, m.xx});
}

LinearOperator QuadratureOperator::as_linear() const {
  return LinearOperator{canonical_basis(units), {coeff_p, coeff_x}};
}

namespace {

// Coefficients of one operator against (x, p) at a segment start.
struct Pair {
  double on_x;
  double on_p;
};

// alpha cos(w (t-s)) + beta sin(w (t-s)) as exponential terms.
std::vector<HarmonicTerm> rotation_terms(double alpha, double beta, double w, double s) {
  const cplx e = std::polar(1.0, w * s);
  const cplx i2(0.0, 2.0);
  return {{alpha / 2.0 * e - beta * e / i2, w}, {alpha / 2.0 * std::conj(e) + beta * std::conj(e) / i2, -w}};
}

struct Evolution {
  PiecewiseHarmonic x_on_x, x_on_p, p_on_x, p_on_p;
};

Evolution evolve(const FrequencySchedule& schedule, const Units& units) {
  units.validate();
  const auto& segs = schedule.segments();
  if (segs.front().omega != units.omega0) {
    throw ConfigError("oscillator: first schedule segment must run at omega0 (vacuum frequency)");
  }
  std::vector<double> bps = schedule.breakpoints();
  std::array<std::vector<std::vector<HarmonicTerm>>, 4> pieces;
  const double m = units.mass;

  // State at the reference time of the current segment.
  Pair x{1.0, 0.0};
  Pair p{0.0, 1.0};
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const double w = segs[k].omega;
    const double s = k == 0 ? 0.0 : segs[k].start;
    // x(t) = x_s cos + p_s sin/(m w);  p(t) = p_s cos - m w x_s sin
    pieces[0].push_back(rotation_terms(x.on_x, p.on_x / (m * w), w, s));
    pieces[1].push_back(rotation_terms(x.on_p, p.on_p / (m * w), w, s));
    pieces[2].push_back(rotation_terms(p.on_x, -m * w * x.on_x, w, s));
    pieces[3].push_back(rotation_terms(p.on_p, -m * w * x.on_p, w, s));
    if (k + 1 < segs.size()) {
      const double th = w * (segs[k].end - s);
      const double c = std::cos(th), sn = std::sin(th);
      const Pair nx{x.on_x * c + p.on_x * sn / (m * w), x.on_p * c + p.on_p * sn / (m * w)};
      const Pair np{p.on_x * c - m * w * x.on_x * sn, p.on_p * c - m * w * x.on_p * sn};
      x = nx;
      p = np;
    }
  }
  return {PiecewiseHarmonic(bps, pieces[0]), PiecewiseHarmonic(bps, pieces[1]),
          PiecewiseHarmonic(bps, pieces[2]), PiecewiseHarmonic(bps, pieces[3])};
}

}  // namespace

QuadratureOperator heisenberg_momentum(const FrequencySchedule& schedule, const Units& units) {
  auto ev = evolve(schedule, units);
  return {std::move(ev.p_on_p), std::move(ev.p_on_x), units};
}

QuadratureOperator heisenberg_position(const FrequencySchedule& schedule, const Units& units) {
  auto ev = evolve(schedule, units);
  return {std::move(ev.x_on_p), std::move(ev.x_on_x), units};
}

cplx commutator(const QuadratureOperator& a, const QuadratureOperator& b, double t1, double t2) {
  const cplx a_p = a.coeff_p(t1), a_x = a.coeff_x(t1);
  const cplx b_p = b.coeff_p(t2), b_x = b.coeff_x(t2);
  // [p, x] = -i hbar
  return cplx(0.0, -a.units.hbar) * (a_p * b_x - a_x * b_p);
}

cplx symplectic_check(const QuadratureOperator& op, double t, double t_prime) {
  return commutator(op, op, t, t_prime);
}

cplx vacuum_two_point(const QuadratureOperator& a, const QuadratureOperator& b, double t1,
                      double t2) {
  const auto m = VacuumMoments::of(a.units);
  const cplx a_p = a.coeff_p(t1), a_x = a.coeff_x(t1);
  const cplx b_p = b.coeff_p(t2), b_x = b.coeff_x(t2);
  return a_p * b_p * m.pp + a_x * b_x * m.xx + a_p * b_x * m.px + a_x * b_p * m.xp;
}

double momentum_variance(const QuadratureOperator& op, double t) {
  return vacuum_two_point(op, op, t, t).real();
}

}  // namespace tnorder
