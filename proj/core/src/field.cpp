#include "tnorder/field.hpp"

#include <cmath>
#include <stdexcept>

#include "tnorder/errors.hpp"
#include "tnorder/tn.hpp"

namespace tnorder {

ModeSet::ModeSet(std::vector<Mode> modes, double hbar) : modes_(std::move(modes)), hbar_(hbar) {
  if (modes_.empty()) throw ConfigError("mode set is empty");
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) throw ConfigError("hbar must be positive");
  const std::size_t labels = modes_.front().amplitudes.size();
  if (labels == 0) throw ConfigError("modes need at least one label");
  for (const auto& m : modes_) {
    if (!(m.omega > 0.0) || !std::isfinite(m.omega))
      throw ConfigError("mode frequency must be positive");
    if (m.amplitudes.size() != labels) throw ConfigError("modes disagree on label count");
  }
}

namespace {

void check_label(const ModeSet& ms, std::size_t x) {
  if (x >= ms.label_count()) throw std::out_of_range("field label out of range");
}

// sum_k u_k(x) u_k(x')* e^{-i w_k tau}
cplx mode_sum(const ModeSet& ms, std::size_t x, std::size_t xp, double tau) {
  cplx s = 0.0;
  for (const auto& m : ms.modes())
    s += m.amplitudes[x] * std::conj(m.amplitudes[xp]) * std::polar(1.0, -m.omega * tau);
  return s;
}

// int_{-inf}^{t} e^{-i W (t - t')} J(t') dt' for one density.
cplx retarded_exp(const PiecewiseHarmonic& j, double W, double t) {
  cplx total = 0.0;
  for (std::size_t p = 0; p < j.piece_count(); ++p) {
    const double a = j.piece_lower(p);
    const double b = std::min(j.piece_upper(p), t);
    if (!(b > a)) continue;
    for (const auto& term : j.terms(p)) {
      // int_a^b c e^{-i nu t'} e^{i W t'} dt'
      const double k = W - term.omega;
      cplx integral;
      if (k == 0.0) {
        integral = term.coeff * (b - a);
      } else {
        integral = term.coeff * (std::polar(1.0, k * b) - std::polar(1.0, k * a)) / cplx(0.0, k);
      }
      total += integral;
    }
  }
  return std::polar(1.0, -W * t) * total;
}

}  // namespace

double delta_R(const ModeSet& ms, std::size_t x, std::size_t x_prime, double tau) {
  check_label(ms, x);
  check_label(ms, x_prime);
  if (!(tau > 0.0)) return 0.0;
  return -2.0 * std::imag(mode_sum(ms, x, x_prime, tau));
}

cplx field_commutator(const ModeSet& ms, std::size_t x, double t, std::size_t x_prime,
                      double t_prime) {
  check_label(ms, x);
  check_label(ms, x_prime);
  // [u a e^{-iwt} + u* a+ e^{iwt}, v a e^{-iwt'} + v* a+ e^{iwt'}]
  //   = u v* e^{-iw(t-t')} - u* v e^{iw(t-t')}
  cplx s = 0.0;
  for (const auto& m : ms.modes()) {
    const cplx u = m.amplitudes[x], v = m.amplitudes[x_prime];
    const double tau = t - t_prime;
    s += u * std::conj(v) * std::polar(1.0, -m.omega * tau) -
         std::conj(u) * v * std::polar(1.0, m.omega * tau);
  }
  return ms.hbar() * s;
}

double wave_quantization_check(const ModeSet& ms, double t, double t_prime, std::size_t x,
                               std::size_t x_prime) {
  const cplx lhs = field_commutator(ms, x, t, x_prime, t_prime);
  const double kubo = delta_R(ms, x, x_prime, t - t_prime) - delta_R(ms, x_prime, x, t_prime - t);
  return std::abs(lhs + cplx(0.0, ms.hbar()) * kubo);
}

GaussianBasis mode_basis(const ModeSet& ms) {
  const std::size_t k = ms.modes().size();
  const std::size_t dim = 2 * k;
  std::vector<cplx> moments(dim * dim, 0.0);
  for (std::size_t i = 0; i < k; ++i) moments[i * dim + (k + i)] = 1.0;
  return GaussianBasis(dim, std::move(moments));
}

LinearOperator field_operator(const ModeSet& ms, std::size_t x) {
  check_label(ms, x);
  const double root = std::sqrt(ms.hbar());
  std::vector<PiecewiseHarmonic> coeffs;
  const auto& modes = ms.modes();
  for (const auto& m : modes)
    coeffs.push_back(PiecewiseHarmonic::harmonic({{root * m.amplitudes[x], m.omega}}));
  for (const auto& m : modes)
    coeffs.push_back(PiecewiseHarmonic::harmonic({{root * std::conj(m.amplitudes[x]), -m.omega}}));
  return {mode_basis(ms), std::move(coeffs)};
}

ClassicalCurrent::ClassicalCurrent(std::vector<PiecewiseHarmonic> densities,
                                   std::vector<Impulse> impulses)
    : densities_(std::move(densities)), impulses_(std::move(impulses)) {
  for (const auto& d : densities_) {
    if (!d.is_real(1e-12)) throw ConfigError("current density must be real-valued");
    const auto last = d.piece_count() - 1;
    if (!d.terms(0).empty() || !d.terms(last).empty())
      throw ConfigError("current density must vanish outside a bounded interval");
  }
  for (const auto& i : impulses_) {
    if (!std::isfinite(i.time) || !std::isfinite(i.weight))
      throw ConfigError("impulse time and weight must be finite");
  }
}

bool ClassicalCurrent::empty() const {
  for (const auto& d : densities_)
    for (std::size_t p = 0; p < d.piece_count(); ++p)
      if (!d.terms(p).empty()) return false;
  return impulses_.empty();
}

double classical_response(const ModeSet& ms, const ClassicalCurrent& j, FieldPoint at) {
  check_label(ms, at.label);
  if (j.densities().size() > ms.label_count())
    throw std::out_of_range("current has more labels than the mode set");
  double r = 0.0;
  // Delta_R(tau) = theta(tau) sum_k (i s_k e^{-i w tau} - i s_k* e^{i w tau})
  for (std::size_t l = 0; l < j.densities().size(); ++l) {
    const auto& dens = j.densities()[l];
    cplx acc = 0.0;
    for (const auto& m : ms.modes()) {
      const cplx s = m.amplitudes[at.label] * std::conj(m.amplitudes[l]);
      acc += cplx(0.0, 1.0) * s * retarded_exp(dens, m.omega, at.t) -
             cplx(0.0, 1.0) * std::conj(s) * retarded_exp(dens, -m.omega, at.t);
    }
    r += acc.real();
  }
  for (const auto& imp : j.impulses()) r += imp.weight * delta_R(ms, at.label, imp.label, at.t - imp.time);
  return r;
}

cplx driven_field_tn(const ModeSet& ms, const ClassicalCurrent& j,
                     std::span<const FieldPoint> points) {
  if (points.empty() || points.size() > 2)
    throw std::invalid_argument("driven_field_tn supports one or two field points");
  std::vector<LinearOperator> ops;
  std::vector<double> times;
  cplx classical = 1.0;
  for (const auto& p : points) {
    ops.push_back(field_operator(ms, p.label));
    times.push_back(p.t);
    classical *= classical_response(ms, j, p);
  }
  // Cross terms carry a single free-field factor whose vacuum mean is zero.
  return tn_multi_exact(ops, times).value + classical;
}

}  // namespace tnorder
