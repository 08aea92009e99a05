#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tnorder/linear_operator.hpp"
#include "tnorder/piecewise_harmonic.hpp"

namespace tnorder {

/// One field mode. amplitudes[l] is the mode function at spatial label l,
/// normalised so that E(l, t) = sum_k sqrt(hbar) (u_k(l) e^{-i w_k t} a_k + h.c.).
struct Mode {
  double omega;
  std::vector<cplx> amplitudes;
};

class ModeSet {
 public:
  /// Throws ConfigError if empty, if any omega <= 0, if hbar <= 0, or if
  /// the modes disagree on the number of labels.
  ModeSet(std::vector<Mode> modes, double hbar = 1.0);

  const std::vector<Mode>& modes() const { return modes_; }
  double hbar() const { return hbar_; }
  std::size_t label_count() const { return modes_.front().amplitudes.size(); }

 private:
  std::vector<Mode> modes_;
  double hbar_;
};

/// Kubo response -2 theta(tau) Im sum_k u_k(x) u_k(x')* e^{-i w_k tau}.
/// Zero for tau <= 0.
double delta_R(const ModeSet& ms, std::size_t x, std::size_t x_prime, double tau);

/// <[E(x, t), E(x', t')]> summed mode by mode from [a, a+] = 1.
cplx field_commutator(const ModeSet& ms, std::size_t x, double t, std::size_t x_prime,
                      double t_prime);

/// |<[E(x,t), E(x',t')]> + i hbar (Delta_R(x,x',t-t') - Delta_R(x',x,t'-t))|
double wave_quantization_check(const ModeSet& ms, double t, double t_prime, std::size_t x = 0,
                               std::size_t x_prime = 0);

/// Basis (a_1..a_K, a_1+..a_K+) with vacuum moments <a_k a_l+> = delta_kl.
GaussianBasis mode_basis(const ModeSet& ms);
/// Free field E(x, t) over mode_basis.
LinearOperator field_operator(const ModeSet& ms, std::size_t x);

struct Impulse {
  std::size_t label;
  double time;
  double weight;
};

/// A c-number source: a real piecewise-harmonic current per label, zero
/// outside a bounded interval, plus point impulses.
class ClassicalCurrent {
 public:
  ClassicalCurrent() = default;
  /// Throws ConfigError if any density is complex-valued or does not vanish
  /// on both unbounded pieces.
  ClassicalCurrent(std::vector<PiecewiseHarmonic> densities, std::vector<Impulse> impulses);

  const std::vector<PiecewiseHarmonic>& densities() const { return densities_; }
  const std::vector<Impulse>& impulses() const { return impulses_; }
  bool empty() const;

 private:
  std::vector<PiecewiseHarmonic> densities_;
  std::vector<Impulse> impulses_;
};

struct FieldPoint {
  std::size_t label;
  double t;
};

/// sum_l int Delta_R(x, l, t - t') J_l(t') dt', in closed form.
double classical_response(const ModeSet& ms, const ClassicalCurrent& j, FieldPoint at);

/// TN average of E_H(p_1) ... E_H(p_m) with E_H = E_free + classical
/// response; m must be 1 or 2 (std::invalid_argument otherwise). The free
/// part is evaluated by the exact TN engine, not assumed to vanish.
cplx driven_field_tn(const ModeSet& ms, const ClassicalCurrent& j,
                     std::span<const FieldPoint> points);

}  // namespace tnorder
