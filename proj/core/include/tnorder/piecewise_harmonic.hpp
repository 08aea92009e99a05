#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "tnorder/units.hpp"

namespace tnorder {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One term c * exp(-i * omega * t). Positive omega is frequency-positive.
struct HarmonicTerm {
  cplx coeff;
  double omega;
};

/// A function on the real line given per interval as a finite sum of
/// complex exponentials.
///
/// Pieces are the open intervals (-inf, b0), (b0, b1), ..., (bn, +inf).
/// Within a piece, terms carry pairwise distinct frequencies; an empty
/// piece is the zero function. At a breakpoint the function takes the mean
/// of its one-sided limits.
class PiecewiseHarmonic {
 public:
  /// The zero function.
  PiecewiseHarmonic();

  /// Throws ConfigError if breakpoints are not finite and strictly
  /// increasing or if pieces.size() != breakpoints.size() + 1.
  PiecewiseHarmonic(std::vector<double> breakpoints,
                    std::vector<std::vector<HarmonicTerm>> pieces);

  /// Single piece covering the whole line.
  static PiecewiseHarmonic harmonic(std::vector<HarmonicTerm> terms);
  static PiecewiseHarmonic constant(cplx value);
  /// amplitude * cos(omega * t + phase) on the whole line.
  static PiecewiseHarmonic cosine(double amplitude, double omega, double phase = 0.0);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::size_t piece_count() const { return pieces_.size(); }
  std::span<const HarmonicTerm> terms(std::size_t piece) const { return pieces_[piece]; }
  double piece_lower(std::size_t piece) const;
  double piece_upper(std::size_t piece) const;

  /// Index of the piece containing t; for a breakpoint, the piece to its right.
  std::size_t piece_index(double t) const;

  cplx operator()(double t) const;
  cplx left_limit(double t) const;
  cplx right_limit(double t) const;
  /// right_limit(t) - left_limit(t).
  cplx jump(double t) const;

  bool is_breakpoint(double t) const;

  /// Conjugate-pairing test: every (c, w) has a partner (c*, -w).
  bool is_real(double tol = 1e-13) const;

  /// Largest |omega| and smallest nonzero |omega| over all pieces; 0 if none.
  double max_frequency() const;
  double min_nonzero_frequency() const;
  /// Same, restricted to the two unbounded pieces.
  double min_nonzero_tail_frequency() const;

  /// Zero-frequency coefficient of the first / last piece.
  cplx constant_at_minus_infinity() const;
  cplx constant_at_plus_infinity() const;

  PiecewiseHarmonic conj() const;
  /// Function equal to *this on (-inf, upper) and zero beyond.
  PiecewiseHarmonic truncated_above(double upper) const;
  /// Function equal to *this on (lower, +inf) and zero before.
  PiecewiseHarmonic truncated_below(double lower) const;
  /// Adds a breakpoint without changing the function.
  PiecewiseHarmonic with_breakpoint(double t) const;

  PiecewiseHarmonic& operator+=(const PiecewiseHarmonic& rhs);
  PiecewiseHarmonic& operator*=(cplx s);
  friend PiecewiseHarmonic operator+(PiecewiseHarmonic a, const PiecewiseHarmonic& b) {
    return a += b;
  }
  friend PiecewiseHarmonic operator-(PiecewiseHarmonic a, const PiecewiseHarmonic& b) {
    PiecewiseHarmonic nb = b;
    nb *= -1.0;
    return a += nb;
  }
  friend PiecewiseHarmonic operator*(cplx s, PiecewiseHarmonic f) { return f *= s; }

 private:
  static cplx eval_terms(std::span<const HarmonicTerm> terms, double t);
  static std::vector<HarmonicTerm> canonical(std::vector<HarmonicTerm> terms);

  std::vector<double> breakpoints_;
  std::vector<std::vector<HarmonicTerm>> pieces_;
};

}  // namespace tnorder
