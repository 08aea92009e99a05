#include "tnorder/piecewise_harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "tnorder/errors.hpp"

namespace tnorder {

namespace {

bool same_frequency(double a, double b) {
  return std::abs(a - b) <= 1e-14 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

PiecewiseHarmonic::PiecewiseHarmonic() : pieces_(1) {}

PiecewiseHarmonic::PiecewiseHarmonic(std::vector<double> breakpoints,
                                     std::vector<std::vector<HarmonicTerm>> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.size() != breakpoints_.size() + 1) {
    throw ConfigError("piecewise harmonic: need exactly one more piece than breakpoints");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i])) {
      throw ConfigError("piecewise harmonic: breakpoints must be finite");
    }
    if (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1])) {
      throw ConfigError("piecewise harmonic: breakpoints must be strictly increasing");
    }
  }
  for (auto& p : pieces_) {
    for (const auto& term : p) {
      if (!std::isfinite(term.omega) || !std::isfinite(term.coeff.real()) ||
          !std::isfinite(term.coeff.imag())) {
        throw ConfigError("piecewise harmonic: non-finite term");
      }
    }
    p = canonical(std::move(p));
  }
}

PiecewiseHarmonic PiecewiseHarmonic::harmonic(std::vector<HarmonicTerm> terms) {
  return PiecewiseHarmonic({}, {std::move(terms)});
}

PiecewiseHarmonic PiecewiseHarmonic::constant(cplx value) { return harmonic({{value, 0.0}}); }

PiecewiseHarmonic PiecewiseHarmonic::cosine(double amplitude, double omega, double phase) {
  // a cos(w t + phi) = a/2 e^{-i phi} e^{-i w t} + a/2 e^{i phi} e^{i w t}
  const cplx half_phase = std::polar(amplitude / 2.0, phase);
  return harmonic({{std::conj(half_phase), omega}, {half_phase, -omega}});
}

std::vector<HarmonicTerm> PiecewiseHarmonic::canonical(std::vector<HarmonicTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const HarmonicTerm& a, const HarmonicTerm& b) { return a.omega < b.omega; });
  std::vector<HarmonicTerm> out;
  for (const auto& term : terms) {
    if (!out.empty() && same_frequency(out.back().omega, term.omega)) {
      out.back().coeff += term.coeff;
    } else {
      out.push_back(term);
    }
  }
  std::erase_if(out, [](const HarmonicTerm& t) { return t.coeff == cplx(0.0, 0.0); });
  return out;
}

double PiecewiseHarmonic::piece_lower(std::size_t piece) const {
  return piece == 0 ? -kInf : breakpoints_[piece - 1];
}

double PiecewiseHarmonic::piece_upper(std::size_t piece) const {
  return piece == breakpoints_.size() ? kInf : breakpoints_[piece];
}

std::size_t PiecewiseHarmonic::piece_index(double t) const {
  return static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) - breakpoints_.begin());
}

cplx PiecewiseHarmonic::eval_terms(std::span<const HarmonicTerm> terms, double t) {
  cplx sum = 0.0;
  for (const auto& term : terms) {
    sum += term.coeff * std::polar(1.0, -term.omega * t);
  }
  return sum;
}

cplx PiecewiseHarmonic::operator()(double t) const {
  if (is_breakpoint(t)) {
    return 0.5 * (left_limit(t) + right_limit(t));
  }
  return eval_terms(pieces_[piece_index(t)], t);
}

cplx PiecewiseHarmonic::right_limit(double t) const {
  return eval_terms(pieces_[piece_index(t)], t);
}

cplx PiecewiseHarmonic::left_limit(double t) const {
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return eval_terms(pieces_[static_cast<std::size_t>(it - breakpoints_.begin())], t);
}

cplx PiecewiseHarmonic::jump(double t) const { return right_limit(t) - left_limit(t); }

bool PiecewiseHarmonic::is_breakpoint(double t) const {
  return std::binary_search(breakpoints_.begin(), breakpoints_.end(), t);
}

bool PiecewiseHarmonic::is_real(double tol) const {
  for (const auto& piece : pieces_) {
    for (const auto& term : piece) {
      auto partner = std::find_if(piece.begin(), piece.end(), [&](const HarmonicTerm& o) {
        return same_frequency(o.omega, -term.omega);
      });
      const cplx expected = std::conj(term.coeff);
      if (partner == piece.end()) {
        if (std::abs(term.coeff) > tol) return false;
      } else if (std::abs(partner->coeff - expected) > tol * std::max(1.0, std::abs(expected))) {
        return false;
      }
    }
  }
  return true;
}

double PiecewiseHarmonic::max_frequency() const {
  double w = 0.0;
  for (const auto& piece : pieces_) {
    for (const auto& term : piece) w = std::max(w, std::abs(term.omega));
  }
  return w;
}

namespace {

double min_nonzero(std::span<const HarmonicTerm> terms, double current) {
  for (const auto& term : terms) {
    const double w = std::abs(term.omega);
    if (w > 0.0 && (current == 0.0 || w < current)) current = w;
  }
  return current;
}

cplx zero_frequency_coeff(std::span<const HarmonicTerm> terms) {
  for (const auto& term : terms) {
    if (term.omega == 0.0) return term.coeff;
  }
  return 0.0;
}

}  // namespace

double PiecewiseHarmonic::min_nonzero_frequency() const {
  double w = 0.0;
  for (const auto& piece : pieces_) w = min_nonzero(piece, w);
  return w;
}

double PiecewiseHarmonic::min_nonzero_tail_frequency() const {
  return min_nonzero(pieces_.back(), min_nonzero(pieces_.front(), 0.0));
}

cplx PiecewiseHarmonic::constant_at_minus_infinity() const {
  return zero_frequency_coeff(pieces_.front());
}

cplx PiecewiseHarmonic::constant_at_plus_infinity() const {
  return zero_frequency_coeff(pieces_.back());
}

PiecewiseHarmonic PiecewiseHarmonic::conj() const {
  PiecewiseHarmonic out = *this;
  for (auto& piece : out.pieces_) {
    for (auto& term : piece) {
      term.coeff = std::conj(term.coeff);
      term.omega = -term.omega;
    }
    piece = canonical(std::move(piece));
  }
  return out;
}

PiecewiseHarmonic PiecewiseHarmonic::with_breakpoint(double t) const {
  if (!std::isfinite(t) || is_breakpoint(t)) return *this;
  const std::size_t k = piece_index(t);
  PiecewiseHarmonic out = *this;
  out.breakpoints_.insert(out.breakpoints_.begin() + static_cast<std::ptrdiff_t>(k), t);
  out.pieces_.insert(out.pieces_.begin() + static_cast<std::ptrdiff_t>(k), pieces_[k]);
  return out;
}

PiecewiseHarmonic PiecewiseHarmonic::truncated_above(double upper) const {
  if (upper == kInf) return *this;
  PiecewiseHarmonic out = with_breakpoint(upper);
  const std::size_t k = out.piece_index(upper);  // first piece above upper
  for (std::size_t i = k; i < out.pieces_.size(); ++i) out.pieces_[i].clear();
  return out;
}

PiecewiseHarmonic PiecewiseHarmonic::truncated_below(double lower) const {
  if (lower == -kInf) return *this;
  PiecewiseHarmonic out = with_breakpoint(lower);
  const std::size_t k = out.piece_index(lower);
  for (std::size_t i = 0; i < k; ++i) out.pieces_[i].clear();
  return out;
}

PiecewiseHarmonic& PiecewiseHarmonic::operator+=(const PiecewiseHarmonic& rhs) {
  PiecewiseHarmonic a = *this;
  PiecewiseHarmonic b = rhs;
  for (double t : rhs.breakpoints_) a = a.with_breakpoint(t);
  for (double t : breakpoints_) b = b.with_breakpoint(t);
  for (std::size_t i = 0; i < a.pieces_.size(); ++i) {
    auto& dst = a.pieces_[i];
    dst.insert(dst.end(), b.pieces_[i].begin(), b.pieces_[i].end());
    dst = canonical(std::move(dst));
  }
  *this = std::move(a);
  return *this;
}

PiecewiseHarmonic& PiecewiseHarmonic::operator*=(cplx s) {
  for (auto& piece : pieces_) {
    for (auto& term : piece) term.coeff *= s;
    piece = canonical(std::move(piece));
  }
  return *this;
}

}  // namespace tnorder
