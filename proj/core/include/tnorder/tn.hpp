#pragma once

#include <span>
#include <vector>

#include "tnorder/linear_operator.hpp"
#include "tnorder/oscillator.hpp"
#include "tnorder/projector.hpp"
#include "tnorder/quadrature.hpp"
#include "tnorder/schedule.hpp"

namespace tnorder {

enum class TnMethod { exact, kk };
enum class TnPath { rearranged, direct, wick };
/// How single-variable projections are evaluated.
enum class Evaluation { semianalytic, quadrature };

/// A time-normal average with its provenance and an error estimate.
struct TnResult {
  cplx value;
  TnMethod method;
  TnPath path;
  double error_estimate;
};

/// The four two-time vacuum functions a closed-time-loop pair can produce.
enum class Ordering { time_ordered, anti_time_ordered, left_right, right_left };

class OrderedCorrelator {
 public:
  OrderedCorrelator(LinearOperator first, LinearOperator second)
      : first_(std::move(first)), second_(std::move(second)) {}

  /// time_ordered: <T A(t1) B(t2)>, anti_time_ordered: <Tbar A(t1) B(t2)>,
  /// left_right: <A(t1) B(t2)>, right_left: <B(t2) A(t1)>. Equal times
  /// resolve the T and Tbar products to the symmetric mean.
  cplx operator()(Ordering kind, double t1, double t2) const;

 private:
  LinearOperator first_, second_;
};

/// Exact TN pair average via the single-integral rearrangement: for each
/// label the other operator is projected only over times up to the first
/// label's time. Symmetric in (a, t1) <-> (b, t2).
TnResult tn_pair_exact(const LinearOperator& a, const LinearOperator& b, double t1, double t2,
                       Evaluation how = Evaluation::semianalytic,
                       const QuadratureControls& controls = {});

/// Exact TN pair average from the four closed-time-loop terms, each a
/// double projection evaluated by nested principal-value quadrature.
TnResult tn_pair_exact_direct(const LinearOperator& a, const LinearOperator& b, double t1,
                              double t2, const QuadratureControls& controls = {});

/// Kelley-Kleiner resonance approximation: project first, order second.
TnResult tn_pair_kk(const LinearOperator& a, const LinearOperator& b, double t1, double t2,
                    Evaluation how = Evaluation::semianalytic,
                    const QuadratureControls& controls = {});

inline constexpr std::size_t kMaxWickOrder = 8;

/// m-point TN average as the sum over perfect pairings of pair averages.
/// m = 0 gives 1, odd m gives 0; m > 8 throws std::invalid_argument.
TnResult tn_multi_exact(std::span<const LinearOperator> ops, std::span<const double> times,
                        Evaluation how = Evaluation::semianalytic,
                        const QuadratureControls& controls = {});
TnResult tn_multi_kk(std::span<const LinearOperator> ops, std::span<const double> times,
                     Evaluation how = Evaluation::semianalytic,
                     const QuadratureControls& controls = {});

/// Real linear combination of the oscillator's Heisenberg operators,
/// weight_p * p(t) + weight_x * x(t), resolved against a schedule.
struct Observable {
  double weight_p = 1.0;
  double weight_x = 0.0;

  LinearOperator under(const FrequencySchedule& schedule, const Units& units) const;
};

/// |TN(schedule) - TN(other)| for the observables at the given times.
double schedule_sensitivity(std::span<const Observable> obs, std::span<const double> times,
                            const FrequencySchedule& schedule, const FrequencySchedule& other,
                            const Units& units, TnMethod method,
                            Evaluation how = Evaluation::semianalytic);

/// Exact-TN sensitivity to a schedule change strictly after max(times).
/// Throws std::invalid_argument if the schedules differ at or before it.
double no_peep_check(std::span<const Observable> obs, std::span<const double> times,
                     const FrequencySchedule& schedule, const FrequencySchedule& modified,
                     const Units& units = {}, Evaluation how = Evaluation::semianalytic);

}  // namespace tnorder
