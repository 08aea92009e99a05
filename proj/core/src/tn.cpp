#include "tnorder/tn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tnorder/errors.hpp"

namespace tnorder {

namespace {

using Proj = std::vector<ValueWithError>;

cplx ordered_mean(cplx later_first, cplx earlier_first, double t1, double t2, bool anti) {
  if (t1 == t2) return 0.5 * (later_first + earlier_first);
  bool first_is_later = t1 > t2;
  if (anti) first_is_later = !first_is_later;
  return first_is_later ? later_first : earlier_first;
}

// Projection of every coefficient of op at time t.
Proj project_coeffs(const LinearOperator& op, ProjectorSign s, double t, Evaluation how,
                    const QuadratureControls& controls) {
  Proj out;
  out.reserve(op.coeffs.size());
  for (const auto& c : op.coeffs) {
    if (how == Evaluation::semianalytic) {
      out.push_back(freq_part(c, s).evaluate(t));
    } else {
      auto r = pv_project(c, s, t, controls);
      out.push_back({r.value, r.error});
    }
  }
  return out;
}

struct Bilinear {
  cplx value;
  double error;
};

Bilinear contract(const GaussianBasis& basis, const Proj& u, const Proj& v) {
  Bilinear out{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      const cplx m = basis.moment(i, j);
      out.value += u[i].value * m * v[j].value;
      out.error += std::abs(m) * (u[i].error * std::abs(v[j].value) +
                                  std::abs(u[i].value) * v[j].error + u[i].error * v[j].error);
    }
  }
  return out;
}

ValueWithError truncated(const PiecewiseHarmonic& f, ProjectorSign s, double t, double upper,
                         Evaluation how, const QuadratureControls& controls) {
  if (how == Evaluation::semianalytic) return truncated_freq_part(f, s, t, upper);
  auto r = pv_project_truncated(f, s, t, upper, controls);
  return {r.value, r.error};
}

// int_{-inf}^{ta} dt' [d+(tb - t') <A(ta) B(t')> + d-(tb - t') <B(t') A(ta)>]
ValueWithError half_loop(const LinearOperator& a, double ta, const LinearOperator& b, double tb,
                         Evaluation how, const QuadratureControls& controls) {
  auto row = two_point_row(a, ta, b);
  auto col = two_point_column(b, a, ta);
  auto plus = truncated(row, ProjectorSign::positive, tb, ta, how, controls);
  auto minus = truncated(col, ProjectorSign::negative, tb, ta, how, controls);
  return {plus.value + minus.value, plus.error + minus.error};
}

void require_same_basis(const LinearOperator& a, const LinearOperator& b) {
  if (!(a.basis == b.basis)) throw std::invalid_argument("operators act on different bases");
}

using PairFn = TnResult (*)(const LinearOperator&, const LinearOperator&, double, double,
                            Evaluation, const QuadratureControls&);

struct PairTable {
  std::vector<cplx> value;
  std::vector<double> error;
  std::size_t n;
};

// Sum over perfect pairings of the first-unpaired index with each later one.
void pairings(const PairTable& table, std::vector<bool>& used, cplx prod, double err,
              cplx& total, double& total_err) {
  std::size_t i = 0;
  while (i < table.n && used[i]) ++i;
  if (i == table.n) {
    total += prod;
    total_err += err;
    return;
  }
  used[i] = true;
  for (std::size_t j = i + 1; j < table.n; ++j) {
    if (used[j]) continue;
    used[j] = true;
    const cplx v = table.value[i * table.n + j];
    const double e = table.error[i * table.n + j];
    pairings(table, used, prod * v, err * std::abs(v) + std::abs(prod) * e + err * e, total,
             total_err);
    used[j] = false;
  }
  used[i] = false;
}

TnResult multi(std::span<const LinearOperator> ops, std::span<const double> times, PairFn pair,
               TnMethod method, Evaluation how, const QuadratureControls& controls) {
  if (ops.size() != times.size())
    throw std::invalid_argument("operator and time lists differ in length");
  const std::size_t m = ops.size();
  if (m > kMaxWickOrder) throw std::invalid_argument("at most 8 operators are supported");
  if (m == 0) return {1.0, method, TnPath::wick, 0.0};
  if (m % 2 == 1) return {0.0, method, TnPath::wick, 0.0};
  for (std::size_t i = 1; i < m; ++i) require_same_basis(ops[0], ops[i]);

  PairTable table{std::vector<cplx>(m * m), std::vector<double>(m * m), m};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      auto r = pair(ops[i], ops[j], times[i], times[j], how, controls);
      table.value[i * m + j] = r.value;
      table.error[i * m + j] = r.error_estimate;
    }
  }
  std::vector<bool> used(m, false);
  cplx total = 0.0;
  double err = 0.0;
  pairings(table, used, 1.0, 0.0, total, err);
  return {total, method, TnPath::wick, err};
}

}  // namespace

cplx OrderedCorrelator::operator()(Ordering kind, double t1, double t2) const {
  const cplx ab = two_point(first_, second_, t1, t2);
  const cplx ba = two_point(second_, first_, t2, t1);
  switch (kind) {
    case Ordering::left_right:
      return ab;
    case Ordering::right_left:
      return ba;
    case Ordering::time_ordered:
      return ordered_mean(ab, ba, t1, t2, false);
    case Ordering::anti_time_ordered:
      return ordered_mean(ab, ba, t1, t2, true);
  }
  return 0.0;
}

TnResult tn_pair_exact(const LinearOperator& a, const LinearOperator& b, double t1, double t2,
                       Evaluation how, const QuadratureControls& controls) {
  require_same_basis(a, b);
  auto first = half_loop(a, t1, b, t2, how, controls);
  auto second = half_loop(b, t2, a, t1, how, controls);
  return {first.value + second.value, TnMethod::exact, TnPath::rearranged,
          first.error + second.error};
}

TnResult tn_pair_kk(const LinearOperator& a, const LinearOperator& b, double t1, double t2,
                    Evaluation how, const QuadratureControls& controls) {
  require_same_basis(a, b);
  const auto a_plus = project_coeffs(a, ProjectorSign::positive, t1, how, controls);
  const auto a_minus = project_coeffs(a, ProjectorSign::negative, t1, how, controls);
  const auto b_plus = project_coeffs(b, ProjectorSign::positive, t2, how, controls);
  const auto b_minus = project_coeffs(b, ProjectorSign::negative, t2, how, controls);
  const auto& basis = a.basis;

  auto lr = contract(basis, a_minus, b_plus);
  auto rl = contract(basis, b_minus, a_plus);
  auto pp_ab = contract(basis, a_plus, b_plus);
  auto pp_ba = contract(basis, b_plus, a_plus);
  auto mm_ab = contract(basis, a_minus, b_minus);
  auto mm_ba = contract(basis, b_minus, a_minus);

  const cplx t_plus = ordered_mean(pp_ab.value, pp_ba.value, t1, t2, false);
  const cplx tbar_minus = ordered_mean(mm_ab.value, mm_ba.value, t1, t2, true);
  const double err = lr.error + rl.error + std::max(pp_ab.error, pp_ba.error) +
                     std::max(mm_ab.error, mm_ba.error);
  return {lr.value + rl.value + t_plus + tbar_minus, TnMethod::kk, TnPath::rearranged, err};
}

TnResult tn_multi_exact(std::span<const LinearOperator> ops, std::span<const double> times,
                        Evaluation how, const QuadratureControls& controls) {
  return multi(ops, times, &tn_pair_exact, TnMethod::exact, how, controls);
}

TnResult tn_multi_kk(std::span<const LinearOperator> ops, std::span<const double> times,
                     Evaluation how, const QuadratureControls& controls) {
  return multi(ops, times, &tn_pair_kk, TnMethod::kk, how, controls);
}

LinearOperator Observable::under(const FrequencySchedule& schedule, const Units& units) const {
  auto p = heisenberg_momentum(schedule, units);
  auto x = heisenberg_position(schedule, units);
  const cplx wp = weight_p, wx = weight_x;
  QuadratureOperator combined{wp * p.coeff_p + wx * x.coeff_p, wp * p.coeff_x + wx * x.coeff_x,
                              units};
  return combined.as_linear();
}

double schedule_sensitivity(std::span<const Observable> obs, std::span<const double> times,
                            const FrequencySchedule& schedule, const FrequencySchedule& other,
                            const Units& units, TnMethod method, Evaluation how) {
  std::vector<LinearOperator> first, second;
  for (const auto& o : obs) {
    first.push_back(o.under(schedule, units));
    second.push_back(o.under(other, units));
  }
  auto run = method == TnMethod::exact ? &tn_multi_exact : &tn_multi_kk;
  const cplx a = run(first, times, how, QuadratureControls{}).value;
  const cplx b = run(second, times, how, QuadratureControls{}).value;
  return std::abs(a - b);
}

double no_peep_check(std::span<const Observable> obs, std::span<const double> times,
                     const FrequencySchedule& schedule, const FrequencySchedule& modified,
                     const Units& units, Evaluation how) {
  if (times.empty()) return 0.0;
  const double latest = *std::max_element(times.begin(), times.end());
  if (first_difference(schedule, modified) <= latest)
    throw std::invalid_argument("schedules differ at or before the latest observation time");
  return schedule_sensitivity(obs, times, schedule, modified, units, TnMethod::exact, how);
}

}  // namespace tnorder
