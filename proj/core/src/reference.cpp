#include "qtrack/reference.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "qtrack/errors.hpp"

namespace qtrack {

ReferenceSpec::ReferenceSpec(int delta0, double a0, std::vector<SinusoidTerm> terms,
                             double period)
    : delta0_(delta0), a0_(a0), terms_(std::move(terms)), period_(period) {
  if (delta0_ != 0 && delta0_ != 1)
    throw Error("ReferenceSpec: delta0 must be 0 or 1");
  if (!(period_ > 0.0)) throw Error("ReferenceSpec: period must be positive");
  if (terms_.empty())
    throw Error("ReferenceSpec: at least one sinusoid is required");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const SinusoidTerm& term = terms_[i];
    if (term.amplitude == 0.0)
      throw Error("ReferenceSpec: sinusoid amplitudes must be nonzero");
    if (!(term.omega > 0.0))
      throw Error("ReferenceSpec: sinusoid frequencies must be positive");
    const double cycles = term.omega * period_ / (2.0 * std::numbers::pi);
    if (std::abs(cycles - std::round(cycles)) > 1e-9 * std::max(1.0, cycles))
      throw Error("ReferenceSpec: every frequency must complete an integer number of cycles per period");
    for (std::size_t k = 0; k < i; ++k) {
      if (std::abs(terms_[k].omega - term.omega) <=
          1e-9 * std::max(terms_[k].omega, term.omega))
        throw Error("ReferenceSpec: sinusoid frequencies must be distinct");
    }
  }
}

double ReferenceSpec::amplitude_scale() const {
  double s = std::abs(static_cast<double>(delta0_) * a0_);
  for (const auto& term : terms_) s += std::abs(term.amplitude);
  return s;
}

double ReferenceSpec::eval(double t) const {
  double r = static_cast<double>(delta0_) * a0_;
  for (const auto& term : terms_)
    r += term.amplitude * std::sin(term.omega * t + term.phase);
  return r;
}

double ReferenceSpec::eval_derivative(double t) const {
  double v = 0.0;
  for (const auto& term : terms_)
    v += term.amplitude * term.omega * std::cos(term.omega * t + term.phase);
  return v;
}

Eigen::RowVectorXd ReferenceSpec::basis_row(double t) const {
  Eigen::RowVectorXd row(2 * harmonic_count() + 1);
  row(0) = 1.0;
  for (int i = 0; i < harmonic_count(); ++i) {
    const double wt = terms_[static_cast<std::size_t>(i)].omega * t;
    row(2 * i + 1) = std::sin(wt);
    row(2 * i + 2) = std::cos(wt);
  }
  return row;
}

Eigen::VectorXd ReferenceSpec::rho() const {
  Eigen::VectorXd rho(2 * harmonic_count() + 1);
  rho(0) = static_cast<double>(delta0_) * a0_;
  for (int i = 0; i < harmonic_count(); ++i) {
    const SinusoidTerm& term = terms_[static_cast<std::size_t>(i)];
    rho(2 * i + 1) = term.amplitude * std::cos(term.phase);
    rho(2 * i + 2) = term.amplitude * std::sin(term.phase);
  }
  return rho;
}

ReferenceSpec ReferenceSpec::with_center(double new_a0) const {
  ReferenceSpec copy = *this;
  copy.a0_ = new_a0;
  return copy;
}

CrossingMatrix find_crossings(const ReferenceSpec& ref, const UniformQuantizer& q) {
  constexpr int kGrid = 4096;
  const double T = ref.period();
  const double t_tol = T * 1e-10;

  const auto region_at = [&](double t) { return q.region_index(ref.eval(t)); };

  CrossingMatrix result;
  for (int k = 0; k < kGrid; ++k) {
    double a = T * static_cast<double>(k) / kGrid;
    double b = T * static_cast<double>(k + 1) / kGrid;
    std::int64_t ja = region_at(a);
    const std::int64_t jb = region_at(b);
    if (ja == jb) continue;

    // Bisect to the first region change in [a, b].
    while (b - a > t_tol) {
      const double mid = 0.5 * (a + b);
      if (region_at(mid) == ja) {
        a = mid;
      } else {
        b = mid;
      }
    }
    const double t_c = 0.5 * (a + b);
    const double level = q.crossing_value(region_at(a), region_at(b));

    // The grid can hand the same crossing to two intervals when it sits on
    // a grid point; merge instants closer than 2 * t_tol.
    if (!result.times.empty() && t_c - result.times.back() < 2.0 * t_tol) continue;
    result.times.push_back(t_c);
    result.levels.push_back(level);
  }
  // Wraparound duplicate: a crossing at t ~ 0 seen again at t ~ T.
  if (result.times.size() >= 2 &&
      (result.times.front() + T) - result.times.back() < 2.0 * t_tol) {
    result.times.pop_back();
    result.levels.pop_back();
  }

  if (result.times.empty())
    throw NoCrossings("find_crossings: reference stays inside one quantization region");

  result.rows.resize(static_cast<Eigen::Index>(result.times.size()),
                     2 * ref.harmonic_count() + 1);
  for (std::size_t k = 0; k < result.times.size(); ++k)
    result.rows.row(static_cast<Eigen::Index>(k)) = ref.basis_row(result.times[k]);
  return result;
}

RecoverabilityReport reference_is_recoverable(const ReferenceSpec& ref,
                                              const UniformQuantizer& q) {
  RecoverabilityReport report;
  report.required = 2 * ref.harmonic_count() + 1;

  CrossingMatrix crossings;
  try {
    crossings = find_crossings(ref, q);
  } catch (const NoCrossings&) {
    return report;  // p = 0: nothing pins the reference down.
  }
  report.crossing_count = crossings.count();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(crossings.rows);
  report.singular_values = svd.singularValues();
  report.rank_tolerance = report.singular_values(0) * 1e-8 *
                          std::max(report.crossing_count, report.required);
  for (Eigen::Index i = 0; i < report.singular_values.size(); ++i)
    if (report.singular_values(i) > report.rank_tolerance) ++report.rank;

  report.recoverable = report.crossing_count >= report.required &&
                       report.rank == report.required;
  return report;
}

}  // namespace qtrack
