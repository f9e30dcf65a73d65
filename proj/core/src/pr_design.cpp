#include "qtrack/pr_design.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "qtrack/errors.hpp"

namespace qtrack {
namespace {

constexpr double kPrTol = 1e-9;          // sweep floor for Re{H(jw)}
constexpr double kAxisTol = 1e-7;        // relative: pole counts as imaginary-axis
constexpr double kClusterTol = 1e-6;     // relative: poles count as coincident
constexpr double kResidueTol = 1e-3;     // relative: residue must be real/nonnegative

bool on_imaginary_axis(const std::complex<double>& p) {
  return std::abs(p.real()) <= kAxisTol * (1.0 + std::abs(p));
}

}  // namespace

void PRComposition::validate() const {
  if (delta0 != 0 && delta0 != 1)
    throw Error("PRComposition: delta0 must be 0 or 1");
  if (k0 < 0.0)
    throw ConstraintViolation(1, "PRComposition: integrator gain k0 must be >= 0");
  for (const auto& t : resonant) {
    if (t.gain < 0.0)
      throw ConstraintViolation(1, "PRComposition: resonant gain must be >= 0");
    if (!(t.omega > 0.0))
      throw Error("PRComposition: resonant frequency must be positive");
  }
  for (const auto& t : first_order) {
    if (t.gain < 0.0)
      throw ConstraintViolation(1, "PRComposition: first-order gain must be >= 0");
    if (!(t.pole > 0.0))
      throw ConstraintViolation(2, "PRComposition: first-order pole must be > 0");
  }
  for (const auto& t : second_order) {
    if (t.gain < 0.0)
      throw ConstraintViolation(1, "PRComposition: second-order gain must be >= 0");
    if (!(t.c > 0.0) || !(t.d > 0.0))
      throw ConstraintViolation(3, "PRComposition: second-order c and d must be > 0");
    if (t.zero < 0.0 || t.zero > t.c)
      throw ConstraintViolation(3, "PRComposition: second-order zero must satisfy 0 <= zero <= c");
  }
}

TransferFunction PRComposition::compose() const {
  validate();
  TransferFunction h;  // zero
  if (delta0 == 1 && k0 > 0.0)
    h = h + TransferFunction(Polynomial{k0}, Polynomial{0.0, 1.0});
  for (const auto& t : resonant) {
    if (t.gain == 0.0) continue;
    h = h + TransferFunction(Polynomial{0.0, t.gain},
                             Polynomial{t.omega * t.omega, 0.0, 1.0});
  }
  for (const auto& t : first_order) {
    if (t.gain == 0.0) continue;
    h = h + TransferFunction(Polynomial{t.gain}, Polynomial{t.pole, 1.0});
  }
  for (const auto& t : second_order) {
    if (t.gain == 0.0) continue;
    h = h + TransferFunction(Polynomial{t.gain * t.zero, t.gain},
                             Polynomial{t.d, t.c, 1.0});
  }
  return h;
}

std::vector<double> default_pr_sweep(const TransferFunction& h) {
  const TransferFunction hr = h.reduced();
  std::vector<std::complex<double>> ps = hr.poles();
  std::vector<std::complex<double>> zs;
  if (hr.num().degree() >= 1) zs = hr.zeros();

  double w_min = std::numeric_limits<double>::infinity();
  double w_max = 0.0;
  std::vector<double> axis_freqs;
  const auto absorb = [&](const std::complex<double>& p) {
    const double mag = std::abs(p);
    if (mag > 0.0) {
      w_min = std::min(w_min, mag);
      w_max = std::max(w_max, mag);
    }
  };
  for (const auto& p : ps) {
    absorb(p);
    if (on_imaginary_axis(p) && p.imag() > 0.0) axis_freqs.push_back(p.imag());
  }
  for (const auto& z : zs) absorb(z);
  if (!(w_max > 0.0)) {
    w_min = 1.0;
    w_max = 1.0;
  }

  std::vector<double> sweep;
  sweep.reserve(10000 + axis_freqs.size() * 100);
  const double lo = std::log10(1e-3 * w_min);
  const double hi = std::log10(1e3 * w_max);
  for (int i = 0; i < 10000; ++i)
    sweep.push_back(std::pow(10.0, lo + (hi - lo) * i / 9999.0));

  // Linear refinement bracketing each lightly damped pole, staying outside
  // the exclusion radius where evaluation has no digits left.
  for (double w0 : axis_freqs) {
    const double span = 1e-3 * w0;
    const double excl = 1e-6 * w0;
    for (int i = 0; i < 50; ++i) {
      const double offset = excl + (span - excl) * i / 49.0;
      sweep.push_back(w0 - offset);
      sweep.push_back(w0 + offset);
    }
  }
  std::sort(sweep.begin(), sweep.end());
  return sweep;
}

namespace {

struct PoleClassification {
  std::vector<std::complex<double>> all;
  // Representative imaginary-axis poles with Im >= 0, plus multiplicity.
  struct AxisPole {
    std::complex<double> location;
    int multiplicity = 1;
  };
  std::vector<AxisPole> axis;
  bool any_rhp = false;
};

PoleClassification classify_poles(const std::vector<std::complex<double>>& poles) {
  PoleClassification out;
  out.all = poles;
  std::vector<bool> grouped(poles.size(), false);
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const auto& p = poles[i];
    if (p.real() > kAxisTol * (1.0 + std::abs(p))) out.any_rhp = true;
    if (!on_imaginary_axis(p) || p.imag() < 0.0 || grouped[i]) continue;
    PoleClassification::AxisPole ap{p, 1};
    grouped[i] = true;
    for (std::size_t k = i + 1; k < poles.size(); ++k) {
      if (grouped[k]) continue;
      if (std::abs(poles[k] - p) <= kClusterTol * (1.0 + std::abs(p))) {
        grouped[k] = true;
        ++ap.multiplicity;
      }
    }
    out.axis.push_back(ap);
  }
  return out;
}

/// Residue of a simple pole, num(p) / den'(p).  Evaluating the limit
/// (s - p) H(s) off the pole instead would divide the root-finding error by
/// the offset and turn a 1e-9 eigenvalue perturbation into percent-level
/// contamination; the derivative formula keeps the error at the order of the
/// root error itself.
std::complex<double> residue_at(const TransferFunction& h,
                                const std::complex<double>& pole) {
  return h.num().eval(pole) / h.den().derivative().eval(pole);
}

}  // namespace

PositiveRealReport check_positive_real(const TransferFunction& h) {
  const std::vector<double> sweep = default_pr_sweep(h);
  return check_positive_real(h, sweep);
}

PositiveRealReport check_positive_real(const TransferFunction& h,
                                       std::span<const double> sweep) {
  PositiveRealReport report;
  const TransferFunction hr = h.reduced();
  if (hr.is_zero()) {
    // Re{0} == 0 everywhere: (weakly) positive real.
    report.positive_real = true;
    report.poles_in_closed_left_half_plane = true;
    report.imaginary_axis_poles_simple = true;
    report.residues_nonnegative = true;
    return report;
  }

  const PoleClassification cls = classify_poles(hr.poles());
  report.poles_in_closed_left_half_plane = !cls.any_rhp;

  report.imaginary_axis_poles_simple = true;
  for (const auto& ap : cls.axis)
    if (ap.multiplicity > 1) report.imaginary_axis_poles_simple = false;

  report.residues_nonnegative = true;
  if (report.imaginary_axis_poles_simple) {
    for (const auto& ap : cls.axis) {
      const std::complex<double> res = residue_at(hr, ap.location);
      const double scale = 1.0 + std::abs(res);
      if (res.real() < -kResidueTol * scale ||
          std::abs(res.imag()) > kResidueTol * scale)
        report.residues_nonnegative = false;
    }
  } else {
    report.residues_nonnegative = false;
  }

  report.min_real_part = std::numeric_limits<double>::infinity();
  bool sweep_ok = true;
  for (double w : sweep) {
    double re;
    try {
      re = hr.real_part_jomega(w);
    } catch (const PoleAtFrequency&) {
      continue;  // grid point collided with a pole; neighbours cover it
    }
    if (re < report.min_real_part) {
      report.min_real_part = re;
      report.min_real_part_omega = w;
    }
    if (re < -kPrTol) sweep_ok = false;
  }

  report.positive_real = report.poles_in_closed_left_half_plane &&
                         report.imaginary_axis_poles_simple &&
                         report.residues_nonnegative && sweep_ok;
  return report;
}

bool TheoremOneReport::resonant_pairs_all_ok() const {
  return std::all_of(resonant_pair_ok.begin(), resonant_pair_ok.end(),
                     [](bool b) { return b; });
}

bool TheoremOneReport::ok() const {
  return integrator_ok && resonant_pairs_all_ok() && remaining_poles_stable &&
         pr.positive_real;
}

TheoremOneReport check_theorem1(const TransferFunction& h, const ReferenceSpec& ref) {
  TheoremOneReport report;
  const TransferFunction hr = h.reduced();
  const std::vector<std::complex<double>> poles = hr.poles();

  double freq_scale = 1.0;
  for (const auto& p : poles) freq_scale = std::max(freq_scale, std::abs(p));
  const double origin_tol = kAxisTol * freq_scale;

  std::vector<bool> claimed(poles.size(), false);

  // Condition on the constant offset: a simple origin pole iff delta0 == 1.
  int origin_count = 0;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (std::abs(poles[i]) <= origin_tol) {
      ++origin_count;
      claimed[i] = true;
    }
  }
  report.integrator_ok =
      ref.delta0() == 1 ? origin_count == 1 : origin_count == 0;

  // One simple pole pair at +/- j omega_i per reference harmonic.
  for (const auto& term : ref.terms()) {
    const double w = term.omega;
    const double tol = kClusterTol * (1.0 + w);
    int upper = 0;
    int lower = 0;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (std::abs(poles[i] - std::complex<double>(0.0, w)) <= tol) {
        ++upper;
        claimed[i] = true;
      } else if (std::abs(poles[i] - std::complex<double>(0.0, -w)) <= tol) {
        ++lower;
        claimed[i] = true;
      }
    }
    report.resonant_pair_ok.push_back(upper == 1 && lower == 1);
  }

  // Everything else must be strictly stable.
  report.remaining_poles_stable = true;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (claimed[i]) continue;
    if (poles[i].real() > -1e-9 * (1.0 + std::abs(poles[i])))
      report.remaining_poles_stable = false;
  }

  report.pr = check_positive_real(hr);
  return report;
}

TransferFunction synthesize_controller(const TransferFunction& target_h,
                                       const TransferFunction& plant,
                                       double causality_pole_factor) {
  if (plant.is_zero())
    throw ZeroPolynomial("synthesize_controller: plant is the zero function");
  if (target_h.is_zero()) return TransferFunction{};
  if (!(causality_pole_factor > 0.0))
    throw Error("synthesize_controller: causality pole factor must be positive");

  const TransferFunction target = target_h.reduced();
  const TransferFunction g = plant.reduced();
  const std::vector<std::complex<double>> target_poles = target.poles();

  const auto target_has_origin_pole = [&]() {
    for (const auto& p : target_poles)
      if (std::abs(p) <= kAxisTol * (1.0 + std::abs(p))) return true;
    return false;
  };

  // Dividing by the plant turns its zeros into controller poles and its
  // poles into controller zeros; in the closed right half plane either one
  // hides an internal instability behind a cancellation.
  if (g.num().degree() >= 1) {
    for (const auto& z : g.zeros()) {
      if (z.real() >= -kAxisTol * (1.0 + std::abs(z)))
        throw UnstableCancellation(
            "synthesize_controller: plant zero in the closed right half plane");
    }
  }
  for (const auto& p : g.poles()) {
    if (p.real() < -kAxisTol * (1.0 + std::abs(p))) continue;
    const bool exempt_origin =
        std::abs(p) <= kAxisTol * (1.0 + std::abs(p)) && target_has_origin_pole();
    if (!exempt_origin)
      throw UnstableCancellation(
          "synthesize_controller: plant pole in the closed right half plane "
          "would be cancelled");
  }

  TransferFunction c =
      TransferFunction(target.num() * g.den(), target.den() * g.num()).reduced();

  int improper_by = c.num().degree() - c.den().degree();
  if (improper_by > 0) {
    // Padding pole frequency: well above the fastest resonant pole of the
    // target, so the loop shape is untouched where it matters.
    double w_res = 0.0;
    double w_any = 0.0;
    for (const auto& p : target_poles) {
      w_any = std::max(w_any, std::abs(p));
      if (on_imaginary_axis(p)) w_res = std::max(w_res, std::abs(p.imag()));
    }
    const double base = w_res > 0.0 ? w_res : std::max(1.0, w_any);
    const double pad = causality_pole_factor * base;
    for (int k = 0; k < improper_by; ++k)
      c = c * TransferFunction(Polynomial{1.0}, Polynomial{1.0, 1.0 / pad});
  }
  if (c.num().degree() > c.den().degree())
    throw ImproperUnfixable("synthesize_controller: padding failed to reach properness");
  return c;
}

}  // namespace qtrack
