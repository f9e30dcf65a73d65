#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "qtrack/transfer_function.hpp"

namespace qtrack {

/// State vector of a single-input single-output block.
using StateVector = Eigen::VectorXd;

/// Single-input single-output state-space model
///   x' = A x + B u,   y = C x + D u.
struct StateSpaceModel {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::RowVectorXd C;
  double D = 0.0;

  int order() const { return static_cast<int>(A.rows()); }

  /// y = C x + D u.
  double output(const StateVector& x, double u) const;

  /// C (j*omega*I - A)^-1 B + D.
  std::complex<double> frequency_response(double omega) const;
};

/// Controllable-canonical realization of the reduced proper rational
/// function; biproper functions get their constant part split into D by
/// polynomial division.  Throws ImproperTransferFunction if h is not proper.
StateSpaceModel realize(const TransferFunction& h);

/// One classical fourth-order Runge-Kutta step of length dt starting at
/// time t.  `input` is evaluated at the substep times t, t + dt/2 and
/// t + dt, so inputs held via their generating function (not zero-order
/// hold) keep the integrator's full order.
StateVector rk4_step(const StateSpaceModel& model, const StateVector& x,
                     const std::function<double(double)>& input, double t,
                     double dt);

/// Cascade interconnection: the input drives `first`, its output drives
/// `second`.  State order is [first; second].
StateSpaceModel series(const StateSpaceModel& first, const StateSpaceModel& second);

}  // namespace qtrack
