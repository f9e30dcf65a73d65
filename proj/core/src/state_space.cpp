#include "qtrack/state_space.hpp"

#include <Eigen/LU>

#include "qtrack/errors.hpp"

namespace qtrack {

double StateSpaceModel::output(const StateVector& x, double u) const {
  double y = D * u;
  if (order() > 0) y += C * x;
  return y;
}

std::complex<double> StateSpaceModel::frequency_response(double omega) const {
  if (order() == 0) return {D, 0.0};
  const int n = order();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(n, n) * std::complex<double>(0.0, omega);
  M -= A.cast<std::complex<double>>();
  const Eigen::VectorXcd x = M.partialPivLu().solve(B.cast<std::complex<double>>());
  return (C.cast<std::complex<double>>() * x).value() + std::complex<double>(D, 0.0);
}

StateSpaceModel realize(const TransferFunction& h) {
  const TransferFunction hr = h.reduced();
  if (!hr.is_proper())
    throw ImproperTransferFunction("realize: rational function is not proper");

  const int n = hr.den().degree();
  // Split off the constant feedthrough; the remainder is strictly proper.
  const auto [quot, rem] = divmod(hr.num(), hr.den());

  StateSpaceModel m;
  m.D = quot.coeff(0);
  m.A = Eigen::MatrixXd::Zero(n, n);
  m.B = Eigen::VectorXd::Zero(n);
  m.C = Eigen::RowVectorXd::Zero(n);
  if (n == 0) return m;

  const double lead = hr.den().leading();
  for (int i = 0; i + 1 < n; ++i) m.A(i, i + 1) = 1.0;
  for (int k = 0; k < n; ++k) m.A(n - 1, k) = -hr.den().coeff(k) / lead;
  m.B(n - 1) = 1.0;
  for (int k = 0; k < n; ++k) m.C(k) = rem.coeff(k) / lead;
  return m;
}

StateVector rk4_step(const StateSpaceModel& model, const StateVector& x,
                     const std::function<double(double)>& input, double t,
                     double dt) {
  const auto f = [&model](const StateVector& z, double u) -> StateVector {
    return model.A * z + model.B * u;
  };
  const double u0 = input(t);
  const double um = input(t + 0.5 * dt);
  const double u1 = input(t + dt);

  const StateVector k1 = f(x, u0);
  const StateVector k2 = f(x + 0.5 * dt * k1, um);
  const StateVector k3 = f(x + 0.5 * dt * k2, um);
  const StateVector k4 = f(x + dt * k3, u1);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

StateSpaceModel series(const StateSpaceModel& first, const StateSpaceModel& second) {
  const int n1 = first.order();
  const int n2 = second.order();
  StateSpaceModel m;
  m.A = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  m.B = Eigen::VectorXd::Zero(n1 + n2);
  m.C = Eigen::RowVectorXd::Zero(n1 + n2);
  m.A.topLeftCorner(n1, n1) = first.A;
  m.A.bottomRightCorner(n2, n2) = second.A;
  if (n1 > 0 && n2 > 0) m.A.bottomLeftCorner(n2, n1) = second.B * first.C;
  m.B.head(n1) = first.B;
  m.B.tail(n2) = second.B * first.D;
  m.C.head(n1) = second.D * first.C;
  m.C.tail(n2) = second.C;
  m.D = second.D * first.D;
  return m;
}

}  // namespace qtrack
