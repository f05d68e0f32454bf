#pragma once

#include <functional>

#include <Eigen/Core>

namespace srgeo::numeric {

using VectorMap = std::function<Eigen::VectorXd(const Eigen::VectorXd &)>;

/// Central-difference Jacobian. h must lie in [1e-8, 1e-3].
Eigen::MatrixXd fd_jacobian(const VectorMap & F, const Eigen::VectorXd & x, double h = 1e-6);

/// Richardson-extrapolated central differences (steps h and 2h), fourth order in h.
Eigen::MatrixXd fd_jacobian_richardson(const VectorMap & F, const Eigen::VectorXd & x, double h = 1e-3);

/// Central-difference gradient of a scalar function.
Eigen::VectorXd fd_gradient(
  const std::function<double(const Eigen::VectorXd &)> & f, const Eigen::VectorXd & x,
  double h = 1e-6);

/**
 * @brief Mixed derivative d^2/ds dr of G(s, r) at (0, 0) by the four-point stencil.
 */
Eigen::VectorXd fd_mixed(
  const std::function<Eigen::VectorXd(double s, double r)> & G, double hs, double hr);

}  // namespace srgeo::numeric
