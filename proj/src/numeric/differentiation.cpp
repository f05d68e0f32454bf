#include "srgeo/numeric/differentiation.hpp"

#include "srgeo/errors.hpp"

namespace srgeo::numeric {

namespace {

void check_step(double h)
{
  if (!(h >= 1e-8 && h <= 1e-3)) throw InvalidInput("finite differences: h must lie in [1e-8, 1e-3]");
}

Eigen::MatrixXd central(const VectorMap & F, const Eigen::VectorXd & x, double h)
{
  Eigen::MatrixXd J;
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    xp[j] = x[j] + h;
    const Eigen::VectorXd fp = F(xp);
    xp[j] = x[j] - h;
    const Eigen::VectorXd fm = F(xp);
    xp[j] = x[j];
    if (j == 0) J.resize(fp.size(), x.size());
    J.col(j) = (fp - fm) / (2.0 * h);
  }
  return J;
}

}  // namespace

Eigen::MatrixXd fd_jacobian(const VectorMap & F, const Eigen::VectorXd & x, double h)
{
  check_step(h);
  return central(F, x, h);
}

Eigen::MatrixXd fd_jacobian_richardson(const VectorMap & F, const Eigen::VectorXd & x, double h)
{
  check_step(h);
  return (4.0 * central(F, x, h) - central(F, x, 2.0 * h)) / 3.0;
}

Eigen::VectorXd fd_gradient(
  const std::function<double(const Eigen::VectorXd &)> & f, const Eigen::VectorXd & x, double h)
{
  check_step(h);
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    xp[j] = x[j] + h;
    const double fp = f(xp);
    xp[j] = x[j] - h;
    const double fm = f(xp);
    xp[j] = x[j];
    g[j] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Eigen::VectorXd fd_mixed(
  const std::function<Eigen::VectorXd(double, double)> & G, double hs, double hr)
{
  if (!(hs > 0.0) || !(hr > 0.0)) throw InvalidInput("fd_mixed: steps must be positive");
  return (G(hs, hr) - G(hs, -hr) - G(-hs, hr) + G(-hs, -hr)) / (4.0 * hs * hr);
}

}  // namespace srgeo::numeric
