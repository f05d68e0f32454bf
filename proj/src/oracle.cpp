#include "srgeo/oracle.hpp"

#include <cmath>

#include "srgeo/contact.hpp"
#include "srgeo/errors.hpp"

namespace srgeo::oracle {

namespace {

numeric::Trajectory run(numeric::VectorField f, numeric::State y0, double t_end, const numeric::OdeOptions & opt)
{
  if (!(t_end > 0.0)) throw InvalidInput("oracle: t_end must be positive");
  numeric::OdeProblem prob;
  prob.vector_field = std::move(f);
  prob.initial_state = std::move(y0);
  prob.t_start = 0.0;
  prob.t_end = t_end;
  return numeric::integrate(prob, opt);
}

}  // namespace

numeric::Trajectory grushin_flow(
  const GrushinBase & base, const GrushinCovector & cov, double t_end, const numeric::OdeOptions & opt)
{
  const double a = base.alpha;
  auto f = [a](double, const numeric::State & y, numeric::State & d) {
    const double x = y[0], u = y[2], v = y[3];
    const double ax = std::abs(x);
    d[0] = u;
    d[1] = v * std::pow(ax, 2.0 * a);
    d[2] = -a * v * v * (x == 0.0 ? 0.0 : std::pow(ax, 2.0 * a - 2.0) * x);
    d[3] = 0.0;
  };
  numeric::State y0(4);
  y0 << base.x0, base.y0, cov.u0, cov.v0;
  return run(f, y0, t_end, opt);
}

numeric::Trajectory su2_flow(const Su2Covector & cov, double t_end, const numeric::OdeOptions & opt)
{
  const double w = cov.w0;
  // First row (α, β) of g' = g (u X1 + v X2).
  auto f = [w](double, const numeric::State & y, numeric::State & d) {
    const double ar = y[0], ai = y[1], br = y[2], bi = y[3], u = y[4], v = y[5];
    // α' = β (-u + i v) / 2,  β' = α (u + i v) / 2
    d[0] = 0.5 * (-br * u - bi * v);
    d[1] = 0.5 * (br * v - bi * u);
    d[2] = 0.5 * (ar * u - ai * v);
    d[3] = 0.5 * (ar * v + ai * u);
    d[4] = -w * v;
    d[5] = w * u;
  };
  numeric::State y0(6);
  y0 << 1.0, 0.0, 0.0, 0.0, cov.u0, cov.v0;
  return run(f, y0, t_end, opt);
}

numeric::Trajectory sl2_flow(const Sl2Covector & cov, double t_end, const numeric::OdeOptions & opt)
{
  const double w = cov.w0;
  auto f = [w](double, const numeric::State & y, numeric::State & d) {
    const double m11 = y[0], m12 = y[1], m21 = y[2], m22 = y[3], u = y[4], v = y[5];
    // g' = g B,  B = [[u, v], [v, -u]] / 2
    d[0] = 0.5 * (m11 * u + m12 * v);
    d[1] = 0.5 * (m11 * v - m12 * u);
    d[2] = 0.5 * (m21 * u + m22 * v);
    d[3] = 0.5 * (m21 * v - m22 * u);
    d[4] = w * v;
    d[5] = -w * u;
  };
  numeric::State y0(6);
  y0 << 1.0, 0.0, 0.0, 1.0, cov.u0, cov.v0;
  return run(f, y0, t_end, opt);
}

JacobiCoords grushin_jacobi_numeric(
  const GrushinBase & base, const GrushinCovector & cov, const JacobiCoords & init, double t_end,
  const numeric::OdeOptions & opt)
{
  if (init.size() != 4) throw InvalidInput("grushin_jacobi_numeric: expected 4 coordinates");
  const double a = base.alpha, v0 = cov.v0;
  auto f = [a, v0](double, const numeric::State & y, numeric::State & d) {
    const double x = y[0], u = y[1];
    d[0] = u;
    d[1] = -a * v0 * v0 * (x == 0.0 ? 0.0 : std::pow(std::abs(x), 2.0 * a - 2.0) * x);
    d.tail<4>() = grushin_jacobi_rhs(a, v0, x, y.tail<4>());
  };
  numeric::State y0(6);
  y0 << base.x0, cov.u0, init;
  return run(f, y0, t_end, opt).final_state().tail(4);
}

JacobiCoords contact_jacobi_numeric(double r, const JacobiCoords & init, double t_end, const numeric::OdeOptions & opt)
{
  if (init.size() != 6) throw InvalidInput("contact_jacobi_numeric: expected 6 coordinates");
  auto f = [r](double, const numeric::State & y, numeric::State & d) {
    d = contact_jacobi_rhs(r, y.head<6>());
  };
  return run(f, init, t_end, opt).final_state();
}

}  // namespace srgeo::oracle
