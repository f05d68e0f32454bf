#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace srgeo::numeric {

using State = Eigen::VectorXd;

/// Right-hand side y' = f(t, y). Writes f(t, y) into `dydt` (already sized).
using VectorField = std::function<void(double t, const State & y, State & dydt)>;

struct OdeProblem
{
  VectorField vector_field;
  State initial_state;
  double t_start = 0.0;
  double t_end = 1.0;

  [[nodiscard]] Eigen::Index dimension() const { return initial_state.size(); }
};

struct OdeOptions
{
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_steps = 2'000'000;
};

/**
 * @brief Dense solution of an ODE on [t_start, t_end].
 *
 * Stores the accepted Dormand-Prince steps together with their fourth-order
 * continuous extension, so the state can be evaluated anywhere in the span.
 */
class Trajectory
{
public:
  State operator()(double t) const;

  [[nodiscard]] double t_start() const { return t_start_; }
  [[nodiscard]] double t_end() const { return t_end_; }
  [[nodiscard]] std::size_t accepted_steps() const { return segments_.size(); }
  [[nodiscard]] std::size_t rejected_steps() const { return rejected_; }
  [[nodiscard]] const State & final_state() const { return final_; }

private:
  friend Trajectory integrate(const OdeProblem &, const OdeOptions &);

  struct Segment
  {
    double t0;
    double h;
    // Hermite-like continuous extension coefficients r1..r5.
    State r1, r2, r3, r4, r5;
  };

  double t_start_ = 0.0;
  double t_end_ = 0.0;
  std::size_t rejected_ = 0;
  State final_;
  std::vector<Segment> segments_;
};

/**
 * @brief Integrate with the embedded Dormand-Prince 5(4) pair and PI step control.
 *
 * Tolerances must lie in (0, 1e-2]. Throws InvalidInput on a malformed problem,
 * StepFailure when the step size underflows or the field stops being finite.
 */
Trajectory integrate(const OdeProblem & problem, const OdeOptions & options = {});

inline Trajectory integrate(const OdeProblem & problem, double rel_tol, double abs_tol)
{
  return integrate(problem, OdeOptions{.rel_tol = rel_tol, .abs_tol = abs_tol});
}

}  // namespace srgeo::numeric
