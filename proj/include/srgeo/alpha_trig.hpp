#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace srgeo {

/// sin_α and cos_α at one argument.
struct SinCos
{
  double s;
  double c;
};

/**
 * @brief Quarter-period table of the generalized sine f'' = -α |f|^{2α-2} f, f(0) = 0, f'(0) = 1.
 *
 * Immutable after construction. Holds N + 1 equally spaced nodes on [0, π_α/2];
 * both sin_α (increasing) and cos_α (decreasing) are strictly monotone there.
 */
class AlphaTrigTable
{
public:
  static constexpr int kNodes = 2048;

  explicit AlphaTrigTable(double alpha);

  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double pi_alpha() const { return pi_alpha_; }
  [[nodiscard]] double quarter() const { return 0.5 * pi_alpha_; }
  [[nodiscard]] const std::vector<double> & nodes_t() const { return t_; }
  [[nodiscard]] const std::vector<double> & nodes_sin() const { return s_; }
  [[nodiscard]] const std::vector<double> & nodes_cos() const { return c_; }

  [[nodiscard]] SinCos eval(double t) const;

  /// φ in [0, 2π_α) with sin_α(φ) = s and the sign of cos_α(φ) given by c_sign (>= 0 or < 0).
  [[nodiscard]] double arc(double s, int c_sign) const;

  /// φ in [0, 2π_α) whose (sin_α, cos_α) is closest to (s, c); (s, c) should satisfy the energy law.
  [[nodiscard]] double arc_pair(double s, double c) const;

private:
  SinCos eval_quarter(double tau) const;
  double invert_sin(double a) const;
  double invert_cos(double a) const;

  double alpha_;
  double pi_alpha_;
  std::vector<double> t_, s_, c_;
};

/// Shared table for alpha, built once per distinct alpha. Thread-safe.
std::shared_ptr<const AlphaTrigTable> alpha_trig_table(double alpha);

/// 2 ∫_0^1 (1 - t^{2α})^{-1/2} dt. Throws InvalidInput for alpha < 1.
double pi_alpha(double alpha);

SinCos sin_cos_alpha(double alpha, double t);

double arc_alpha(double alpha, double s, int c_sign);

double arc_pair(double alpha, double s, double c);

/// |x|^p * sign(x); the odd extension used throughout for fractional powers.
double signed_pow(double x, double p);

}  // namespace srgeo
