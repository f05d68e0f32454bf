#pragma once

#include <vector>

#include <Eigen/Core>

namespace srgeo::numeric {

struct RankResult
{
  Eigen::VectorXd singular_values;  // descending
  int numeric_rank = 0;
  std::vector<Eigen::VectorXd> nullspace_basis;
  double tolerance_used = 0.0;
};

struct Svd
{
  Eigen::MatrixXd U;  // rows x k
  Eigen::VectorXd S;  // k, descending
  Eigen::MatrixXd V;  // cols x cols
};

/// Thin SVD by one-sided Jacobi rotations. Intended for matrices up to about 6x6.
Svd jacobi_svd(const Eigen::MatrixXd & M);

/**
 * @brief Numeric rank and right nullspace of M.
 *
 * Rank counts singular values above tol_factor * sigma_max. Throws
 * DegenerateMatrix when sigma_max = 0 and InvalidInput for a tol_factor
 * outside (0, 1) or non-finite entries.
 */
RankResult rank_nullspace(const Eigen::MatrixXd & M, double tol_factor = 1e-7);

/// Orthonormal basis of the complement of the column space of M (left nullspace).
std::vector<Eigen::VectorXd> left_nullspace(const Eigen::MatrixXd & M, double tol_factor = 1e-7);

}  // namespace srgeo::numeric
