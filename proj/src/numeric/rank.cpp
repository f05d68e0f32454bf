#include "srgeo/numeric/rank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "srgeo/errors.hpp"

namespace srgeo::numeric {

Svd jacobi_svd(const Eigen::MatrixXd & M)
{
  const Eigen::Index n = M.cols();
  const Eigen::Index m = std::max(M.rows(), n);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n);
  A.topRows(M.rows()) = M;
  Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);

  constexpr double eps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = A.col(p).squaredNorm();
        const double beta = A.col(q).squaredNorm();
        const double gamma = A.col(p).dot(A.col(q));
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (Eigen::Index i = 0; i < m; ++i) {
          const double ap = A(i, p), aq = A(i, q);
          A(i, p) = c * ap - s * aq;
          A(i, q) = s * ap + c * aq;
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const double vp = V(i, p), vq = V(i, q);
          V(i, p) = c * vp - s * vq;
          V(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  Eigen::VectorXd sigma(n);
  for (Eigen::Index j = 0; j < n; ++j) sigma[j] = A.col(j).norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sigma[a] > sigma[b]; });

  Svd out;
  out.S.resize(n);
  out.V.resize(n, n);
  out.U = Eigen::MatrixXd::Zero(M.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index j = order[static_cast<std::size_t>(k)];
    out.S[k] = sigma[j];
    out.V.col(k) = V.col(j);
    if (sigma[j] > 0.0) out.U.col(k) = A.col(j).head(M.rows()) / sigma[j];
  }
  return out;
}

RankResult rank_nullspace(const Eigen::MatrixXd & M, double tol_factor)
{
  if (!(tol_factor > 0.0 && tol_factor < 1.0)) {
    throw InvalidInput("rank_nullspace: tol_factor must lie in (0, 1)");
  }
  if (M.size() == 0) throw InvalidInput("rank_nullspace: empty matrix");
  if (!M.allFinite()) throw InvalidInput("rank_nullspace: non-finite entries");

  const Svd svd = jacobi_svd(M);
  if (svd.S[0] == 0.0) throw DegenerateMatrix("rank_nullspace: zero matrix");

  RankResult r;
  r.singular_values = svd.S;
  r.tolerance_used = tol_factor * svd.S[0];
  for (Eigen::Index k = 0; k < svd.S.size(); ++k) {
    if (svd.S[k] > r.tolerance_used) {
      ++r.numeric_rank;
    } else {
      r.nullspace_basis.push_back(svd.V.col(k).normalized());
    }
  }
  return r;
}

std::vector<Eigen::VectorXd> left_nullspace(const Eigen::MatrixXd & M, double tol_factor)
{
  return rank_nullspace(M.transpose(), tol_factor).nullspace_basis;
}

}  // namespace srgeo::numeric
