#include "srgeo/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <Eigen/Dense>

#include "srgeo/errors.hpp"
#include "srgeo/numeric/differentiation.hpp"
#include "srgeo/numeric/rank.hpp"
#include "srgeo/numeric/roots.hpp"
#include "srgeo/sl2.hpp"
#include "srgeo/su2.hpp"

namespace srgeo {

namespace {

Su2Covector su2_cov(const Fiber & l) { return {l[0], l[1], l[2]}; }
Sl2Covector sl2_cov(const Fiber & l) { return {l[0], l[1], l[2]}; }

void check_dim(const StructureAdapter & a, const Fiber & l)
{
  if (l.size() != a.fiber_dim) throw InvalidInput(a.name + ": fiber vector has wrong dimension");
}

// Orthonormal basis of the complement of unit vector k.
Eigen::MatrixXd complement(const Eigen::VectorXd & k)
{
  const Eigen::Index n = k.size();
  Eigen::MatrixXd B(n, n);
  B.col(0) = k;
  Eigen::Index col = 1;
  for (Eigen::Index i = 0; i < n && col < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(n, i);
    for (Eigen::Index j = 0; j < col; ++j) e -= B.col(j).dot(e) * B.col(j);
    if (e.norm() > 1e-6) B.col(col++) = e.normalized();
  }
  return B.rightCols(n - 1);
}

}  // namespace

StructureAdapter grushin_adapter(const GrushinBase & base)
{
  StructureAdapter a;
  a.name = "grushin";
  a.fiber_dim = 2;
  a.chart_at = [](const Fiber &) { return 0; };
  a.exp_chart = [base](const Fiber & l, int) {
    const GrushinState g = grushin_exp(base, {l[0], l[1]}, 1.0);
    return Eigen::VectorXd(Eigen::Vector2d(g.x, g.y));
  };
  a.admissible = [base](const Fiber & l) { return l[1] != 0.0 && grushin_two_h(base, {l[0], l[1]}) != 0.0; };
  a.conj_f = [base](const Fiber & l) {
    Eigen::VectorXd f(1);
    f[0] = grushin_conj_f(base, {l[0], l[1]});
    return f;
  };
  a.conj_grad = [base](const Fiber & l) {
    return Eigen::MatrixXd(grushin_conj_grad(base, {l[0], l[1]}).transpose());
  };
  a.kernel = [base](const Fiber & l) { return Eigen::VectorXd(grushin_kernel(base, {l[0], l[1]})); };
  a.jacobi = [base](const Fiber & l, const JacobiCoords & init, double t) {
    return grushin_jacobi(base, {l[0], l[1]}, init, t);
  };
  a.strata = {Stratum::Other};
  a.tangential_form_applies = {false};
  return a;
}

StructureAdapter su2_adapter()
{
  StructureAdapter a;
  a.name = "su2";
  a.fiber_dim = 3;
  a.chart_at = [](const Fiber & l) { return su2_chart(su2_exp(su2_cov(l), 1.0).point); };
  a.exp_chart = [](const Fiber & l, int chart) {
    return Eigen::VectorXd(su2_chart_coords(su2_exp(su2_cov(l), 1.0).point, chart));
  };
  a.admissible = [](const Fiber & l) { return su2_cov(l).two_h() != 0.0; };
  a.conj_f = [](const Fiber & l) {
    const Su2Strata f = su2_conj_f(su2_cov(l));
    return Eigen::VectorXd(Eigen::Vector2d(f.f0, f.f1));
  };
  a.conj_grad = [](const Fiber & l) {
    const Su2Gradients g = su2_conj_grad(su2_cov(l));
    Eigen::MatrixXd G(2, 3);
    G.row(0) = g.df0.transpose();
    G.row(1) = g.df1.transpose();
    return G;
  };
  a.kernel = [](const Fiber & l) { return Eigen::VectorXd(su2_kernel(su2_cov(l))); };
  a.jacobi = [](const Fiber & l, const JacobiCoords & init, double t) { return su2_jacobi(su2_cov(l), init, t); };
  a.strata = {Stratum::C0, Stratum::C1};
  a.tangential_form_applies = {false, true};
  return a;
}

StructureAdapter sl2_adapter()
{
  StructureAdapter a;
  a.name = "sl2";
  a.fiber_dim = 3;
  a.chart_at = [](const Fiber & l) { return sl2_chart(sl2_exp(sl2_cov(l), 1.0).g); };
  a.exp_chart = [](const Fiber & l, int chart) {
    return Eigen::VectorXd(sl2_chart_coords(sl2_exp(sl2_cov(l), 1.0).g, chart));
  };
  a.admissible = [](const Fiber & l) {
    const Sl2Covector c = sl2_cov(l);
    return c.two_h() != 0.0 && c.r() > 0.0;
  };
  a.conj_f = [](const Fiber & l) {
    const Sl2Strata f = sl2_conj_f(sl2_cov(l));
    return Eigen::VectorXd(Eigen::Vector2d(f.f0, f.f1));
  };
  a.conj_grad = [](const Fiber & l) {
    const Sl2Gradients g = sl2_conj_grad(sl2_cov(l));
    Eigen::MatrixXd G(2, 3);
    G.row(0) = g.df0.transpose();
    G.row(1) = g.df1.transpose();
    return G;
  };
  a.kernel = [](const Fiber & l) { return Eigen::VectorXd(sl2_kernel(sl2_cov(l))); };
  a.jacobi = [](const Fiber & l, const JacobiCoords & init, double t) { return sl2_jacobi(sl2_cov(l), init, t); };
  a.strata = {Stratum::C0, Stratum::C1};
  a.tangential_form_applies = {false, true};
  return a;
}

double fd_step(const Fiber & lambda) { return 1e-5 * std::max(1.0, lambda.norm()); }

Eigen::MatrixXd fd_dexp(const StructureAdapter & adapter, const Fiber & lambda)
{
  check_dim(adapter, lambda);
  const int chart = adapter.chart_at(lambda);
  auto F = [&](const Eigen::VectorXd & l) { return adapter.exp_chart(l, chart); };
  return numeric::fd_jacobian(F, lambda, std::min(fd_step(lambda), 1e-3));
}

ConjugateRecord make_record(
  const StructureAdapter & adapter, const Fiber & lambda, int index, const ScanOptions & opt,
  const ClassifyOptions & copt)
{
  check_dim(adapter, lambda);
  if (index < 0 || static_cast<std::size_t>(index) >= adapter.strata.size()) {
    throw InvalidInput("make_record: stratum index out of range");
  }
  ConjugateRecord rec;
  rec.covector = lambda;
  rec.s = lambda.norm();
  rec.stratum_index = index;
  rec.stratum = adapter.strata[static_cast<std::size_t>(index)];
  rec.f_values = adapter.conj_f(lambda);

  const numeric::RankResult rr = numeric::rank_nullspace(fd_dexp(adapter, lambda), opt.rank_tol);
  rec.order = static_cast<int>(rr.nullspace_basis.size());
  if (rec.order == 1) {
    try {
      rec.kernel_basis = {adapter.kernel(lambda)};
    } catch (const NotConjugate &) {
      rec.kernel_basis = rr.nullspace_basis;
    }
  } else {
    rec.kernel_basis = rr.nullspace_basis;
  }
  rec.cls = classify(adapter, rec, copt);
  if (rec.stratum == Stratum::Other && rec.order == 1) {
    rec.stratum = rec.cls == SingularityClass::Fold ? Stratum::C0 : Stratum::C1;
  }
  return rec;
}

std::vector<ConjugateRecord> scan_ray(
  const StructureAdapter & adapter, const Fiber & direction, double s_max, const ScanOptions & opt)
{
  check_dim(adapter, direction);
  if (!(s_max > 0.0)) throw InvalidInput("scan_ray: s_max must be positive");
  const double n = direction.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("scan_ray: direction must be nonzero");
  const Fiber dir = direction / n;
  if (!adapter.admissible(dir)) return {};

  std::vector<ConjugateRecord> out;
  for (std::size_t i = 0; i < adapter.strata.size(); ++i) {
    auto g = [&](double s) { return adapter.conj_f(s * dir)[static_cast<Eigen::Index>(i)]; };
    const auto roots =
      numeric::find_roots_detailed(g, opt.s_min_fraction * s_max, s_max, opt.scan_points, opt.root_tol);
    for (const numeric::Root & r : roots) {
      ConjugateRecord rec = make_record(adapter, r.x * dir, static_cast<int>(i), opt);
      rec.s = r.x;
      rec.bracketless = r.bracketless;
      if (r.bracketless && rec.order == 0) continue;
      out.push_back(std::move(rec));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto & a, const auto & b) { return a.s < b.s; });
  return out;
}

std::vector<std::vector<ConjugateRecord>> scan_rays(
  const StructureAdapter & adapter, const std::vector<Fiber> & directions, double s_max, int threads,
  const ScanOptions & opt)
{
  std::vector<std::vector<ConjugateRecord>> out(directions.size());
  const std::size_t nt = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, directions.size() + 1);
  if (nt <= 1 || directions.size() <= 1) {
    for (std::size_t i = 0; i < directions.size(); ++i) out[i] = scan_ray(adapter, directions[i], s_max, opt);
    return out;
  }
  std::vector<std::exception_ptr> errors(directions.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < nt; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < directions.size(); i += nt) {
        try {
          out[i] = scan_ray(adapter, directions[i], s_max, opt);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto & t : pool) t.join();
  for (auto & e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double transversality_ratio(const StructureAdapter & adapter, const ConjugateRecord & record)
{
  if (record.kernel_basis.empty()) throw PreconditionViolation("transversality_ratio: record has no kernel");
  const Eigen::MatrixXd G = adapter.conj_grad(record.covector);
  const Eigen::VectorXd g = G.row(record.stratum_index).transpose();
  const Eigen::VectorXd & k = record.kernel_basis.front();
  const double den = g.norm() * k.norm();
  if (den == 0.0) return 0.0;
  return std::abs(g.dot(k)) / den;
}

SingularityClass classify(const StructureAdapter & adapter, const ConjugateRecord & record, const ClassifyOptions & opt)
{
  if (record.order == 0) return SingularityClass::NotSingular;
  if (record.order != 1 || record.kernel_basis.size() != 1) return SingularityClass::Undetermined;
  const Eigen::MatrixXd G = adapter.conj_grad(record.covector);
  if (G.row(record.stratum_index).norm() == 0.0) return SingularityClass::Undetermined;
  if (transversality_ratio(adapter, record) > opt.transversality_tol) return SingularityClass::Fold;
  const bool tangential_ok = adapter.tangential_form_applies[static_cast<std::size_t>(record.stratum_index)];
  if (tangential_ok && second_order_transversality(adapter, record) > opt.second_order_threshold) {
    return SingularityClass::Tangential;
  }
  return SingularityClass::Undetermined;
}

FoldWitness fold_witness(const StructureAdapter & adapter, const ConjugateRecord & record, double delta)
{
  if (record.cls != SingularityClass::Fold) throw PreconditionViolation("fold_witness: record is not a fold");
  if (!(delta > 0.0)) throw InvalidInput("fold_witness: delta must be positive");
  const Fiber & l0 = record.covector;
  const Eigen::VectorXd k = record.kernel_basis.front().normalized();
  const Eigen::MatrixXd C = complement(k);
  const int chart = adapter.chart_at(l0);
  const Eigen::Index n = l0.size();
  auto E = [&](const Eigen::VectorXd & l) { return adapter.exp_chart(l, chart); };

  for (const double div : {2.0, 2.5, 3.0, 4.0}) {
    const double a = delta / div;
    const Fiber l1 = l0 + a * k;
    const Eigen::VectorXd y1 = E(l1);
    const double ytol = 1e-13 * std::max(1.0, y1.norm());

    // Unknowns z = (b, c): λ2 = λ0 + b k + C c.
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    z[0] = -a;
    Eigen::MatrixXd basis(n, n);
    basis.col(0) = k;
    basis.rightCols(n - 1) = C;
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      const Fiber l2 = l0 + basis * z;
      const Eigen::VectorXd res = E(l2) - y1;
      if (!res.allFinite()) break;
      if (res.norm() <= ytol) {
        ok = true;
        break;
      }
      const Eigen::MatrixXd J = numeric::fd_jacobian(E, l2, 1e-7) * basis;
      const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-res);
      if (!step.allFinite()) break;
      z += step;
      if (z.norm() > 4.0 * delta) break;
    }
    const Fiber l2 = l0 + basis * z;
    const double dist = (E(l2) - y1).norm();
    const double sep = (l1 - l2).norm();
    if ((ok || dist <= 1e-9) && dist <= 1e-9 && sep >= delta / 4.0 && (l2 - l0).norm() <= delta) {
      return {l1, l2, dist, sep};
    }
  }
  throw WitnessNotFound("fold_witness: Newton search failed on every trial offset");
}

double second_order_transversality(
  const StructureAdapter & adapter, const ConjugateRecord & record, const std::optional<Eigen::VectorXd> & kernel_override)
{
  Eigen::VectorXd k;
  if (kernel_override) {
    k = *kernel_override;
  } else {
    if (record.kernel_basis.empty()) return 0.0;
    k = record.kernel_basis.front();
  }
  const Fiber & l0 = record.covector;
  const int chart = adapter.chart_at(l0);
  const Eigen::MatrixXd J = fd_dexp(adapter, l0);
  const auto left = numeric::left_nullspace(J, 1e-7);
  if (left.empty()) return 0.0;

  const double hs = 1e-4;
  const double hr = 1e-4 * std::max(1.0, l0.norm());
  auto G = [&](double s, double r) { return adapter.exp_chart((1.0 + s) * (l0 + r * k), chart); };
  const Eigen::VectorXd m = numeric::fd_mixed(G, hs, hr);
  Eigen::VectorXd proj = Eigen::VectorXd::Zero(m.size());
  for (const auto & l : left) proj += l.dot(m) * l;
  return proj.norm();
}

double regularity_margin(const StructureAdapter & adapter, const ConjugateRecord & record)
{
  if (!adapter.jacobi) throw PreconditionViolation("regularity check: structure has no Jacobi solver");
  if (record.order != 1) throw PreconditionViolation("regularity check: needs an order-one record");
  const Eigen::Index n = adapter.fiber_dim;
  Eigen::MatrixXd M(n, n), P(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    JacobiCoords init = JacobiCoords::Zero(2 * n);
    init[i] = 1.0;
    const JacobiCoords j = adapter.jacobi(record.covector, init, 1.0);
    P.col(i) = j.head(n);
    M.col(i) = j.tail(n);
  }
  const numeric::RankResult rr = numeric::rank_nullspace(M, 1e-7);
  if (rr.nullspace_basis.size() != 1) return 0.0;
  const Eigen::VectorXd p1 = P * rr.nullspace_basis.front();
  const auto left = numeric::left_nullspace(M, 1e-7);
  if (left.empty() || p1.norm() == 0.0) return 0.0;
  return std::abs(left.front().dot(p1)) / p1.norm();
}

bool regularity_isomorphism_check(const StructureAdapter & adapter, const ConjugateRecord & record)
{
  return regularity_margin(adapter, record) > 1e-6;
}

}  // namespace srgeo
