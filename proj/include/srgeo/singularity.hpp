#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "srgeo/grushin.hpp"
#include "srgeo/types.hpp"

namespace srgeo {

using Fiber = Eigen::VectorXd;

/**
 * @brief Uniform view of a structure's exponential map on one cotangent fiber.
 *
 * Each entry of conj_f is one stratum function; the covector is conjugate
 * where any of them vanishes. Rows of conj_grad are their gradients.
 */
struct StructureAdapter
{
  std::string name;
  int fiber_dim = 0;
  std::function<int(const Fiber &)> chart_at;
  std::function<Eigen::VectorXd(const Fiber &, int chart)> exp_chart;
  std::function<bool(const Fiber &)> admissible;
  std::function<Eigen::VectorXd(const Fiber &)> conj_f;
  std::function<Eigen::MatrixXd(const Fiber &)> conj_grad;
  std::function<Eigen::VectorXd(const Fiber &)> kernel;
  /// Jacobi field at t in frame coordinates (p, x); empty when not available.
  std::function<JacobiCoords(const Fiber &, const JacobiCoords &, double)> jacobi;
  /// Stratum of each conj_f entry; Other means the split is decided by transversality.
  std::vector<Stratum> strata;
  /// Whether the (xz, y, z) normal form is expected on each stratum.
  std::vector<bool> tangential_form_applies;
};

StructureAdapter grushin_adapter(const GrushinBase & base);
StructureAdapter su2_adapter();
StructureAdapter sl2_adapter();

struct ConjugateRecord
{
  Fiber covector;
  double s = 0.0;  // radius along the scanned ray
  int stratum_index = 0;
  Stratum stratum = Stratum::Other;
  int order = 0;
  std::vector<Eigen::VectorXd> kernel_basis;
  SingularityClass cls = SingularityClass::NotSingular;
  Eigen::VectorXd f_values;
  bool bracketless = false;
};

struct ScanOptions
{
  int scan_points = 400;
  double s_min_fraction = 1e-3;
  double root_tol = 1e-10;
  double rank_tol = 1e-7;
};

struct ClassifyOptions
{
  double transversality_tol = 1e-6;
  double second_order_threshold = 1e-3;
};

/// Step used for finite-difference Jacobians of exp at λ.
double fd_step(const Fiber & lambda);

/// Central-difference Jacobian of the chart-composed exponential at λ, chart fixed at chart_at(λ).
Eigen::MatrixXd fd_dexp(const StructureAdapter & adapter, const Fiber & lambda);

std::vector<ConjugateRecord> scan_ray(
  const StructureAdapter & adapter, const Fiber & direction, double s_max, const ScanOptions & opt = {});

/// Scans several rays, optionally in parallel; the result keeps the input order.
std::vector<std::vector<ConjugateRecord>> scan_rays(
  const StructureAdapter & adapter, const std::vector<Fiber> & directions, double s_max, int threads = 1,
  const ScanOptions & opt = {});

/// Builds a record for a covector already known to be conjugate on stratum function `index`.
ConjugateRecord make_record(
  const StructureAdapter & adapter, const Fiber & lambda, int index, const ScanOptions & opt = {},
  const ClassifyOptions & copt = {});

SingularityClass classify(
  const StructureAdapter & adapter, const ConjugateRecord & record, const ClassifyOptions & opt = {});

/// |<g, k>| / (|g| |k|) for the record's active stratum.
double transversality_ratio(const StructureAdapter & adapter, const ConjugateRecord & record);

struct FoldWitness
{
  Fiber lambda1;
  Fiber lambda2;
  double image_distance;
  double separation;
};

/// Two distinct covectors near a fold with the same image. Throws WitnessNotFound / PreconditionViolation.
FoldWitness fold_witness(const StructureAdapter & adapter, const ConjugateRecord & record, double delta = 1e-3);

/// Size of the mixed derivative along (Euler field, kernel) transverse to the image of d exp.
double second_order_transversality(
  const StructureAdapter & adapter, const ConjugateRecord & record,
  const std::optional<Eigen::VectorXd> & kernel_override = std::nullopt);

/// Checks that p(1) of the kernel Jacobi field is independent of the image of d exp.
bool regularity_isomorphism_check(const StructureAdapter & adapter, const ConjugateRecord & record);

/// The quantity behind regularity_isomorphism_check.
double regularity_margin(const StructureAdapter & adapter, const ConjugateRecord & record);

}  // namespace srgeo
