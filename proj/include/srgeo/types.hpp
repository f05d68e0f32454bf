#pragma once

#include <string_view>

#include <Eigen/Core>

namespace srgeo {

/// Jacobi-field coordinates (p_a, p_b, ..., x_a, x_b, ...) in a structure's symplectic frame.
using JacobiCoords = Eigen::VectorXd;

enum class SingularityClass { NotSingular, Fold, Tangential, Undetermined };

enum class Stratum { C0, C1, Other };

std::string_view to_string(SingularityClass c);
std::string_view to_string(Stratum s);

}  // namespace srgeo
