#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>

namespace proxpoint {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace proxpoint
