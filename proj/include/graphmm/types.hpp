#pragma once

#include <Eigen/Dense>

namespace graphmm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

using MatrixRef = Eigen::Ref<const Matrix>;
using VectorRef = Eigen::Ref<const Vector>;

}  // namespace graphmm
