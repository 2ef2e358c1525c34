#pragma once

#include <Eigen/Dense>

namespace slicereg {

// Dense real matrix exponential, Pade(13) with scaling and squaring.
Eigen::MatrixXd real_matrix_exp(const Eigen::MatrixXd& a);

}  // namespace slicereg
