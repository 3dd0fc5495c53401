#pragma once

#include <Eigen/Dense>

namespace convbody {

using Vector = Eigen::VectorXd;
// Point sets and halfspace normals are stored one per row.
using PointMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace convbody
