#pragma once

#include <Eigen/Dense>

namespace symred {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// Absolute tolerance for Lie-algebra axioms and the coadjoint invariance gate.
inline constexpr double kLieTolerance = 1e-12;

// Default finite-difference step for spatial derivatives.
inline constexpr double kDefaultFdStep = 1e-4;

}  // namespace symred
