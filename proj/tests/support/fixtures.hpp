#pragma once

#include <Eigen/Dense>

#include "tpb/instance.hpp"

namespace tpb::fixtures {

/// n = 2, m = 3; the third arm has the lowest success probability but the
/// largest weight, so V = {2}.
inline BanditInstance weighted_instance() {
  Eigen::MatrixXd U(2, 3);
  U << 2, 0, 0.5,
       0, 2, 0.5;
  Eigen::VectorXd z(2);
  z << 0.2, 0.2;
  Eigen::VectorXd w(3);
  w << 0.1, 0.1, 1.0;
  return BanditInstance(U, z, w);
}

/// U = I, z* = (1, 0.2): V = {0}, delta = 0.4.
inline BanditInstance identity_instance() {
  Eigen::MatrixXd U = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd z(2);
  z << 1.0, 0.2;
  return BanditInstance(U, z);
}

/// n = 2, m = 3, unit weights, unique best arm.
inline BanditInstance small_instance() {
  Eigen::MatrixXd U(2, 3);
  U << 1, 0, 0.6,
       0, 1, 0.6;
  Eigen::VectorXd z(2);
  z << 0.8, 0.3;
  return BanditInstance(U, z);
}

}  // namespace tpb::fixtures
