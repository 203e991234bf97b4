#include <cmath>

#include <Eigen/Dense>

#include "diffgeo/curve.hpp"
#include "diffgeo/errors.hpp"

namespace diffgeo {

Vec3 apply(const RigidAlignment& a, const Vec3& p) {
  const auto& R = a.rotation;
  return Vec3{R[0][0] * p.x + R[0][1] * p.y + R[0][2] * p.z, R[1][0] * p.x + R[1][1] * p.y + R[1][2] * p.z,
              R[2][0] * p.x + R[2][1] * p.y + R[2][2] * p.z} +
         a.translation;
}

RigidAlignment rigid_align(std::span<const Vec3> from, std::span<const Vec3> to) {
  if (from.size() != to.size() || from.size() < 3)
    throw Error(ErrorCode::InvalidArgument, "alignment needs two point sets of equal size >= 3");
  const auto n = static_cast<Eigen::Index>(from.size());
  Eigen::Matrix3Xd P(3, n), Q(3, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec3& a = from[static_cast<std::size_t>(i)];
    const Vec3& b = to[static_cast<std::size_t>(i)];
    P.col(i) << a.x, a.y, a.z;
    Q.col(i) << b.x, b.y, b.z;
  }
  const Eigen::Vector3d pc = P.rowwise().mean(), qc = Q.rowwise().mean();
  P.colwise() -= pc;
  Q.colwise() -= qc;
  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(Q * P.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d D = Eigen::Matrix3d::Identity();
  D(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0 ? -1.0 : 1.0;
  const Eigen::Matrix3d R = svd.matrixU() * D * svd.matrixV().transpose();
  const Eigen::Vector3d t = qc - R * pc;

  RigidAlignment out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.rotation[i][j] = R(i, j);
  out.translation = {t(0), t(1), t(2)};
  double sum = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const Vec3 d = apply(out, from[i]) - to[i];
    sum += dot(d, d);
  }
  out.rms = std::sqrt(sum / static_cast<double>(from.size()));
  return out;
}

}  // namespace diffgeo
