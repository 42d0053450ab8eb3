#ifndef EPIMOTION_EPIPOLAR_HPP
#define EPIMOTION_EPIPOLAR_HPP

#include "epimotion/types.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <vector>

namespace epimotion {

/// A putative match between the reference and support image, sub-pixel.
struct Correspondence {
  Vec2d ref;
  Vec2d sup;
  double score = 0.0;  // match quality in [0, 1]
};

enum class ImageSide { Reference, Support };

/// Scale F to unit Frobenius norm with a canonical sign (largest-magnitude
/// entry positive), so equal geometries compare bit-stable.
template <typename Scalar>
Mat3<Scalar> normalizedF(const Mat3<Scalar>& F) {
  Scalar n = F.norm();
  if (n <= Scalar(0)) return F;
  Mat3<Scalar> out = F / n;
  int r = 0, c = 0;
  out.cwiseAbs().maxCoeff(&r, &c);
  if (out(r, c) < Scalar(0)) out = -out;
  return out;
}

/// Nearest rank-2 matrix (smallest singular value zeroed), then renormalized.
template <typename Scalar>
Mat3<Scalar> enforceRank2(const Mat3<Scalar>& F) {
  Eigen::JacobiSVD<Mat3<Scalar>> svd(F, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vec3<Scalar> s = svd.singularValues();
  s[2] = Scalar(0);
  return normalizedF<Scalar>(svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose());
}

/// Null direction of F on the requested side, unit-normalized.
/// Reference side: F e = 0. Support side: F^T e' = 0.
template <typename Scalar>
Vec3<Scalar> epipoleOf(const Mat3<Scalar>& F, ImageSide side) {
  Eigen::JacobiSVD<Mat3<Scalar>> svd(F, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vec3<Scalar> e = side == ImageSide::Reference ? svd.matrixV().col(2) : svd.matrixU().col(2);
  e.normalize();
  // Canonical sign: last nonzero coordinate positive.
  for (int i = 2; i >= 0; --i) {
    if (std::abs(e[i]) > Scalar(1e-14)) {
      if (e[i] < Scalar(0)) e = -e;
      break;
    }
  }
  return e;
}

/// Epipolar line of a reference point, normalized so (a, b) is unit length.
/// Throws if x coincides with the reference epipole (the null line).
template <typename Scalar>
Vec3<Scalar> epipolarLine(const Mat3<Scalar>& F, const Vec2<Scalar>& x) {
  Vec3<Scalar> l = F * x.homogeneous();
  const Scalar n = l.template head<2>().norm();
  if (n < Scalar(1e-12) * (Scalar(1) + std::abs(l[2])))
    throw Error(ErrorCode::DegenerateLine, "point maps to a degenerate epipolar line");
  l /= n;
  if (l[0] < Scalar(0) || (l[0] == Scalar(0) && l[1] < Scalar(0))) l = -l;
  return l;
}

template <typename Scalar>
Vec3<Scalar> normalizedLine(const Vec3<Scalar>& l) {
  const Scalar n = l.template head<2>().norm();
  if (n < Scalar(1e-300)) throw Error(ErrorCode::DegenerateLine, "zero line normal");
  Vec3<Scalar> out = l / n;
  if (out[0] < Scalar(0) || (out[0] == Scalar(0) && out[1] < Scalar(0))) out = -out;
  return out;
}

/// Maps a pencil member in the reference image to the corresponding epipolar
/// line in the support image. The input line must pass through the reference
/// epipole; the result passes through the support epipole by construction.
template <typename Scalar>
Vec3<Scalar> correspondingLine(const Mat3<Scalar>& F, const Vec3<Scalar>& epipoleRef,
                               const Vec3<Scalar>& lineRef) {
  const Vec3<Scalar> l = normalizedLine(lineRef);
  const Vec3<Scalar> e = epipoleRef.normalized();
  if (std::abs(l.dot(e)) > Scalar(1e-6))
    throw Error(ErrorCode::InvalidPencilMember, "line does not pass through the reference epipole");
  // Two well-spread finite points on the line; take the one farther from the
  // epipole so F*x cannot collapse onto the null direction.
  const Vec2<Scalar> n(l[0], l[1]);
  const Vec2<Scalar> d(-l[1], l[0]);
  const Vec2<Scalar> p0 = -l[2] * n;
  Scalar span = Scalar(1);
  if (std::abs(e[2]) > Scalar(1e-12)) {
    const Vec2<Scalar> ef = e.template head<2>() / e[2];
    span += (p0 - ef).norm();
  }
  const Vec2<Scalar> pa = p0 + span * d;
  const Vec2<Scalar> pb = p0 - span * d;
  const auto lineDot = [&](const Vec2<Scalar>& p) {
    Vec3<Scalar> fx = F * p.homogeneous();
    return fx.template head<2>().norm();
  };
  const Vec2<Scalar>& pick = lineDot(pa) >= lineDot(pb) ? pa : pb;
  return normalizedLine<Scalar>(F * pick.homogeneous());
}

/// First-order geometric residual of a correspondence, in pixels.
template <typename Scalar>
Scalar sampsonDistance(const Mat3<Scalar>& F, const Vec2<Scalar>& xRef, const Vec2<Scalar>& xSup) {
  const Vec3<Scalar> x1 = xRef.homogeneous();
  const Vec3<Scalar> x2 = xSup.homogeneous();
  const Vec3<Scalar> Fx1 = F * x1;
  const Vec3<Scalar> Ftx2 = F.transpose() * x2;
  const Scalar num = x2.dot(Fx1);
  const Scalar den2 = Fx1[0] * Fx1[0] + Fx1[1] * Fx1[1] + Ftx2[0] * Ftx2[0] + Ftx2[1] * Ftx2[1];
  if (den2 <= Scalar(0)) return std::numeric_limits<Scalar>::infinity();
  return std::abs(num) / std::sqrt(den2);
}

/// Normalized eight-point estimate from >= 8 correspondences, rank-2 enforced.
/// Returns false when the system is too degenerate to condition.
template <typename Scalar>
bool eightPoint(const std::vector<Correspondence>& matches, const std::vector<int>& idx,
                Mat3<Scalar>& out) {
  const int n = static_cast<int>(idx.size());
  if (n < 8) return false;
  // Hartley conditioning: centroid to origin, mean distance sqrt(2).
  auto condition = [&](bool sup, Mat3<Scalar>& T) {
    Vec2<Scalar> mean = Vec2<Scalar>::Zero();
    for (int i : idx) mean += (sup ? matches[i].sup : matches[i].ref).template cast<Scalar>();
    mean /= Scalar(n);
    Scalar dist = Scalar(0);
    for (int i : idx)
      dist += ((sup ? matches[i].sup : matches[i].ref).template cast<Scalar>() - mean).norm();
    dist /= Scalar(n);
    if (dist < Scalar(1e-9)) return false;
    const Scalar s = std::sqrt(Scalar(2)) / dist;
    T.setZero();
    T(0, 0) = s;
    T(1, 1) = s;
    T(2, 2) = Scalar(1);
    T(0, 2) = -s * mean[0];
    T(1, 2) = -s * mean[1];
    return true;
  };
  Mat3<Scalar> T1, T2;
  if (!condition(false, T1) || !condition(true, T2)) return false;

  Eigen::Matrix<Scalar, Eigen::Dynamic, 9> A(n, 9);
  for (int r = 0; r < n; ++r) {
    const Vec3<Scalar> p1 = T1 * matches[idx[r]].ref.template cast<Scalar>().homogeneous();
    const Vec3<Scalar> p2 = T2 * matches[idx[r]].sup.template cast<Scalar>().homogeneous();
    A.row(r) << p2[0] * p1[0], p2[0] * p1[1], p2[0] * p1[2],
                p2[1] * p1[0], p2[1] * p1[1], p2[1] * p1[2],
                p2[2] * p1[0], p2[2] * p1[1], p2[2] * p1[2];
  }
  Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, 9>> svd(A, Eigen::ComputeFullV);
  const Eigen::Matrix<Scalar, 9, 1> f = svd.matrixV().col(8);
  Mat3<Scalar> Fc;
  Fc << f[0], f[1], f[2], f[3], f[4], f[5], f[6], f[7], f[8];
  out = enforceRank2<Scalar>(T2.transpose() * Fc * T1);
  return out.allFinite();
}

/// Fundamental matrix of the ordered camera pair (reference -> support):
/// x_sup^T F x_ref = 0, built from projection geometry.
template <typename Scalar>
Mat3<Scalar> fundamentalFromCameras(const Mat3<Scalar>& Kr, const Mat3<Scalar>& Rr, const Vec3<Scalar>& Cr,
                                    const Mat3<Scalar>& Ks, const Mat3<Scalar>& Rs, const Vec3<Scalar>& Cs) {
  const Vec3<Scalar> eSup = Ks * (Rs * (Cr - Cs));  // support epipole (image of C_ref)
  Mat3<Scalar> ex;
  ex << Scalar(0), -eSup[2], eSup[1],
        eSup[2], Scalar(0), -eSup[0],
        -eSup[1], eSup[0], Scalar(0);
  const Mat3<Scalar> H = Ks * Rs * Rr.transpose() * Kr.inverse();
  return normalizedF<Scalar>(Mat3<Scalar>(ex * H));
}

}  // namespace epimotion

#endif
