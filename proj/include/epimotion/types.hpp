#ifndef EPIMOTION_TYPES_HPP
#define EPIMOTION_TYPES_HPP

#include <Eigen/Core>
#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace epimotion {

template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Mat3d = Mat3<double>;
using Vec3d = Vec3<double>;
using Vec2d = Vec2<double>;

// Row-major scalar fields indexed (y, x), matching image memory order.
template <typename Scalar>
using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using GridF = Grid<float>;
using GridD = Grid<double>;
using GridU8 = Grid<std::uint8_t>;

enum class ErrorCode {
  Io,
  ImageDecode,
  SetTooSmall,
  DimensionMismatch,
  UnknownMaskCode,
  DegenerateLine,
  InvalidPencilMember,
  DegeneratePatch,
  DescriptorKindMismatch,
  OutOfRange,
  SceneInvalid,
  InvalidConfig,
  NoPairAccepted,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline double wrapAngle2Pi(double a) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

// Signed smallest difference a-b wrapped into (-pi, pi].
inline double wrapAnglePi(double a) {
  constexpr double kPi = 3.1415926535897932384626433832795;
  constexpr double kTwoPi = 2.0 * kPi;
  a = std::fmod(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  if (a > kPi) a -= kTwoPi;
  return a;
}

}  // namespace epimotion

#endif
