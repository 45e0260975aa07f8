#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace elastoscat {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  InvalidArgument = 1,
  Geometry = 2,
  SingularSystem = 3,
  Parse = 4,
  Io = 5,
  NotConverged = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& what) : Error(ErrorCode::Geometry, what) {}
};

class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& what) : Error(ErrorCode::SingularSystem, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::Parse, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace elastoscat
