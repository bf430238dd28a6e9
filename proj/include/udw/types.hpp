// types.hpp: Eigen aliases and error types shared across the library

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace udw {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Mat4c = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

using Vector3d = Vec3<double>;
using Matrix2cd = Mat2c<double>;
using Matrix4cd = Mat4c<double>;

// Input outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Two algebraic routes to the same quantity disagreed; signals a formula bug.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Adaptive quadrature did not reach the requested tolerance.
class NumericFailure : public std::runtime_error {
public:
    NumericFailure(const std::string& what, double error_estimate)
        : std::runtime_error(what + " (error estimate " + std::to_string(error_estimate) + ")")
        , error_estimate_(error_estimate) {}

    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

}  // namespace udw
