// qubit.hpp: Bloch-vector qubit states and Pauli helpers

#pragma once

#include <complex>

#include "udw/types.hpp"

namespace udw {

template <typename Scalar = double>
Mat2c<Scalar> pauli_x() {
    Mat2c<Scalar> m;
    m << 0, 1, 1, 0;
    return m;
}

template <typename Scalar = double>
Mat2c<Scalar> pauli_y() {
    using C = std::complex<Scalar>;
    Mat2c<Scalar> m;
    m << C(0), C(0, -1), C(0, 1), C(0);
    return m;
}

template <typename Scalar = double>
Mat2c<Scalar> pauli_z() {
    Mat2c<Scalar> m;
    m << 1, 0, 0, -1;
    return m;
}

// (1 + r . sigma) / 2 in the sigma_z eigenbasis {|0>, |1>}.
template <typename Scalar>
Mat2c<Scalar> density_from_bloch(const Vec3<Scalar>& r) {
    using C = std::complex<Scalar>;
    Mat2c<Scalar> rho;
    rho << C((1 + r.z()) / 2), C(r.x() / 2, -r.y() / 2),
           C(r.x() / 2, r.y() / 2), C((1 - r.z()) / 2);
    return rho;
}

template <typename Scalar>
Vec3<Scalar> bloch_from_density(const Mat2c<Scalar>& rho) {
    return {2 * rho(1, 0).real(), 2 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

inline constexpr double kBlochTolerance = 1e-12;

struct QubitState {
    Vector3d bloch{Vector3d::Zero()};

    QubitState() = default;
    QubitState(double x, double y, double z) : bloch(x, y, z) {}
    explicit QubitState(const Vector3d& r) : bloch(r) {}

    double x() const { return bloch.x(); }
    double y() const { return bloch.y(); }
    double z() const { return bloch.z(); }
    double radius() const { return bloch.norm(); }
    Matrix2cd density() const { return density_from_bloch(bloch); }

    // |r|^2 <= 1 + kBlochTolerance and all components finite.
    void validate() const;

    static QubitState maximally_mixed() { return {}; }
    // Pure state at polar angle `polar` and azimuth `azimuth` on the Bloch sphere.
    static QubitState pure(double polar, double azimuth);
};

}  // namespace udw
