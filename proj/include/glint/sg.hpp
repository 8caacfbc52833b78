#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "glint/vec.hpp"

namespace glint {

// Smallest bandwidth/sharpness the factory functions hand out; several closed
// forms divide by these values.
inline constexpr double kMinBandwidth = 1e-4;

// Isotropic lobe: amplitude * exp(sharpness * (dot(v, axis) - 1)).
// Equivalent to an unnormalized von Mises-Fisher distribution.
struct SphericalGaussian {
    Vec3 axis{0.0, 0.0, 1.0};
    double sharpness = 1.0;
    Rgb amplitude{1.0, 1.0, 1.0};
};

// Anisotropic lobe over the orthonormal frame {lobe, tangent, bitangent}:
//   amplitude * max(dot(v, lobe), 0) * exp(-lambda dot(v,tangent)^2 - mu dot(v,bitangent)^2)
struct AnisotropicSphericalGaussian {
    Vec3 lobe{0.0, 0.0, 1.0};
    Vec3 tangent{1.0, 0.0, 0.0};
    Vec3 bitangent{0.0, 1.0, 0.0};
    double lambda = 1.0;
    double mu = 1.0;
    Rgb amplitude{1.0, 1.0, 1.0};
};

inline SphericalGaussian make_sg(const Vec3& axis, double sharpness, const Rgb& amplitude) {
    return {axis, std::max(sharpness, kMinBandwidth), amplitude};
}

inline AnisotropicSphericalGaussian make_asg(const Vec3& lobe, const Vec3& tangent,
                                             const Vec3& bitangent, double lambda, double mu,
                                             const Rgb& amplitude) {
    return {lobe, tangent, bitangent, std::max(lambda, kMinBandwidth),
            std::max(mu, kMinBandwidth), amplitude};
}

inline Rgb eval(const SphericalGaussian& sg, const Vec3& v) {
    return sg.amplitude * std::exp(sg.sharpness * (dot(v, sg.axis) - 1.0));
}

inline Rgb eval(const AnisotropicSphericalGaussian& asg, const Vec3& v) {
    const double smooth = std::max(dot(v, asg.lobe), 0.0);
    const double tu = dot(v, asg.tangent);
    const double tv = dot(v, asg.bitangent);
    return asg.amplitude * (smooth * std::exp(-asg.lambda * tu * tu - asg.mu * tv * tv));
}

// Polar form of the anisotropic lobe; theta/phi/eta are the angles between v
// and the lobe/tangent/bitangent axes. Matches eval() under that angle
// correspondence (the smooth term clamps cos(theta) at zero).
inline Rgb eval_asg_polar(double theta, double phi, double eta, double lambda, double mu,
                          const Rgb& amplitude) {
    const double ct = std::max(std::cos(theta), 0.0);
    const double cp = std::cos(phi);
    const double ce = std::cos(eta);
    return amplitude * (ct * std::exp(-lambda * cp * cp - mu * ce * ce));
}

// Closed-form sphere integral of an isotropic lobe: 2 pi a / nu * (1 - exp(-2 nu)).
inline Rgb integral(const SphericalGaussian& sg) {
    return sg.amplitude *
           (2.0 * std::numbers::pi / sg.sharpness * (1.0 - std::exp(-2.0 * sg.sharpness)));
}

// Sphere integral of an anisotropic lobe, approximated as pi / sqrt(lambda mu) * amplitude.
// Exact up to an exp(-lambda) remainder for the isotropic case; excellent for bandwidths >= ~5.
inline Rgb integral(const AnisotropicSphericalGaussian& asg) {
    return asg.amplitude * (std::numbers::pi / std::sqrt(asg.lambda * asg.mu));
}

// Product integral of two isotropic lobes:
//   4 pi a1 a2 exp(-(nu1+nu2)) * sinh(d)/d,  d = |nu1 p1 + nu2 p2|
// evaluated in exp-difference form so large sharpness cannot overflow, with a
// series branch across the removable singularity at d -> 0.
inline Rgb product_integral(const SphericalGaussian& a, const SphericalGaussian& b) {
    const Vec3 m = a.axis * a.sharpness + b.axis * b.sharpness;
    const double d = norm(m);
    const double s = a.sharpness + b.sharpness;
    double val;
    if (d < 1e-4) {
        val = 4.0 * std::numbers::pi * std::exp(-s) * (1.0 + d * d / 6.0);
    } else {
        val = 2.0 * std::numbers::pi * (std::exp(d - s) - std::exp(-d - s)) / d;
    }
    return a.amplitude * b.amplitude * val;
}

// Convolved lobe for the product integral of an anisotropic and an isotropic
// lobe: integrating G_asg * G_sg over the sphere, as a function of the SG axis,
// is approximately an anisotropic lobe in that axis. With m = sharpness/2:
//   bandwidths [m lambda/(m+lambda), m mu/(m+mu)],
//   amplitude  pi / sqrt((lambda+m)(mu+m)) * (asg.amplitude * sg.amplitude).
// The m = sharpness/2 convention is the one that reproduces brute-force
// quadrature (and is exact in the sharp-SG limit, where the integral tends to
// G_asg(axis) * 2 pi / sharpness).
inline AnisotropicSphericalGaussian convolved_lobe(const AnisotropicSphericalGaussian& asg,
                                                   const SphericalGaussian& sg) {
    const double m = 0.5 * sg.sharpness;
    AnisotropicSphericalGaussian out = asg;
    out.lambda = m * asg.lambda / (m + asg.lambda);
    out.mu = m * asg.mu / (m + asg.mu);
    out.amplitude = asg.amplitude * sg.amplitude *
                    (std::numbers::pi / std::sqrt((asg.lambda + m) * (asg.mu + m)));
    return out;
}

// Product integral of an anisotropic and an isotropic lobe, evaluated at the
// SG axis. Accuracy degrades when the ASG bandwidths drop below ~50 (the
// convolution error study quantifies this).
inline Rgb convolve(const AnisotropicSphericalGaussian& asg, const SphericalGaussian& sg) {
    return eval(convolved_lobe(asg, sg), sg.axis);
}

// Collapse an anisotropic lobe to an isotropic one about the same axis with
// sharpness twice the larger bandwidth. Drops the anisotropy; the integral is
// off by a factor sqrt(max(lambda,mu)/min(lambda,mu)).
inline SphericalGaussian to_isotropic(const AnisotropicSphericalGaussian& asg) {
    return {asg.lobe, 2.0 * std::max(asg.lambda, asg.mu), asg.amplitude};
}

}  // namespace glint
