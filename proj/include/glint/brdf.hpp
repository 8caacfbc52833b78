#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "glint/sg.hpp"
#include "glint/vec.hpp"

namespace glint {

// Below this cosine between the lobe axis and the view, the half-vector to
// light-domain warp blows up; callers skip the contribution instead.
inline constexpr double kGrazingEps = 1e-4;

struct Material {
    double roughness = 0.5;          // GGX alpha; scene loading clamps to [0.02, 1]
    Rgb specular{0.04, 0.04, 0.04};  // F0
    Rgb diffuse{0.5, 0.5, 0.5};
};

// GGX normal distribution, cosTheta = dot(n, h).
// Normalized so the cosine-weighted hemisphere integral is 1 for every alpha.
inline double ggx_ndf(double cos_theta, double roughness) {
    const double a2 = roughness * roughness;
    const double d = 1.0 - (1.0 - a2) * cos_theta * cos_theta;
    return a2 / (std::numbers::pi * d * d);
}

inline Rgb fresnel_schlick(const Rgb& f0, double cos_theta) {
    const double c = 1.0 - std::clamp(cos_theta, 0.0, 1.0);
    const double c2 = c * c;
    const double f = c2 * c2 * c;
    return f0 + (Rgb{1.0, 1.0, 1.0} - f0) * f;
}

// Height-correlated Smith visibility, the 1/(4 cosNI cosNV) factor included.
inline double smith_ggx_visibility(double cos_ni, double cos_nv, double roughness) {
    const double a2 = roughness * roughness;
    const double lv = cos_ni * std::sqrt(a2 + (1.0 - a2) * cos_nv * cos_nv);
    const double li = cos_nv * std::sqrt(a2 + (1.0 - a2) * cos_ni * cos_ni);
    return 0.5 / (lv + li);
}

// The low-frequency factor of the specular BRDF: Fresnel times visibility.
// i points toward the light, v toward the viewer. Zero below the horizon.
inline Rgb fresnel_visibility(const Vec3& i, const Vec3& v, const Vec3& n, const Material& mat) {
    const double cos_ni = dot(n, i);
    const double cos_nv = dot(n, v);
    if (cos_ni <= 0.0 || cos_nv <= 0.0) return {};
    const Vec3 h = normalize(i + v);
    return fresnel_schlick(mat.specular, dot(h, v)) *
           smith_ggx_visibility(cos_ni, cos_nv, mat.roughness);
}

// Two-factor specular BRDF: Fresnel-visibility times the GGX lobe.
inline Rgb brdf_eval(const Vec3& i, const Vec3& v, const Vec3& n, const Material& mat) {
    const double cos_ni = dot(n, i);
    const double cos_nv = dot(n, v);
    if (cos_ni <= 0.0 || cos_nv <= 0.0) return {};
    const Vec3 h = normalize(i + v);
    return fresnel_visibility(i, v, n, mat) * ggx_ndf(dot(n, h), mat.roughness);
}

// GGX lobe about the normal expressed as an isotropic spherical Gaussian:
// axis n, sharpness 2/alpha^2, amplitude 1/(pi alpha^2). Shares the peak value
// with ggx_ndf exactly.
inline SphericalGaussian ndf_as_sg(const Vec3& n, double roughness) {
    const double a2 = roughness * roughness;
    const double amp = 1.0 / (std::numbers::pi * a2);
    return {n, 2.0 / a2, {amp, amp, amp}};
}

// Re-express the half-vector NDF lobe over incident light directions for a
// fixed view v. The axis moves to the mirror reflection of v about the lobe
// axis and the sharpness scales by the Jacobian 4|h.v| (taken at the axis, the
// only choice that keeps the result a single lobe). Amplitude is unchanged.
// Returns nullopt at grazing |h.v|, where the warped sharpness diverges.
inline std::optional<SphericalGaussian> warp_ndf_to_light_domain(const SphericalGaussian& ndf,
                                                                 const Vec3& v) {
    const double hv = std::abs(dot(ndf.axis, v));
    if (hv <= kGrazingEps) return std::nullopt;
    return SphericalGaussian{reflect(v, ndf.axis), ndf.sharpness / (4.0 * hv), ndf.amplitude};
}

// Inverse-CDF sample of the GGX half-vector in a z-up local frame; the PDF
// over the hemisphere is ggx_ndf(cos(theta)) * cos(theta).
inline Vec3 ggx_sample_half_vector(double roughness, double u1, double u2) {
    const double a2 = roughness * roughness;
    const double cos2 = (1.0 - u1) / (1.0 + u1 * (a2 - 1.0));
    const double cos_t = std::sqrt(std::max(cos2, 0.0));
    const double sin_t = std::sqrt(std::max(1.0 - cos2, 0.0));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t};
}

}  // namespace glint
