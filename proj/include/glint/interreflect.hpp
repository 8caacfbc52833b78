#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>

#include "glint/brdf.hpp"
#include "glint/scene.hpp"
#include "glint/sg.hpp"
#include "glint/vec.hpp"

namespace glint {

inline constexpr double kPeakCosEps = 1e-6;
inline constexpr double kAxisDegenEps = 1e-6;
inline constexpr double kBandwidthFloor = 1e-2;
inline constexpr double kSeriesKEps = 1e-3;

// Point on a reflector plane whose half vector between the incident light and
// the direction toward the shading point equals the reflector normal.
struct SpecularPeak {
    Vec3 position;
    Vec3 reflected_dir;    // from the peak toward the shading point
    double cos_sigma = 1.0;  // dot(light, reflector normal)
};

struct AttenuationAxes {
    Vec3 u;  // in the plane spanned by the reflector normal and peak->x
    Vec3 v;  // perpendicular to that plane, in the reflector plane
    bool degenerate = false;
};

struct DiskRadiance {
    Rgb peak_radiance;
    double k = 0.0;              // falloff coefficient of the fitted integrand
    double t = 0.0;              // sin^2 of the cap aperture
    double area_fraction = 1.0;  // disk area covered by the rectangle
    Rgb total;                   // radiance integrated over the covered disk
};

enum class ShadeMode { Asg, SgFast };

// Mirror the light about the reflector normal and intersect that direction,
// anchored at x, with the reflector plane. No peak when the light grazes or
// sits behind the plane, or when x is not in front of it.
inline std::optional<SpecularPeak> find_specular_peak(const RectangleProxy& rect, const Vec3& x,
                                                      const Vec3& light_dir) {
    const double cos_sigma = dot(light_dir, rect.normal);
    if (cos_sigma <= kPeakCosEps) return std::nullopt;
    const double height = dot(x - rect.center, rect.normal);
    if (height <= kPeakCosEps) return std::nullopt;
    const Vec3 r = reflect(light_dir, rect.normal);
    return SpecularPeak{x - r * (height / cos_sigma), r, cos_sigma};
}

// Frame expressing how reflected radiance falls off away from the peak: u is
// the representative attenuation direction, v the transverse one. When the
// x direction coincides with the reflector normal the attenuation is
// isotropic and any in-plane pair works.
inline AttenuationAxes attenuation_axes(const Vec3& peak, const Vec3& x, const Vec3& rect_normal) {
    const Vec3 to_x = normalize(x - peak);
    const Vec3 raw = cross(to_x, rect_normal);
    const double len = norm(raw);
    if (len < kAxisDegenEps) {
        auto [u, v] = orthonormal_basis(rect_normal);
        return {u, v, true};
    }
    const Vec3 v = raw / len;
    return {cross(rect_normal, v), v, false};
}

// Reflected radiance leaving the peak toward x. The BRDF-over-PDF ratio at
// the peak reduces to pi alpha^2 f_r because the half vector coincides with
// the normal there, so the GGX factor cancels its own peak density.
inline Rgb peak_radiance(const RectangleProxy& rect, const SpecularPeak& peak, const Vec3& x,
                         std::span<const DirectionalLight> lights) {
    const Vec3 r = normalize(x - peak.position);
    const double a2 = rect.material.roughness * rect.material.roughness;
    Rgb sum;
    for (const DirectionalLight& light : lights) {
        const double cos_in = dot(light.direction, rect.normal);
        if (cos_in <= 0.0) continue;
        sum += light.radiance * brdf_eval(light.direction, r, rect.normal, rect.material) *
               (std::numbers::pi * a2 * cos_in);
    }
    return sum;
}

// Falloff coefficient fitted to the normalized GGX ratio along the
// attenuation axis. Negative for rough materials or grazing sigma.
inline double k_factor(double cos_sigma, double roughness) {
    return 0.288 * cos_sigma / (roughness * roughness) - 0.673;
}

// Angle between the reflector normal and the half vector at the disk point
// seen under aperture angle theta, for a light at angle sigma.
inline double half_angle_at(double theta, double sigma) {
    const double sec = 1.0 / std::cos(sigma);
    return -0.5 * sigma + 0.5 * std::atan(sec * sec * std::tan(theta) + std::tan(sigma));
}

// Normalized GGX falloff along the attenuation axis: D(theta_h)/D(0). Equals
// 1 at theta = 0 for every sigma and roughness.
inline double exact_integrand(double theta, double sigma, double roughness) {
    const double c = std::cos(half_angle_at(theta, sigma));
    const double a2 = roughness * roughness;
    const double den = 1.0 - (1.0 - a2) * c * c;
    return a2 * a2 / (den * den);
}

// exp(-k sin^2 theta) cos(theta); the analytically integrable stand-in for
// exact_integrand.
inline double fitted_integrand(double theta, double k) {
    const double s = std::sin(theta);
    return std::exp(-k * s * s) * std::cos(theta);
}

// Radiance from the sampling disk: area fraction times the closed-form cap
// integral of the fitted falloff, pi/k (1 - exp(-k t)), scaled by the peak
// radiance. A series branch keeps the expression smooth through k = 0; the
// closed form itself stays positive for negative k.
inline DiskRadiance integrate_disk_radiance(const Rgb& peak_rad, double k, double disk_radius,
                                            double cos_sigma, double area_fraction) {
    const double rc = disk_radius * cos_sigma;
    const double t = 1.0 - 1.0 / (1.0 + rc * rc);
    double cap;
    if (std::abs(k) < kSeriesKEps) {
        const double kt = k * t;
        cap = std::numbers::pi * t * (1.0 - 0.5 * kt + kt * kt / 6.0);
    } else {
        cap = std::numbers::pi / k * (1.0 - std::exp(-k * t));
    }
    DiskRadiance out;
    out.peak_radiance = peak_rad;
    out.k = k;
    out.t = t;
    out.area_fraction = area_fraction;
    out.total = peak_rad * (cap * area_fraction);
    return out;
}

// Fit an anisotropic lobe, seen from x, to the radiance leaving the disk:
// the disk projects to an ellipse-like region on the unit sphere at x whose
// half-extents set the bandwidths, and the amplitude is chosen so the lobe
// integral reproduces total_radiance exactly.
inline AnisotropicSphericalGaussian build_asg_light(const SpecularPeak& peak, const Vec3& x,
                                                    const SamplingDisk& disk,
                                                    const Rgb& total_radiance) {
    const Vec3 diff = peak.position - x;
    const double dist = norm(diff);
    const Vec3 lobe = diff / dist;
    const AttenuationAxes axes = attenuation_axes(peak.position, x, disk.normal);
    const Vec3 tangent = axes.v;
    const Vec3 bitangent = normalize(cross(-lobe, axes.v));

    const double extent_t = disk.radius / dist;
    const double extent_b = extent_t * std::abs(dot(disk.normal, -lobe));
    const auto bandwidth = [](double extent) {
        const double e2 = extent * extent;
        return std::max((1.0 + 1.0 / e2) * (2.996 - 0.5 * std::log1p(e2)), kBandwidthFloor);
    };
    const double lambda = bandwidth(extent_t);
    const double mu = bandwidth(extent_b);
    const Rgb amplitude = total_radiance * (std::sqrt(lambda * mu) / std::numbers::pi);
    return {lobe, tangent, bitangent, lambda, mu, amplitude};
}

// One-bounce glossy contribution of a single reflector at a shading point:
// per light, specular peak -> covered-disk radiance -> anisotropic light lobe,
// convolved against the receiver's warped NDF lobe and scaled by the
// low-frequency receiver terms. Degenerate stages contribute zero.
inline Rgb shade_indirect_specular(const ShadingPoint& x, const RectangleProxy& rect,
                                   std::span<const DirectionalLight> lights, double disk_radius,
                                   ShadeMode mode) {
    const auto warped = warp_ndf_to_light_domain(ndf_as_sg(x.normal, x.material.roughness), x.view);
    if (!warped) return {};

    Rgb out;
    for (const DirectionalLight& light : lights) {
        const auto peak = find_specular_peak(rect, x.position, light.direction);
        if (!peak) continue;
        const SamplingDisk disk{peak->position, disk_radius, rect.normal};
        const double fraction = intersection_area_fraction(rect, disk);
        if (fraction <= 0.0) continue;
        const DirectionalLight single[] = {light};
        const Rgb peak_rad = peak_radiance(rect, *peak, x.position, single);
        const double k = k_factor(peak->cos_sigma, rect.material.roughness);
        const DiskRadiance disk_rad =
            integrate_disk_radiance(peak_rad, k, disk_radius, peak->cos_sigma, fraction);
        const AnisotropicSphericalGaussian asg =
            build_asg_light(*peak, x.position, disk, disk_rad.total);

        const Rgb transported = mode == ShadeMode::Asg
                                    ? convolve(asg, *warped)
                                    : product_integral(to_isotropic(asg), *warped);

        const Vec3 to_peak = asg.lobe;
        const double cos_nx = dot(to_peak, x.normal);
        if (cos_nx <= 0.0) continue;
        out += fresnel_visibility(to_peak, x.view, x.normal, x.material) * transported * cos_nx;
    }
    return out;
}

}  // namespace glint
