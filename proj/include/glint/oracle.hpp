#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "glint/brdf.hpp"
#include "glint/interreflect.hpp"
#include "glint/scene.hpp"
#include "glint/sg.hpp"
#include "glint/vec.hpp"

namespace glint {

struct QuadratureSpec {
    long sample_count = 1'000'000;
    std::uint64_t seed = 0;  // 0 selects the deterministic Fibonacci lattice
};

inline std::uint64_t splitmix64(std::uint64_t s) {
    s += 0x9e3779b97f4a7c15ull;
    s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ull;
    s = (s ^ (s >> 27)) * 0x94d049bb133111ebull;
    return s ^ (s >> 31);
}

// Uniform double in [0, 1) from the engine's raw 64-bit output; avoids the
// implementation-defined std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline Vec3 fibonacci_sphere_point(long i, long n) {
    constexpr double golden_angle = std::numbers::pi * (3.0 - 2.2360679774997896964);  // pi(3-sqrt 5)
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    return {r * std::cos(phi), r * std::sin(phi), z};
}

// Mean over the sphere times 4 pi. Lattice mode (seed 0) is deterministic and
// near-spectral for smooth lobes; otherwise plain uniform Monte Carlo.
template <class Fn>
double spherical_quadrature(Fn&& fn, const QuadratureSpec& spec) {
    const long n = spec.sample_count;
    double sum = 0.0;
    if (spec.seed == 0) {
        for (long i = 0; i < n; ++i) sum += fn(fibonacci_sphere_point(i, n));
    } else {
        std::mt19937_64 rng(spec.seed);
        for (long i = 0; i < n; ++i) {
            const double z = 2.0 * uniform01(rng) - 1.0;
            const double phi = 2.0 * std::numbers::pi * uniform01(rng);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            sum += fn(Vec3{r * std::cos(phi), r * std::sin(phi), z});
        }
    }
    return sum / n * 4.0 * std::numbers::pi;
}

// Brute-force one-bounce transport from a single rectangle: uniform area
// sampling, true GGX BRDF at both ends, no lobe approximations anywhere.
// Deterministic for a given seed.
inline Rgb mc_one_bounce(const ShadingPoint& x, const RectangleProxy& rect,
                         std::span<const DirectionalLight> lights, const QuadratureSpec& spec) {
    std::mt19937_64 rng(spec.seed);
    const double area = 4.0 * rect.half_u * rect.half_v;
    Rgb sum;
    for (long s = 0; s < spec.sample_count; ++s) {
        const double su = 2.0 * uniform01(rng) - 1.0;
        const double sv = 2.0 * uniform01(rng) - 1.0;
        const Vec3 y = rect.center + rect.edge_u * (su * rect.half_u) + rect.edge_v * (sv * rect.half_v);
        const Vec3 d = x.position - y;
        const double dist2 = dot(d, d);
        if (dist2 < 1e-12) continue;
        const Vec3 r = d / std::sqrt(dist2);  // y toward x
        const double cos_ry = dot(r, rect.normal);
        if (cos_ry <= 0.0) continue;
        const double cos_rx = dot(-r, x.normal);
        if (cos_rx <= 0.0) continue;

        Rgb outgoing;  // radiance leaving y toward x
        for (const DirectionalLight& light : lights) {
            const double cos_in = dot(light.direction, rect.normal);
            if (cos_in <= 0.0) continue;
            outgoing += light.radiance * brdf_eval(light.direction, r, rect.normal, rect.material) * cos_in;
        }
        sum += outgoing * brdf_eval(-r, x.view, x.normal, x.material) * (cos_rx * cos_ry / dist2);
    }
    return sum / static_cast<double>(spec.sample_count) * area;
}

struct FitErrorRow {
    double theta = 0.0;
    double exact = 0.0;
    double fitted = 0.0;
};

// Tabulates the exact normalized GGX falloff against its exponential fit over
// theta in [0, pi/2).
inline std::vector<FitErrorRow> fit_error_report(double sigma, double roughness,
                                                 int theta_samples) {
    const double k = k_factor(std::cos(sigma), roughness);
    std::vector<FitErrorRow> rows;
    rows.reserve(theta_samples);
    for (int j = 0; j < theta_samples; ++j) {
        const double theta = 0.5 * std::numbers::pi * j / theta_samples;
        rows.push_back({theta, exact_integrand(theta, sigma, roughness), fitted_integrand(theta, k)});
    }
    return rows;
}

struct ConvErrorRow {
    double lambda = 0.0;
    double closed_form = 0.0;
    double quadrature = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
};

// Error of the closed-form ASG x SG product integral against quadrature, for
// an ASG [lambda, lambda] about +z paired with an SG of sharpness 2 lambda
// whose axis sits ~26.6 degrees off the lobe. Both error flavors are emitted;
// the absolute one is the curve that shrinks as the bandwidth grows.
inline std::vector<ConvErrorRow> convolution_error_report(std::span<const double> lambdas,
                                                          const QuadratureSpec& spec = {}) {
    std::vector<ConvErrorRow> rows;
    rows.reserve(lambdas.size());
    const Vec3 axis = normalize(Vec3{0.5, 0.0, 1.0});
    for (const double lambda : lambdas) {
        const AnisotropicSphericalGaussian asg = make_asg(
            {0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, lambda, lambda, {1.0, 1.0, 1.0});
        const SphericalGaussian sg = make_sg(axis, 2.0 * lambda, {1.0, 1.0, 1.0});
        const double closed = convolve(asg, sg).r;
        const double quad = spherical_quadrature(
            [&](const Vec3& v) { return eval(asg, v).r * eval(sg, v).r; }, spec);
        const double abs_err = std::abs(closed - quad);
        rows.push_back({lambda, closed, quad, abs_err, quad != 0.0 ? abs_err / quad : 0.0});
    }
    return rows;
}

namespace detail {
inline void csv_value(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    os << buf;
}
}  // namespace detail

inline void write_csv(std::ostream& os, std::span<const FitErrorRow> rows) {
    os << "theta,exact,fitted\n";
    for (const FitErrorRow& r : rows) {
        detail::csv_value(os, r.theta);
        os << ',';
        detail::csv_value(os, r.exact);
        os << ',';
        detail::csv_value(os, r.fitted);
        os << '\n';
    }
}

inline void write_csv(std::ostream& os, std::span<const ConvErrorRow> rows) {
    os << "lambda,closed_form,quadrature,abs_error,rel_error\n";
    for (const ConvErrorRow& r : rows) {
        detail::csv_value(os, r.lambda);
        os << ',';
        detail::csv_value(os, r.closed_form);
        os << ',';
        detail::csv_value(os, r.quadrature);
        os << ',';
        detail::csv_value(os, r.abs_error);
        os << ',';
        detail::csv_value(os, r.rel_error);
        os << '\n';
    }
}

}  // namespace glint
