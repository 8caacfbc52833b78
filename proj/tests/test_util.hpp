#pragma once

// Shared helpers for the test suites: deterministic random directions and
// frames, and simple 1D quadrature used as an independent oracle.

#include <cmath>
#include <numbers>
#include <random>

#include "glint/vec.hpp"

namespace testutil {

inline double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline glint::Vec3 random_direction(std::mt19937_64& rng) {
    const double z = 2.0 * uniform01(rng) - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
}

struct Frame {
    glint::Vec3 z, x, y;
};

inline Frame random_frame(std::mt19937_64& rng) {
    const glint::Vec3 z = random_direction(rng);
    glint::Vec3 helper = random_direction(rng);
    while (std::abs(dot(helper, z)) > 0.9) helper = random_direction(rng);
    const glint::Vec3 x = normalize(cross(helper, z));
    return {z, x, cross(z, x)};
}

// Composite Simpson rule on [a, b].
template <class Fn>
double simpson(Fn&& f, double a, double b, int intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace testutil
