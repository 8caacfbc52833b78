#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "glint/brdf.hpp"
#include "glint/vec.hpp"

namespace glint {

inline constexpr double kRayEps = 1e-5;
inline constexpr double kOnSurfaceEps = 1e-6;

// Planar reflector with an orthonormal frame {edge_u, edge_v, normal}.
struct RectangleProxy {
    Vec3 center;
    Vec3 normal{0.0, 1.0, 0.0};
    Vec3 edge_u{1.0, 0.0, 0.0};
    Vec3 edge_v{0.0, 0.0, 1.0};
    double half_u = 1.0;
    double half_v = 1.0;
    Material material;
    int id = 0;
};

struct DirectionalLight {
    Vec3 direction{0.0, 1.0, 0.0};  // toward the light
    Rgb radiance{1.0, 1.0, 1.0};
};

// Disk in a reflector plane; normal equals the owning rectangle's normal.
struct SamplingDisk {
    Vec3 center;
    double radius = 0.5;
    Vec3 normal{0.0, 1.0, 0.0};
};

struct Camera {
    Vec3 position{0.0, 1.0, 3.0};
    Vec3 look_at;
    Vec3 up{0.0, 1.0, 0.0};
    double vertical_fov_deg = 45.0;
    int width = 256;
    int height = 256;
};

struct Scene {
    std::vector<RectangleProxy> rectangles;
    std::vector<DirectionalLight> lights;
    Camera camera;
    Rgb background;
};

// Receiver-side shading inputs: position, shading normal, unit direction
// toward the viewer, and the surface material.
struct ShadingPoint {
    Vec3 position;
    Vec3 normal{0.0, 1.0, 0.0};
    Vec3 view{0.0, 1.0, 0.0};
    Material material;
};

struct RayHit {
    int rect_id = -1;
    double t = 0.0;
    Vec3 point;
    Vec3 normal;
};

inline bool rectangle_contains(const RectangleProxy& rect, const Vec3& p,
                               double tol = kOnSurfaceEps) {
    const Vec3 d = p - rect.center;
    return std::abs(dot(d, rect.normal)) <= tol && std::abs(dot(d, rect.edge_u)) <= rect.half_u + tol &&
           std::abs(dot(d, rect.edge_v)) <= rect.half_v + tol;
}

// Fraction of the disk covered by the rectangle, approximated as the area of
// the disk's bounding square clipped to the rectangle over the disk area, and
// clamped to 1 so a fully contained disk cannot gain energy.
inline double intersection_area_fraction(const RectangleProxy& rect, const SamplingDisk& disk) {
    const Vec3 d = disk.center - rect.center;
    const double cx = dot(d, rect.edge_u);
    const double cy = dot(d, rect.edge_v);
    const double r = disk.radius;
    const double w = std::min(cx + r, rect.half_u) - std::max(cx - r, -rect.half_u);
    const double h = std::min(cy + r, rect.half_v) - std::max(cy - r, -rect.half_v);
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return std::min(1.0, w * h / (std::numbers::pi * r * r));
}

// All rectangles that could reflect toward x: everything except surfaces
// containing x itself. Order follows ids.
inline std::vector<const RectangleProxy*> query_proxies(const Scene& scene, const Vec3& x) {
    std::vector<const RectangleProxy*> out;
    out.reserve(scene.rectangles.size());
    for (const RectangleProxy& rect : scene.rectangles)
        if (!rectangle_contains(rect, x)) out.push_back(&rect);
    std::sort(out.begin(), out.end(),
              [](const RectangleProxy* a, const RectangleProxy* b) { return a->id < b->id; });
    return out;
}

// Nearest rectangle along the ray with t > kRayEps; the returned normal faces
// the ray origin.
inline std::optional<RayHit> ray_scene_intersect(const Scene& scene, const Vec3& origin,
                                                 const Vec3& dir) {
    std::optional<RayHit> best;
    for (const RectangleProxy& rect : scene.rectangles) {
        const double denom = dot(dir, rect.normal);
        if (std::abs(denom) < 1e-12) continue;
        const double t = dot(rect.center - origin, rect.normal) / denom;
        if (t <= kRayEps) continue;
        if (best && t >= best->t) continue;
        const Vec3 p = origin + dir * t;
        const Vec3 d = p - rect.center;
        if (std::abs(dot(d, rect.edge_u)) > rect.half_u || std::abs(dot(d, rect.edge_v)) > rect.half_v)
            continue;
        best = RayHit{rect.id, t, p, denom < 0.0 ? rect.normal : -rect.normal};
    }
    return best;
}

}  // namespace glint
