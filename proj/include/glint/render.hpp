#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <thread>
#include <vector>

#include "glint/image.hpp"
#include "glint/interreflect.hpp"
#include "glint/oracle.hpp"
#include "glint/scene.hpp"

namespace glint {

enum class RenderMode { ApproxAsg, ApproxSg, Reference };

struct RenderParams {
    double disk_radius = 0.5;
    long spp = 4096;           // reference mode only
    std::uint64_t seed = 0;
    bool indirect_only = false;
    int threads = 0;           // 0 picks hardware concurrency
};

namespace detail {

struct CameraFrame {
    Vec3 origin, forward, right, up;
    double tan_half_fov, aspect;
};

inline CameraFrame camera_frame(const Camera& cam) {
    CameraFrame f;
    f.origin = cam.position;
    f.forward = normalize(cam.look_at - cam.position);
    f.right = normalize(cross(f.forward, cam.up));
    f.up = cross(f.right, f.forward);
    f.tan_half_fov = std::tan(0.5 * cam.vertical_fov_deg * std::numbers::pi / 180.0);
    f.aspect = static_cast<double>(cam.width) / cam.height;
    return f;
}

inline Vec3 primary_ray_dir(const CameraFrame& f, const Camera& cam, int px, int py) {
    const double sx = (2.0 * (px + 0.5) / cam.width - 1.0) * f.tan_half_fov * f.aspect;
    const double sy = (1.0 - 2.0 * (py + 0.5) / cam.height) * f.tan_half_fov;
    return normalize(f.forward + f.right * sx + f.up * sy);
}

inline bool occluded(const Scene& scene, const Vec3& from, const Vec3& dir) {
    return ray_scene_intersect(scene, from, dir).has_value();
}

inline Rgb direct_lighting(const Scene& scene, const ShadingPoint& sp) {
    Rgb out;
    for (const DirectionalLight& light : scene.lights) {
        const double cos_in = dot(light.direction, sp.normal);
        if (cos_in <= 0.0) continue;
        if (occluded(scene, sp.position, light.direction)) continue;
        const Rgb f = sp.material.diffuse * (1.0 / std::numbers::pi) +
                      brdf_eval(light.direction, sp.view, sp.normal, sp.material);
        out += light.radiance * f * cos_in;
    }
    return out;
}

}  // namespace detail

// Forward render: primary visibility against the rectangle set, direct
// lighting with shadow rays, plus the one-bounce indirect-specular term from
// every other rectangle (closed-form in the approx modes, brute force in
// reference mode). Pixels derive independent seeds from (seed, pixel index),
// so the output is identical for any thread count.
inline Image render(const Scene& scene, RenderMode mode, const RenderParams& params) {
    Image img(scene.camera.width, scene.camera.height);
    const detail::CameraFrame frame = detail::camera_frame(scene.camera);

    const auto shade_pixel = [&](int px, int py) {
        const Vec3 dir = detail::primary_ray_dir(frame, scene.camera, px, py);
        const auto hit = ray_scene_intersect(scene, frame.origin, dir);
        if (!hit) return scene.background;

        const RectangleProxy& surf = scene.rectangles[hit->rect_id];
        const ShadingPoint sp{hit->point, hit->normal, -dir, surf.material};

        Rgb out;
        if (!params.indirect_only) out += detail::direct_lighting(scene, sp);

        const std::uint64_t pixel_index =
            static_cast<std::uint64_t>(py) * scene.camera.width + px;
        for (const RectangleProxy* rect : query_proxies(scene, sp.position)) {
            if (mode == RenderMode::Reference) {
                const std::uint64_t derived = splitmix64(
                    params.seed ^ splitmix64(pixel_index * 0x100003ull + rect->id + 1));
                out += mc_one_bounce(sp, *rect, scene.lights, {params.spp, derived});
            } else {
                out += shade_indirect_specular(
                    sp, *rect, scene.lights, params.disk_radius,
                    mode == RenderMode::ApproxAsg ? ShadeMode::Asg : ShadeMode::SgFast);
            }
        }
        return out;
    };

    int thread_count = params.threads > 0
                           ? params.threads
                           : static_cast<int>(std::thread::hardware_concurrency());
    thread_count = std::max(1, std::min(thread_count, scene.camera.height));

    std::atomic<int> next_row{0};
    const auto worker = [&] {
        for (int y = next_row.fetch_add(1); y < scene.camera.height; y = next_row.fetch_add(1))
            for (int x = 0; x < scene.camera.width; ++x) img.at(x, y) = shade_pixel(x, y);
    };

    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return img;
}

}  // namespace glint
