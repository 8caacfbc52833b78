#pragma once

#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glint/image.hpp"
#include "glint/oracle.hpp"
#include "glint/render.hpp"
#include "glint/scene_io.hpp"

namespace glint {

namespace detail {

inline RenderMode parse_mode(const std::string& name) {
    if (name == "approx-asg") return RenderMode::ApproxAsg;
    if (name == "approx-sg") return RenderMode::ApproxSg;
    return RenderMode::Reference;
}

inline void print_metrics_csv(std::ostream& os, const ImageMetrics& m) {
    os << "rmse_r,rmse_g,rmse_b,rmse_luminance,max_abs\n";
    csv_value(os, m.rmse.r);
    os << ',';
    csv_value(os, m.rmse.g);
    os << ',';
    csv_value(os, m.rmse.b);
    os << ',';
    csv_value(os, m.rmse_luminance);
    os << ',';
    csv_value(os, m.max_abs);
    os << '\n';
}

}  // namespace detail

// Exit codes: 0 success, 1 usage error, 2 I/O or scene-parse error.
inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"rectangle-proxy glossy interreflection renderer"};
    app.require_subcommand(1);

    // render
    std::string scene_path, mode_name = "approx-asg", out_path;
    RenderParams params;
    int width_override = 0, height_override = 0;
    CLI::App* render_cmd = app.add_subcommand("render", "render a scene to a PPM image");
    render_cmd->add_option("--scene", scene_path, "scene file")->required();
    render_cmd->add_option("--mode", mode_name, "shading mode")
        ->check(CLI::IsMember({"approx-asg", "approx-sg", "reference"}));
    render_cmd->add_option("--out", out_path, "output PPM path")->required();
    render_cmd->add_option("--disk-radius", params.disk_radius, "sampling disk radius");
    render_cmd->add_option("--spp", params.spp, "samples per pixel (reference mode)");
    render_cmd->add_option("--seed", params.seed, "RNG seed");
    render_cmd->add_option("--width", width_override, "override camera width");
    render_cmd->add_option("--height", height_override, "override camera height");
    render_cmd->add_option("--threads", params.threads, "worker threads (0 = auto)");
    render_cmd->add_flag("--indirect-only", params.indirect_only, "suppress direct lighting");

    // compare
    std::string image_a, image_b;
    CLI::App* compare_cmd = app.add_subcommand("compare", "print error metrics between two PPMs");
    compare_cmd->add_option("--a", image_a, "first image")->required();
    compare_cmd->add_option("--b", image_b, "second image")->required();

    // study
    CLI::App* study_cmd = app.add_subcommand("study", "numerical error studies (CSV output)");
    study_cmd->require_subcommand(1);

    double sigma = 0.5, roughness = 0.1;
    int theta_samples = 256;
    std::string fit_out;
    CLI::App* fit_cmd = study_cmd->add_subcommand("fit-error", "exact vs fitted disk falloff");
    fit_cmd->add_option("--sigma", sigma, "light angle to the reflector normal, radians")->required();
    fit_cmd->add_option("--roughness", roughness, "reflector GGX roughness")->required();
    fit_cmd->add_option("--samples", theta_samples, "rows in [0, pi/2)");
    fit_cmd->add_option("--out", fit_out, "output CSV path")->required();

    std::vector<double> lambdas{10.0, 25.0, 50.0, 100.0, 200.0};
    long quad_samples = 1'000'000;
    std::string conv_out;
    CLI::App* conv_cmd = study_cmd->add_subcommand("conv-error", "closed-form product integral vs quadrature");
    conv_cmd->add_option("--lambdas", lambdas, "ASG bandwidths to evaluate");
    conv_cmd->add_option("--samples", quad_samples, "quadrature points");
    conv_cmd->add_option("--out", conv_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 1;
    }

    try {
        if (*render_cmd) {
            Scene scene = load_scene(scene_path);
            if (width_override > 0) scene.camera.width = width_override;
            if (height_override > 0) scene.camera.height = height_override;
            const auto t0 = std::chrono::steady_clock::now();
            const Image img = render(scene, detail::parse_mode(mode_name), params);
            const auto t1 = std::chrono::steady_clock::now();
            write_ppm(img, out_path);
            std::cerr << "rendered " << img.width << "x" << img.height << " in "
                      << std::chrono::duration<double>(t1 - t0).count() << " s -> " << out_path
                      << "\n";
        } else if (*compare_cmd) {
            detail::print_metrics_csv(std::cout, image_metrics(read_ppm(image_a), read_ppm(image_b)));
        } else if (*fit_cmd) {
            std::ofstream os(fit_out);
            if (!os) throw std::runtime_error("cannot open for writing: " + fit_out);
            write_csv(os, fit_error_report(sigma, roughness, theta_samples));
        } else if (*conv_cmd) {
            std::ofstream os(conv_out);
            if (!os) throw std::runtime_error("cannot open for writing: " + conv_out);
            write_csv(os, convolution_error_report(lambdas, {quad_samples, 0}));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace glint
