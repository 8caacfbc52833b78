#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "glint/vec.hpp"

namespace glint {

// Row-major linear-RGB raster.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<Rgb> pixels;

    Image() = default;
    Image(int w, int h) : width(w), height(h), pixels(static_cast<size_t>(w) * h) {}

    Rgb& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
    const Rgb& at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
};

inline std::uint8_t encode_gamma22(double linear) {
    const double c = std::clamp(linear, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(255.0 * std::pow(c, 1.0 / 2.2)));
}

inline double decode_gamma22(std::uint8_t byte) { return std::pow(byte / 255.0, 2.2); }

// Binary PPM (P6), 8-bit, gamma-2.2 encoded. Byte-exact for identical inputs.
inline void write_ppm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    std::vector<std::uint8_t> bytes;
    bytes.reserve(img.pixels.size() * 3);
    for (const Rgb& p : img.pixels) {
        bytes.push_back(encode_gamma22(p.r));
        bytes.push_back(encode_gamma22(p.g));
        bytes.push_back(encode_gamma22(p.b));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline Image read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    if (magic != "P6" || w <= 0 || h <= 0 || maxval != 255)
        throw std::runtime_error("unsupported PPM header in " + path);
    in.get();  // single whitespace after maxval
    Image img(w, h);
    std::vector<std::uint8_t> bytes(static_cast<size_t>(w) * h * 3);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!in) throw std::runtime_error("truncated PPM data in " + path);
    for (size_t i = 0; i < img.pixels.size(); ++i)
        img.pixels[i] = {decode_gamma22(bytes[3 * i]), decode_gamma22(bytes[3 * i + 1]),
                         decode_gamma22(bytes[3 * i + 2])};
    return img;
}

struct ImageMetrics {
    Rgb rmse;
    double rmse_luminance = 0.0;
    double max_abs = 0.0;
};

inline ImageMetrics image_metrics(const Image& a, const Image& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("image_metrics: dimension mismatch");
    Rgb sq;
    double sq_lum = 0.0, max_abs = 0.0;
    for (size_t i = 0; i < a.pixels.size(); ++i) {
        const Rgb d = a.pixels[i] - b.pixels[i];
        sq += d * d;
        const double dl = luminance(a.pixels[i]) - luminance(b.pixels[i]);
        sq_lum += dl * dl;
        max_abs = std::max({max_abs, std::abs(d.r), std::abs(d.g), std::abs(d.b)});
    }
    const double n = static_cast<double>(a.pixels.size());
    return {{std::sqrt(sq.r / n), std::sqrt(sq.g / n), std::sqrt(sq.b / n)},
            std::sqrt(sq_lum / n),
            max_abs};
}

}  // namespace glint
