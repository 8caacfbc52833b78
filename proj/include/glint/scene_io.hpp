#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "glint/scene.hpp"

namespace glint {

// Scene description grammar (line comments start with '#'):
//
//   background <r> <g> <b>
//   camera   { position <x y z>  look_at <x y z>  up <x y z>
//              fov <deg>  width <int>  height <int> }
//   material <name> { roughness <a>  diffuse <r g b>  specular <r g b> }
//   rectangle{ center <x y z>  normal <x y z>  edge_u <x y z>
//              half_extents <hu> <hv>  material <name> }
//   light    { direction <x y z>  radiance <r g b> }
//
// Directions are normalized on load, edge_u is re-orthogonalized against the
// normal, edge_v is derived, roughness is clamped to [0.02, 1], and rectangle
// ids follow declaration order.
class SceneParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

class SceneTokens {
public:
    explicit SceneTokens(std::istream& in) {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string_view sv(line);
            if (const auto hash = sv.find('#'); hash != std::string_view::npos)
                sv = sv.substr(0, hash);
            std::istringstream ls{std::string(sv)};
            std::string tok;
            while (ls >> tok) tokens_.push_back({tok, lineno});
        }
    }

    bool done() const { return pos_ >= tokens_.size(); }
    int line() const { return done() ? (tokens_.empty() ? 0 : tokens_.back().line) : tokens_[pos_].line; }

    std::string next(const char* what) {
        if (done()) throw SceneParseError(std::string("unexpected end of scene, expected ") + what);
        return tokens_[pos_++].text;
    }

    void expect(const std::string& tok) {
        const int at = line();
        const std::string got = next(tok.c_str());
        if (got != tok)
            throw SceneParseError("line " + std::to_string(at) + ": expected '" + tok + "', got '" + got + "'");
    }

    double number(const char* what) {
        const int at = line();
        const std::string tok = next(what);
        try {
            size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw SceneParseError("line " + std::to_string(at) + ": expected a number for " + what +
                                  ", got '" + tok + "'");
        }
    }

    Vec3 vec3(const char* what) { return {number(what), number(what), number(what)}; }
    Rgb rgb(const char* what) { return {number(what), number(what), number(what)}; }

private:
    struct Token {
        std::string text;
        int line;
    };
    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

}  // namespace detail

inline Scene parse_scene(std::istream& in) {
    detail::SceneTokens toks(in);
    Scene scene;
    std::map<std::string, Material> materials;

    while (!toks.done()) {
        const int at = toks.line();
        const std::string head = toks.next("a top-level declaration");
        if (head == "background") {
            scene.background = toks.rgb("background");
        } else if (head == "camera") {
            toks.expect("{");
            for (std::string key = toks.next("camera key"); key != "}"; key = toks.next("camera key")) {
                if (key == "position") scene.camera.position = toks.vec3("position");
                else if (key == "look_at") scene.camera.look_at = toks.vec3("look_at");
                else if (key == "up") scene.camera.up = normalize(toks.vec3("up"));
                else if (key == "fov") scene.camera.vertical_fov_deg = toks.number("fov");
                else if (key == "width") scene.camera.width = static_cast<int>(toks.number("width"));
                else if (key == "height") scene.camera.height = static_cast<int>(toks.number("height"));
                else throw SceneParseError("line " + std::to_string(at) + ": unknown camera key '" + key + "'");
            }
            if (scene.camera.width < 1 || scene.camera.height < 1 ||
                scene.camera.vertical_fov_deg <= 0.0 || scene.camera.vertical_fov_deg >= 180.0)
                throw SceneParseError("line " + std::to_string(at) + ": invalid camera parameters");
            if (norm(scene.camera.look_at - scene.camera.position) < 1e-12)
                throw SceneParseError("line " + std::to_string(at) + ": camera look_at equals position");
        } else if (head == "material") {
            const std::string name = toks.next("material name");
            Material mat;
            toks.expect("{");
            for (std::string key = toks.next("material key"); key != "}"; key = toks.next("material key")) {
                if (key == "roughness") mat.roughness = std::clamp(toks.number("roughness"), 0.02, 1.0);
                else if (key == "diffuse") mat.diffuse = toks.rgb("diffuse");
                else if (key == "specular") mat.specular = toks.rgb("specular");
                else throw SceneParseError("line " + std::to_string(at) + ": unknown material key '" + key + "'");
            }
            materials[name] = mat;
        } else if (head == "rectangle") {
            RectangleProxy rect;
            bool has_material = false;
            toks.expect("{");
            for (std::string key = toks.next("rectangle key"); key != "}"; key = toks.next("rectangle key")) {
                if (key == "center") rect.center = toks.vec3("center");
                else if (key == "normal") rect.normal = normalize(toks.vec3("normal"));
                else if (key == "edge_u") rect.edge_u = toks.vec3("edge_u");
                else if (key == "half_extents") {
                    rect.half_u = toks.number("half_extents");
                    rect.half_v = toks.number("half_extents");
                } else if (key == "material") {
                    const std::string name = toks.next("material name");
                    const auto it = materials.find(name);
                    if (it == materials.end())
                        throw SceneParseError("line " + std::to_string(at) + ": unknown material '" + name + "'");
                    rect.material = it->second;
                    has_material = true;
                } else {
                    throw SceneParseError("line " + std::to_string(at) + ": unknown rectangle key '" + key + "'");
                }
            }
            if (!has_material)
                throw SceneParseError("line " + std::to_string(at) + ": rectangle without material");
            if (rect.half_u <= 0.0 || rect.half_v <= 0.0)
                throw SceneParseError("line " + std::to_string(at) + ": rectangle half extents must be positive");
            rect.edge_u = rect.edge_u - rect.normal * dot(rect.edge_u, rect.normal);
            if (norm(rect.edge_u) < 1e-9)
                throw SceneParseError("line " + std::to_string(at) + ": edge_u parallel to normal");
            rect.edge_u = normalize(rect.edge_u);
            rect.edge_v = cross(rect.normal, rect.edge_u);
            rect.id = static_cast<int>(scene.rectangles.size());
            scene.rectangles.push_back(rect);
        } else if (head == "light") {
            DirectionalLight light;
            toks.expect("{");
            for (std::string key = toks.next("light key"); key != "}"; key = toks.next("light key")) {
                if (key == "direction") light.direction = normalize(toks.vec3("direction"));
                else if (key == "radiance") light.radiance = toks.rgb("radiance");
                else throw SceneParseError("line " + std::to_string(at) + ": unknown light key '" + key + "'");
            }
            scene.lights.push_back(light);
        } else {
            throw SceneParseError("line " + std::to_string(at) + ": unknown declaration '" + head + "'");
        }
    }
    return scene;
}

inline Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneParseError("cannot open scene file: " + path);
    return parse_scene(in);
}

}  // namespace glint
