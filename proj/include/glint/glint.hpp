#pragma once

// Umbrella header for the glint library: spherical-Gaussian algebra, the GGX
// lobe machinery, rectangle-proxy scenes, the one-bounce glossy
// interreflection pipeline, the brute-force validation oracle, and the
// forward renderer.

#include "glint/vec.hpp"
#include "glint/sg.hpp"
#include "glint/brdf.hpp"
#include "glint/scene.hpp"
#include "glint/interreflect.hpp"
#include "glint/oracle.hpp"
#include "glint/scene_io.hpp"
#include "glint/image.hpp"
#include "glint/render.hpp"
