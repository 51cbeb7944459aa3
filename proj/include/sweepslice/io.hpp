#pragma once

#include <string>
#include <vector>

#include "sweepslice/mesh.hpp"

namespace sweepslice {

enum class MeshFormat { off, obj };

MeshFormat format_from_path(const std::string& path);

// Loads a triangulated OFF/OBJ mesh; edge lengths come from positions.
// Rejects non-manifold input and anything that is not a sphere with holes,
// reporting the computed Euler characteristic and loop count.
Surface load_mesh(const std::string& path);
Surface load_mesh(const std::string& path, MeshFormat format);

void save_mesh(const Surface& surface, const std::string& path);
void save_mesh(const Surface& surface, const std::string& path, MeshFormat format);

// Writes one OBJ polyline per edge path (used for curves, fibers, levels).
void save_polylines_obj(const Surface& surface,
                        const std::vector<std::vector<VertexId>>& polylines,
                        const std::string& path);

// Polyline export for cross-face level sets: explicit 3d points per segment.
void save_segments_obj(const std::vector<std::pair<Vec3, Vec3>>& segments,
                       const std::string& path);

}  // namespace sweepslice
