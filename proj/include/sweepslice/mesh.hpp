#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sweepslice {

using VertexId = int;
using EdgeId = int;
using FaceId = int;
using HalfedgeId = int;

inline constexpr int kInvalid = -1;

struct Vec3 {
    double x = 0, y = 0, z = 0;
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const;
    Vec3 normalized() const;
};

class MeshError : public std::runtime_error {
public:
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an operation cannot proceed at the current mesh resolution.
class CoarseMeshError : public MeshError {
public:
    explicit CoarseMeshError(const std::string& what) : MeshError(what) {}
};

double default_face_cap();

// Triangulated 2-manifold, possibly with boundary, with a piecewise-flat
// metric given by edge lengths. Connectivity is halfedge-based: halfedge
// 3*f+i runs from corner i to corner i+1 of face f. Immutable after
// construction.
class Surface {
public:
    Surface() = default;

    // Builds connectivity and the metric from vertex positions. Positions are
    // kept for export; all geometric quantities are computed from lengths.
    static Surface from_positions(std::vector<Vec3> positions,
                                  std::vector<std::array<VertexId, 3>> faces);

    // Metric-only construction (lengths indexed by the edge ids the
    // constructor assigns; see edge_between()).
    static Surface from_lengths(int vertex_count,
                                std::vector<std::array<VertexId, 3>> faces,
                                const std::vector<double>& corner_lengths);

    int vertex_count() const { return n_vertices_; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int edge_count() const { return static_cast<int>(edge_halfedge_.size()); }
    int halfedge_count() const { return 3 * face_count(); }

    const std::array<VertexId, 3>& face(FaceId f) const { return faces_[f]; }

    HalfedgeId twin(HalfedgeId h) const { return twin_[h]; }
    HalfedgeId next(HalfedgeId h) const { return 3 * (h / 3) + (h % 3 + 1) % 3; }
    HalfedgeId prev(HalfedgeId h) const { return 3 * (h / 3) + (h % 3 + 2) % 3; }
    FaceId face_of(HalfedgeId h) const { return h / 3; }
    VertexId origin(HalfedgeId h) const { return faces_[h / 3][h % 3]; }
    VertexId head(HalfedgeId h) const { return faces_[h / 3][(h % 3 + 1) % 3]; }
    EdgeId edge_of(HalfedgeId h) const { return halfedge_edge_[h]; }

    // One existing halfedge of the edge (the second may be kInvalid).
    HalfedgeId halfedge_of(EdgeId e) const { return edge_halfedge_[e]; }
    bool is_boundary_edge(EdgeId e) const { return twin_[edge_halfedge_[e]] == kInvalid; }
    std::pair<VertexId, VertexId> edge_vertices(EdgeId e) const {
        HalfedgeId h = edge_halfedge_[e];
        return {origin(h), head(h)};
    }
    EdgeId edge_between(VertexId a, VertexId b) const;

    double edge_length(EdgeId e) const { return edge_length_[e]; }
    double face_area(FaceId f) const { return face_area_[f]; }
    double total_area() const { return total_area_; }
    double max_edge_length() const;

    int boundary_loop_count() const { return static_cast<int>(boundary_loops_.size()); }
    // Each loop is an ordered list of boundary halfedges (face side).
    const std::vector<std::vector<HalfedgeId>>& boundary_loops() const { return boundary_loops_; }
    double boundary_length() const;
    bool is_boundary_vertex(VertexId v) const { return boundary_vertex_[v]; }

    int euler_characteristic() const { return n_vertices_ - edge_count() + face_count(); }

    // Halfedges with origin v, counterclockwise. On boundary vertices the fan
    // starts at the boundary.
    const std::vector<HalfedgeId>& outgoing(VertexId v) const { return outgoing_[v]; }
    std::vector<VertexId> vertex_neighbors(VertexId v) const;
    std::vector<FaceId> vertex_faces(VertexId v) const;

    bool has_positions() const { return !positions_.empty(); }
    const std::vector<Vec3>& positions() const { return positions_; }

    // 1-to-4 midpoint subdivision repeated until max edge <= target. Area and
    // boundary length are preserved exactly (all child lengths are half the
    // parent lengths). Throws MeshError when the face cap would be exceeded.
    Surface refine(double target_edge, double face_cap = default_face_cap()) const;

    // Shortest-path distance in the weighted 1-skeleton from `source`.
    std::vector<double> vertex_distances(VertexId source) const;
    std::vector<double> vertex_distances_multi(const std::vector<VertexId>& sources) const;

    // FNV-1a over connectivity and quantized lengths; stable across runs.
    std::uint64_t content_hash() const;

    std::string topology_summary() const;

private:
    void build_connectivity();
    void compute_metric();
    void validate() const;

    int n_vertices_ = 0;
    std::vector<std::array<VertexId, 3>> faces_;
    std::vector<Vec3> positions_;        // optional, for export only
    std::vector<HalfedgeId> twin_;
    std::vector<EdgeId> halfedge_edge_;
    std::vector<HalfedgeId> edge_halfedge_;
    std::vector<double> edge_length_;
    std::vector<double> face_area_;
    std::vector<std::vector<HalfedgeId>> outgoing_;
    std::vector<std::vector<HalfedgeId>> boundary_loops_;
    std::vector<char> boundary_vertex_;
    double total_area_ = 0;
};

// Stable area of a triangle from its side lengths (Kahan's ordering trick,
// reliable for needle triangles).
double triangle_area(double a, double b, double c);

// Face-subset submanifold of a Surface with derived boundary loops. A region
// is valid when its faces are edge-connected; the derived boundary consists
// of halfedges whose opposite face is absent or outside the region.
class Region {
public:
    Region() = default;
    Region(const Surface* surface, std::vector<FaceId> faces);

    static Region whole(const Surface& surface);

    const Surface& surface() const { return *surface_; }
    const std::vector<FaceId>& faces() const { return faces_; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    bool contains_face(FaceId f) const { return mask_[f]; }
    const std::vector<char>& mask() const { return mask_; }

    double area() const { return area_; }
    double max_face_area() const;

    // Ordered derived boundary loops (halfedges on the region side).
    const std::vector<std::vector<HalfedgeId>>& boundary_loops() const { return boundary_loops_; }
    int boundary_loop_count() const { return static_cast<int>(boundary_loops_.size()); }
    double boundary_length() const;
    double boundary_loop_length(int loop) const;

    bool is_edge_connected() const;
    // V - E + F over the closed star of the region's faces.
    int euler_characteristic() const;
    bool is_disc() const { return boundary_loop_count() == 1 && euler_characteristic() == 1; }

    // Vertices incident to region faces.
    std::vector<VertexId> vertices() const;
    bool contains_vertex(VertexId v) const;
    // Boundary test relative to the region (not the parent surface).
    bool is_region_boundary_edge(EdgeId e) const;
    bool is_region_boundary_vertex(VertexId v) const;
    int boundary_loop_of_vertex(VertexId v) const;  // kInvalid when interior
    int boundary_loop_of_edge(EdgeId e) const;      // kInvalid when interior

    // Dijkstra restricted to edges whose star meets the region.
    std::vector<double> vertex_distances_multi(const std::vector<VertexId>& sources) const;

private:
    void derive_boundary();

    const Surface* surface_ = nullptr;
    std::vector<FaceId> faces_;
    std::vector<char> mask_;
    std::vector<std::vector<HalfedgeId>> boundary_loops_;
    std::vector<int> vertex_loop_;  // boundary loop id per vertex, kInvalid otherwise
    std::vector<int> edge_loop_;
    double area_ = 0;
};

double area(const Region& region);
double boundary_length(const Region& region);

}  // namespace sweepslice
