#pragma once

#include <array>
#include <vector>

#include "sweepslice/mesh.hpp"

namespace sweepslice {

// Edge path on the 1-skeleton. For open paths vertices.size() == edges.size()+1;
// closed paths wrap (vertices.size() == edges.size(), edge i joins vertex i to
// vertex i+1 mod n).
struct Path {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
    bool closed = false;

    int size() const { return static_cast<int>(edges.size()); }
    bool empty() const { return edges.empty(); }
    VertexId front() const { return vertices.front(); }
    VertexId back() const { return closed ? vertices.front() : vertices.back(); }
    double length(const Surface& s) const;
    bool is_simple() const;
    Path reversed() const;
};

Path path_from_vertices(const Surface& s, const std::vector<VertexId>& vs, bool closed);
Path loop_to_path(const Surface& s, const std::vector<HalfedgeId>& loop);

enum class CurveKind { closed_cycle, arc_family };

// A subdividing curve together with its region decomposition.
struct SlicingCurve {
    CurveKind kind = CurveKind::closed_cycle;
    std::vector<Path> paths;  // one closed cycle, or disjoint open arcs
    double length = 0;
    std::vector<Region> decomposition;
    int distinguished = kInvalid;

    std::vector<EdgeId> all_edges() const;
    const Region& distinguished_region() const { return decomposition.at(distinguished); }
};

SlicingCurve make_slicing_curve(const Region& region, CurveKind kind, std::vector<Path> paths,
                                int distinguished = kInvalid);

// Connected components of the region after cutting along the given edges.
std::vector<Region> decompose(const Region& region, const std::vector<EdgeId>& cut_edges);
std::vector<Region> decompose(const Region& region, const SlicingCurve& curve);

// Lemma-style 2-gon reduction: arcs a (of gamma) and b (of the submanifold
// boundary) bounding a disc inside `side` whose intersection with the
// submanifold is connected. Crossings are transversal vertex crossings;
// shared edges between gamma and the boundary are rejected.
struct TwoGonResult {
    Path arc_a;
    Path arc_b;
    Region disc;
    int iterations = 0;
    int initial_components = 0;  // components of D∩M before the reduction loop
};

TwoGonResult two_gon_reduce(const Surface& sphere, const Path& gamma, const Region& submanifold,
                            const Region& side);

// Counts the transversal crossings of gamma with the submanifold boundary.
int count_boundary_crossings(const Surface& sphere, const Path& gamma, const Region& submanifold);

// Indices of the arcs whose two endpoints sit on the same derived boundary
// loop of the region.
std::vector<int> detect_horseshoe(const Region& region, const SlicingCurve& curve);

// Walk of the collar-selection argument: returns the index of a collar whose
// intersection with boundary loop `c_loop` of B is a single arc. Throws when
// none exists (callers treat that as an upstream bug).
int find_connected_collar(const Region& B, int c_loop, const std::vector<Region>& collars);

struct ShortenOptions {
    double min_area_fraction = 0.0;  // each |A_i| / |region| must stay >= this
    int max_passes = 40;
    int max_gap = 3;  // longest replaced subpath, in edges
};

// Length-non-increasing local rewiring on the 1-skeleton. Keeps the curve
// simple, the component count of the decomposition, and the distinguished
// component (matched by face overlap).
SlicingCurve shorten(const Region& region, const SlicingCurve& curve, const ShortenOptions& opt);

// Three internally disjoint arcs joining a to b.
struct ThetaGraph {
    VertexId a = kInvalid, b = kInvalid;
    std::array<Path, 3> arcs;

    double total_length(const Surface& s) const;
};

ThetaGraph make_theta(const Surface& s, const Path& arc1, const Path& arc2, const Path& arc3);
void validate_theta(const Region& ambient, const ThetaGraph& theta);

enum class ThetaSide { s12 = 0, s23 = 1, s13 = 2 };

struct PushOffResult {
    Path loop;           // the pushed-off cycle l_ij
    Region strip;        // one-ring band between arc_i + arc_j and the loop
    double eps_push = 0; // max(0, |l| - |alpha_i| - |alpha_j|)
};

// One-ring push-off of arc_i ∪ arc_j into U_ij. `offset` is validated against
// the strip's smallest altitude; the combinatorial loop itself is the
// one-ring offset.
PushOffResult push_off(const Region& ambient, const ThetaGraph& theta, ThetaSide side,
                       double offset);

// Faces on the chosen side of a cycle that touch the cycle (one-ring band).
std::vector<FaceId> one_ring_side_faces(const Surface& s, const Path& cycle, FaceId seed_side);

// Shortest 1-skeleton path inside the region from `from` to `to`, avoiding
// banned vertices (the endpoints are always allowed). Empty when unreachable.
Path shortest_vertex_path(const Region& region, VertexId from, VertexId to,
                          const std::vector<char>& banned_vertices);

}  // namespace sweepslice
