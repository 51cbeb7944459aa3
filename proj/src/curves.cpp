#include "sweepslice/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace sweepslice {

namespace {

std::vector<char> edge_mask(const Surface& s, const std::vector<EdgeId>& edges) {
    std::vector<char> m(s.edge_count(), 0);
    for (EdgeId e : edges) m[e] = 1;
    return m;
}

// Connected components of a face set; adjacency across shared non-banned edges.
std::vector<std::vector<FaceId>> face_components(const Surface& s, const std::vector<char>& in_set,
                                                 const std::vector<char>& banned_edge) {
    std::vector<int> comp(s.face_count(), -1);
    std::vector<std::vector<FaceId>> out;
    for (FaceId f0 = 0; f0 < s.face_count(); ++f0) {
        if (!in_set[f0] || comp[f0] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<FaceId> stack = {f0};
        comp[f0] = id;
        while (!stack.empty()) {
            FaceId f = stack.back();
            stack.pop_back();
            out[id].push_back(f);
            for (int i = 0; i < 3; ++i) {
                HalfedgeId h = 3 * f + i;
                if (!banned_edge.empty() && banned_edge[s.edge_of(h)]) continue;
                HalfedgeId t = s.twin(h);
                if (t == kInvalid) continue;
                FaceId g = s.face_of(t);
                if (in_set[g] && comp[g] < 0) {
                    comp[g] = id;
                    stack.push_back(g);
                }
            }
        }
    }
    return out;
}

// All edges incident to v in counterclockwise fan order.
std::vector<EdgeId> incident_edges_ccw(const Surface& s, VertexId v) {
    std::vector<EdgeId> out;
    for (HalfedgeId h : s.outgoing(v)) out.push_back(s.edge_of(h));
    const auto& fan = s.outgoing(v);
    if (!fan.empty() && s.twin(s.prev(fan.back())) == kInvalid)
        out.push_back(s.edge_of(s.prev(fan.back())));
    return out;
}

// Do {a1,a2} and {b1,b2} interleave in the cyclic order of `ring`?
bool interleaved(const std::vector<EdgeId>& ring, EdgeId a1, EdgeId a2, EdgeId b1, EdgeId b2) {
    auto pos = [&](EdgeId e) {
        for (size_t i = 0; i < ring.size(); ++i)
            if (ring[i] == e) return static_cast<int>(i);
        return -1;
    };
    int pa1 = pos(a1), pa2 = pos(a2), pb1 = pos(b1), pb2 = pos(b2);
    if (pa1 < 0 || pa2 < 0 || pb1 < 0 || pb2 < 0) return false;
    int n = static_cast<int>(ring.size());
    int between = 0;
    for (int i = (pa1 + 1) % n; i != pa2; i = (i + 1) % n)
        if (i == pb1 || i == pb2) ++between;
    return between == 1;
}

}  // namespace

double Path::length(const Surface& s) const {
    double total = 0;
    for (EdgeId e : edges) total += s.edge_length(e);
    return total;
}

bool Path::is_simple() const {
    std::set<VertexId> seen(vertices.begin(), vertices.end());
    return seen.size() == vertices.size();
}

Path Path::reversed() const {
    Path out;
    out.closed = closed;
    if (closed) {
        // keep the vertex[i] -> vertex[i+1] convention
        out.vertices.push_back(vertices.front());
        for (size_t i = vertices.size(); i-- > 1;) out.vertices.push_back(vertices[i]);
        for (size_t i = edges.size(); i-- > 0;) out.edges.push_back(edges[i]);
    } else {
        out.vertices.assign(vertices.rbegin(), vertices.rend());
        out.edges.assign(edges.rbegin(), edges.rend());
    }
    return out;
}

Path path_from_vertices(const Surface& s, const std::vector<VertexId>& vs, bool closed) {
    Path p;
    p.closed = closed;
    p.vertices = vs;
    if (closed) {
        if (vs.size() < 3) throw MeshError("closed path needs >= 3 vertices");
        for (size_t i = 0; i < vs.size(); ++i) {
            EdgeId e = s.edge_between(vs[i], vs[(i + 1) % vs.size()]);
            if (e == kInvalid) throw MeshError("path_from_vertices: missing edge");
            p.edges.push_back(e);
        }
    } else {
        if (vs.size() < 2) throw MeshError("open path needs >= 2 vertices");
        for (size_t i = 0; i + 1 < vs.size(); ++i) {
            EdgeId e = s.edge_between(vs[i], vs[i + 1]);
            if (e == kInvalid) throw MeshError("path_from_vertices: missing edge");
            p.edges.push_back(e);
        }
    }
    return p;
}

Path loop_to_path(const Surface& s, const std::vector<HalfedgeId>& loop) {
    Path p;
    p.closed = true;
    for (HalfedgeId h : loop) {
        p.vertices.push_back(s.origin(h));
        p.edges.push_back(s.edge_of(h));
    }
    return p;
}

std::vector<EdgeId> SlicingCurve::all_edges() const {
    std::vector<EdgeId> out;
    for (const auto& p : paths) out.insert(out.end(), p.edges.begin(), p.edges.end());
    return out;
}

std::vector<Region> decompose(const Region& region, const std::vector<EdgeId>& cut_edges) {
    const Surface& s = region.surface();
    auto banned = edge_mask(s, cut_edges);
    std::vector<char> in_set(s.face_count(), 0);
    for (FaceId f : region.faces()) in_set[f] = 1;
    auto comps = face_components(s, in_set, banned);
    std::vector<Region> out;
    out.reserve(comps.size());
    for (auto& c : comps) out.emplace_back(&s, std::move(c));
    return out;
}

SlicingCurve make_slicing_curve(const Region& region, CurveKind kind, std::vector<Path> paths,
                                int distinguished) {
    const Surface& s = region.surface();
    SlicingCurve c;
    c.kind = kind;
    c.paths = std::move(paths);
    if (c.paths.empty()) throw MeshError("slicing curve needs at least one path");
    if (kind == CurveKind::closed_cycle) {
        if (c.paths.size() != 1 || !c.paths[0].closed)
            throw MeshError("closed_cycle curve must be a single closed path");
    } else {
        for (const auto& p : c.paths)
            if (p.closed) throw MeshError("arc_family curve must consist of open arcs");
    }
    std::set<VertexId> used;
    for (const auto& p : c.paths) {
        if (!p.is_simple()) throw MeshError("slicing curve is not simple");
        for (VertexId v : p.vertices) {
            if (used.count(v)) throw MeshError("slicing curve paths intersect");
            used.insert(v);
        }
        if (!p.closed) {
            if (!region.is_region_boundary_vertex(p.front()) ||
                !region.is_region_boundary_vertex(p.back()))
                throw MeshError("arc endpoint not on region boundary");
        }
    }
    for (EdgeId e : c.all_edges()) {
        HalfedgeId h = s.halfedge_of(e);
        bool in_region = region.contains_face(s.face_of(h)) ||
                         (s.twin(h) != kInvalid && region.contains_face(s.face_of(s.twin(h))));
        if (!in_region) throw MeshError("curve edge outside region");
        c.length += s.edge_length(e);
    }
    c.decomposition = decompose(region, c.all_edges());
    c.distinguished = distinguished;
    if (distinguished != kInvalid &&
        (distinguished < 0 || distinguished >= static_cast<int>(c.decomposition.size())))
        throw MeshError("distinguished component out of range");
    return c;
}

std::vector<Region> decompose(const Region& region, const SlicingCurve& curve) {
    return decompose(region, curve.all_edges());
}

// --------------------------------------------------------------------------
// crossings

namespace {

struct LoopOccurrence {
    int loop = kInvalid;  // boundary loop index of the submanifold
    int pos = kInvalid;   // position along the loop (vertex = origin(loop[pos]))
};

struct CrossingContext {
    const Surface* s = nullptr;
    const Region* sub = nullptr;
    const Path* gamma = nullptr;
    std::vector<int> gamma_pos;  // vertex -> position on gamma, or -1
    std::map<VertexId, std::vector<LoopOccurrence>> crossings;
};

CrossingContext make_crossing_context(const Surface& s, const Path& gamma, const Region& sub) {
    CrossingContext ctx;
    ctx.s = &s;
    ctx.sub = &sub;
    ctx.gamma = &gamma;
    ctx.gamma_pos.assign(s.vertex_count(), -1);
    const int n = gamma.size();
    for (int i = 0; i < n; ++i) ctx.gamma_pos[gamma.vertices[i]] = i;

    for (EdgeId e : gamma.edges)
        if (sub.is_region_boundary_edge(e))
            throw MeshError("gamma shares an edge with the submanifold boundary (not transversal)");

    const auto& loops = sub.boundary_loops();
    for (int li = 0; li < static_cast<int>(loops.size()); ++li) {
        const auto& loop = loops[li];
        const int m = static_cast<int>(loop.size());
        for (int i = 0; i < m; ++i) {
            VertexId v = s.origin(loop[i]);
            int gp = ctx.gamma_pos[v];
            if (gp < 0) continue;
            EdgeId g_in = gamma.edges[(gp + n - 1) % n];
            EdgeId g_out = gamma.edges[gp];
            EdgeId b_in = s.edge_of(loop[(i + m - 1) % m]);
            EdgeId b_out = s.edge_of(loop[i]);
            auto ring = incident_edges_ccw(s, v);
            if (interleaved(ring, g_in, g_out, b_in, b_out))
                ctx.crossings[v].push_back({li, i});
        }
    }
    return ctx;
}

bool edge_in_side(const Surface& s, const Region& side, EdgeId e) {
    HalfedgeId h = s.halfedge_of(e);
    return side.contains_face(s.face_of(h));
}

bool gamma_edge_in_sub(const Surface& s, const Region& sub, EdgeId e) {
    HalfedgeId h = s.halfedge_of(e);
    return sub.contains_face(s.face_of(h));
}

// Walks the submanifold boundary loop from a starting occurrence in the given
// direction until the next crossing with gamma.
Path walk_boundary_directed(const CrossingContext& ctx, VertexId start, const LoopOccurrence& occ,
                            int dir) {
    const Surface& s = *ctx.s;
    const auto& loop = ctx.sub->boundary_loops()[occ.loop];
    const int m = static_cast<int>(loop.size());
    Path b;
    b.closed = false;
    b.vertices.push_back(start);
    int i = occ.pos;
    for (int guard = 0; guard <= m; ++guard) {
        HalfedgeId h;
        VertexId nxt;
        int pos_here;
        if (dir > 0) {
            h = loop[i];
            nxt = s.head(h);
            i = (i + 1) % m;
            pos_here = i;
        } else {
            i = (i + m - 1) % m;
            h = loop[i];
            nxt = s.origin(h);
            pos_here = i;
        }
        b.edges.push_back(s.edge_of(h));
        b.vertices.push_back(nxt);
        auto it = ctx.crossings.find(nxt);
        if (it != ctx.crossings.end()) {
            for (const auto& o : it->second)
                if (o.loop == occ.loop && o.pos == pos_here) return b;
        }
    }
    throw MeshError("boundary walk failed to terminate at a crossing");
}

// Walks from a crossing occurrence through `side` until the next crossing.
Path walk_boundary_in_side(const CrossingContext& ctx, const Region& side, VertexId start,
                           const LoopOccurrence& occ) {
    const Surface& s = *ctx.s;
    const auto& loop = ctx.sub->boundary_loops()[occ.loop];
    const int m = static_cast<int>(loop.size());
    EdgeId e_out = s.edge_of(loop[occ.pos]);
    EdgeId e_in = s.edge_of(loop[(occ.pos + m - 1) % m]);
    int dir;
    if (edge_in_side(s, side, e_out))
        dir = +1;
    else if (edge_in_side(s, side, e_in))
        dir = -1;
    else
        throw MeshError("boundary walk: no direction enters the chosen side");
    return walk_boundary_directed(ctx, start, occ, dir);
}

Path open_subpath(const Path& p, int from, int to) {
    Path out;
    out.closed = false;
    if (from <= to) {
        out.vertices.assign(p.vertices.begin() + from, p.vertices.begin() + to + 1);
        out.edges.assign(p.edges.begin() + from, p.edges.begin() + to);
    } else {
        for (int i = from; i >= to; --i) out.vertices.push_back(p.vertices[i]);
        for (int i = from - 1; i >= to; --i) out.edges.push_back(p.edges[i]);
    }
    return out;
}

// Walks gamma from the crossing vertex `start`, first edge inside the
// submanifold, until `stop_at`.
Path walk_gamma_from(const CrossingContext& ctx, VertexId start, VertexId stop_at) {
    const Surface& s = *ctx.s;
    const Path& g = *ctx.gamma;
    const int n = g.size();
    int p = ctx.gamma_pos[start];
    EdgeId e_fwd = g.edges[p];
    EdgeId e_bwd = g.edges[(p + n - 1) % n];
    int dir;
    if (gamma_edge_in_sub(s, *ctx.sub, e_fwd))
        dir = +1;
    else if (gamma_edge_in_sub(s, *ctx.sub, e_bwd))
        dir = -1;
    else
        throw MeshError("gamma walk: neither direction enters the submanifold");
    Path a;
    a.closed = false;
    a.vertices.push_back(start);
    int i = p;
    for (int guard = 0; guard < n; ++guard) {
        VertexId nxt;
        EdgeId e;
        if (dir > 0) {
            e = g.edges[i];
            nxt = g.vertices[(i + 1) % n];
            i = (i + 1) % n;
        } else {
            i = (i + n - 1) % n;
            e = g.edges[i];
            nxt = g.vertices[i];
        }
        a.edges.push_back(e);
        a.vertices.push_back(nxt);
        if (nxt == stop_at) return a;
    }
    throw MeshError("gamma walk failed to reach the target crossing");
}

}  // namespace

int count_boundary_crossings(const Surface& sphere, const Path& gamma, const Region& submanifold) {
    auto ctx = make_crossing_context(sphere, gamma, submanifold);
    int count = 0;
    for (const auto& [v, occs] : ctx.crossings) count += static_cast<int>(occs.size());
    return count;
}

TwoGonResult two_gon_reduce(const Surface& sphere, const Path& gamma, const Region& submanifold,
                            const Region& side) {
    if (sphere.boundary_loop_count() != 0)
        throw MeshError("two_gon_reduce expects a closed sphere");
    if (!gamma.closed || !gamma.is_simple()) throw MeshError("gamma must be a simple closed cycle");

    auto ctx = make_crossing_context(sphere, gamma, submanifold);
    if (ctx.crossings.empty()) throw MeshError("gamma does not cross the submanifold boundary");

    const Surface& s = sphere;
    const int n = gamma.size();

    // deterministic first crossing: smallest vertex id
    VertexId p1 = ctx.crossings.begin()->first;
    const LoopOccurrence occ1 = ctx.crossings.begin()->second.front();

    Path b = walk_boundary_in_side(ctx, side, p1, occ1);
    VertexId q1 = b.back();
    if (q1 == p1)
        throw CoarseMeshError("boundary run returns to its start vertex; refine the mesh");
    Path a = walk_gamma_from(ctx, p1, q1);

    // seed for the outside: flank of a gamma edge not on `a`, on the far side of `side`
    auto outside_seed_for = [&](const Path& pa) -> FaceId {
        std::vector<char> in_a(s.edge_count(), 0);
        for (EdgeId e : pa.edges) in_a[e] = 1;
        for (int i = 0; i < n; ++i) {
            EdgeId e = gamma.edges[i];
            if (in_a[e]) continue;
            HalfedgeId h = s.halfedge_of(e);
            FaceId f1 = s.face_of(h), f2 = s.face_of(s.twin(h));
            return side.contains_face(f1) ? f2 : f1;
        }
        throw MeshError("two_gon_reduce: arc covers all of gamma");
    };

    // disc bounded by a∪b inside `side`: faces unreachable from the outside seed
    auto compute_disc = [&](const Path& pa, const Path& pb, FaceId outside_seed) {
        std::vector<EdgeId> cut = pa.edges;
        cut.insert(cut.end(), pb.edges.begin(), pb.edges.end());
        auto banned = edge_mask(s, cut);
        std::vector<char> all(s.face_count(), 1);
        auto comps = face_components(s, all, banned);
        std::vector<int> comp_of(s.face_count(), -1);
        for (int ci = 0; ci < static_cast<int>(comps.size()); ++ci)
            for (FaceId f : comps[ci]) comp_of[f] = ci;
        std::vector<FaceId> disc_faces;
        for (FaceId f = 0; f < s.face_count(); ++f)
            if (comp_of[f] != comp_of[outside_seed]) disc_faces.push_back(f);
        if (disc_faces.empty()) throw MeshError("two_gon_reduce: empty disc");
        for (FaceId f : disc_faces)
            if (!side.contains_face(f))
                throw MeshError("two_gon_reduce: disc leaks out of the chosen side");
        return Region(&s, disc_faces);
    };

    Region disc = compute_disc(a, b, outside_seed_for(a));

    auto sub_components = [&](const Region& d) {
        std::vector<char> in_set(s.face_count(), 0);
        for (FaceId f : d.faces())
            if (submanifold.contains_face(f)) in_set[f] = 1;
        return face_components(s, in_set, {});
    };

    int iterations = 0;
    int initial_components = static_cast<int>(sub_components(disc).size());
    for (int guard = 0; guard < s.face_count(); ++guard) {
        auto comps = sub_components(disc);
        if (comps.empty()) throw MeshError("two_gon_reduce: disc misses the submanifold");
        if (comps.size() == 1) {
            TwoGonResult r;
            r.arc_a = a;
            r.arc_b = b;
            r.disc = disc;
            r.iterations = iterations;
            r.initial_components = initial_components;
            return r;
        }
        ++iterations;
        std::vector<int> comp_of(s.face_count(), -1);
        for (int ci = 0; ci < static_cast<int>(comps.size()); ++ci)
            for (FaceId f : comps[ci]) comp_of[f] = ci;

        // component carrying b on its boundary
        int a1_comp = -1;
        for (EdgeId e : b.edges) {
            HalfedgeId h = s.halfedge_of(e);
            HalfedgeId hm = submanifold.contains_face(s.face_of(h)) ? h : s.twin(h);
            FaceId fm = s.face_of(hm);
            if (disc.contains_face(fm)) {
                a1_comp = comp_of[fm];
                break;
            }
        }
        if (a1_comp < 0) throw MeshError("two_gon_reduce: b is not on the disc side");

        auto touches = [&](VertexId v, int target) {
            for (FaceId f : s.vertex_faces(v))
                if (comp_of[f] == target) return true;
            return false;
        };

        // first vertex along a touching a foreign component
        VertexId p2 = kInvalid;
        int a2_comp = -1;
        for (size_t t = 1; t + 1 < a.vertices.size() && p2 == kInvalid; ++t) {
            VertexId v = a.vertices[t];
            for (int ci = 0; ci < static_cast<int>(comps.size()) && p2 == kInvalid; ++ci) {
                if (ci == a1_comp) continue;
                if (touches(v, ci)) {
                    p2 = v;
                    a2_comp = ci;
                }
            }
        }
        if (p2 == kInvalid) throw MeshError("two_gon_reduce: no reduction point found");
        if (!submanifold.is_region_boundary_vertex(p2))
            throw MeshError("two_gon_reduce: reduction point not on the submanifold boundary");

        // boundary run from p2 that hugs A2: its first edge must flank A2
        const auto& loops = submanifold.boundary_loops();
        auto flank_in_comp = [&](EdgeId e, int target) {
            HalfedgeId h = s.halfedge_of(e);
            HalfedgeId hm = submanifold.contains_face(s.face_of(h)) ? h : s.twin(h);
            return comp_of[s.face_of(hm)] == target;
        };
        Path b2;
        bool found = false;
        for (int pass_hug = 1; pass_hug >= 0 && !found; --pass_hug) {
            for (int li = 0; li < static_cast<int>(loops.size()) && !found; ++li) {
                const auto& loop = loops[li];
                const int lm = static_cast<int>(loop.size());
                for (int i = 0; i < lm && !found; ++i) {
                    if (s.origin(loop[i]) != p2) continue;
                    for (int dir : {+1, -1}) {
                        EdgeId first = dir > 0 ? s.edge_of(loop[i])
                                               : s.edge_of(loop[(i + lm - 1) % lm]);
                        if (!edge_in_side(s, side, first)) continue;
                        if (pass_hug && !flank_in_comp(first, a2_comp)) continue;
                        try {
                            b2 = walk_boundary_in_side(ctx, side, p2, {li, i});
                            // the helper re-derives the direction; accept only
                            // when it starts with the intended edge
                            if (b2.edges.front() != first) {
                                Path alt;
                                alt.closed = false;
                                alt.vertices.push_back(p2);
                                int j = dir > 0 ? i : (i + lm - 1) % lm;
                                for (int guard = 0; guard <= lm; ++guard) {
                                    HalfedgeId h = loop[j];
                                    VertexId nxt = dir > 0 ? s.head(h) : s.origin(h);
                                    alt.edges.push_back(s.edge_of(h));
                                    alt.vertices.push_back(nxt);
                                    int pos_here = dir > 0 ? (j + 1) % lm : j;
                                    auto itc = ctx.crossings.find(nxt);
                                    bool stop = false;
                                    if (itc != ctx.crossings.end())
                                        for (const auto& o : itc->second)
                                            if (o.loop == li && o.pos == pos_here) stop = true;
                                    if (stop) break;
                                    j = dir > 0 ? (j + 1) % lm : (j + lm - 1) % lm;
                                }
                                b2 = alt;
                            }
                            found = true;
                            break;
                        } catch (const MeshError&) {
                        }
                    }
                }
            }
        }
        if (!found) throw MeshError("two_gon_reduce: no boundary run from the reduction point");
        VertexId q2 = b2.back();

        int pos_p2 = -1, pos_q2 = -1;
        for (int i = 0; i < static_cast<int>(a.vertices.size()); ++i) {
            if (a.vertices[i] == p2 && pos_p2 < 0) pos_p2 = i;
            if (a.vertices[i] == q2 && pos_q2 < 0) pos_q2 = i;
        }
        if (pos_p2 < 0 || pos_q2 < 0 || pos_p2 == pos_q2)
            throw MeshError("two_gon_reduce: reduced arc endpoints escaped the current arc");
        Path a2 = open_subpath(a, pos_p2, pos_q2);

        // disc around A2
        std::vector<EdgeId> cut = a2.edges;
        cut.insert(cut.end(), b2.edges.begin(), b2.edges.end());
        auto banned = edge_mask(s, cut);
        std::vector<char> all(s.face_count(), 1);
        auto pieces = face_components(s, all, banned);
        std::vector<int> piece_of(s.face_count(), -1);
        for (int ci = 0; ci < static_cast<int>(pieces.size()); ++ci)
            for (FaceId f : pieces[ci]) piece_of[f] = ci;
        FaceId a2_seed = comps[a2_comp].front();
        int keep = piece_of[a2_seed];
        std::vector<FaceId> disc_faces;
        for (FaceId f = 0; f < s.face_count(); ++f)
            if (piece_of[f] == keep) disc_faces.push_back(f);
        Region disc2(&s, disc_faces);

        auto comps2 = sub_components(disc2);
        if (comps2.empty() || comps2.size() >= comps.size())
            throw MeshError("two_gon_reduce: component count failed to decrease");
        a = a2;
        b = b2;
        disc = disc2;
    }
    throw MeshError("two_gon_reduce: iteration cap exceeded");
}

// --------------------------------------------------------------------------

std::vector<int> detect_horseshoe(const Region& region, const SlicingCurve& curve) {
    if (curve.kind != CurveKind::arc_family)
        throw MeshError("detect_horseshoe expects an arc family");
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(curve.paths.size()); ++i) {
        const Path& p = curve.paths[i];
        int l0 = region.boundary_loop_of_vertex(p.front());
        int l1 = region.boundary_loop_of_vertex(p.back());
        if (l0 == kInvalid || l1 == kInvalid)
            throw MeshError("arc endpoint not on the region boundary");
        if (l0 == l1) out.push_back(i);
    }
    return out;
}

int find_connected_collar(const Region& B, int c_loop, const std::vector<Region>& collars) {
    const Surface& s = B.surface();
    const auto& loop = B.boundary_loops().at(c_loop);
    const int m = static_cast<int>(loop.size());

    // which collar lies on the far side of each C edge
    std::vector<int> owner(m, -1);
    for (int i = 0; i < m; ++i) {
        HalfedgeId t = s.twin(loop[i]);
        if (t == kInvalid) continue;
        FaceId g = s.face_of(t);
        for (int ci = 0; ci < static_cast<int>(collars.size()); ++ci)
            if (collars[ci].contains_face(g)) {
                owner[i] = ci;
                break;
            }
    }

    auto runs_in_window = [&](int collar, int begin, int len) {
        int runs = 0;
        bool inside = false;
        bool first_inside = false;
        for (int k = 0; k < len; ++k) {
            bool here = owner[(begin + k) % m] == collar;
            if (k == 0) first_inside = here;
            if (here && !inside) ++runs;
            inside = here;
        }
        if (len == m && runs > 1 && first_inside && inside) --runs;  // cyclic wrap
        return runs;
    };

    int w_begin = 0, w_len = m;
    for (int guard = 0; guard <= m; ++guard) {
        int split = -1;
        for (int ci = 0; ci < static_cast<int>(collars.size()); ++ci)
            if (runs_in_window(ci, w_begin, w_len) >= 2) {
                split = ci;
                break;
            }
        if (split < 0) {
            for (int ci = 0; ci < static_cast<int>(collars.size()); ++ci)
                if (runs_in_window(ci, w_begin, w_len) >= 1 && runs_in_window(ci, 0, m) == 1)
                    return ci;
            throw MeshError("find_connected_collar: no collar with connected intersection");
        }
        // shrink to the stretch strictly between the first two runs of `split`
        int first_end = -1, second_start = -1;
        bool inside = false;
        for (int k = 0; k < w_len; ++k) {
            bool here = owner[(w_begin + k) % m] == split;
            if (inside && !here && first_end < 0) first_end = k;
            if (!inside && here && first_end >= 0 && second_start < 0) second_start = k;
            inside = here;
        }
        if (first_end < 0 || second_start < 0)
            throw MeshError("find_connected_collar: malformed runs");
        int nb = (w_begin + first_end) % m;
        int nl = second_start - first_end;
        if (nl <= 0 || nl >= w_len)
            throw MeshError("find_connected_collar: window failed to shrink");
        w_begin = nb;
        w_len = nl;
    }
    throw MeshError("find_connected_collar: walk did not terminate");
}

// --------------------------------------------------------------------------
// shorten

namespace {

struct Detour {
    std::vector<VertexId> path;
    double length = std::numeric_limits<double>::infinity();
};

Detour shortest_detour(const Region& region, VertexId from, VertexId to,
                       const std::vector<char>& banned_vertex) {
    const Surface& s = region.surface();
    std::vector<double> dist(s.vertex_count(), std::numeric_limits<double>::infinity());
    std::vector<VertexId> prev(s.vertex_count(), kInvalid);
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[from] = 0;
    pq.push({0, from});
    auto edge_in_region = [&](HalfedgeId h) {
        if (region.contains_face(s.face_of(h))) return true;
        HalfedgeId t = s.twin(h);
        return t != kInvalid && region.contains_face(s.face_of(t));
    };
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        if (v == to) break;
        auto relax = [&](VertexId u, double w) {
            if (u != to && banned_vertex[u]) return;
            if (d + w < dist[u]) {
                dist[u] = d + w;
                prev[u] = v;
                pq.push({d + w, u});
            }
        };
        for (HalfedgeId h : s.outgoing(v))
            if (edge_in_region(h)) relax(s.head(h), s.edge_length(s.edge_of(h)));
        const auto& fan = s.outgoing(v);
        if (!fan.empty() && s.twin(s.prev(fan.back())) == kInvalid) {
            HalfedgeId p = s.prev(fan.back());
            if (edge_in_region(p)) relax(s.origin(p), s.edge_length(s.edge_of(p)));
        }
    }
    Detour out;
    if (!std::isfinite(dist[to])) return out;
    out.length = dist[to];
    for (VertexId v = to; v != kInvalid; v = prev[v]) out.path.push_back(v);
    std::reverse(out.path.begin(), out.path.end());
    return out;
}

double overlap_area(const Surface& s, const Region& a, const Region& b) {
    double total = 0;
    for (FaceId f : b.faces())
        if (a.contains_face(f)) total += s.face_area(f);
    return total;
}

}  // namespace

SlicingCurve shorten(const Region& region, const SlicingCurve& curve, const ShortenOptions& opt) {
    const Surface& s = region.surface();
    SlicingCurve cur = curve;
    const size_t n_comps = cur.decomposition.size();

    for (int pass = 0; pass < opt.max_passes; ++pass) {
        bool improved = false;
        for (size_t pi = 0; pi < cur.paths.size() && !improved; ++pi) {
            const Path& path = cur.paths[pi];
            const int n = path.size();
            const int n_verts = static_cast<int>(path.vertices.size());
            for (int i = 0; i < n_verts && !improved; ++i) {
                for (int gap = 1; gap <= opt.max_gap && !improved; ++gap) {
                    if (path.closed) {
                        if (gap >= n - 1) continue;
                    } else {
                        if (i + gap >= n_verts) continue;
                    }
                    VertexId u = path.vertices[i];
                    VertexId w = path.vertices[path.closed ? (i + gap) % n : i + gap];
                    double old_len = 0;
                    for (int k = 0; k < gap; ++k) old_len += s.edge_length(path.edges[(i + k) % n]);

                    std::vector<char> banned(s.vertex_count(), 0);
                    for (const auto& p2 : cur.paths)
                        for (VertexId v : p2.vertices) banned[v] = 1;
                    // interior of the replaced stretch may be reused
                    for (int k = 1; k < gap; ++k)
                        banned[path.vertices[path.closed ? (i + k) % n : i + k]] = 0;
                    banned[u] = 0;
                    auto detour = shortest_detour(region, u, w, banned);
                    if (detour.path.empty() ||
                        detour.length >= old_len - 1e-12 * std::max(1.0, old_len))
                        continue;

                    std::vector<VertexId> nv;
                    if (path.closed) {
                        for (int k = (i + gap) % n; k != i; k = (k + 1) % n)
                            nv.push_back(path.vertices[k]);
                        nv.push_back(u);
                        nv.insert(nv.end(), detour.path.begin() + 1, detour.path.end() - 1);
                    } else {
                        nv.assign(path.vertices.begin(), path.vertices.begin() + i + 1);
                        nv.insert(nv.end(), detour.path.begin() + 1, detour.path.end() - 1);
                        nv.insert(nv.end(), path.vertices.begin() + i + gap, path.vertices.end());
                    }
                    if (path.closed && nv.size() < 3) continue;
                    Path candidate;
                    try {
                        candidate = path_from_vertices(s, nv, path.closed);
                    } catch (const MeshError&) {
                        continue;
                    }
                    if (!candidate.is_simple()) continue;

                    std::vector<Path> new_paths = cur.paths;
                    new_paths[pi] = candidate;
                    SlicingCurve next;
                    try {
                        next = make_slicing_curve(region, cur.kind, new_paths, kInvalid);
                    } catch (const MeshError&) {
                        continue;
                    }
                    if (next.length >= cur.length - 1e-12 * std::max(1.0, cur.length)) continue;
                    if (next.decomposition.size() != n_comps) continue;

                    bool ok = true;
                    for (const auto& comp : next.decomposition)
                        if (comp.area() < opt.min_area_fraction * region.area() - 1e-12) ok = false;
                    if (!ok) continue;

                    if (cur.distinguished != kInvalid) {
                        const Region& old_a1 = cur.decomposition[cur.distinguished];
                        int best = kInvalid;
                        double best_ov = -1;
                        for (int ci = 0; ci < static_cast<int>(next.decomposition.size()); ++ci) {
                            double ov = overlap_area(s, old_a1, next.decomposition[ci]);
                            if (ov > best_ov) {
                                best_ov = ov;
                                best = ci;
                            }
                        }
                        if (best_ov < 0.5 * old_a1.area()) continue;
                        next.distinguished = best;
                    }
                    cur = std::move(next);
                    improved = true;
                }
            }
        }
        if (!improved) break;
    }
    return cur;
}

Path shortest_vertex_path(const Region& region, VertexId from, VertexId to,
                          const std::vector<char>& banned_vertices) {
    auto d = shortest_detour(region, from, to, banned_vertices);
    if (d.path.empty()) return {};
    return path_from_vertices(region.surface(), d.path, false);
}

// --------------------------------------------------------------------------
// theta graphs and push-off

double ThetaGraph::total_length(const Surface& s) const {
    return arcs[0].length(s) + arcs[1].length(s) + arcs[2].length(s);
}

ThetaGraph make_theta(const Surface& s, const Path& arc1, const Path& arc2, const Path& arc3) {
    ThetaGraph t;
    t.arcs = {arc1, arc2, arc3};
    for (const auto& a : t.arcs) {
        if (a.closed || a.empty()) throw MeshError("theta arcs must be nonempty open paths");
        if (!a.is_simple()) throw MeshError("theta arc self-intersects");
    }
    t.a = arc1.front();
    t.b = arc1.back();
    if (t.a == t.b) throw MeshError("theta endpoints must be distinct");
    for (const auto& a : t.arcs) {
        bool fwd = a.front() == t.a && a.back() == t.b;
        bool bwd = a.front() == t.b && a.back() == t.a;
        if (!fwd && !bwd) throw MeshError("theta arcs must share their two endpoints");
    }
    std::set<VertexId> seen;
    for (const auto& a : t.arcs)
        for (size_t i = 1; i + 1 < a.vertices.size(); ++i) {
            VertexId v = a.vertices[i];
            if (v == t.a || v == t.b || seen.count(v))
                throw MeshError("theta arcs intersect internally");
            seen.insert(v);
        }
    (void)s;
    return t;
}

void validate_theta(const Region& ambient, const ThetaGraph& theta) {
    std::vector<EdgeId> cut;
    for (const auto& a : theta.arcs) cut.insert(cut.end(), a.edges.begin(), a.edges.end());
    auto comps = decompose(ambient, cut);
    if (comps.size() != 3)
        throw MeshError("theta does not separate the region into three faces (got " +
                        std::to_string(comps.size()) + ")");
}

std::vector<FaceId> one_ring_side_faces(const Surface& s, const Path& cycle, FaceId seed_side) {
    std::vector<char> on_cycle_v(s.vertex_count(), 0);
    std::vector<char> cycle_edge(s.edge_count(), 0);
    for (VertexId v : cycle.vertices) on_cycle_v[v] = 1;
    for (EdgeId e : cycle.edges) cycle_edge[e] = 1;
    auto in_band = [&](FaceId f) {
        const auto& tri = s.face(f);
        return on_cycle_v[tri[0]] || on_cycle_v[tri[1]] || on_cycle_v[tri[2]];
    };
    if (!in_band(seed_side)) throw MeshError("one_ring_side_faces: seed does not touch the cycle");
    std::vector<char> vis(s.face_count(), 0);
    std::vector<FaceId> stack = {seed_side}, out;
    vis[seed_side] = 1;
    while (!stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        out.push_back(f);
        for (int i = 0; i < 3; ++i) {
            HalfedgeId h = 3 * f + i;
            if (cycle_edge[s.edge_of(h)]) continue;
            HalfedgeId t = s.twin(h);
            if (t == kInvalid) continue;
            FaceId g = s.face_of(t);
            if (!vis[g] && in_band(g)) {
                vis[g] = 1;
                stack.push_back(g);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Fan faces at `v` in the wedge between edges ei and ej avoiding ek.
std::vector<FaceId> wedge_faces(const Surface& s, const Region& ambient, VertexId v, EdgeId ei,
                                EdgeId ej, EdgeId ek) {
    const auto& fan = s.outgoing(v);
    const int d = static_cast<int>(fan.size());
    bool on_boundary = s.is_boundary_vertex(v);
    auto pos_of = [&](EdgeId e) {
        for (int i = 0; i < d; ++i)
            if (s.edge_of(fan[i]) == e) return i;
        if (on_boundary && s.edge_of(s.prev(fan.back())) == e) return d;
        return -1;
    };
    int pi = pos_of(ei), pj = pos_of(ej), pk = pos_of(ek);
    if (pi < 0 || pj < 0 || pk < 0) throw MeshError("wedge_faces: arc edge missing at junction");
    const int slots = on_boundary ? d + 1 : d;
    auto collect = [&](int from, int to) {
        std::vector<FaceId> out;
        for (int t = from; t != to; t = (t + 1) % slots) {
            if (t < d) {
                FaceId f = s.face_of(fan[t]);
                if (ambient.contains_face(f)) out.push_back(f);
            }
        }
        return out;
    };
    auto slot_between = [&](int from, int to, int p) {
        for (int t = from; t != to; t = (t + 1) % slots)
            if (t == p) return true;
        return false;
    };
    if (!slot_between(pi, pj, pk)) return collect(pi, pj);
    return collect(pj, pi);
}

}  // namespace

PushOffResult push_off(const Region& ambient, const ThetaGraph& theta, ThetaSide side,
                       double offset) {
    const Surface& s = ambient.surface();
    if (offset <= 0) throw MeshError("push_off: offset must be positive");
    int i, j, k;
    switch (side) {
        case ThetaSide::s12: i = 0, j = 1, k = 2; break;
        case ThetaSide::s23: i = 1, j = 2, k = 0; break;
        default: i = 0, j = 2, k = 1; break;
    }
    const Path& ai = theta.arcs[i];
    const Path& aj = theta.arcs[j];
    const Path& ak = theta.arcs[k];

    Path ai_f = ai.front() == theta.a ? ai : ai.reversed();
    Path aj_f = aj.front() == theta.a ? aj : aj.reversed();
    Path ak_f = ak.front() == theta.a ? ak : ak.reversed();
    std::vector<VertexId> cyc = ai_f.vertices;
    for (int t = static_cast<int>(aj_f.vertices.size()) - 2; t >= 1; --t)
        cyc.push_back(aj_f.vertices[t]);
    Path cycle = path_from_vertices(s, cyc, true);

    auto seeds = wedge_faces(s, ambient, theta.a, ai_f.edges.front(), aj_f.edges.front(),
                             ak_f.edges.front());
    if (seeds.empty()) throw MeshError("push_off: no clearance at the junction");

    auto band = one_ring_side_faces(s, cycle, seeds.front());
    for (FaceId f : band)
        if (!ambient.contains_face(f))
            throw MeshError("push_off: one-ring band leaves the ambient region");
    Region strip(&s, band);

    std::vector<char> cyc_edge(s.edge_count(), 0);
    for (EdgeId e : cycle.edges) cyc_edge[e] = 1;
    int loop_idx = -1;
    for (int li = 0; li < strip.boundary_loop_count(); ++li) {
        bool is_cycle = true;
        for (HalfedgeId h : strip.boundary_loops()[li])
            if (!cyc_edge[s.edge_of(h)]) is_cycle = false;
        if (!is_cycle) {
            if (loop_idx >= 0) throw MeshError("push_off: band is pinched (clearance failure)");
            loop_idx = li;
        }
    }
    if (loop_idx < 0) throw MeshError("push_off: no off-cycle boundary loop");
    Path loop = loop_to_path(s, strip.boundary_loops()[loop_idx]);
    if (!loop.is_simple()) throw MeshError("push_off: pushed-off loop is not simple");
    {
        std::set<VertexId> theta_verts;
        for (const auto& arc : theta.arcs)
            theta_verts.insert(arc.vertices.begin(), arc.vertices.end());
        for (VertexId v : loop.vertices)
            if (theta_verts.count(v))
                throw MeshError("push_off: loop touches the theta (clearance failure)");
    }

    double min_alt = std::numeric_limits<double>::infinity();
    for (FaceId f : strip.faces()) {
        double longest = 0;
        for (int t = 0; t < 3; ++t) longest = std::max(longest, s.edge_length(s.edge_of(3 * f + t)));
        min_alt = std::min(min_alt, 2 * s.face_area(f) / longest);
    }
    if (offset > min_alt)
        throw MeshError("push_off: offset " + std::to_string(offset) +
                        " exceeds one-ring clearance " + std::to_string(min_alt));

    PushOffResult r;
    r.loop = loop;
    r.strip = strip;
    r.eps_push = std::max(0.0, loop.length(s) - ai.length(s) - aj.length(s));
    return r;
}

}  // namespace sweepslice
