#include "sweepslice/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

namespace sweepslice {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
    double n = norm();
    if (n == 0) throw MeshError("cannot normalize zero vector");
    return {x / n, y / n, z / n};
}

double default_face_cap() {
    if (const char* env = std::getenv("SWEEPSLICE_FACE_CAP")) {
        double cap = std::atof(env);
        if (cap > 0) return cap;
    }
    return 2'000'000.0;
}

double triangle_area(double a, double b, double c) {
    // sort a >= b >= c
    if (a < b) std::swap(a, b);
    if (b < c) std::swap(b, c);
    if (a < b) std::swap(a, b);
    double t = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if (t <= 0) {
        if (t > -1e-14 * a * a * a * a) return 0.0;
        throw MeshError("triangle inequality violated: sides " + std::to_string(a) + ", " +
                        std::to_string(b) + ", " + std::to_string(c));
    }
    return 0.25 * std::sqrt(t);
}

Surface Surface::from_positions(std::vector<Vec3> positions,
                                std::vector<std::array<VertexId, 3>> faces) {
    Surface s;
    s.n_vertices_ = static_cast<int>(positions.size());
    s.faces_ = std::move(faces);
    s.positions_ = std::move(positions);
    s.build_connectivity();
    s.edge_length_.resize(s.edge_count());
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
        auto [a, b] = s.edge_vertices(e);
        s.edge_length_[e] = (s.positions_[a] - s.positions_[b]).norm();
    }
    s.compute_metric();
    s.validate();
    return s;
}

Surface Surface::from_lengths(int vertex_count, std::vector<std::array<VertexId, 3>> faces,
                              const std::vector<double>& corner_lengths) {
    Surface s;
    s.n_vertices_ = vertex_count;
    s.faces_ = std::move(faces);
    s.build_connectivity();
    if (corner_lengths.size() != s.faces_.size() * 3)
        throw MeshError("from_lengths: need one length per halfedge");
    s.edge_length_.assign(s.edge_count(), -1.0);
    for (HalfedgeId h = 0; h < s.halfedge_count(); ++h) {
        EdgeId e = s.halfedge_edge_[h];
        double l = corner_lengths[h];
        if (l <= 0) throw MeshError("nonpositive edge length");
        if (s.edge_length_[e] < 0)
            s.edge_length_[e] = l;
        else if (std::abs(s.edge_length_[e] - l) > 1e-12 * std::max(1.0, l))
            throw MeshError("inconsistent lengths across a shared edge");
    }
    s.compute_metric();
    s.validate();
    return s;
}

void Surface::build_connectivity() {
    const int F = face_count();
    for (const auto& f : faces_)
        for (VertexId v : f)
            if (v < 0 || v >= n_vertices_) throw MeshError("face references missing vertex");

    twin_.assign(3 * F, kInvalid);
    halfedge_edge_.assign(3 * F, kInvalid);
    edge_halfedge_.clear();

    std::map<std::pair<VertexId, VertexId>, HalfedgeId> open_he;
    for (HalfedgeId h = 0; h < 3 * F; ++h) {
        VertexId a = origin(h), b = head(h);
        if (a == b) throw MeshError("degenerate face edge");
        auto rev = open_he.find({b, a});
        if (rev != open_he.end()) {
            HalfedgeId g = rev->second;
            if (twin_[g] != kInvalid) throw MeshError("non-manifold edge");
            twin_[g] = h;
            twin_[h] = g;
            halfedge_edge_[h] = halfedge_edge_[g];
            open_he.erase(rev);
        } else {
            if (open_he.count({a, b}))
                throw MeshError("two faces traverse an edge in the same direction (non-orientable or non-manifold)");
            open_he[{a, b}] = h;
            halfedge_edge_[h] = static_cast<EdgeId>(edge_halfedge_.size());
            edge_halfedge_.push_back(h);
        }
    }

    // outgoing fans, boundary-first on boundary vertices
    outgoing_.assign(n_vertices_, {});
    boundary_vertex_.assign(n_vertices_, 0);
    std::vector<HalfedgeId> some_out(n_vertices_, kInvalid);
    std::vector<int> degree(n_vertices_, 0);
    for (HalfedgeId h = 0; h < 3 * F; ++h) {
        some_out[origin(h)] = h;
        ++degree[origin(h)];
    }
    for (VertexId v = 0; v < n_vertices_; ++v) {
        HalfedgeId h0 = some_out[v];
        if (h0 == kInvalid) throw MeshError("isolated vertex " + std::to_string(v));
        // rotate clockwise to a boundary start if one exists
        HalfedgeId h = h0;
        for (;;) {
            HalfedgeId t = twin_[h];
            if (t == kInvalid) {
                boundary_vertex_[v] = 1;
                break;
            }
            HalfedgeId n = next(t);
            if (n == h0) break;
            h = n;
        }
        HalfedgeId start = h;
        for (;;) {
            outgoing_[v].push_back(h);
            HalfedgeId p = prev(h);
            if (twin_[p] == kInvalid) break;  // boundary fan ends
            h = twin_[p];
            if (h == start) break;
        }
        // a vertex whose faces form more than one fan is non-manifold
        if (degree[v] != static_cast<int>(outgoing_[v].size()))
            throw MeshError("non-manifold vertex " + std::to_string(v));
    }

    // boundary loops, traced along the face-side halfedges
    std::vector<char> seen(3 * F, 0);
    boundary_loops_.clear();
    for (HalfedgeId h = 0; h < 3 * F; ++h) {
        if (twin_[h] != kInvalid || seen[h]) continue;
        std::vector<HalfedgeId> loop;
        HalfedgeId cur = h;
        do {
            seen[cur] = 1;
            loop.push_back(cur);
            // advance: rotate around head(cur) to the next boundary halfedge
            HalfedgeId e = next(cur);
            while (twin_[e] != kInvalid) e = next(twin_[e]);
            cur = e;
        } while (cur != h);
        boundary_loops_.push_back(std::move(loop));
    }
}

void Surface::compute_metric() {
    face_area_.resize(face_count());
    total_area_ = 0;
    for (FaceId f = 0; f < face_count(); ++f) {
        double a = edge_length_[halfedge_edge_[3 * f]];
        double b = edge_length_[halfedge_edge_[3 * f + 1]];
        double c = edge_length_[halfedge_edge_[3 * f + 2]];
        face_area_[f] = triangle_area(a, b, c);
        if (face_area_[f] <= 0)
            throw MeshError("degenerate face " + std::to_string(f));
        total_area_ += face_area_[f];
    }
}

void Surface::validate() const {
    if (face_count() == 0) throw MeshError("empty mesh");
    // connectivity
    std::vector<char> vis(face_count(), 0);
    std::vector<FaceId> stack = {0};
    vis[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        for (int i = 0; i < 3; ++i) {
            HalfedgeId t = twin_[3 * f + i];
            if (t != kInvalid && !vis[t / 3]) {
                vis[t / 3] = 1;
                ++reached;
                stack.push_back(t / 3);
            }
        }
    }
    if (reached != face_count()) throw MeshError("surface is not connected");
    int k = boundary_loop_count();
    if (euler_characteristic() != 2 - k)
        throw MeshError("not a sphere with holes: " + topology_summary());
}

std::string Surface::topology_summary() const {
    std::ostringstream os;
    os << "V=" << n_vertices_ << " E=" << edge_count() << " F=" << face_count()
       << " chi=" << euler_characteristic() << " boundary_loops=" << boundary_loop_count();
    return os.str();
}

EdgeId Surface::edge_between(VertexId a, VertexId b) const {
    for (HalfedgeId h : outgoing_[a])
        if (head(h) == b) return halfedge_edge_[h];
    // b->a may exist only as the face-side halfedge when a is a boundary head
    for (HalfedgeId h : outgoing_[b])
        if (head(h) == a) return halfedge_edge_[h];
    return kInvalid;
}

double Surface::max_edge_length() const {
    double m = 0;
    for (double l : edge_length_) m = std::max(m, l);
    return m;
}

double Surface::boundary_length() const {
    double total = 0;
    for (const auto& loop : boundary_loops_)
        for (HalfedgeId h : loop) total += edge_length_[halfedge_edge_[h]];
    return total;
}

std::vector<VertexId> Surface::vertex_neighbors(VertexId v) const {
    std::vector<VertexId> out;
    out.reserve(outgoing_[v].size() + 1);
    for (HalfedgeId h : outgoing_[v]) out.push_back(head(h));
    const auto& fan = outgoing_[v];
    if (!fan.empty() && twin_[prev(fan.back())] == kInvalid)
        out.push_back(origin(prev(fan.back())));
    return out;
}

std::vector<FaceId> Surface::vertex_faces(VertexId v) const {
    std::vector<FaceId> out;
    out.reserve(outgoing_[v].size());
    for (HalfedgeId h : outgoing_[v]) out.push_back(h / 3);
    return out;
}

Surface Surface::refine(double target_edge, double face_cap) const {
    if (target_edge <= 0) throw MeshError("refine: target_edge must be positive");
    Surface cur = *this;
    while (cur.max_edge_length() > target_edge) {
        if (cur.face_count() * 4.0 > face_cap)
            throw MeshError("refine: face cap " + std::to_string(static_cast<long long>(face_cap)) +
                            " exceeded (set SWEEPSLICE_FACE_CAP to override)");
        const int V = cur.vertex_count();
        std::vector<std::array<VertexId, 3>> faces;
        faces.reserve(cur.face_count() * 4);
        std::vector<double> lengths;
        lengths.reserve(cur.face_count() * 12);
        auto mid = [&](HalfedgeId h) { return V + cur.edge_of(h); };
        for (FaceId f = 0; f < cur.face_count(); ++f) {
            VertexId v0 = cur.faces_[f][0], v1 = cur.faces_[f][1], v2 = cur.faces_[f][2];
            VertexId m01 = mid(3 * f), m12 = mid(3 * f + 1), m20 = mid(3 * f + 2);
            double l01 = cur.edge_length_[cur.halfedge_edge_[3 * f]] * 0.5;
            double l12 = cur.edge_length_[cur.halfedge_edge_[3 * f + 1]] * 0.5;
            double l20 = cur.edge_length_[cur.halfedge_edge_[3 * f + 2]] * 0.5;
            // corner triangles and the medial triangle; midlines are half the
            // opposite side, so every child length is exactly half a parent's
            faces.push_back({v0, m01, m20});
            lengths.insert(lengths.end(), {l01, l12, l20});
            faces.push_back({m01, v1, m12});
            lengths.insert(lengths.end(), {l01, l12, l20});
            faces.push_back({m12, v2, m20});
            lengths.insert(lengths.end(), {l12, l20, l01});
            faces.push_back({m01, m12, m20});
            lengths.insert(lengths.end(), {l20, l01, l12});
        }
        Surface next = Surface::from_lengths(V + cur.edge_count(), std::move(faces), lengths);
        if (cur.has_positions()) {
            std::vector<Vec3> pos = cur.positions_;
            pos.resize(V + cur.edge_count());
            for (EdgeId e = 0; e < cur.edge_count(); ++e) {
                auto [a, b] = cur.edge_vertices(e);
                pos[V + e] = (cur.positions_[a] + cur.positions_[b]) * 0.5;
            }
            next.positions_ = std::move(pos);
        }
        cur = std::move(next);
    }
    return cur;
}

std::vector<double> Surface::vertex_distances(VertexId source) const {
    return vertex_distances_multi({source});
}

std::vector<double> Surface::vertex_distances_multi(const std::vector<VertexId>& sources) const {
    std::vector<double> dist(n_vertices_, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (VertexId s : sources) {
        dist[s] = 0;
        pq.push({0.0, s});
    }
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (HalfedgeId h : outgoing_[v]) {
            double nd = d + edge_length_[halfedge_edge_[h]];
            VertexId u = head(h);
            if (nd < dist[u]) {
                dist[u] = nd;
                pq.push({nd, u});
            }
        }
        // boundary fans miss the closing halfedge; cover it from the far side
        const auto& fan = outgoing_[v];
        if (!fan.empty() && twin_[prev(fan.back())] == kInvalid) {
            HalfedgeId p = prev(fan.back());
            VertexId u = origin(p);
            double nd = d + edge_length_[halfedge_edge_[p]];
            if (nd < dist[u]) {
                dist[u] = nd;
                pq.push({nd, u});
            }
        }
    }
    return dist;
}

std::uint64_t Surface::content_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(n_vertices_));
    for (const auto& f : faces_)
        for (VertexId v : f) mix(static_cast<std::uint64_t>(v));
    for (double l : edge_length_)
        mix(static_cast<std::uint64_t>(std::llround(l * 1e9)));
    return h;
}

// ---------------------------------------------------------------------------

Region::Region(const Surface* surface, std::vector<FaceId> faces)
    : surface_(surface), faces_(std::move(faces)) {
    std::sort(faces_.begin(), faces_.end());
    faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
    if (faces_.empty()) throw MeshError("empty region");
    mask_.assign(surface_->face_count(), 0);
    area_ = 0;
    for (FaceId f : faces_) {
        if (f < 0 || f >= surface_->face_count()) throw MeshError("region face out of range");
        mask_[f] = 1;
        area_ += surface_->face_area(f);
    }
    derive_boundary();
}

Region Region::whole(const Surface& surface) {
    std::vector<FaceId> all(surface.face_count());
    for (int i = 0; i < surface.face_count(); ++i) all[i] = i;
    return Region(&surface, std::move(all));
}

void Region::derive_boundary() {
    const Surface& s = *surface_;
    auto outside = [&](HalfedgeId h) {
        HalfedgeId t = s.twin(h);
        return t == kInvalid || !mask_[s.face_of(t)];
    };
    std::vector<char> seen(s.halfedge_count(), 0);
    boundary_loops_.clear();
    vertex_loop_.assign(s.vertex_count(), kInvalid);
    edge_loop_.assign(s.edge_count(), kInvalid);
    for (FaceId f : faces_) {
        for (int i = 0; i < 3; ++i) {
            HalfedgeId h0 = 3 * f + i;
            if (!outside(h0) || seen[h0]) continue;
            std::vector<HalfedgeId> loop;
            HalfedgeId cur = h0;
            do {
                seen[cur] = 1;
                loop.push_back(cur);
                HalfedgeId e = s.next(cur);
                while (!outside(e)) e = s.next(s.twin(e));
                cur = e;
            } while (cur != h0);
            int id = static_cast<int>(boundary_loops_.size());
            for (HalfedgeId h : loop) {
                vertex_loop_[s.origin(h)] = id;
                edge_loop_[s.edge_of(h)] = id;
            }
            boundary_loops_.push_back(std::move(loop));
        }
    }
}

double Region::max_face_area() const {
    double m = 0;
    for (FaceId f : faces_) m = std::max(m, surface_->face_area(f));
    return m;
}

double Region::boundary_length() const {
    double total = 0;
    for (int i = 0; i < boundary_loop_count(); ++i) total += boundary_loop_length(i);
    return total;
}

double Region::boundary_loop_length(int loop) const {
    double total = 0;
    for (HalfedgeId h : boundary_loops_[loop]) total += surface_->edge_length(surface_->edge_of(h));
    return total;
}

bool Region::is_edge_connected() const {
    if (faces_.empty()) return false;
    const Surface& s = *surface_;
    std::vector<char> vis(s.face_count(), 0);
    std::vector<FaceId> stack = {faces_[0]};
    vis[faces_[0]] = 1;
    int reached = 1;
    while (!stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        for (int i = 0; i < 3; ++i) {
            HalfedgeId t = s.twin(3 * f + i);
            if (t == kInvalid) continue;
            FaceId g = s.face_of(t);
            if (mask_[g] && !vis[g]) {
                vis[g] = 1;
                ++reached;
                stack.push_back(g);
            }
        }
    }
    return reached == face_count();
}

int Region::euler_characteristic() const {
    const Surface& s = *surface_;
    std::vector<char> v_seen(s.vertex_count(), 0), e_seen(s.edge_count(), 0);
    int V = 0, E = 0;
    for (FaceId f : faces_) {
        for (int i = 0; i < 3; ++i) {
            VertexId v = s.origin(3 * f + i);
            if (!v_seen[v]) {
                v_seen[v] = 1;
                ++V;
            }
            EdgeId e = s.edge_of(3 * f + i);
            if (!e_seen[e]) {
                e_seen[e] = 1;
                ++E;
            }
        }
    }
    return V - E + face_count();
}

std::vector<VertexId> Region::vertices() const {
    const Surface& s = *surface_;
    std::vector<char> seen(s.vertex_count(), 0);
    std::vector<VertexId> out;
    for (FaceId f : faces_)
        for (int i = 0; i < 3; ++i) {
            VertexId v = s.origin(3 * f + i);
            if (!seen[v]) {
                seen[v] = 1;
                out.push_back(v);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool Region::contains_vertex(VertexId v) const {
    for (FaceId f : surface_->vertex_faces(v))
        if (mask_[f]) return true;
    return false;
}

bool Region::is_region_boundary_edge(EdgeId e) const { return edge_loop_[e] != kInvalid; }

bool Region::is_region_boundary_vertex(VertexId v) const { return vertex_loop_[v] != kInvalid; }

int Region::boundary_loop_of_vertex(VertexId v) const { return vertex_loop_[v]; }

int Region::boundary_loop_of_edge(EdgeId e) const { return edge_loop_[e]; }

std::vector<double> Region::vertex_distances_multi(const std::vector<VertexId>& sources) const {
    const Surface& s = *surface_;
    std::vector<double> dist(s.vertex_count(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (VertexId v : sources) {
        dist[v] = 0;
        pq.push({0.0, v});
    }
    auto edge_in_region = [&](HalfedgeId h) {
        if (mask_[s.face_of(h)]) return true;
        HalfedgeId t = s.twin(h);
        return t != kInvalid && mask_[s.face_of(t)];
    };
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (HalfedgeId h : s.outgoing(v)) {
            if (!edge_in_region(h)) continue;
            double nd = d + s.edge_length(s.edge_of(h));
            VertexId u = s.head(h);
            if (nd < dist[u]) {
                dist[u] = nd;
                pq.push({nd, u});
            }
        }
        const auto& fan = s.outgoing(v);
        if (!fan.empty() && s.twin(s.prev(fan.back())) == kInvalid) {
            HalfedgeId p = s.prev(fan.back());
            if (edge_in_region(p)) {
                VertexId u = s.origin(p);
                double nd = d + s.edge_length(s.edge_of(p));
                if (nd < dist[u]) {
                    dist[u] = nd;
                    pq.push({nd, u});
                }
            }
        }
    }
    return dist;
}

double area(const Region& region) { return region.area(); }
double boundary_length(const Region& region) { return region.boundary_length(); }

}  // namespace sweepslice
