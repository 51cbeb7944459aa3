#include "sweepslice/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace sweepslice {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::array<VertexId, 3>> icosahedron_faces() {
    return {{0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10},  {0, 10, 11},
            {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6},  {7, 1, 8},
            {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},   {3, 8, 9},
            {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},   {9, 8, 1}};
}

std::vector<Vec3> icosahedron_positions() {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> p = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                           {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                           {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    for (auto& v : p) v = v.normalized();
    return p;
}

// One geometric 1-to-4 split with reprojection onto the unit sphere.
void subdivide_project(std::vector<Vec3>& pos, std::vector<std::array<VertexId, 3>>& faces) {
    std::map<std::pair<VertexId, VertexId>, VertexId> midpoint;
    auto mid = [&](VertexId a, VertexId b) {
        auto key = std::minmax(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        VertexId m = static_cast<VertexId>(pos.size());
        pos.push_back(((pos[a] + pos[b]) * 0.5).normalized());
        midpoint[key] = m;
        return m;
    };
    std::vector<std::array<VertexId, 3>> out;
    out.reserve(faces.size() * 4);
    for (auto [a, b, c] : faces) {
        VertexId ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
        out.push_back({a, ab, ca});
        out.push_back({ab, b, bc});
        out.push_back({bc, c, ca});
        out.push_back({ab, bc, ca});
    }
    faces = std::move(out);
}

// Triangulates the band between two cyclically ordered vertex rings by
// angular zipping. Outward orientation assumes ringA is "below" ringB along
// the tube axis and both run counterclockwise seen from outside the tip.
void zip_rings(const std::vector<VertexId>& ring_a, const std::vector<double>& ang_a,
               const std::vector<VertexId>& ring_b, const std::vector<double>& ang_b,
               std::vector<std::array<VertexId, 3>>& faces) {
    const size_t na = ring_a.size(), nb = ring_b.size();
    size_t ia = 0, ib = 0;
    auto ahead = [](double from, double to) {
        double d = to - from;
        while (d < 0) d += 2 * kPi;
        while (d >= 2 * kPi) d -= 2 * kPi;
        return d;
    };
    // start ib at the b-vertex angularly nearest ring_a[0]
    double best = 1e18;
    for (size_t j = 0; j < nb; ++j) {
        double d = std::min(ahead(ang_a[0], ang_b[j]), ahead(ang_b[j], ang_a[0]));
        if (d < best) {
            best = d;
            ib = j;
        }
    }
    size_t steps_a = 0, steps_b = 0;
    while (steps_a < na || steps_b < nb) {
        VertexId a0 = ring_a[ia % na], b0 = ring_b[ib % nb];
        bool advance_a;
        if (steps_a == na)
            advance_a = false;
        else if (steps_b == nb)
            advance_a = true;
        else {
            double da = ahead(ang_a[ia % na], ang_a[(ia + 1) % na]);
            double db = ahead(ang_b[ib % nb], ang_b[(ib + 1) % nb]);
            // advance the ring whose next vertex trails angularly
            double ta = ahead(ang_b[ib % nb], ang_a[(ia + 1) % na]);
            double tb = ahead(ang_a[ia % na], ang_b[(ib + 1) % nb]);
            (void)da;
            (void)db;
            advance_a = ta <= tb;
        }
        if (advance_a) {
            VertexId a1 = ring_a[(ia + 1) % na];
            faces.push_back({a0, a1, b0});
            ++ia;
            ++steps_a;
        } else {
            VertexId b1 = ring_b[(ib + 1) % nb];
            faces.push_back({a0, b1, b0});
            ++ib;
            ++steps_b;
        }
    }
}

Surface from_soup_compacted(const std::vector<Vec3>& pos,
                            std::vector<std::array<VertexId, 3>> faces) {
    std::vector<int> remap(pos.size(), -1);
    std::vector<Vec3> used;
    for (auto& tri : faces)
        for (auto& v : tri) {
            if (remap[v] < 0) {
                remap[v] = static_cast<int>(used.size());
                used.push_back(pos[v]);
            }
            v = remap[v];
        }
    return Surface::from_positions(std::move(used), std::move(faces));
}

}  // namespace

Surface make_tetrahedron(double edge) {
    double s = edge / (2.0 * std::sqrt(2.0));
    std::vector<Vec3> p = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    return Surface::from_positions(p, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
}

Surface make_octahedron() {
    std::vector<Vec3> p = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    return Surface::from_positions(p, {{0, 2, 4},
                                       {2, 1, 4},
                                       {1, 3, 4},
                                       {3, 0, 4},
                                       {2, 0, 5},
                                       {1, 2, 5},
                                       {3, 1, 5},
                                       {0, 3, 5}});
}

Surface make_icosahedron() {
    return Surface::from_positions(icosahedron_positions(), icosahedron_faces());
}

Surface make_icosphere(int level) {
    if (level < 0) throw MeshError("icosphere level must be >= 0");
    auto pos = icosahedron_positions();
    auto faces = icosahedron_faces();
    for (int i = 0; i < level; ++i) subdivide_project(pos, faces);
    return Surface::from_positions(pos, faces);
}

namespace {

// Shared capsule-grafting core for both starfish variants.
Surface build_starfish(int tentacle_count, double length, double radius, double body_radius,
                       int body_level, int segments) {
    if (tentacle_count < 3) throw MeshError("starfish needs at least 3 tentacles");
    if (length <= 0 || radius <= 0 || body_radius <= 0)
        throw MeshError("starfish dimensions must be positive");

    auto pos = icosahedron_positions();
    auto faces = icosahedron_faces();
    for (int i = 0; i < body_level; ++i) subdivide_project(pos, faces);
    for (auto& p : pos) p = p * body_radius;

    const int n_seg = segments > 0 ? segments : std::max(2, static_cast<int>(std::lround(length / (2 * radius))) + 1);

    // anchor vertices, equatorial, pairwise distinct and non-adjacent
    std::vector<std::vector<char>> adjacent(pos.size(), std::vector<char>(pos.size(), 0));
    for (auto [a, b, c] : faces) {
        adjacent[a][b] = adjacent[b][a] = 1;
        adjacent[b][c] = adjacent[c][b] = 1;
        adjacent[c][a] = adjacent[a][c] = 1;
    }
    std::vector<VertexId> anchors;
    for (int t = 0; t < tentacle_count; ++t) {
        double phi = 2 * kPi * t / tentacle_count;
        Vec3 u{std::cos(phi), std::sin(phi), 0};
        VertexId best = kInvalid;
        double best_dot = -2;
        for (VertexId v = 0; v < static_cast<VertexId>(pos.size()); ++v) {
            bool clash = false;
            for (VertexId a : anchors)
                if (a == v || adjacent[a][v]) clash = true;
            if (clash) continue;
            double d = pos[v].normalized().dot(u);
            if (d > best_dot) {
                best_dot = d;
                best = v;
            }
        }
        if (best == kInvalid) throw MeshError("starfish: no anchor vertex available");
        anchors.push_back(best);
    }

    // remove anchor stars; collect hole rings in boundary order
    Surface body = Surface::from_positions(pos, faces);
    std::vector<char> removed(faces.size(), 0);
    for (VertexId a : anchors)
        for (FaceId f : body.vertex_faces(a)) removed[f] = 1;
    std::vector<std::array<VertexId, 3>> kept;
    for (size_t f = 0; f < faces.size(); ++f)
        if (!removed[f]) kept.push_back(faces[f]);

    std::vector<std::array<VertexId, 3>> out_faces = kept;
    std::vector<Vec3> out_pos = pos;

    for (int t = 0; t < tentacle_count; ++t) {
        VertexId a = anchors[t];
        Vec3 axis = pos[a].normalized();
        // ring of former neighbors, ordered counterclockwise around the axis
        // heads of the outgoing fan run counterclockwise seen from outside
        std::vector<VertexId> ring;
        for (HalfedgeId h : body.outgoing(a)) ring.push_back(body.head(h));

        Vec3 e1 = std::abs(axis.z) < 0.9 ? axis.cross({0, 0, 1}).normalized()
                                         : axis.cross({0, 1, 0}).normalized();
        Vec3 e2 = axis.cross(e1);
        auto angle_of = [&](const Vec3& q) { return std::atan2(q.dot(e2), q.dot(e1)); };

        std::vector<double> ring_angles;
        for (VertexId v : ring) ring_angles.push_back(angle_of(out_pos[v]));

        const int m = static_cast<int>(ring.size());
        // inflate so the inscribed m-gon has perimeter 2*pi*radius
        const double ring_radius = radius * (kPi / m) / std::sin(kPi / m);
        double base_height = pos[a].norm();
        double step = length / (n_seg - 1 + 0.0);
        std::vector<VertexId> prev_ring = ring;
        std::vector<double> prev_angles = ring_angles;
        for (int j = 0; j < n_seg; ++j) {
            double h = base_height + 0.05 * body_radius + j * step;
            std::vector<VertexId> cur;
            std::vector<double> cur_angles;
            for (int i = 0; i < m; ++i) {
                // regular m-gon so every ring realizes the requested circumference
                double ang = ring_angles[0] + 2 * kPi * i / m;
                VertexId id = static_cast<VertexId>(out_pos.size());
                out_pos.push_back(axis * h + (e1 * std::cos(ang) + e2 * std::sin(ang)) * ring_radius);
                cur.push_back(id);
                cur_angles.push_back(ang);
            }
            zip_rings(prev_ring, prev_angles, cur, cur_angles, out_faces);
            prev_ring = std::move(cur);
            prev_angles = std::move(cur_angles);
        }
        // conical tip cap
        VertexId apex = static_cast<VertexId>(out_pos.size());
        out_pos.push_back(axis * (base_height + 0.05 * body_radius + length + radius));
        for (int i = 0; i < m; ++i)
            out_faces.push_back({prev_ring[i], prev_ring[(i + 1) % m], apex});
    }
    return from_soup_compacted(out_pos, std::move(out_faces));
}

}  // namespace

Surface make_starfish(const StarfishSpec& spec) {
    (void)spec.ring_vertices;  // ring size follows the body hole valence
    return build_starfish(spec.tentacle_count, spec.tentacle_length, spec.tentacle_radius,
                          spec.body_radius, 2, spec.segments);
}

Surface make_coarse_starfish(double tentacle_length, double tentacle_radius, double body_radius,
                             int segments) {
    int n_seg = segments > 0 ? segments
                             : std::max(2, static_cast<int>(std::lround(tentacle_length / 1.6)));
    return build_starfish(3, tentacle_length, tentacle_radius, body_radius, 0, n_seg);
}

Surface make_bumpy_sphere(std::uint32_t seed, int level) {
    auto pos = icosahedron_positions();
    auto faces = icosahedron_faces();
    for (int i = 0; i < level; ++i) subdivide_project(pos, faces);

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(0.03, 0.12), phase(0.0, 2 * kPi), coord(-1.0, 1.0);
    std::uniform_int_distribution<int> freq(2, 5);
    struct Bump {
        Vec3 dir;
        double a, k, phi;
    };
    std::vector<Bump> bumps;
    for (int i = 0; i < 6; ++i) {
        Vec3 d{coord(rng), coord(rng), coord(rng)};
        if (d.norm() < 1e-3) d = {1, 0, 0};
        bumps.push_back({d.normalized(), amp(rng), static_cast<double>(freq(rng)), phase(rng)});
    }
    for (auto& p : pos) {
        double r = 1.0;
        for (const auto& b : bumps) r += b.a * std::cos(b.k * p.dot(b.dir) + b.phi);
        p = p * r;
    }
    return Surface::from_positions(pos, faces);
}

Surface make_rectangle_grid(double width, double height, int nx, int ny) {
    if (nx < 1 || ny < 1) throw MeshError("grid needs at least one cell per side");
    std::vector<Vec3> pos;
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            pos.push_back({width * i / nx, height * j / ny, 0});
    auto id = [&](int i, int j) { return j * (nx + 1) + i; };
    std::vector<std::array<VertexId, 3>> faces;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            // alternate the diagonal for a less directional metric
            if ((i + j) % 2 == 0) {
                faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
                faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
            } else {
                faces.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
                faces.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
            }
        }
    return Surface::from_positions(pos, faces);
}

Surface make_flat_disc(double radius, int rings) {
    if (rings < 1) throw MeshError("disc needs at least one ring");
    std::vector<Vec3> pos = {{0, 0, 0}};
    std::vector<std::vector<VertexId>> ring_ids(rings + 1);
    ring_ids[0] = {0};
    for (int j = 1; j <= rings; ++j) {
        int m = 6 * j;
        double r = radius * j / rings;
        for (int i = 0; i < m; ++i) {
            double a = 2 * kPi * i / m;
            ring_ids[j].push_back(static_cast<VertexId>(pos.size()));
            pos.push_back({r * std::cos(a), r * std::sin(a), 0});
        }
    }
    std::vector<std::array<VertexId, 3>> faces;
    for (int i = 0; i < 6; ++i) faces.push_back({0, ring_ids[1][i], ring_ids[1][(i + 1) % 6]});
    for (int j = 1; j < rings; ++j) {
        std::vector<double> a0, a1;
        for (size_t i = 0; i < ring_ids[j].size(); ++i) a0.push_back(2 * kPi * i / ring_ids[j].size());
        for (size_t i = 0; i < ring_ids[j + 1].size(); ++i)
            a1.push_back(2 * kPi * i / ring_ids[j + 1].size());
        zip_rings(ring_ids[j + 1], a1, ring_ids[j], a0, faces);
    }
    return Surface::from_positions(pos, faces);
}

Surface make_flat_annulus(double r_inner, double r_outer, int segments, int rings) {
    if (r_inner <= 0 || r_outer <= r_inner) throw MeshError("bad annulus radii");
    if (segments < 3 || rings < 1) throw MeshError("bad annulus resolution");
    std::vector<Vec3> pos;
    auto id = [&](int ring, int i) { return ring * segments + (i % segments); };
    for (int j = 0; j <= rings; ++j) {
        double r = r_inner + (r_outer - r_inner) * j / rings;
        for (int i = 0; i < segments; ++i) {
            double a = 2 * kPi * i / segments;
            pos.push_back({r * std::cos(a), r * std::sin(a), 0});
        }
    }
    std::vector<std::array<VertexId, 3>> faces;
    for (int j = 0; j < rings; ++j)
        for (int i = 0; i < segments; ++i) {
            faces.push_back({id(j, i), id(j, i + 1), id(j + 1, i + 1)});
            faces.push_back({id(j, i), id(j + 1, i + 1), id(j + 1, i)});
        }
    return Surface::from_positions(pos, faces);
}

Surface make_flat_pancake(int holes, int segments) {
    if (holes < 1) throw MeshError("pancake needs at least one hole");
    // grid with round holes punched on a row
    double width = 2.0 * holes + 1.0, height = 2.0;
    int nx = static_cast<int>(width * segments / 2), ny = segments;
    Surface grid = make_rectangle_grid(width, height, nx, ny);
    std::vector<char> keep(grid.face_count(), 1);
    const auto& p = grid.positions();
    for (int h = 0; h < holes; ++h) {
        Vec3 c{2.0 * h + 1.5, 1.0, 0};
        for (FaceId f = 0; f < grid.face_count(); ++f) {
            const auto& tri = grid.face(f);
            Vec3 centroid = (p[tri[0]] + p[tri[1]] + p[tri[2]]) * (1.0 / 3.0);
            if ((centroid - c).norm() < 0.45) keep[f] = 0;
        }
    }
    std::vector<std::array<VertexId, 3>> faces;
    for (FaceId f = 0; f < grid.face_count(); ++f)
        if (keep[f]) faces.push_back(grid.face(f));
    return from_soup_compacted(p, std::move(faces));
}

}  // namespace sweepslice
