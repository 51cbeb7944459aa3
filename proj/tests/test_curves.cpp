#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "sweepslice/curves.hpp"
#include "sweepslice/generators.hpp"
#include "sweepslice/mesh.hpp"

using namespace sweepslice;

namespace {

Path octahedron_equator(const Surface& oct) {
    return path_from_vertices(oct, {0, 2, 1, 3}, true);
}

std::vector<FaceId> upper_faces(const Surface& s) {
    std::vector<FaceId> out;
    const auto& p = s.positions();
    for (FaceId f = 0; f < s.face_count(); ++f) {
        const auto& tri = s.face(f);
        if (p[tri[0]].z + p[tri[1]].z + p[tri[2]].z > 1e-9) out.push_back(f);
    }
    return out;
}

VertexId vertex_at(const Surface& s, Vec3 q) {
    const auto& p = s.positions();
    int best = 0;
    double bd = 1e18;
    for (int v = 0; v < s.vertex_count(); ++v) {
        double d = (p[v] - q).norm();
        if (d < bd) {
            bd = d;
            best = v;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("decompose splits the octahedron along the equator") {
    Surface oct = make_octahedron();
    Region whole = Region::whole(oct);
    Path eq = octahedron_equator(oct);
    auto curve = make_slicing_curve(whole, CurveKind::closed_cycle, {eq});
    REQUIRE(curve.decomposition.size() == 2);
    for (const auto& comp : curve.decomposition)
        CHECK(comp.area() == doctest::Approx(2 * std::sqrt(3.0)).epsilon(1e-13));
    CHECK(curve.length == doctest::Approx(4 * std::sqrt(2.0)).epsilon(1e-13));

    std::set<FaceId> seen;
    for (const auto& comp : curve.decomposition)
        for (FaceId f : comp.faces()) {
            CHECK(!seen.count(f));
            seen.insert(f);
        }
    CHECK(static_cast<int>(seen.size()) == oct.face_count());
}

TEST_CASE("decompose: chord arc cuts a disc in two") {
    Surface disc = make_flat_disc(1.0, 2);
    Region whole = Region::whole(disc);
    VertexId a = vertex_at(disc, {1, 0, 0});
    VertexId m1 = vertex_at(disc, {0.5, 0, 0});
    VertexId m2 = vertex_at(disc, {-0.5, 0, 0});
    VertexId b = vertex_at(disc, {-1, 0, 0});
    Path chord = path_from_vertices(disc, {a, m1, 0, m2, b}, false);
    auto curve = make_slicing_curve(whole, CurveKind::arc_family, {chord});
    CHECK(curve.decomposition.size() == 2);
}

TEST_CASE("decompose: horseshoe arc on a 24-face annulus") {
    Surface ann = make_flat_annulus(1.0, 2.0, 12, 1);
    CHECK(ann.face_count() == 24);
    Region whole = Region::whole(ann);
    // inner ring vertices are 0..11, outer ring 12..23
    Path arc = path_from_vertices(ann, {12, 0, 1, 13}, false);
    auto curve = make_slicing_curve(whole, CurveKind::arc_family, {arc});
    CHECK(curve.decomposition.size() == 2);
    auto horseshoes = detect_horseshoe(whole, curve);
    CHECK(horseshoes == std::vector<int>{0});
}

TEST_CASE("detect_horseshoe classifies arc endpoints") {
    Surface pan = make_flat_pancake(2);
    Region whole = Region::whole(pan);
    REQUIRE(whole.boundary_loop_count() == 3);

    const auto& loops = whole.boundary_loops();
    int outer = 0;
    double best = 0;
    for (int i = 0; i < 3; ++i)
        if (whole.boundary_loop_length(i) > best) {
            best = whole.boundary_loop_length(i);
            outer = i;
        }
    std::vector<int> holes;
    for (int i = 0; i < 3; ++i)
        if (i != outer) holes.push_back(i);

    const Surface& s = pan;
    auto loop_vertex = [&](int loop, int k) { return s.origin(loops[loop][k]); };

    // arc between the two holes: not a horseshoe
    Path cross;
    {
        std::vector<char> banned(s.vertex_count(), 0);
        for (HalfedgeId h : loops[outer]) banned[s.origin(h)] = 1;
        cross = shortest_vertex_path(whole, loop_vertex(holes[0], 0), loop_vertex(holes[1], 0),
                                     banned);
        REQUIRE(!cross.empty());
    }
    auto c1 = make_slicing_curve(whole, CurveKind::arc_family, {cross});
    CHECK(detect_horseshoe(whole, c1).empty());

    // arc from the outer rim back to the outer rim: a horseshoe
    Path horse;
    {
        std::vector<char> banned(s.vertex_count(), 0);
        for (int li = 0; li < 3; ++li)
            if (li != outer)
                for (HalfedgeId h : loops[li]) banned[s.origin(h)] = 1;
        VertexId u = kInvalid, w = kInvalid;
        const auto& pos = s.positions();
        // bottom rim under the first hole and top rim above it
        double target_x = 1.5;
        double bu = 1e18, bw = 1e18;
        for (HalfedgeId h : loops[outer]) {
            VertexId v = s.origin(h);
            double dx = std::abs(pos[v].x - target_x);
            if (pos[v].y < 1e-9 && dx < bu) {
                bu = dx;
                u = v;
            }
            if (pos[v].y > 2 - 1e-9 && dx < bw) {
                bw = dx;
                w = v;
            }
        }
        REQUIRE(u != kInvalid);
        REQUIRE(w != kInvalid);
        banned[u] = banned[w] = 0;
        for (HalfedgeId h : loops[outer]) {
            VertexId v = s.origin(h);
            if (v != u && v != w) banned[v] = 1;
        }
        horse = shortest_vertex_path(whole, u, w, banned);
        REQUIRE(!horse.empty());
    }
    auto c2 = make_slicing_curve(whole, CurveKind::arc_family, {horse});
    CHECK(detect_horseshoe(whole, c2) == std::vector<int>{0});

    // mixed family: the horseshoe plus a hole-to-hole arc kept disjoint from it
    {
        std::vector<char> banned(s.vertex_count(), 0);
        for (HalfedgeId h : loops[outer]) banned[s.origin(h)] = 1;
        for (VertexId v : horse.vertices) banned[v] = 1;
        Path cross2 = shortest_vertex_path(whole, loop_vertex(holes[0], 2), loop_vertex(holes[1], 2),
                                           banned);
        if (!cross2.empty()) {
            auto c3 = make_slicing_curve(whole, CurveKind::arc_family, {horse, cross2});
            CHECK(detect_horseshoe(whole, c3) == std::vector<int>{0});
        }
    }
}

TEST_CASE("two_gon_reduce: meridian across a hemisphere, two crossings") {
    Surface oct = make_octahedron().refine(1.3);  // one round
    Region m(&oct, upper_faces(oct));
    REQUIRE(m.boundary_loop_count() == 1);

    VertexId p0 = vertex_at(oct, {1, 0, 0});
    VertexId p1 = vertex_at(oct, {-1, 0, 0});
    VertexId top = vertex_at(oct, {0, 0, 1});
    VertexId bot = vertex_at(oct, {0, 0, -1});
    auto vp = [&](Vec3 q) { return vertex_at(oct, q); };
    Path gamma = path_from_vertices(oct,
                                    {p0, vp({0.5, 0, 0.5}), top, vp({-0.5, 0, 0.5}), p1,
                                     vp({-0.5, 0, -0.5}), bot, vp({0.5, 0, -0.5})},
                                    true);
    REQUIRE(gamma.is_simple());
    CHECK(count_boundary_crossings(oct, gamma, m) == 2);

    auto sides = decompose(Region::whole(oct), gamma.edges);
    REQUIRE(sides.size() == 2);
    auto res = two_gon_reduce(oct, gamma, m, sides[0]);
    CHECK(res.iterations == 0);
    CHECK(res.initial_components == 1);
    for (FaceId f : res.disc.faces()) CHECK(sides[0].contains_face(f));
    for (EdgeId e : res.arc_b.edges) CHECK(m.is_region_boundary_edge(e));
    std::set<EdgeId> ge(gamma.edges.begin(), gamma.edges.end());
    for (EdgeId e : res.arc_a.edges) CHECK(ge.count(e));
    std::vector<FaceId> dm;
    for (FaceId f : res.disc.faces())
        if (m.contains_face(f)) dm.push_back(f);
    REQUIRE(!dm.empty());
    CHECK(Region(&oct, dm).is_edge_connected());
}

TEST_CASE("two_gon_reduce: randomized configurations reduce to a connected disc") {
    Surface ico = make_icosphere(2);
    Region whole = Region::whole(ico);
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> pick_face(0, ico.face_count() - 1);

    int ran = 0, iterated = 0;
    for (int trial = 0; trial < 200 && ran < 30; ++trial) {
        std::vector<char> in(ico.face_count(), 0);
        for (int blob = 0; blob < 2; ++blob) {
            FaceId seed = pick_face(rng);
            std::vector<FaceId> frontier = {seed};
            in[seed] = 1;
            for (int grow = 0; grow < 25; ++grow) {
                if (frontier.empty()) break;
                FaceId f = frontier[rng() % frontier.size()];
                for (int i = 0; i < 3; ++i) {
                    HalfedgeId t = ico.twin(3 * f + i);
                    if (t != kInvalid && !in[ico.face_of(t)]) {
                        in[ico.face_of(t)] = 1;
                        frontier.push_back(ico.face_of(t));
                        break;
                    }
                }
            }
        }
        std::vector<FaceId> mf;
        for (FaceId f = 0; f < ico.face_count(); ++f)
            if (in[f]) mf.push_back(f);
        if (mf.empty() || static_cast<int>(mf.size()) == ico.face_count()) continue;
        Region m(&ico, mf);
        if (m.boundary_loop_count() == 0) continue;

        VertexId src = static_cast<VertexId>(rng() % ico.vertex_count());
        auto dist = ico.vertex_distances(src);
        std::vector<double> sorted = dist;
        std::sort(sorted.begin(), sorted.end());
        double t = sorted[ico.vertex_count() / 2];
        std::vector<FaceId> inside;
        for (FaceId f = 0; f < ico.face_count(); ++f) {
            const auto& tri = ico.face(f);
            if (dist[tri[0]] <= t && dist[tri[1]] <= t && dist[tri[2]] <= t) inside.push_back(f);
        }
        if (inside.empty() || static_cast<int>(inside.size()) == ico.face_count()) continue;
        Region r_in(&ico, inside);
        if (r_in.boundary_loop_count() == 0) continue;
        Path gamma = loop_to_path(ico, r_in.boundary_loops()[0]);
        if (!gamma.is_simple()) continue;

        bool shares = false;
        for (EdgeId e : gamma.edges)
            if (m.is_region_boundary_edge(e)) shares = true;
        if (shares) continue;

        auto sides = decompose(whole, gamma.edges);
        if (sides.size() != 2) continue;
        int crossings = 0;
        try {
            crossings = count_boundary_crossings(ico, gamma, m);
        } catch (const MeshError&) {
            continue;
        }
        if (crossings == 0) continue;
        for (const Region& side : sides) {
            TwoGonResult res;
            try {
                res = two_gon_reduce(ico, gamma, m, side);
            } catch (const CoarseMeshError&) {
                continue;
            } catch (const MeshError&) {
                continue;
            }
            ++ran;
            if (res.iterations > 0) ++iterated;
            CHECK(res.iterations <= std::max(0, res.initial_components - 1));
            std::vector<FaceId> dm;
            for (FaceId f : res.disc.faces())
                if (m.contains_face(f)) dm.push_back(f);
            REQUIRE(!dm.empty());
            CHECK(Region(&ico, dm).is_edge_connected());
            for (FaceId f : res.disc.faces()) CHECK(side.contains_face(f));
        }
    }
    CHECK(ran >= 10);
    CHECK(iterated >= 1);
}

TEST_CASE("find_connected_collar picks the collar met in one arc") {
    Surface g = make_rectangle_grid(8, 3, 8, 3);
    const auto& pos = g.positions();
    auto row_faces = [&](double y0, double y1, double x0, double x1) {
        std::vector<FaceId> out;
        for (FaceId f = 0; f < g.face_count(); ++f) {
            const auto& tri = g.face(f);
            Vec3 c = (pos[tri[0]] + pos[tri[1]] + pos[tri[2]]) * (1.0 / 3.0);
            if (c.y > y0 && c.y < y1 && c.x > x0 && c.x < x1) out.push_back(f);
        }
        return out;
    };
    Region B(&g, row_faces(1, 2, 0, 8));
    REQUIRE(B.boundary_loop_count() == 1);

    SUBCASE("single collar, one arc") {
        std::vector<Region> collars = {Region(&g, row_faces(2, 3, 0, 8))};
        CHECK(find_connected_collar(B, 0, collars) == 0);
    }

    SUBCASE("two collars: split one loses to connected one") {
        auto split = row_faces(2, 3, 0, 3);
        auto right = row_faces(2, 3, 5, 8);
        split.insert(split.end(), right.begin(), right.end());
        std::vector<Region> collars = {Region(&g, split), Region(&g, row_faces(0, 1, 0, 8))};
        CHECK(find_connected_collar(B, 0, collars) == 1);
    }

    SUBCASE("chain of three collars shrinks into the gap") {
        auto c0 = row_faces(2, 3, 0, 3);
        auto c0b = row_faces(2, 3, 5, 8);
        c0.insert(c0.end(), c0b.begin(), c0b.end());
        auto c1 = row_faces(2, 3, 3, 5);
        std::vector<Region> collars = {Region(&g, c0), Region(&g, c1),
                                       Region(&g, row_faces(0, 1, 0, 8))};
        int idx = find_connected_collar(B, 0, collars);
        CHECK(idx == 1);
    }
}

TEST_CASE("shorten tightens cycles without breaking constraints") {
    SUBCASE("the equatorial square is already a fixed point") {
        Surface oct = make_octahedron();
        Region whole = Region::whole(oct);
        auto curve = make_slicing_curve(whole, CurveKind::closed_cycle, {octahedron_equator(oct)});
        ShortenOptions opt;
        opt.min_area_fraction = 0.25;
        auto out = shorten(whole, curve, opt);
        CHECK(out.length == doctest::Approx(curve.length));
    }

    SUBCASE("zigzag homotopic to the equator tightens toward it") {
        Surface oct = make_octahedron().refine(0.8);
        Region whole = Region::whole(oct);
        const auto& pos = oct.positions();
        std::vector<VertexId> ring;
        for (VertexId v = 0; v < oct.vertex_count(); ++v)
            if (std::abs(pos[v].z) < 0.6 && std::abs(pos[v].z) > 1e-9) ring.push_back(v);
        std::sort(ring.begin(), ring.end(), [&](VertexId a, VertexId b) {
            return std::atan2(pos[a].y, pos[a].x) < std::atan2(pos[b].y, pos[b].x);
        });
        REQUIRE(ring.size() >= 6);
        Path zig = path_from_vertices(oct, ring, true);
        auto curve = make_slicing_curve(whole, CurveKind::closed_cycle, {zig});
        ShortenOptions opt;
        opt.min_area_fraction = 0.2;
        auto out = shorten(whole, curve, opt);
        CHECK(out.length <= curve.length);
        CHECK(out.length <= 4 * std::sqrt(2.0) * 1.05);
        CHECK(out.decomposition.size() == curve.decomposition.size());
    }

    SUBCASE("area constraint is preserved under shortening") {
        Surface ico = make_icosphere(2);
        Region whole = Region::whole(ico);
        auto dist = ico.vertex_distances(0);
        std::vector<double> sorted = dist;
        std::sort(sorted.begin(), sorted.end());
        double t = sorted[ico.vertex_count() / 3];
        std::vector<FaceId> inside;
        for (FaceId f = 0; f < ico.face_count(); ++f) {
            const auto& tri = ico.face(f);
            if (dist[tri[0]] <= t && dist[tri[1]] <= t && dist[tri[2]] <= t) inside.push_back(f);
        }
        Region rin(&ico, inside);
        REQUIRE(rin.boundary_loop_count() >= 1);
        Path gamma = loop_to_path(ico, rin.boundary_loops()[0]);
        REQUIRE(gamma.is_simple());
        auto curve = make_slicing_curve(whole, CurveKind::closed_cycle, {gamma});
        double r = 0.15;
        for (const auto& c : curve.decomposition) REQUIRE(c.area() >= r * whole.area());
        ShortenOptions opt;
        opt.min_area_fraction = r;
        auto out = shorten(whole, curve, opt);
        CHECK(out.length <= curve.length + 1e-12);
        for (const auto& c : out.decomposition) CHECK(c.area() >= r * whole.area() - 1e-9);
    }
}

TEST_CASE("push_off realizes the one-ring offsets of a theta") {
    Surface oct = make_octahedron().refine(1.3);
    Region whole = Region::whole(oct);
    VertexId a = vertex_at(oct, {1, 0, 0});
    VertexId b = vertex_at(oct, {-1, 0, 0});
    auto vp = [&](Vec3 q) { return vertex_at(oct, q); };
    Path meridian = path_from_vertices(
        oct, {a, vp({0.5, 0, 0.5}), vp({0, 0, 1}), vp({-0.5, 0, 0.5}), b}, false);
    Path eq_front = path_from_vertices(
        oct, {a, vp({0.5, 0.5, 0}), vp({0, 1, 0}), vp({-0.5, 0.5, 0}), b}, false);
    Path eq_back = path_from_vertices(
        oct, {a, vp({0.5, -0.5, 0}), vp({0, -1, 0}), vp({-0.5, -0.5, 0}), b}, false);
    ThetaGraph theta = make_theta(oct, meridian, eq_front, eq_back);
    validate_theta(whole, theta);

    SUBCASE("offset validation") {
        CHECK_THROWS_AS(push_off(whole, theta, ThetaSide::s12, 0.0), MeshError);
        CHECK_THROWS_AS(push_off(whole, theta, ThetaSide::s12, 100.0), MeshError);
    }

    SUBCASE("pushed loops are short and symmetric") {
        double off = 0.05;
        auto r12 = push_off(whole, theta, ThetaSide::s12, off);
        auto r13 = push_off(whole, theta, ThetaSide::s13, off);
        auto r23 = push_off(whole, theta, ThetaSide::s23, off);
        double a1 = meridian.length(oct), a2 = eq_front.length(oct), a3 = eq_back.length(oct);
        CHECK(r12.loop.length(oct) <= a1 + a2 + r12.eps_push + 1e-12);
        CHECK(r13.loop.length(oct) <= a1 + a3 + r13.eps_push + 1e-12);
        CHECK(r23.loop.length(oct) <= a2 + a3 + r23.eps_push + 1e-12);
        CHECK(r12.loop.length(oct) == doctest::Approx(r13.loop.length(oct)).epsilon(1e-12));
    }
}
