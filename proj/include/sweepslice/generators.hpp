#pragma once

#include <cstdint>

#include "sweepslice/mesh.hpp"

namespace sweepslice {

Surface make_tetrahedron(double edge = 1.0);
Surface make_octahedron();  // vertices at unit distance from the origin
Surface make_icosahedron();
Surface make_icosphere(int level);

struct StarfishSpec {
    int tentacle_count = 3;
    double tentacle_length = 6.0;
    double tentacle_radius = 0.15;
    double body_radius = 1.0;
    // Faces per tentacle ring; >= 8 keeps the lateral area within 5% of the
    // round capsule. Rings along the tentacle scale with length.
    int ring_vertices = 8;
    int segments = 0;  // 0 = derive from length and radius
};

Surface make_starfish(const StarfishSpec& spec);

// Starfish sized for the exhaustive cycle search (1-skeleton stays small).
Surface make_coarse_starfish(double tentacle_length, double tentacle_radius = 0.55,
                             double body_radius = 0.55, int segments = 0);

Surface make_bumpy_sphere(std::uint32_t seed, int level = 3);

// Planar fixtures (flat metric). All are discs or spheres-with-holes.
Surface make_rectangle_grid(double width, double height, int nx, int ny);
Surface make_flat_disc(double radius, int rings);
Surface make_flat_annulus(double r_inner, double r_outer, int segments, int rings);
// Disc with `holes` round holes punched on a horizontal row.
Surface make_flat_pancake(int holes, int segments = 12);

}  // namespace sweepslice
