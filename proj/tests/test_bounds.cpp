#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.h"
#include "geokit/bounds.h"
#include "geokit/coons.h"
#include "geokit/quadric.h"
#include "oracles.h"

using namespace geokit;

TEST_SUITE_BEGIN("bounds");

namespace {

Patch flat_unit_square_patch() { return coons_patch(fixtures::unit_square()); }

// Dense per-axis surface extrema on an n x n grid.
Box3 sampled_box(const Patch& p, int n) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    Box3 box{{kInf, kInf, kInf}, {-kInf, -kInf, -kInf}};
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const Point3 s = oracles::eval_patch_direct(p, a / (n - 1.0), b / (n - 1.0));
            box.min.x = std::min(box.min.x, s.x);
            box.min.y = std::min(box.min.y, s.y);
            box.min.z = std::min(box.min.z, s.z);
            box.max.x = std::max(box.max.x, s.x);
            box.max.y = std::max(box.max.y, s.y);
            box.max.z = std::max(box.max.z, s.z);
        }
    }
    return box;
}

}  // namespace

TEST_CASE("subdivide_patch reparametrizes the parent") {
    const Patch flat = flat_unit_square_patch();
    const auto children = subdivide_patch(flat);
    // Children of the flat patch are flat quarter patches.
    CHECK(children[0].at(3, 3).x == doctest::Approx(0.5));
    CHECK(children[0].at(3, 3).y == doctest::Approx(0.5));

    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 5; ++k) {
        const Patch p = fixtures::random_patch3(rng);
        const auto subs = subdivide_patch(p);
        for (int s = 0; s < 100; ++s) {
            const double u = unit(rng), v = unit(rng);
            const Point3 parent = eval_patch(p, u, v);
            const int iu = u < 0.5 ? 0 : 1;
            const int iv = v < 0.5 ? 0 : 1;
            const Patch& child = subs[static_cast<std::size_t>(2 * iu + iv)];
            const double cu = u < 0.5 ? 2.0 * u : 2.0 * u - 1.0;
            const double cv = v < 0.5 ? 2.0 * v : 2.0 * v - 1.0;
            CHECK(length(parent - eval_patch(child, cu, cv)) < 1e-10);
        }
    }

    for (const Patch& child : subdivide_patch(sphere_octant())) {
        for (Point3 corner : {child.at(0, 0), child.at(0, 3), child.at(3, 0), child.at(3, 3)}) {
            CHECK(std::abs(length(corner) - 1.0) < 6e-4);  // corners stay near the sphere
        }
    }
}

TEST_CASE("cartesian_max basics") {
    const Patch flat = flat_unit_square_patch();
    CHECK(cartesian_max(Axis::X, flat, -1e300, 0) == 1.0);
    CHECK(cartesian_max(Axis::X, flat, -1e300, 16) == 1.0);

    // Sphere octant: the pole is a corner, so z tops out at exactly 1.
    CHECK(cartesian_max(Axis::Z, sphere_octant(), -1e300, 16) == doctest::Approx(1.0).epsilon(1e-9));

    std::mt19937_64 rng(82);
    for (int k = 0; k < 10; ++k) {
        const Patch p = fixtures::random_grid_patch(rng);
        const Box3 dense = sampled_box(p, 1001);
        const double got = cartesian_max(Axis::Y, p, -1e300, 16);
        CHECK(got >= dense.max.y - 1e-9);
        CHECK(got <= dense.max.y + 1e-6);
    }
}

TEST_CASE("function_max on monotone queries") {
    const Patch flat = flat_unit_square_patch();
    auto sum = [](Point3 p) { return p.x + p.y + p.z; };
    CHECK(function_max({sum, -1e300, 8}, flat) == doctest::Approx(2.0));

    // f equal to an axis projection reproduces cartesian_max exactly.
    std::mt19937_64 rng(83);
    for (int k = 0; k < 50; ++k) {
        const Patch p = fixtures::random_patch3(rng);
        auto fx = [](Point3 q) { return q.x; };
        CHECK(function_max({fx, -1e300, 12}, p) == cartesian_max(Axis::X, p, -1e300, 12));
    }
}

TEST_CASE("function_max with x/z matches dense sampling") {
    std::mt19937_64 rng(84);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        // Patch with x in [0.5, 3], z in [1, 2]: x/z monotone after the
        // documented composition (z negated, f = max(x,0)/(-w)).
        Patch p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                p.at(i, j) = {0.5 + 2.5 * unit(rng), 2.0 * unit(rng), 1.0 + unit(rng)};
        Patch negated = p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) negated.at(i, j).z = -negated.at(i, j).z;
        auto f = [](Point3 q) { return std::max(q.x, 0.0) / (-q.z); };
        const double got = function_max({f, 0.0, 16}, negated);

        double dense = 0.0;
        for (int a = 0; a < 1001; ++a) {
            for (int b = 0; b < 1001; ++b) {
                const Point3 s = oracles::eval_patch_direct(p, a / 1000.0, b / 1000.0);
                dense = std::max(dense, s.x / s.z);
            }
        }
        CHECK(got >= dense - 1e-9);
        CHECK(got <= dense + 1e-6);
    }
}

TEST_CASE("seeding correctness") {
    std::mt19937_64 rng(85);
    for (int k = 0; k < 20; ++k) {
        const Patch p = fixtures::random_patch3(rng);
        auto f = [](Point3 q) { return q.x + 0.5 * q.y; };
        const double cold = function_max({f, -std::numeric_limits<double>::infinity(), 10}, p);
        for (double seed : {-5.0, 0.0, cold - 0.25, cold + 0.75}) {
            CHECK(function_max({f, seed, 10}, p) == doctest::Approx(std::max(seed, cold)));
        }
    }
}

TEST_CASE("patch_bbox") {
    const Box3 flat = patch_bbox(flat_unit_square_patch());
    CHECK(flat.min.x == doctest::Approx(0.0));
    CHECK(flat.max.x == doctest::Approx(1.0));
    CHECK(flat.max.z == doctest::Approx(0.0));

    // Sphere octant: contained in the unit-ish box and contains samples.
    const Patch octant = sphere_octant();
    const Box3 box = patch_bbox(octant);
    CHECK(box.min.x >= -1e-9);
    CHECK(box.max.x <= 1.0 + 1e-9);
    for (int a = 0; a < 100; ++a) {
        for (int b = 0; b < 100; ++b) {
            const Point3 s = oracles::eval_patch_direct(octant, a / 99.0, b / 99.0);
            CHECK(s.x <= box.max.x + 1e-9);
            CHECK(s.x >= box.min.x - 1e-9);
            CHECK(s.y <= box.max.y + 1e-9);
            CHECK(s.y >= box.min.y - 1e-9);
            CHECK(s.z <= box.max.z + 1e-9);
            CHECK(s.z >= box.min.z - 1e-9);
        }
    }

    const std::vector<Patch> sphere = unit_sphere();
    const Box3 cube = patch_bbox(std::span<const Patch>(sphere));
    for (double got : {cube.max.x, cube.max.y, cube.max.z}) CHECK(got == doctest::Approx(1.0).epsilon(1e-6));
    for (double got : {cube.min.x, cube.min.y, cube.min.z}) CHECK(got == doctest::Approx(-1.0).epsilon(1e-6));

    // Contained in the control bbox.
    std::mt19937_64 rng(86);
    for (int k = 0; k < 20; ++k) {
        const Patch p = fixtures::random_patch3(rng);
        const Box3 tight = patch_bbox(p);
        const Box3 loose = patch_control_bbox(p);
        CHECK(tight.min.x >= loose.min.x - 1e-12);
        CHECK(tight.max.x <= loose.max.x + 1e-12);
        CHECK(tight.min.y >= loose.min.y - 1e-12);
        CHECK(tight.max.y <= loose.max.y + 1e-12);
        CHECK(tight.min.z >= loose.min.z - 1e-12);
        CHECK(tight.max.z <= loose.max.z + 1e-12);
    }
}

TEST_CASE("transforms") {
    Transform3 t;  // identity
    CHECK(t.is_rigid());
    CHECK(t.determinant() == doctest::Approx(1.0));

    Transform3 scaled;
    scaled.m = {{{2, 0, 0, 1}, {0, 2, 0, -3}, {0, 0, 2, 5}}};
    CHECK(scaled.is_rigid());

    Transform3 sheared;
    sheared.m = {{{1, 0.5, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}};
    CHECK_FALSE(sheared.is_rigid());

    Transform3 mirror;
    mirror.m = {{{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}};
    CHECK(mirror.is_rigid());
    const Patch p = flat_unit_square_patch();
    CHECK(transformed(p, mirror).orientation == -p.orientation);
}

TEST_CASE("fov_angle") {
    // Flat unit square centered on the axis at z = 1.
    Patch flat = flat_unit_square_patch();
    Transform3 place;
    place.m = {{{1, 0, 0, -0.5}, {0, 1, 0, -0.5}, {0, 0, 1, 1.0}}};
    const double angle = fov_angle(std::span<const Patch>(&flat, 1), place);
    CHECK(angle == doctest::Approx(2.0 * std::atan(0.5)).epsilon(1e-9));

    // Point-like patch far on the axis: vanishing angle.
    Patch tiny = flat;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            tiny.at(i, j) = {1e-9 * (tiny.at(i, j).x - 0.5), 1e-9 * (tiny.at(i, j).y - 0.5), 1.0};
    CHECK(fov_angle(std::span<const Patch>(&tiny, 1), Transform3{}) < 1e-8);

    // z <= 0 violates the precondition.
    CHECK_THROWS_AS(fov_angle(std::span<const Patch>(&flat, 1), Transform3{}), NonPositiveDepth);
}

TEST_CASE("projected bounds against dense sampling") {
    std::mt19937_64 rng(87);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 5; ++k) {
        Patch p;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                p.at(i, j) = {4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0, 1.0 + unit(rng)};
        const ProjectedBounds pb = projected_bounds(std::span<const Patch>(&p, 1), Transform3{});
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (int a = 0; a < 801; ++a) {
            for (int b = 0; b < 801; ++b) {
                const Point3 s = oracles::eval_patch_direct(p, a / 800.0, b / 800.0);
                xmin = std::min(xmin, s.x / s.z);
                xmax = std::max(xmax, s.x / s.z);
                ymin = std::min(ymin, s.y / s.z);
                ymax = std::max(ymax, s.y / s.z);
            }
        }
        CHECK(pb.max_x_over_z >= xmax - 1e-9);
        CHECK(pb.max_x_over_z <= xmax + 1e-5);
        CHECK(pb.min_x_over_z <= xmin + 1e-9);
        CHECK(pb.min_x_over_z >= xmin - 1e-5);
        CHECK(pb.max_y_over_z >= ymax - 1e-9);
        CHECK(pb.min_y_over_z <= ymin + 1e-9);
    }
}

TEST_SUITE_END();
