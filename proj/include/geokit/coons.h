#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "geokit/geom_core.h"

namespace geokit {

// Splits a curve at every node whose interior angle (between the incoming
// and outgoing tangent directions) exceeds 180 degrees, cutting along the
// interior angle bisector to its first intersection with the boundary.
// Repeats until no reflex node remains. Throws BisectorMiss when a
// bisector ray escapes the region.
std::vector<ClosedCurve> split_reflex_nodes(const ClosedCurve& curve);

// True when some node of the (counterclockwise) curve is reflex.
bool has_reflex_node(const ClosedCurve& curve);

// Brings a 1..4-segment curve up to exactly four segments by inserting
// null segments at the nodes with the largest interior angles.
ClosedCurve pad_to_four(const ClosedCurve& curve);

// Coons patch of a 4-segment closed curve: the twelve boundary control
// points come from the curve, the four interior points from the closed
// form of the bilinear blend.
Patch coons_patch(const ClosedCurve& curve);

// Jacobian d(x,y)/d(u,v) of a planar patch.
double jacobian(const Patch& patch, double u, double v);

struct CoonsDiagnostics {
    // Degree-5 Bernstein-term coefficients of J: J(u,v) equals
    // sum of T[p][q] u^p v^q (1-u)^(5-p) (1-v)^(5-q).
    std::array<std::array<double, 6>, 6> T{};
    // Ascending-degree coefficients of the edge polynomials f (degree 5)
    // and f' (degree 4) for each of the four edges in curve order.
    std::array<std::array<double, 6>, 4> boundary_f_coeffs{};
    std::array<std::array<double, 5>, 4> boundary_fp_coeffs{};
    // Most negative Jacobian probe seen while scanning, if any.
    double min_probe_u = 0.0, min_probe_v = 0.0;
    double min_probe_jacobian = 0.0;
};

CoonsDiagnostics tpq_table(const Patch& patch);

// Sufficient nondegeneracy test: all 36 T entries share one strict sign
// (entries below 1e-12 of the largest magnitude count as zeros, which are
// tolerated as long as a strict sign exists and is unopposed).
bool is_nondegenerate(const Patch& patch);

// Theorem-1 scan of one patch edge (0..3, in curve order): builds the
// quartic f'(u) from the M_ij table, finds its roots in (0,1), and probes
// J there. Returns the root with the most negative J when the edge is
// degenerate, empty otherwise.
struct BoundaryDegeneracy {
    double u;
    double jacobian;
};
std::optional<BoundaryDegeneracy> boundary_degeneracy(const Patch& patch, int edge);

// Ascending-degree coefficients of the quartic f'(u) for the canonical
// v = 0 edge of the given control net.
std::array<double, 5> edge_fprime_coeffs(const Patch& patch);
std::array<double, 6> edge_f_coeffs(const Patch& patch);

// Remaps the control net so the given edge (curve order) becomes the
// canonical v = 0 edge, preserving the Jacobian sign.
Patch canonical_edge_net(const Patch& patch, int edge);

enum class SplitStrategy {
    QuarticGuided,  // Theorem-1 scan picks the split point
    MidpointOnly,   // adaptive midpoint subdivision throughout
};

struct NondegenerateResult {
    std::vector<Patch> kept;
    std::vector<Patch> discarded;  // reversed-orientation subpatches
    std::vector<std::string> history;  // split step per kept patch
};

// Splits the region bounded by a reflex-free curve of at most four
// segments into nondegenerate Coons patches, discarding subpatches whose
// orientation is opposite the input curve. Throws SplitDepthExceeded past
// 16 nested splits.
NondegenerateResult make_nondegenerate_detailed(const ClosedCurve& curve,
                                                SplitStrategy strategy = SplitStrategy::QuarticGuided);

std::vector<Patch> make_nondegenerate(const ClosedCurve& curve,
                                      SplitStrategy strategy = SplitStrategy::QuarticGuided);

// The boundary curve of a patch built from a curve (the four edges in
// curve order).
ClosedCurve patch_boundary(const Patch& patch);

}  // namespace geokit
