#include "geokit/partition.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "geokit/winding.h"

namespace geokit {

namespace {

// Winding of a representative point of `candidate` about `other`; probes a
// few points so a node that happens to sit on `other` does not wedge the
// containment test.
bool contained_in(const ClosedCurve& candidate, const ClosedCurve& other) {
    const std::size_t n = candidate.size();
    for (std::size_t k = 0; k < n; ++k) {
        try {
            return winding_number(other, candidate.node(k)) != 0;
        } catch (const OnBoundary&) {
        }
        try {
            return winding_number(other, candidate.point_at(static_cast<double>(k) + 0.5)) != 0;
        } catch (const OnBoundary&) {
        }
    }
    throw CrossingCurves("containment test: curves touch everywhere probed");
}

ClosedCurve oriented(const ClosedCurve& curve, bool ccw) {
    const bool is_ccw = signed_area(curve) > 0.0;
    return is_ccw == ccw ? curve : reversed(curve);
}

// Open run of segments from parameter t0 forward to t1 (node units,
// wrapping, 0 < t1 - t0 < size). Uses curves whose nodes already include
// t0 and t1, i.e. call insert_node first.
std::vector<CubicSegment> arc_between_nodes(const ClosedCurve& curve, std::size_t i,
                                            std::size_t j) {
    return subpath(curve, i, j);
}

struct ProbeHit {
    double s;       // parameter along the probe
    bool on_outer;  // outer curve or one of the inners
    std::size_t inner_index;
    double t;       // node-units parameter on that curve
};

double node_units(const Intersection& hit) {
    return static_cast<double>(hit.segment) + hit.t;
}

// Rotates the segment list of a closed curve so node k comes first.
ClosedCurve rotated(const ClosedCurve& curve, std::size_t k) {
    ClosedCurve out;
    const std::size_t n = curve.size();
    out.segments.reserve(n);
    for (std::size_t idx = 0; idx < n; ++idx) out.segments.push_back(curve.segments[(k + idx) % n]);
    return out;
}

struct MergeAttempt {
    ClosedCurve extracted;
    ClosedCurve new_outer;
    std::size_t merged_inner;
    CubicSegment probe_chord;
    CubicSegment closing_chord;
};

// One full A/B/C search from a fixed probe segment. `inners` holds the
// remaining (clockwise) inner curves.
std::optional<MergeAttempt> try_merge(const ClosedCurve& outer,
                                      const std::vector<ClosedCurve>& inners, Point2 probe_from,
                                      Point2 probe_to) {
    if (probe_from == probe_to) return std::nullopt;

    std::vector<ProbeHit> hits;
    try {
        for (const Intersection& hit : intersections(outer, probe_from, probe_to))
            hits.push_back({hit.s, true, 0, node_units(hit)});
        for (std::size_t k = 0; k < inners.size(); ++k) {
            for (const Intersection& hit : intersections(inners[k], probe_from, probe_to))
                hits.push_back({hit.s, false, k, node_units(hit)});
        }
    } catch (const OverlapIntersection&) {
        return std::nullopt;
    }
    std::sort(hits.begin(), hits.end(),
              [](const ProbeHit& u, const ProbeHit& v) { return u.s < v.s; });

    // Consecutive intersections A (inner) then B (outer).
    std::optional<std::size_t> pair_at;
    for (std::size_t k = 0; k + 1 < hits.size(); ++k) {
        if (!hits[k].on_outer && hits[k + 1].on_outer) {
            pair_at = k;
            break;
        }
    }
    if (!pair_at) return std::nullopt;
    const ProbeHit hitA = hits[*pair_at];
    const ProbeHit hitB = hits[*pair_at + 1];

    // Make A a node of its inner curve.
    ClosedCurve inner = insert_node(inners[hitA.inner_index], hitA.t);
    const std::size_t nodeA = node_index_after_insert(inners[hitA.inner_index], hitA.t);
    const Point2 A = inner.node(nodeA);

    const double tB = hitB.t;
    const Point2 B = outer.point_at(tB);
    if (B == A) return std::nullopt;

    double delta = std::min(1.0, 0.5 * static_cast<double>(outer.size()));
    for (; delta >= 1e-6; delta *= 0.5) {
        const double tC = tB + delta;
        const Point2 C = outer.point_at(tC);
        if (C == A || C == B) continue;

        // AC may meet the outer curve at most once and the inner curves
        // only at A.
        try {
            if (intersections(outer, A, C).size() > 1) continue;
            bool clean = true;
            for (std::size_t k = 0; k < inners.size() && clean; ++k) {
                const auto inner_hits = intersections(inners[k], A, C);
                clean = k == hitA.inner_index ? inner_hits.size() == 1 : inner_hits.empty();
            }
            if (!clean) continue;
        } catch (const OverlapIntersection&) {
            continue;
        }

        // Insert B then C as nodes, tracking the index shift.
        ClosedCurve outer_b = insert_node(outer, tB);
        std::size_t nodeB = node_index_after_insert(outer, tB);
        const double tC_b = translate_after_insert(outer, tC, tB);
        const std::size_t nodeC = node_index_after_insert(outer_b, tC_b);
        ClosedCurve outer_bc = insert_node(outer_b, tC_b);
        if (insertion_happens(outer_b, tC_b) && nodeC <= nodeB) ++nodeB;
        if (nodeB == nodeC) continue;  // collapsed onto the same node

        // Candidate region bounded by AB, the outer arc BC, and CA.
        std::vector<CubicSegment> region_segs;
        region_segs.push_back(straight_segment(A, outer_bc.node(nodeB)));
        for (CubicSegment& seg : arc_between_nodes(outer_bc, nodeB, nodeC))
            region_segs.push_back(seg);
        region_segs.push_back(straight_segment(outer_bc.node(nodeC), A));
        ClosedCurve region = make_closed_curve(std::move(region_segs));

        // The region must not contain any other inner curve.
        bool empty_region = true;
        for (std::size_t k = 0; k < inners.size() && empty_region; ++k) {
            if (k == hitA.inner_index) continue;
            try {
                empty_region = winding_number(region, inners[k].node(0)) == 0;
            } catch (const OnBoundary&) {
                empty_region = false;
            }
        }
        if (!empty_region) continue;

        // Assemble: outer minus arc BC, then B->A, the inner loop from A,
        // then A->C.
        const Point2 Bn = outer_bc.node(nodeB);
        const Point2 Cn = outer_bc.node(nodeC);
        std::vector<CubicSegment> merged;
        for (CubicSegment& seg : arc_between_nodes(outer_bc, nodeC, nodeB)) merged.push_back(seg);
        merged.push_back(straight_segment(Bn, A));
        const ClosedCurve inner_from_a = rotated(inner, nodeA);
        for (const CubicSegment& seg : inner_from_a.segments) merged.push_back(seg);
        merged.push_back(straight_segment(A, Cn));

        MergeAttempt attempt;
        attempt.extracted = oriented(region, true);
        attempt.new_outer = make_closed_curve(std::move(merged));
        attempt.merged_inner = hitA.inner_index;
        attempt.probe_chord = straight_segment(A, Bn);
        attempt.closing_chord = straight_segment(A, Cn);
        return attempt;
    }
    return std::nullopt;
}

double min_node_distance(const ClosedCurve& a, const ClosedCurve& b) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            best = std::min(best, length(a.node(i) - b.node(j)));
        }
    }
    return best;
}

// Inner node nearest the outer boundary's nodes, then the remaining nodes
// by ascending distance; used as probe starting points.
std::vector<std::size_t> probe_order(const ClosedCurve& inner, const ClosedCurve& outer) {
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < outer.size(); ++j)
            best = std::min(best, length(inner.node(i) - outer.node(j)));
        ranked.emplace_back(best, i);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::size_t> order;
    for (auto& [d, i] : ranked) order.push_back(i);
    return order;
}

std::size_t nearest_outer_node(const ClosedCurve& outer, Point2 p) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < outer.size(); ++j) {
        const double d = length(outer.node(j) - p);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

}  // namespace

std::vector<CurveGroup> sort_curves(const std::vector<ClosedCurve>& curves) {
    const std::size_t n = curves.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (curves_intersect(curves[i], curves[j]))
                throw CrossingCurves("sort_curves: two curves intersect");
        }
    }

    std::vector<std::vector<bool>> in(n, std::vector<bool>(n, false));
    std::vector<int> depth(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            in[i][j] = contained_in(curves[i], curves[j]);
            if (in[i][j]) ++depth[i];
        }
    }

    std::vector<CurveGroup> groups;
    for (std::size_t i = 0; i < n; ++i) {
        if (depth[i] != 0) continue;
        CurveGroup group;
        group.toplevel = curves[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && in[j][i]) group.inner.push_back(curves[j]);
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

MergeResult merge_detailed(const ClosedCurve& outer_in, const std::vector<ClosedCurve>& inners_in) {
    MergeResult result;
    ClosedCurve outer = oriented(outer_in, true);
    if (inners_in.empty()) {
        result.pieces.push_back(outer);
        return result;
    }

    std::vector<ClosedCurve> inners;
    inners.reserve(inners_in.size());
    for (const ClosedCurve& c : inners_in) inners.push_back(oriented(c, false));

    // Merge order: ascending distance of the inner curve to the outer boundary.
    std::sort(inners.begin(), inners.end(), [&outer](const ClosedCurve& a, const ClosedCurve& b) {
        return min_node_distance(a, outer) < min_node_distance(b, outer);
    });

    while (!inners.empty()) {
        std::optional<MergeAttempt> attempt;
        for (std::size_t target = 0; target < inners.size() && !attempt; ++target) {
            for (std::size_t start : probe_order(inners[target], outer)) {
                const Point2 from = inners[target].node(start);
                const Point2 to = outer.node(nearest_outer_node(outer, from));
                attempt = try_merge(outer, inners, from, to);
                if (attempt) break;
            }
        }
        if (!attempt)
            throw MergeFailure("merge: no admissible extraction for any inner curve start point");

        result.pieces.push_back(attempt->extracted);
        result.chords.push_back(attempt->probe_chord);
        result.chords.push_back(attempt->closing_chord);
        outer = attempt->new_outer;
        inners.erase(inners.begin() + static_cast<std::ptrdiff_t>(attempt->merged_inner));
    }
    result.pieces.push_back(oriented(outer, true));
    return result;
}

std::vector<ClosedCurve> merge(const ClosedCurve& outer, const std::vector<ClosedCurve>& inners) {
    return merge_detailed(outer, inners).pieces;
}

PartitionResult partition_detailed(const std::vector<ClosedCurve>& curves) {
    PartitionResult result;
    if (curves.empty()) return result;
    for (const CurveGroup& group : sort_curves(curves)) {
        std::vector<CurveGroup> inner_groups = sort_curves(group.inner);
        std::vector<ClosedCurve> holes;
        for (const CurveGroup& hole_group : inner_groups) {
            PartitionResult nested = partition_detailed(hole_group.inner);
            result.pieces.insert(result.pieces.end(), nested.pieces.begin(), nested.pieces.end());
            result.chords.insert(result.chords.end(), nested.chords.begin(), nested.chords.end());
            holes.push_back(hole_group.toplevel);
        }
        MergeResult merged = merge_detailed(group.toplevel, holes);
        result.pieces.insert(result.pieces.end(), merged.pieces.begin(), merged.pieces.end());
        result.chords.insert(result.chords.end(), merged.chords.begin(), merged.chords.end());
    }
    return result;
}

std::vector<ClosedCurve> partition(const std::vector<ClosedCurve>& curves) {
    return partition_detailed(curves).pieces;
}

}  // namespace geokit
