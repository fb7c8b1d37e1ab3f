#include "geokit/bezulate.h"

#include "geokit/winding.h"

namespace geokit {

std::optional<CubicSegment> chord_admissible(const ClosedCurve& curve, std::size_t i, int n) {
    const std::size_t m = curve.size();
    const Point2 a = curve.node(i % m);
    const Point2 b = curve.node((i + static_cast<std::size_t>(n)) % m);
    if (a == b) return std::nullopt;
    try {
        if (intersections(curve, a, b).size() != 2) return std::nullopt;
        const Point2 mid = 0.5 * (a + b);
        if (!inside(curve, mid, FillRule::NonZero)) return std::nullopt;
    } catch (const OverlapIntersection&) {
        return std::nullopt;
    } catch (const OnBoundary&) {
        return std::nullopt;
    }
    return straight_segment(a, b);
}

BezulateResult bezulate_detailed(const ClosedCurve& curve, const BezulateLimits& limits) {
    if (limits.max_refinements < 1) throw DomainError("bezulate: max_refinements must be >= 1");

    ClosedCurve current = signed_area(curve) < 0.0 ? reversed(curve) : curve;
    BezulateResult result;

    int refinements = 0;
    while (current.size() > 4) {
        bool found = false;
        for (int n = 3; n >= 2 && !found; --n) {
            for (std::size_t i = 0; i < current.size(); ++i) {
                std::optional<CubicSegment> chord = chord_admissible(current, i, n);
                if (!chord) continue;
                const std::size_t j = (i + static_cast<std::size_t>(n)) % current.size();
                std::vector<CubicSegment> piece = subpath(current, i, j);
                piece.push_back(reversed(*chord));
                result.pieces.push_back(make_closed_curve(std::move(piece)));

                std::vector<CubicSegment> rest;
                rest.push_back(*chord);
                for (CubicSegment& seg : subpath(current, j, i)) rest.push_back(seg);
                current = make_closed_curve(std::move(rest));

                result.chords.push_back(*chord);
                found = true;
                break;
            }
        }
        if (!found) {
            if (++refinements > limits.max_refinements)
                throw RefinementLimitExceeded("bezulate: no admissible chord after refinement limit");
            current = refine_midpoints(current);
        }
    }
    result.pieces.push_back(current);
    result.refinements = refinements;
    return result;
}

std::vector<ClosedCurve> bezulate(const ClosedCurve& curve, const BezulateLimits& limits) {
    return bezulate_detailed(curve, limits).pieces;
}

}  // namespace geokit
