#include "geokit/coons.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "geokit/bezulate.h"
#include "geokit/roots.h"

namespace geokit {

namespace {

constexpr int kMaxSplitDepth = 16;

Point2 xy(Point3 p) { return {p.x, p.y}; }
Point3 lift(Point2 p) { return {p.x, p.y, 0.0}; }

Point2 normalize(Point2 v) {
    const double n = length(v);
    return n > 0.0 ? Point2{v.x / n, v.y / n} : Point2{0.0, 0.0};
}

Point2 rot90ccw(Point2 v) { return {-v.y, v.x}; }

// Tangent directions at node k, walking over null segments and vanishing
// derivatives via the nearest nonzero control difference.
Point2 outgoing_direction(const ClosedCurve& curve, std::size_t k) {
    const std::size_t n = curve.size();
    for (std::size_t off = 0; off < n; ++off) {
        const Point2 d = start_direction(curve.segments[(k + off) % n]);
        if (d.x != 0.0 || d.y != 0.0) return d;
    }
    return {0.0, 0.0};
}

Point2 incoming_direction(const ClosedCurve& curve, std::size_t k) {
    const std::size_t n = curve.size();
    for (std::size_t off = 0; off < n; ++off) {
        const Point2 d = end_direction(curve.segments[(k + n - 1 - off) % n]);
        if (d.x != 0.0 || d.y != 0.0) return d;
    }
    return {0.0, 0.0};
}

bool node_is_reflex(const ClosedCurve& curve, std::size_t k) {
    const Point2 din = normalize(incoming_direction(curve, k));
    const Point2 dout = normalize(outgoing_direction(curve, k));
    if ((din.x == 0.0 && din.y == 0.0) || (dout.x == 0.0 && dout.y == 0.0)) return false;
    const double c = cross(din, dout);
    if (c < -1e-12) return true;
    return std::abs(c) <= 1e-12 && dot(din, dout) < 0.0;  // cusp: split
}

// Interior angle at node k of a counterclockwise curve, in (0, 2*pi).
double interior_angle(const ClosedCurve& curve, std::size_t k) {
    const Point2 din = normalize(incoming_direction(curve, k));
    const Point2 dout = normalize(outgoing_direction(curve, k));
    return M_PI - std::atan2(cross(din, dout), dot(din, dout));
}

double curve_scale(const ClosedCurve& curve) {
    return std::max(length(curve_control_bbox(curve).diagonal()), 1e-300);
}

// First boundary intersection of the ray from the point at parameter t
// along `dir`, excluding hits at the ray origin. Returns the node-units
// parameter of the hit.
std::optional<double> first_ray_hit(const ClosedCurve& curve, double t, Point2 dir) {
    const Point2 origin = curve.point_at(t);
    const double scale = curve_scale(curve);
    const Point2 far = origin + (2.5 * scale) * normalize(dir);
    std::vector<Intersection> hits;
    try {
        hits = intersections(curve, origin, far);
    } catch (const OverlapIntersection&) {
        return std::nullopt;
    }
    std::optional<double> best;
    double best_s = std::numeric_limits<double>::infinity();
    for (const Intersection& h : hits) {
        const Point2 p = eval_segment(curve.segments[h.segment], h.t);
        if (length(p - origin) <= 1e-9 * scale) continue;
        if (h.s < best_s) {
            best_s = h.s;
            best = static_cast<double>(h.segment) + h.t;
        }
    }
    return best;
}

}  // namespace

bool has_reflex_node(const ClosedCurve& curve) {
    for (std::size_t k = 0; k < curve.size(); ++k) {
        if (node_is_reflex(curve, k)) return true;
    }
    return false;
}

std::vector<ClosedCurve> split_reflex_nodes(const ClosedCurve& curve_in) {
    ClosedCurve curve = signed_area(curve_in) < 0.0 ? reversed(curve_in) : curve_in;
    std::vector<ClosedCurve> out;
    std::vector<std::pair<ClosedCurve, int>> work{{curve, 0}};
    while (!work.empty()) {
        auto [c, depth] = work.back();
        work.pop_back();
        if (depth > 32) throw BisectorMiss("split_reflex_nodes: runaway recursion");
        std::optional<std::size_t> reflex;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (node_is_reflex(c, k)) {
                reflex = k;
                break;
            }
        }
        if (!reflex) {
            out.push_back(c);
            continue;
        }
        const std::size_t k = *reflex;
        const Point2 din = normalize(incoming_direction(c, k));
        const Point2 dout = normalize(outgoing_direction(c, k));
        Point2 bis = -1.0 * (dout - din);
        if (length(bis) < 1e-9) bis = rot90ccw(din);
        std::optional<double> hit = first_ray_hit(c, static_cast<double>(k), bis);
        if (!hit) hit = first_ray_hit(c, static_cast<double>(k), -1.0 * bis);
        if (!hit) throw BisectorMiss("split_reflex_nodes: bisector ray misses the boundary");
        auto [a, b] = split_with_chord(c, static_cast<double>(k), *hit);
        work.push_back({a, depth + 1});
        work.push_back({b, depth + 1});
    }
    return out;
}

ClosedCurve pad_to_four(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    if (n == 0 || n > 4) throw DomainError("pad_to_four: needs 1..4 segments");
    if (n == 4) return curve;

    // Rank nodes by interior angle, largest first.
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t k = 0; k < n; ++k) ranked.emplace_back(-interior_angle(curve, k), k);
    std::sort(ranked.begin(), ranked.end());

    std::vector<std::size_t> where;
    for (std::size_t need = 0; need < 4 - n; ++need)
        where.push_back(ranked[need % ranked.size()].second);
    std::sort(where.rbegin(), where.rend());

    ClosedCurve out = curve;
    for (std::size_t k : where) {
        out.segments.insert(out.segments.begin() + static_cast<std::ptrdiff_t>(k),
                            null_segment(curve.node(k)));
    }
    return out;
}

Patch coons_patch(const ClosedCurve& curve) {
    if (curve.size() != 4) throw DomainError("coons_patch: needs exactly 4 segments");
    const CubicSegment& s0 = curve.segments[0];
    const CubicSegment& s1 = curve.segments[1];
    const CubicSegment& s2 = curve.segments[2];
    const CubicSegment& s3 = curve.segments[3];

    Patch patch;
    for (int i = 0; i < 4; ++i) {
        patch.at(i, 0) = lift(s0.ctrl(i));       // sigma(u,0)
        patch.at(3, i) = lift(s1.ctrl(i));       // sigma(1,v)
        patch.at(i, 3) = lift(s2.ctrl(3 - i));   // sigma(u,1) reversed
        patch.at(0, i) = lift(s3.ctrl(3 - i));   // sigma(0,v) reversed
    }

    auto P = [&patch](int i, int j) { return patch.at(i, j); };
    patch.at(1, 1) = (1.0 / 9.0) * (-4.0 * P(0, 0) + 6.0 * (P(0, 1) + P(1, 0)) -
                                    2.0 * (P(0, 3) + P(3, 0)) + 3.0 * (P(3, 1) + P(1, 3)) -
                                    P(3, 3));
    patch.at(1, 2) = (1.0 / 9.0) * (-4.0 * P(0, 3) + 6.0 * (P(0, 2) + P(1, 3)) -
                                    2.0 * (P(0, 0) + P(3, 3)) + 3.0 * (P(3, 2) + P(1, 0)) -
                                    P(3, 0));
    patch.at(2, 1) = (1.0 / 9.0) * (-4.0 * P(3, 0) + 6.0 * (P(3, 1) + P(2, 0)) -
                                    2.0 * (P(3, 3) + P(0, 0)) + 3.0 * (P(0, 1) + P(2, 3)) -
                                    P(0, 3));
    patch.at(2, 2) = (1.0 / 9.0) * (-4.0 * P(3, 3) + 6.0 * (P(3, 2) + P(2, 3)) -
                                    2.0 * (P(3, 0) + P(0, 3)) + 3.0 * (P(0, 2) + P(2, 0)) -
                                    P(0, 0));
    patch.orientation = +1;
    return patch;
}

ClosedCurve patch_boundary(const Patch& patch) {
    auto P = [&patch](int i, int j) { return xy(patch.at(i, j)); };
    std::vector<CubicSegment> segs;
    segs.push_back({P(0, 0), P(1, 0), P(2, 0), P(3, 0)});
    segs.push_back({P(3, 0), P(3, 1), P(3, 2), P(3, 3)});
    segs.push_back({P(3, 3), P(2, 3), P(1, 3), P(0, 3)});
    segs.push_back({P(0, 3), P(0, 2), P(0, 1), P(0, 0)});
    return make_closed_curve(std::move(segs));
}

namespace {

std::array<double, 3> bernstein2(double t) {
    const double mt = 1.0 - t;
    return {mt * mt, 2.0 * mt * t, t * t};
}

std::array<double, 4> bernstein3(double t) {
    const double mt = 1.0 - t;
    return {mt * mt * mt, 3.0 * mt * mt * t, 3.0 * mt * t * t, t * t * t};
}

Point2 patch_du(const Patch& patch, double u, double v) {
    const auto bu = bernstein2(u);
    const auto bv = bernstein3(v);
    Point2 d{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 4; ++j) {
            const Point2 U = xy(patch.at(i + 1, j)) - xy(patch.at(i, j));
            d = d + (bu[i] * bv[j]) * U;
        }
    }
    return 3.0 * d;
}

Point2 patch_dv(const Patch& patch, double u, double v) {
    const auto bu = bernstein3(u);
    const auto bv = bernstein2(v);
    Point2 d{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Point2 V = xy(patch.at(i, j + 1)) - xy(patch.at(i, j));
            d = d + (bu[i] * bv[j]) * V;
        }
    }
    return 3.0 * d;
}

double patch_scale2(const Patch& patch) {
    const Box3 box = patch_control_bbox(patch);
    const Point3 d = box.diagonal();
    const double diag2 = d.x * d.x + d.y * d.y;
    return std::max(diag2, 1e-300);
}

// Power-basis coefficients of the cubic Bernstein polynomials and their
// derivatives.
constexpr double kB3[4][4] = {
    {1, -3, 3, -1}, {0, 3, -6, 3}, {0, 0, 3, -3}, {0, 0, 0, 1}};
constexpr double kB3d[4][3] = {{-3, 6, -3}, {3, -12, 9}, {0, 6, -9}, {0, 0, 3}};

// Table of M_ij = (B_i'' B_j + B_i' B_j')/3, ascending degree; f'(u) is
// 3 sum_ij M_ij(u) w_ij.
constexpr double kMij[4][4][5] = {
    {{5, -20, 30, -20, 5},
     {-3, 24, -54, 48, -15},
     {0, -6, 27, -36, 15},
     {0, 0, -3, 8, -5}},
    {{-7, 36, -66, 52, -15},
     {3, -36, 108, -120, 45},
     {0, 6, -45, 84, -45},
     {0, 0, 3, -16, 15}},
    {{2, -18, 45, -44, 15},
     {0, 12, -63, 96, -45},
     {0, 0, 18, -60, 45},
     {0, 0, 0, 8, -15}},
    {{0, 2, -9, 12, -5},
     {0, 0, 9, -24, 15},
     {0, 0, 0, 12, -15},
     {0, 0, 0, 0, 5}}};

double edge_weight(const Patch& net, int i, int j) {
    const Point2 p = xy(net.at(i, 0));
    const Point2 v = xy(net.at(j, 1)) - xy(net.at(j, 0));
    return cross(p, v);
}

}  // namespace

double jacobian(const Patch& patch, double u, double v) {
    return cross(patch_du(patch, u, v), patch_dv(patch, u, v));
}

CoonsDiagnostics tpq_table(const Patch& patch) {
    CoonsDiagnostics diag;

    Point2 U[3][4], V[4][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) U[i][j] = xy(patch.at(i + 1, j)) - xy(patch.at(i, j));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) V[i][j] = xy(patch.at(i, j + 1)) - xy(patch.at(i, j));

    constexpr double choose2[3] = {1, 2, 1};
    constexpr double choose3[4] = {1, 3, 3, 1};
    for (int p = 0; p < 6; ++p) {
        for (int q = 0; q < 6; ++q) {
            double sum = 0.0;
            for (int i = std::max(0, p - 3); i <= std::min(2, p); ++i) {
                const int k = p - i;
                for (int j = std::max(0, q - 2); j <= std::min(3, q); ++j) {
                    const int l = q - j;
                    sum += cross(U[i][j], V[k][l]) * choose2[i] * choose3[k] * choose3[j] *
                           choose2[l];
                }
            }
            // The two Bernstein-derivative factors of 3 are folded in so
            // the table reconstructs J exactly.
            diag.T[p][q] = 9.0 * sum;
        }
    }

    for (int edge = 0; edge < 4; ++edge) {
        const Patch net = canonical_edge_net(patch, edge);
        diag.boundary_f_coeffs[edge] = edge_f_coeffs(net);
        diag.boundary_fp_coeffs[edge] = edge_fprime_coeffs(net);
    }

    diag.min_probe_jacobian = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= 20; ++a) {
        for (int b = 0; b <= 20; ++b) {
            const double u = a / 20.0;
            const double v = b / 20.0;
            const double J = jacobian(patch, u, v);
            if (J < diag.min_probe_jacobian) {
                diag.min_probe_jacobian = J;
                diag.min_probe_u = u;
                diag.min_probe_v = v;
            }
        }
    }
    return diag;
}

bool is_nondegenerate(const Patch& patch) {
    const CoonsDiagnostics diag = tpq_table(patch);
    double max_abs = 0.0;
    for (const auto& row : diag.T)
        for (double t : row) max_abs = std::max(max_abs, std::abs(t));
    if (max_abs == 0.0) return false;
    const double zero_tol = 1e-12 * max_abs;
    bool pos = false, neg = false;
    for (const auto& row : diag.T) {
        for (double t : row) {
            if (t > zero_tol) pos = true;
            else if (t < -zero_tol) neg = true;
        }
    }
    return pos != neg;
}

Patch canonical_edge_net(const Patch& patch, int edge) {
    if (edge < 0 || edge > 3) throw DomainError("canonical_edge_net: edge outside 0..3");
    // One rotation maps (u,v) -> (v, 1-u); its bottom edge is the previous
    // curve-order edge, so edge e needs (4 - e) % 4 turns.
    Patch net = patch;
    const int turns = (4 - edge) % 4;
    for (int r = 0; r < turns; ++r) {
        Patch next = net;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) next.at(i, j) = net.at(j, 3 - i);
        net = next;
    }
    return net;
}

std::array<double, 6> edge_f_coeffs(const Patch& net) {
    std::array<double, 6> c{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double w = edge_weight(net, i, j);
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 4; ++b) {
                    c[a + b] += kB3d[i][a] * kB3[j][b] * w;
                }
            }
        }
    }
    return c;
}

std::array<double, 5> edge_fprime_coeffs(const Patch& net) {
    std::array<double, 5> c{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double w = edge_weight(net, i, j);
            for (int k = 0; k < 5; ++k) c[k] += 3.0 * kMij[i][j][k] * w;
        }
    }
    return c;
}

std::optional<BoundaryDegeneracy> boundary_degeneracy(const Patch& patch, int edge) {
    const Patch net = canonical_edge_net(patch, edge);
    const std::array<double, 5> fp = edge_fprime_coeffs(net);
    const double scale2 = patch_scale2(patch);

    double fp_scale = 0.0;
    for (double c : fp) fp_scale = std::max(fp_scale, std::abs(c));
    if (fp_scale <= 1e-14 * scale2) return std::nullopt;  // collapsed or straight edge

    std::optional<BoundaryDegeneracy> worst;
    for (double u : roots_in_open_unit_interval(PolyCoeffs::quartic(fp[0], fp[1], fp[2], fp[3],
                                                                    fp[4]))) {
        const double J = jacobian(net, u, 0.0);
        if (J < -1e-12 * scale2 && (!worst || J < worst->jacobian)) worst = {u, J};
    }
    return worst;
}

namespace {

struct RepairState {
    SplitStrategy strategy;
    NondegenerateResult* result;
};

// 41x41 probe accepting sign-constant Jacobians that the T test misses.
bool grid_probe_accepts(const Patch& patch) {
    const double floor = 1e-9 * patch_scale2(patch);
    for (int a = 0; a <= 40; ++a) {
        for (int b = 0; b <= 40; ++b) {
            if (jacobian(patch, a / 40.0, b / 40.0) <= floor) return false;
        }
    }
    return true;
}

// Longest side by control-polygon length, preferring nonstraight sides.
std::size_t side_to_split(const ClosedCurve& curve) {
    auto poly_len = [](const CubicSegment& s) {
        return length(s.p1 - s.p0) + length(s.p2 - s.p1) + length(s.p3 - s.p2);
    };
    std::optional<std::size_t> best;
    double best_len = -1.0;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        const CubicSegment& s = curve.segments[k];
        if (is_null_segment(s) || is_straight(s)) continue;
        const double len = poly_len(s);
        if (len > best_len) {
            best_len = len;
            best = k;
        }
    }
    if (best) return *best;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        const double len = poly_len(curve.segments[k]);
        if (len > best_len) {
            best_len = len;
            best = k;
        }
    }
    return *best;
}

// Cut the region perpendicular to the boundary tangent at parameter t.
std::pair<ClosedCurve, ClosedCurve> perpendicular_split(const ClosedCurve& curve, double t) {
    const double w = wrap_param(curve, t);
    const std::size_t k = std::min(static_cast<std::size_t>(w), curve.size() - 1);
    const double f = w - static_cast<double>(k);
    Point2 tangent = segment_derivative(curve.segments[k], f);
    if (tangent.x == 0.0 && tangent.y == 0.0) tangent = start_direction(curve.segments[k]);
    const Point2 inward = rot90ccw(normalize(tangent));
    std::optional<double> hit = first_ray_hit(curve, w, inward);
    if (!hit) hit = first_ray_hit(curve, w, -1.0 * inward);
    if (!hit) throw BisectorMiss("perpendicular split ray misses the boundary");
    return split_with_chord(curve, w, *hit);
}

void repair(const ClosedCurve& curve, int depth, bool check_boundary, const std::string& tag,
            RepairState& state);

void repair_both(const std::pair<ClosedCurve, ClosedCurve>& pieces, int depth,
                 bool check_boundary, const std::string& tag, RepairState& state) {
    repair(pieces.first, depth, check_boundary, tag + ".0", state);
    repair(pieces.second, depth, check_boundary, tag + ".1", state);
}

// Reversed-orientation piece: record its patch(es) as-is, without repair.
void emit_discarded(const ClosedCurve& curve, RepairState& state) {
    if (curve.size() <= 4) {
        Patch patch = coons_patch(pad_to_four(curve));
        patch.orientation = -1;
        state.result->discarded.push_back(patch);
        return;
    }
    for (const ClosedCurve& piece : bezulate(curve)) {
        Patch patch = coons_patch(pad_to_four(reversed(piece)));
        patch.orientation = -1;
        state.result->discarded.push_back(patch);
    }
}

void repair(const ClosedCurve& curve, int depth, bool check_boundary, const std::string& tag,
            RepairState& state) {
    if (depth > kMaxSplitDepth)
        throw SplitDepthExceeded("make_nondegenerate: split depth exceeded");

    const double scale = curve_scale(curve);
    const double area = signed_area(curve);
    if (std::abs(area) < 1e-12 * scale * scale) return;  // sliver from a split
    if (area < 0.0) {
        emit_discarded(curve, state);
        return;
    }

    if (curve.size() > 4) {
        int index = 0;
        for (const ClosedCurve& piece : bezulate(curve))
            repair(piece, depth, check_boundary, tag + ".b" + std::to_string(index++), state);
        return;
    }
    if (has_reflex_node(curve)) {
        int index = 0;
        for (const ClosedCurve& piece : split_reflex_nodes(curve))
            repair(piece, depth + 1, check_boundary, tag + ".r" + std::to_string(index++), state);
        return;
    }

    const ClosedCurve padded = pad_to_four(curve);
    Patch patch = coons_patch(padded);
    if (is_nondegenerate(patch)) {
        state.result->kept.push_back(patch);
        state.result->history.push_back(tag);
        return;
    }

    if (state.strategy == SplitStrategy::QuarticGuided && check_boundary) {
        std::optional<BoundaryDegeneracy> worst;
        int worst_edge = -1;
        for (int edge = 0; edge < 4; ++edge) {
            const std::optional<BoundaryDegeneracy> found = boundary_degeneracy(patch, edge);
            if (found && (!worst || found->jacobian < worst->jacobian)) {
                worst = found;
                worst_edge = edge;
            }
        }
        if (worst) {
            const double t = static_cast<double>(worst_edge) + worst->u;
            repair_both(perpendicular_split(padded, t), depth + 1, true,
                        tag + ".q" + std::to_string(worst_edge), state);
            return;
        }
        if (grid_probe_accepts(patch)) {
            state.result->kept.push_back(patch);
            state.result->history.push_back(tag + ".g");
            return;
        }
        // Internal-only degeneracy: arbitrary midpoint split; descendants
        // skip the boundary scan.
        const std::size_t side = side_to_split(padded);
        repair_both(perpendicular_split(padded, static_cast<double>(side) + 0.5), depth + 1,
                    false, tag + ".m" + std::to_string(side), state);
        return;
    }

    if (grid_probe_accepts(patch)) {
        state.result->kept.push_back(patch);
        state.result->history.push_back(tag + ".g");
        return;
    }
    const std::size_t side = side_to_split(padded);
    repair_both(perpendicular_split(padded, static_cast<double>(side) + 0.5), depth + 1, false,
                tag + ".m" + std::to_string(side), state);
}

}  // namespace

NondegenerateResult make_nondegenerate_detailed(const ClosedCurve& curve,
                                                SplitStrategy strategy) {
    if (curve.size() > 4) throw DomainError("make_nondegenerate: more than four segments");
    if (signed_area(curve) < 0.0) throw DomainError("make_nondegenerate: clockwise input");
    if (has_reflex_node(curve)) throw DomainError("make_nondegenerate: reflex node in input");

    NondegenerateResult result;
    RepairState state{strategy, &result};
    repair(curve, 0, true, "p", state);
    return result;
}

std::vector<Patch> make_nondegenerate(const ClosedCurve& curve, SplitStrategy strategy) {
    return make_nondegenerate_detailed(curve, strategy).kept;
}

}  // namespace geokit
