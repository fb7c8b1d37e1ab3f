#include "geokit/orient.h"

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace geokit {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Exact value of a double as integer * 2^exp.
void decompose(double v, BigInt* mantissa, int* exp) {
    if (v == 0.0) {
        *mantissa = 0;
        *exp = 0;
        return;
    }
    int e;
    double f = std::frexp(v, &e);            // v = f * 2^e, |f| in [0.5, 1)
    const double scaled = std::ldexp(f, 53);  // 53-bit integer
    *mantissa = BigInt(static_cast<long long>(scaled));
    *exp = e - 53;
}

// Exact scaled-integer difference of two doubles.
void exact_diff(double u, double v, BigInt* mantissa, int* exp) {
    BigInt mu, mv;
    int eu, ev;
    decompose(u, &mu, &eu);
    decompose(v, &mv, &ev);
    if (mu == 0) {
        *mantissa = -mv;
        *exp = ev;
        return;
    }
    if (mv == 0) {
        *mantissa = mu;
        *exp = eu;
        return;
    }
    const int e = std::min(eu, ev);
    *mantissa = (mu << (eu - e)) - (mv << (ev - e));
    *exp = e;
}

int exact_orientation(Point2 a, Point2 b, Point2 c) {
    BigInt acx, acy, bax, bay;
    int eacx, eacy, ebax, ebay;
    exact_diff(b.x, a.x, &bax, &ebax);
    exact_diff(b.y, a.y, &bay, &ebay);
    exact_diff(c.x, a.x, &acx, &eacx);
    exact_diff(c.y, a.y, &acy, &eacy);
    // det = (b-a).x (c-a).y - (b-a).y (c-a).x, with exponents aligned.
    BigInt left = bax * acy;
    BigInt right = bay * acx;
    const int eleft = ebax + eacy;
    const int eright = ebay + eacx;
    const int e = std::min(eleft, eright);
    left <<= (eleft - e);
    right <<= (eright - e);
    const int cmp = left.compare(right);
    return cmp > 0 ? 1 : (cmp < 0 ? -1 : 0);
}

}  // namespace

int orientation(Point2 a, Point2 b, Point2 c) {
    const double detleft = (b.x - a.x) * (c.y - a.y);
    const double detright = (b.y - a.y) * (c.x - a.x);
    const double det = detleft - detright;

    double detsum;
    if (detleft > 0.0) {
        if (detright <= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = detleft + detright;
    } else if (detleft < 0.0) {
        if (detright >= 0.0) return det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
        detsum = -detleft - detright;
    } else {
        return exact_orientation(a, b, c);
    }

    // Shewchuk's stage-A bound for the orientation determinant.
    constexpr double eps = std::numeric_limits<double>::epsilon() * 0.5;
    constexpr double errbound = (3.0 + 16.0 * eps) * eps;
    if (det >= errbound * detsum || -det >= errbound * detsum)
        return det > 0.0 ? 1 : -1;
    return exact_orientation(a, b, c);
}

bool on_segment(Point2 a, Point2 b, Point2 c) {
    if (orientation(a, b, c) != 0) return false;
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

}  // namespace geokit
