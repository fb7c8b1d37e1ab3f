#pragma once

#include <array>
#include <vector>

#include "geokit/errors.h"

namespace geokit {

// Real polynomial of degree <= 4 with ascending-degree coefficients.
// effective_degree() drops leading coefficients whose magnitude is at or
// below 1e-14 of the largest coefficient magnitude.
struct PolyCoeffs {
    std::array<double, 5> c{};

    static PolyCoeffs quadratic(double c0, double c1, double c2) {
        return {{c0, c1, c2, 0.0, 0.0}};
    }
    static PolyCoeffs cubic(double c0, double c1, double c2, double c3) {
        return {{c0, c1, c2, c3, 0.0}};
    }
    static PolyCoeffs quartic(double c0, double c1, double c2, double c3, double c4) {
        return {{c0, c1, c2, c3, c4}};
    }

    int effective_degree() const;
    double eval(double x) const;
    double derivative_eval(double x) const;
};

// All real roots, sorted ascending, near-multiple roots clustered (closer
// than 1e-7 reported once as the cluster mean). Degree-0 input rejected.
std::vector<double> solve_quadratic(const PolyCoeffs& p);
std::vector<double> solve_cubic(const PolyCoeffs& p);
std::vector<double> solve_quartic(const PolyCoeffs& p);

// Roots strictly inside (0,1); roots within 1e-12 of either endpoint are
// excluded. Degree-0 input yields an empty list rather than an error.
std::vector<double> roots_in_open_unit_interval(const PolyCoeffs& p);

}  // namespace geokit
