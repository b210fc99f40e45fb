#pragma once

#include <functional>
#include <vector>

#include "efetlab/precision.hpp"

namespace efet {

using ComplexFn = std::function<Complex(const Complex&)>;

// (1/2pi i) of the contour integral of `integrand` over the circle
// |z - center| = radius, counterclockwise. Periodic trapezoid rule,
// node count doubling from `nodes` (>= 8) until two successive results
// differ by less than ctx tol, cap 2^18 nodes.
Complex circle_quadrature(const ComplexFn& integrand, const Complex& center, const Real& radius,
                          unsigned nodes, const PrecisionContext& ctx);

inline Complex circle_quadrature(const ComplexFn& integrand, const Complex& center,
                                 const Real& radius, const PrecisionContext& ctx) {
    return circle_quadrature(integrand, center, radius, 64, ctx);
}

// Integral of `integrand` along the straight segment [a, b]. Adaptive
// 15-point Gauss-Legendre with bisection until successive refinements
// agree to ctx tolerance; ConvergenceError past max depth.
Complex segment_quadrature(const ComplexFn& integrand, const Complex& a, const Complex& b,
                           const PrecisionContext& ctx);

// Gauss-Legendre nodes/weights on [-1, 1] at the current default precision.
// Exposed for reuse by callers that build custom contours.
void gauss_legendre(unsigned order, unsigned bits, std::vector<Real>& nodes,
                    std::vector<Real>& weights);

}  // namespace efet
