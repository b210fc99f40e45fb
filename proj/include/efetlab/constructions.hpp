#pragma once

#include <functional>
#include <vector>

#include "efetlab/precision.hpp"

namespace efet {

// Borel-Laplace transform phi(s) = integral_0^inf (cos sqrt(u) + 2) e^{-su} du
// = 2/s + C(s), continued to all s != 0 by rotating the C-integral onto the
// ray where the Gaussian factor decays.
Complex phi_borel(const Complex& s, const PrecisionContext& ctx);

// G(z) = (1/2 pi i) contour integral over |s| = rho of e^{z(e^s - 1)} phi(s) ds,
// rho = min(1/sqrt|z|, 1); G(0) = 3. Satisfies F(z) = e^z G(z) for the
// cos sqrt(n) + 2 coefficient sequence.
Complex g_factor_contour(const Complex& z, const PrecisionContext& ctx);

// Explicit subharmonic competitor on the R-disk.
struct SubharmonicExample {
    Real R;
    Real alpha;  // 5 e^{2 alpha} = sqrt(R)

    SubharmonicExample(const Real& R, const PrecisionContext& ctx);
};

// F_gauss(w) = integral_0^w e^{-alpha t^2} dt by its entire power series.
Complex f_gauss(const Complex& w, const Real& alpha, const PrecisionContext& ctx);

// u(z) = Re z + sqrt(R) Im F_gauss(sqrt(z/R)) for Im z >= 0, reflected below.
Real u_eval(const Complex& z, const SubharmonicExample& ex, const PrecisionContext& ctx);

// Riesz mass of [a, b] in [0, R]: 2 sqrt(R) [F_gauss(sqrt(b/R)) - F_gauss(sqrt(a/R))].
Real riesz_mass(const Real& a, const Real& b, const SubharmonicExample& ex,
                const PrecisionContext& ctx);

struct ClaimsReport {
    Real margin_a;  // worst RHS - LHS of |Im f| < 5 e^{2a} y^2 + 2a|x| e^{-a x^2/2} y
    Real margin_b;  // worst RHS - LHS of Im F < 10 e^{2a} y^2 + e^{-2a}
};

// Grid check of Claims A and B on the closed upper unit semi-disk;
// non-negative margins mean the inequalities hold everywhere on the grid.
ClaimsReport claims_check(const Real& alpha, unsigned grid_density, const PrecisionContext& ctx);

inline ClaimsReport claims_check(const SubharmonicExample& ex, unsigned grid_density,
                                 const PrecisionContext& ctx) {
    return claims_check(ex.alpha, grid_density, ctx);
}

// Derandomized dense-translate witness of the combinatorial lemma.
struct DensityWitness {
    double c1 = 0;
    double c2 = 0;
    long long x = 0;
    long long h = 0;
    std::vector<long long> J;
    std::vector<long long> K;
    long long overlap = 0;  // |(J + h) intersect K|
};

// membership realizes lower density >= d on [1, R]. Picks J = members of
// [1, c1 R], scans length-c1R segments (skipping the two first and two last)
// for one holding >= (d/2) c1 R members as K, then exhausts h in
// (x - c1R, x + c1R) maximizing the overlap; the winner must reach c2 R.
DensityWitness combi_find(const std::function<bool(long long)>& membership, double d,
                          long long R);

}  // namespace efet
