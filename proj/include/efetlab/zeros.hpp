#pragma once

#include <string>
#include <vector>

#include "efetlab/taylor.hpp"

namespace efet {

struct WindingResult {
    long count = 0;
    Real used_radius;   // equals R unless the contour had to be nudged
    Real residual;      // |integral - count| at the accepted node count
    unsigned nodes = 0;
};

// (1/2pi i) contour integral of F'/F over |z| = R, rounded to the nearest
// integer once node doubling stabilizes within 0.25 twice in a row. A zero
// sitting on the contour triggers radius nudges R(1 +/- 2^{-p/4}), up to 8
// alternating retries.
WindingResult winding_count(const TaylorFunction& F, const Real& R, unsigned initial_nodes = 0);

struct Zero {
    Complex location;
    unsigned multiplicity = 1;
    Real residual;  // |F(location)|
};

struct ZeroSet {
    std::vector<Zero> zeros;
    Real region_radius;
    long winding_total = 0;
};

// Quadtree subdivision of the bounding square with per-cell rectangle
// winding, Newton refinement from cell centers, and cluster merging within
// 4*delta_loc (delta_loc = R*1e-6). Total multiplicity must reproduce
// winding_count(F, R); otherwise ConsistencyError.
ZeroSet locate_zeros(const TaylorFunction& F, const Real& R);

struct CountSample {
    Real R;
    long count = 0;
    Real ratio;          // count / R
    Real residual;       // winding residual at acceptance
    unsigned truncation_N = 0;
};

struct CountingFunction {
    std::vector<CountSample> samples;
};

CountingFunction counting_profile(const TaylorFunction& F, const std::vector<Real>& radii);

struct GrowthFit {
    double exponent = 0;
    double prefactor = 0;
    double r_squared = 0;
    std::vector<std::pair<double, double>> ratio_table;  // (R, n_F(R)/R)
};

// Least-squares fit of log count against log R over the samples with
// positive count. All-zero profiles throw DegenerateProfileError flagged
// as an exponential-function candidate.
GrowthFit fit_growth(const CountingFunction& profile);

std::string to_json(const ZeroSet& zs);
std::string to_json(const CountingFunction& cf);
std::string to_csv(const CountingFunction& cf, unsigned precision_bits);

}  // namespace efet
