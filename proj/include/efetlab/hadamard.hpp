#pragma once

#include <vector>

#include "efetlab/taylor.hpp"

namespace efet {

// Tail description for the zeros beyond |z| = R.
enum class TailKind {
    None,            // genuinely no zeros outside R
    BoundOnly,       // unknown tail with the declared bound n_F(t) <= sigma t
    Cosine,          // +-(k+1/2)pi for all k with modulus > R
    SyntheticPower,  // +-(2k)^{1/a} pairs, counting function ~ t^a
};

struct ZeroModel {
    std::vector<Complex> inside;  // zeros with |lambda| <= R, repeated per multiplicity
    TailKind tail = TailKind::None;
    double sigma = 1.0;           // n_F(t) <= sigma t declaration (Claim-1 envelope)
    double power_exponent = 0.4;  // SyntheticPower: exponent a
    Real R;

    // closed-form cosine model: all zeros +-(k+1/2)pi inside, Cosine tail
    static ZeroModel cosine(const Real& R, const PrecisionContext& ctx);
};

struct SumWithError {
    Complex value;
    Real error;
};

struct HadamardData {
    Real R;
    Complex a_R;
    std::vector<SumWithError> s;  // s[j-2] holds s_j, j = 2..J_max
    ZeroModel model;
    bool tail_unmodeled = false;  // BoundOnly: s_j frozen at 0, envelope as error
};

// s_j(R) = sum over |lambda| > R of lambda^{-j}, j = 2..J_max. Analytic
// tails are summed directly with an integral-comparison remainder; a
// BoundOnly tail yields 0 with the Claim-1 envelope 2 sigma j/(j-1) R^{1-j}.
std::vector<SumWithError> power_sums(const ZeroModel& model, const Real& R, unsigned J_max,
                                     const PrecisionContext& ctx);

// h_R(z) = -sum_{j>=2} s_j(R)/j z^j, valid for |z| <= R/2.
EvalResult h_R_eval(const Complex& z, const HadamardData& data, const PrecisionContext& ctx);

// pi_R(z) = prod over inside zeros of (1 - z/lambda).
Complex pi_R_eval(const Complex& z, const ZeroModel& model, const PrecisionContext& ctx);

// a_R = F'(0)/F(0) + sum over inside zeros of 1/lambda. Requires F(0) != 0.
Complex a_R_estimate(const TaylorFunction& F, const ZeroModel& model, const Real& R);

HadamardData build_hadamard_data(const TaylorFunction& F, const ZeroModel& model, const Real& R,
                                 unsigned J_max = 40);

// max over a grid (|z| <= max_r, distance >= min_dist from inside zeros) of
// |F(z) e^{-a_R z - h_R(z)} / pi_R(z) - 1|.
Real factorization_residual(const TaylorFunction& F, const HadamardData& data, const Real& max_r,
                            const Real& min_dist, unsigned grid_points = 100);

// S_{r,R}(theta) = |a_R| r cos theta - sum_j (|s_j|/j) r^j cos(j theta + theta_j),
// in coordinates rotated so a_R >= 0 (theta_j absorbs the rotation).
Real S_theta(const Real& r, const Real& theta, const HadamardData& data,
             const PrecisionContext& ctx);

// Maximizer of S near theta = 0: Newton on the stationarity condition
//   |a_R| sin theta - sum_j |s_j| r^{j-1} sin(j theta + theta_j) = 0,
// verified against S'' < 0. Newton leaving |theta| <= pi/4 throws.
Real theta_star(const Real& r, const HadamardData& data, const PrecisionContext& ctx);

// g_R(r) = [(|a_R| cos theta* - 1) - sum_j (|s_j|/j) r^{j-1} cos(j theta* + theta_j)] r
//        = S(r, theta*) - r.
Real g_R_eval(const Real& r, const HadamardData& data, const PrecisionContext& ctx);

// omega(zeta) = (2/pi) arg((1 + sqrt(zeta))/(1 - sqrt(zeta))) with the branch
// 0 <= arg sqrt(zeta) <= pi; harmonic measure of the circular boundary of the
// unit disk slit along [0, 1).
Real harmonic_measure_slit(const Complex& zeta, const PrecisionContext& ctx);

// v_R(z) = log|pi_R(z)| - eta r^mu cos(mu (pi - |theta|)); -inf at the zeros.
Real v_R_eval(const Complex& z, const Real& eta, const Real& mu, const ZeroModel& model,
              const PrecisionContext& ctx);

}  // namespace efet
