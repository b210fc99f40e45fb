#include <doctest.h>

#include "efetlab/zeros.hpp"

using namespace efet;

namespace {

double d(const Real& x) { return static_cast<double>(x); }

TaylorFunction make(const CoefficientSequence& s, unsigned bits = 128) {
    return TaylorFunction(s, PrecisionContext(bits));
}

}  // namespace

TEST_CASE("winding_count on zero-free and cosine functions") {
    auto expf = make(CoefficientSequence::constant(Complex(1.0), Complex(1.0)));
    auto w = winding_count(expf, Real(10));
    CHECK(w.count == 0);
    CHECK(d(w.residual) < 0.25);

    auto cosf = make(CoefficientSequence::cosine_oracle());
    CHECK(winding_count(cosf, Real(10)).count == 6);

    auto em1 = make(CoefficientSequence::expm1_oracle());
    CHECK(winding_count(em1, Real(7)).count == 3);

    CHECK_THROWS_AS(winding_count(expf, Real(0)), DomainError);
}

TEST_CASE("winding_count nudges a contour that passes through a zero") {
    // cos has a zero exactly at pi/2 * 3 = 4.712...; use R on a zero: pi/2
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    auto cosf = make(CoefficientSequence::cosine_oracle());
    Real R = const_pi() / 2;
    auto w = winding_count(cosf, R);
    // the nudged contour must enclose either 0 or 2 of the pair +-pi/2
    CHECK((w.count == 0 || w.count == 2));
    CHECK(w.used_radius != R);
}

TEST_CASE("winding_count is invariant under quadrature refinement") {
    auto cosf = make(CoefficientSequence::cosine_oracle());
    for (double R : {5.0, 10.0, 20.0}) {
        long a = winding_count(cosf, Real(R), 64).count;
        long b = winding_count(cosf, Real(R), 256).count;
        CHECK(a == b);
    }
}

TEST_CASE("locate_zeros finds the cosine zeros at +-pi/2") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    auto cosf = make(CoefficientSequence::cosine_oracle());
    ZeroSet zs = locate_zeros(cosf, Real(4));
    REQUIRE(zs.zeros.size() == 2);
    CHECK(zs.winding_total == 2);
    Real half_pi = const_pi() / 2;
    CHECK(d(abs(zs.zeros[0].location + Complex(half_pi))) < 1e-10);
    CHECK(d(abs(zs.zeros[1].location - Complex(half_pi))) < 1e-10);
    for (const Zero& z : zs.zeros) {
        CHECK(z.multiplicity == 1);
        CHECK(d(z.residual) < 1e-30);
    }
}

TEST_CASE("locate_zeros finds the simple zero of e^z - 1 at the origin") {
    auto em1 = make(CoefficientSequence::expm1_oracle());
    ZeroSet zs = locate_zeros(em1, Real(1));
    REQUIRE(zs.zeros.size() == 1);
    CHECK(zs.zeros[0].multiplicity == 1);
    CHECK(d(abs(zs.zeros[0].location)) < 1e-10);
}

TEST_CASE("locate_zeros winding_total matches winding_count for a random phase") {
    auto f = make(CoefficientSequence::quadratic_phase(Rational(1, 3), Rational(0, 1),
                                                       Rational(0, 1)));
    Real R(12);
    ZeroSet zs = locate_zeros(f, R);
    CHECK(zs.winding_total == winding_count(f, R).count);
    long sum = 0;
    for (const Zero& z : zs.zeros) {
        sum += z.multiplicity;
        CHECK(d(abs(z.location)) <= d(zs.region_radius) * (1 + 1e-12));
    }
    CHECK(sum == zs.winding_total);
}

TEST_CASE("located zeros reproduce the count through the explicit product") {
    // divide out the located zeros; the quotient must have winding 0 on a
    // slightly smaller circle
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    auto cosf = make(CoefficientSequence::cosine_oracle());
    ZeroSet zs = locate_zeros(cosf, Real(4));
    Real r_small(4.0 * 0.9);
    long inner = 0;
    for (const Zero& z : zs.zeros)
        if (abs(z.location) < r_small) inner += z.multiplicity;
    CHECK(inner == winding_count(cosf, r_small).count);
}

TEST_CASE("residuals at located zeros are small against the local scale") {
    auto f = make(CoefficientSequence::random_unimodular(5));
    PrecisionContext ctx(128);
    Real R(6);
    ZeroSet zs = locate_zeros(f, R);
    Real scale = f.max_modulus(R);
    for (const Zero& z : zs.zeros) CHECK(z.residual <= Real(1000) * ctx.tol() * scale);
}

TEST_CASE("counting_profile") {
    auto expf = make(CoefficientSequence::constant(Complex(1.0), Complex(1.0)));
    CountingFunction cf = counting_profile(expf, {Real(1), Real(10), Real(50)});
    for (const CountSample& s : cf.samples) CHECK(s.count == 0);

    auto cosf = make(CoefficientSequence::cosine_oracle());
    CountingFunction cc =
        counting_profile(cosf, {Real(2), Real(5), Real(10), Real(20), Real(50)});
    std::vector<long> expected = {2, 4, 6, 12, 32};  // 2*floor(R/pi + 1/2)
    REQUIRE(cc.samples.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(cc.samples[i].count == expected[i]);

    CHECK_THROWS_AS(counting_profile(expf, {Real(2), Real(1)}), DomainError);
}

TEST_CASE("fit_growth") {
    // synthetic n(R) = floor(2R)
    CountingFunction synth;
    for (int R = 10; R <= 100; R += 10) {
        CountSample s;
        s.R = Real(R);
        s.count = 2 * R;
        s.ratio = Real(s.count) / s.R;
        s.residual = Real(0);
        synth.samples.push_back(s);
    }
    GrowthFit fit = fit_growth(synth);
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.02));
    CHECK(fit.prefactor == doctest::Approx(2.0).epsilon(0.02));
    CHECK(fit.r_squared > 0.999);
    CHECK(fit.ratio_table.size() == synth.samples.size());
    CHECK(fit.ratio_table[0].second == doctest::Approx(2.0));

    // degenerate: all counts zero
    CountingFunction zerop;
    for (int R = 1; R <= 3; ++R) {
        CountSample s;
        s.R = Real(R);
        s.count = 0;
        zerop.samples.push_back(s);
    }
    CHECK_THROWS_AS(fit_growth(zerop), DegenerateProfileError);
}

TEST_CASE("fit_growth on actual cosine counts") {
    auto cosf = make(CoefficientSequence::cosine_oracle());
    std::vector<Real> radii;
    for (int R = 5; R <= 50; R += 5) radii.push_back(Real(R));
    GrowthFit fit = fit_growth(counting_profile(cosf, radii));
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fit.prefactor == doctest::Approx(2.0 / 3.14159265358979).epsilon(0.1));
}

TEST_CASE("serialization shapes") {
    auto em1 = make(CoefficientSequence::expm1_oracle());
    ZeroSet zs = locate_zeros(em1, Real(1));
    std::string js = to_json(zs);
    CHECK(js.find("winding_total") != std::string::npos);
    CHECK(js.find("multiplicity") != std::string::npos);

    auto cosf = make(CoefficientSequence::cosine_oracle());
    CountingFunction cf = counting_profile(cosf, {Real(2), Real(5)});
    std::string csv = to_csv(cf, 128);
    CHECK(csv.rfind("R,n_F,ratio_n_over_R,winding_residual,truncation_N,precision_bits\n", 0) ==
          0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(to_csv(cf, 128) == csv);  // byte-stable
}
