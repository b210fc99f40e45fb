#include <doctest.h>

#include "efetlab/constructions.hpp"
#include "efetlab/quadrature.hpp"
#include "efetlab/taylor.hpp"

using namespace efet;

namespace {

double d(const Real& x) { return static_cast<double>(x); }

}  // namespace

TEST_CASE("phi_borel against the defining integral") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    CHECK_THROWS_AS(phi_borel(Complex(), ctx), DomainError);

    // Re s > 0: the untransformed integral converges and serves as oracle
    auto direct = [&](const Complex& s) {
        auto f = [&](const Complex& u) { return (cos(sqrt(u)) + Complex(2.0)) * exp(-(s * u)); };
        Real U = Real(200) / abs(s);  // e^{-|s| U} far below eps
        return segment_quadrature(f, Complex(), Complex(U), ctx);
    };
    for (const Complex& s : {Complex(10.0), Complex(3.0, 2.0), Complex(0.5, -1.0)}) {
        Complex p = phi_borel(s, ctx);
        CHECK(d(abs(p - direct(s))) < 1e-25);
    }
    // 2/s contributes 0.2 and the cosine part 0.0950
    CHECK(d(abs(phi_borel(Complex(10.0), ctx))) == doctest::Approx(0.2950).epsilon(1e-3));
}

TEST_CASE("phi_borel inversion recovers cos 1 + 2") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    auto integrand = [&](const Complex& s) { return phi_borel(s, ctx) * exp(s); };
    Complex v = circle_quadrature(integrand, Complex(), Real(1), ctx);
    CHECK(d(v.re) == doctest::Approx(std::cos(1.0) + 2).epsilon(1e-15));
    CHECK(d(boost::multiprecision::abs(v.im)) < 1e-15);
}

TEST_CASE("phi_borel growth envelope on |s| = 0.1") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    Real bound = Real(0.02) * boost::multiprecision::exp(Real(10));  // A e^{B/|s|}, B = 1
    for (int i = 0; i < 24; ++i) {
        Complex s = polar(Real(0.1), 2 * const_pi() * Real(i) / 24);
        CHECK(abs(phi_borel(s, ctx)) <= bound);
    }
}

TEST_CASE("g_factor_contour is rho-independent") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    Complex z(9.0);
    Complex g = g_factor_contour(z, ctx);
    auto integrand = [&](const Complex& s) {
        return exp(z * (exp(s) - Complex(1.0))) * phi_borel(s, ctx);
    };
    Complex g_half = circle_quadrature(integrand, Complex(), Real(1) / 6, ctx);
    CHECK(d(abs(g - g_half)) < 10 * d(ctx.tol()));
}

TEST_CASE("factorization F = e^z G for the cos sqrt + 2 series") {
    PrecisionContext ctx(128);
    TaylorFunction F(CoefficientSequence::cos_sqrt_plus2(), ctx);
    for (const Complex& z : {Complex(1.0), Complex(0.0, 5.0), Complex(-10.0), Complex(20.0, 20.0)}) {
        Complex f = F.eval(z).value;
        Complex g = g_factor_contour(z, ctx);
        CHECK(d(abs(f - exp(z) * g) / abs(f)) < 1e-6);
    }
    CHECK(d(abs(g_factor_contour(Complex(), ctx) - Complex(3.0))) == 0.0);
}

TEST_CASE("G growth along the negative axis") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    for (double r : {1.0, 4.0, 16.0, 64.0, 256.0}) {
        Complex g = g_factor_contour(Complex(-r), ctx);
        CHECK(d(boost::multiprecision::log(abs(g))) <= 3 * std::sqrt(r));
    }
}

TEST_CASE("SubharmonicExample basics") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    SubharmonicExample ex(Real(10000), ctx);
    CHECK(d(ex.alpha) == doctest::Approx(0.5 * std::log(20.0)).epsilon(1e-30));
    // 5 e^{2 alpha} = sqrt(R)
    CHECK(d(5 * boost::multiprecision::exp(2 * ex.alpha)) == doctest::Approx(100.0).epsilon(1e-30));
    CHECK_THROWS_AS(SubharmonicExample(Real(20), ctx), DomainError);
}

TEST_CASE("f_gauss matches direct quadrature") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    Real alpha(1);
    for (const Complex& w : {Complex(0.5), Complex(1.0, 1.0), Complex(-0.3, 1.7), Complex(2.0)}) {
        auto f = [&](const Complex& t) { return exp(-(Complex(alpha) * t * t)); };
        Complex oracle = segment_quadrature(f, Complex(), w, ctx);
        CHECK(d(abs(f_gauss(w, alpha, ctx) - oracle)) < 1e-25);
    }
}

TEST_CASE("u is r on the positive axis and reflection-symmetric") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    SubharmonicExample ex(Real(10000), ctx);
    for (double r : {0.0, 1.0, 5000.0, 10000.0})
        CHECK(d(boost::multiprecision::abs(u_eval(Complex(r), ex, ctx) - r)) < 1e-25);
    for (const Complex& z : {Complex(30.0, 40.0), Complex(-100.0, 7.0), Complex(0.0, 2000.0)})
        CHECK(u_eval(conj(z), ex, ctx) == u_eval(z, ex, ctx));
    CHECK_THROWS_AS(u_eval(Complex(10001.0), ex, ctx), DomainError);
}

TEST_CASE("u stays below r + 5 on circles") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    SubharmonicExample ex(Real(10000), ctx);
    for (double r : {1.0, 100.0, 5000.0}) {
        Real worst(-1e30);
        for (int i = 0; i < 720; ++i) {
            Real th = 2 * const_pi() * Real(i) / 720;
            Real u = u_eval(polar(Real(r), th), ex, ctx);
            if (u > worst) worst = u;
        }
        CHECK(worst <= Real(r) + 5 + Real(1e-6));
        // the maximum over the circle is attained on the positive axis
        CHECK(worst >= Real(r) * (1 - 1e-25));
    }
}

TEST_CASE("u is harmonic off the segment [0, R]") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    SubharmonicExample ex(Real(10000), ctx);
    Real h(0.01);
    for (const Complex& z :
         {Complex(-50.0), Complex(-50.0, 10.0), Complex(300.0, 200.0), Complex(40.0, -70.0)}) {
        Real lap = u_eval(z + Complex(h), ex, ctx) + u_eval(z - Complex(h), ex, ctx) +
                   u_eval(z + Complex(Real(0), h), ex, ctx) +
                   u_eval(z - Complex(Real(0), h), ex, ctx) - 4 * u_eval(z, ex, ctx);
        CHECK(d(boost::multiprecision::abs(lap)) / d(h * h) < 1e-4);
    }
    // on the segment the upward normal derivative is positive (mass present)
    Real eps(0.001);
    for (double x : {100.0, 1000.0, 8000.0}) {
        Real up = u_eval(Complex(Real(x), eps), ex, ctx) - u_eval(Complex(x), ex, ctx);
        CHECK(up > 0);
    }
}

TEST_CASE("riesz_mass closed form and limits") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    SubharmonicExample ex(Real(10000), ctx);
    CHECK(d(riesz_mass(Real(7), Real(7), ex, ctx)) == 0.0);
    CHECK_THROWS_AS(riesz_mass(Real(5), Real(3), ex, ctx), DomainError);

    // total mass against a quadrature oracle for 2 sqrt(R) int_0^1 e^{-a t^2} dt
    auto f = [&](const Complex& t) { return exp(-(Complex(ex.alpha) * t * t)); };
    Real oracle = 2 * boost::multiprecision::sqrt(ex.R) *
                  segment_quadrature(f, Complex(), Complex(1.0), ctx).re;
    Real total = riesz_mass(Real(0), ex.R, ex, ctx);
    CHECK(d(boost::multiprecision::abs(total - oracle)) < 1e-20);
    CHECK(d(total) == doctest::Approx(132.7).epsilon(2e-3));

    Real unit = riesz_mass(Real(0), Real(1), ex, ctx);
    CHECK(d(unit) >= 1.8);
    CHECK(d(unit) <= 2.0);
    CHECK(d(boost::multiprecision::abs(unit - 2)) < 1e-3);

    // ratio to sqrt(R) stays under sqrt(pi/alpha) + 0.01
    for (double R : {1e4, 1e6}) {
        SubharmonicExample e2(Real(R), ctx);
        Real ratio = riesz_mass(Real(0), e2.R, e2, ctx) / boost::multiprecision::sqrt(e2.R);
        CHECK(ratio <= boost::multiprecision::sqrt(const_pi() / e2.alpha) + Real(0.01));
    }
}

TEST_CASE("riesz_mass matches the boundary-jump integral") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    SubharmonicExample ex(Real(10000), ctx);
    Real a(100), b(400);
    Real mass = riesz_mass(a, b, ex, ctx);

    // composite Simpson of the jump 2 d_y u(x + i 0) with an FD derivative
    Real eps(0.0001);
    auto jump = [&](const Real& x) {
        return 2 * (u_eval(Complex(x, eps), ex, ctx) - u_eval(Complex(x), ex, ctx)) / eps;
    };
    int n = 400;  // even
    Real hstep = (b - a) / n;
    Real acc = jump(a) + jump(b);
    for (int i = 1; i < n; ++i) acc += jump(a + hstep * i) * (i % 2 ? 4 : 2);
    Real fd = acc * hstep / 3;
    CHECK(d(boost::multiprecision::abs(fd - mass) / mass) < 1e-2);
}

TEST_CASE("claims_check") {
    PrecisionContext ctx(128);
    PrecisionContext::Scope scope(ctx);
    CHECK_THROWS_AS(claims_check(Real(1), 5, ctx), DomainError);
    auto r1 = claims_check(Real(1), 50, ctx);
    CHECK(d(r1.margin_a) >= 0.0);
    CHECK(d(r1.margin_b) >= 0.0);
    SubharmonicExample ex(Real(10000), ctx);
    auto r2 = claims_check(ex, 100, ctx);
    CHECK(d(r2.margin_a) >= 0.0);
    CHECK(d(r2.margin_b) >= 0.0);
}

namespace {

long long brute_overlap(const DensityWitness& w) {
    long long cnt = 0;
    for (long long j : w.J)
        for (long long k : w.K)
            if (j + w.h == k) ++cnt;
    return cnt;
}

void check_witness(const DensityWitness& w, double d_, long long R) {
    CHECK(w.c1 == std::min(d_ / 8, 0.25));
    CHECK(w.c2 == d_ * d_ * w.c1 / 10);
    CHECK(static_cast<double>(w.x) > 2 * w.c1 * R);
    CHECK(static_cast<double>(w.x) < (1 - 2 * w.c1) * R);
    CHECK(static_cast<double>(w.h) >= w.c1 * R - 1);
    CHECK(static_cast<double>(w.h) <= (1 - w.c1) * R + 1);
    CHECK(static_cast<double>(w.K.size()) >= d_ / 2 * w.c1 * R - 1);
    long long brute = brute_overlap(w);
    CHECK(brute == w.overlap);
    CHECK(static_cast<double>(brute) >= w.c2 * R);
}

}  // namespace

TEST_CASE("combi_find") {
    auto all = [](long long) { return true; };
    auto evens = [](long long n) { return n % 2 == 0; };
    auto mask3 = [](long long n) { long long m = n % 10; return m == 0 || m == 3 || m == 7; };

    DensityWitness w1 = combi_find(all, 1.0, 1000);
    check_witness(w1, 1.0, 1000);
    CHECK(w1.overlap >= 13);  // c2 R = 12.5

    DensityWitness w2 = combi_find(evens, 0.5, 2000);
    check_witness(w2, 0.5, 2000);

    DensityWitness w3 = combi_find(mask3, 0.3, 5000);
    check_witness(w3, 0.3, 5000);

    CHECK_THROWS_AS(combi_find(all, 1.0, 50), WitnessNotFoundError);
    // density promise broken: empty set on a long range
    auto none = [](long long) { return false; };
    CHECK_THROWS_AS(combi_find(none, 0.5, 2000), WitnessNotFoundError);
}
