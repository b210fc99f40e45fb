// Acceptance gate: one pass/fail line per criterion, pinned tolerances.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "efetlab/constructions.hpp"
#include "efetlab/correlation.hpp"
#include "efetlab/experiments.hpp"
#include "efetlab/hadamard.hpp"
#include "efetlab/zeros.hpp"

using namespace efet;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-28s %s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmtd(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1
void criterion_exact_counts() {
    PrecisionContext ctx(128);
    bool ok = true;
    std::string detail;

    TaylorFunction expF(CoefficientSequence::constant(Complex(1.0), Complex(1.0)), ctx);
    for (double R : {1.0, 10.0, 50.0}) {
        long n = winding_count(expF, Real(R)).count;
        if (n != 0) { ok = false; detail += "exp R=" + fmtd(R) + " n=" + std::to_string(n) + "; "; }
    }
    TaylorFunction cosF(CoefficientSequence::cosine_oracle(), ctx);
    for (double R : {2.0, 5.0, 10.0, 20.0, 50.0}) {
        long n = winding_count(cosF, Real(R)).count;
        long expect = 2 * static_cast<long>(std::floor(R / M_PI + 0.5));
        if (n != expect) {
            ok = false;
            detail += "cos R=" + fmtd(R) + " n=" + std::to_string(n) + "!=" +
                      std::to_string(expect) + "; ";
        }
    }
    TaylorFunction em1(CoefficientSequence::expm1_oracle(), ctx);
    long n7 = winding_count(em1, Real(7)).count;
    if (n7 != 3) { ok = false; detail += "expm1 R=7 n=" + std::to_string(n7) + "; "; }
    if (ok) detail = "integer counts match exactly (tolerance 0)";
    report(1, "exact zero counts", ok, detail);
}

// ---------------------------------------------------------------- criterion 2
void criterion_interpolation() {
    auto t0 = std::chrono::steady_clock::now();
    PrecisionContext ctx(256);
    Real R(40);
    double worst = 0;
    std::vector<CoefficientSequence> seqs = {
        CoefficientSequence::quadratic_phase(Rational(1, 5), Rational(0, 1), Rational(0, 1)),
        CoefficientSequence::random_unimodular(7)};
    for (const auto& seq : seqs) {
        TaylorFunction F(seq, ctx);
        for (unsigned h : {0u, 1u, 5u})
            for (unsigned n = 0; n <= 25; ++n) {
                Complex target = seq.value(n, ctx) * conj(seq.value(n + h, ctx));
                Complex g = interp_g(F, h, Complex(static_cast<double>(n)), R);
                worst = std::max(worst, static_cast<double>(abs(g - target)));
            }
    }
    double secs = seconds_since(t0);
    bool ok = worst < 1e-12 && secs < 120;
    report(2, "interpolation identity", ok,
           "max dev " + fmtd(worst) + " (tol 1e-12), " + fmtd(secs) + "s (limit 120s)");
}

// ---------------------------------------------------------------- criterion 3
void criterion_correlation() {
    auto t0 = std::chrono::steady_clock::now();
    PrecisionContext ctx(128);
    std::vector<CoefficientSequence> catalogue = {
        CoefficientSequence::constant(Complex(1.0), Complex(1.0)),
        CoefficientSequence::quadratic_phase(Rational(1, 5), Rational(0, 1), Rational(0, 1)),
        CoefficientSequence::cos_sqrt_plus2(),
        CoefficientSequence::random_unimodular(7),
        CoefficientSequence::masked(
            CoefficientSequence::quadratic_phase(Rational(1, 3), Rational(0, 1), Rational(0, 1)),
            {false, true, false}),
        CoefficientSequence::cosine_oracle(),
        CoefficientSequence::expm1_oracle()};
    // 25 deterministic sample points in |z| <= 5
    std::vector<Complex> pts;
    for (int i = 0; i < 25; ++i) {
        double r = 5.0 * (i + 1) / 25.0;
        double th = 2 * M_PI * 0.6180339887498949 * i;
        pts.emplace_back(r * std::cos(th), r * std::sin(th));
    }
    double worst_ratio = 0;
    bool ok = true;
    for (const auto& seq : catalogue) {
        TaylorFunction F(seq, ctx);
        for (unsigned h = 0; h <= 10; ++h)
            for (const Complex& z : pts) {
                EvalResult series = corr_series(F, h, z);
                Complex contour = corr_contour(F, h, z);
                Real dev = abs(series.value - contour);
                Real budget = 10 * (series.error_bound + ctx.tol() * (1 + abs(series.value)));
                if (dev > budget) ok = false;
                double ratio = static_cast<double>(dev / budget);
                worst_ratio = std::max(worst_ratio, ratio);
            }
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 60;
    report(3, "correlation cross-check", ok,
           "worst dev/budget " + fmtd(worst_ratio) + " (tol 1), " + fmtd(secs) +
               "s (limit 60s)");
}

// ---------------------------------------------------------------- criterion 4
void criterion_k_identity() {
    PrecisionContext ctx(128);
    double worst = 0;
    for (int i = -157; i <= 157; ++i) {
        double phi = 0.01 * i;  // [-pi/2, pi/2] at step 0.01
        if (std::abs(phi) > M_PI / 2) continue;
        double s = std::sin(phi);
        double best = -1e300;
        const int N = 6000;  // grid error ~ (pi/N)^2/8 << 1e-6
        for (int j = -N; j <= N; ++j) {
            double t = M_PI * j / N;
            best = std::max(best, 2 * std::cos(t / 2) + t * s);
        }
        double target = 2 * static_cast<double>(k_phi(Real(phi), ctx));
        worst = std::max(worst, std::abs(best - target));
    }
    report(4, "eq:k envelope identity", worst < 1e-6,
           "max |grid max - 2k(phi)| " + fmtd(worst) + " (tol 1e-6)");
}

// ---------------------------------------------------------------- criterion 5
void criterion_sqrt_example() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    {
        PrecisionContext ctx(192);
        TaylorFunction F(CoefficientSequence::cos_sqrt_plus2(), ctx);
        double worst = 0;
        for (int i = 0; i < 10; ++i) {
            double r = 5.0 * (i + 1);
            double th = 2 * M_PI * 0.6180339887498949 * i;
            Complex z(r * std::cos(th), r * std::sin(th));
            Complex f = F.eval(z).value;
            Complex g = g_factor_contour(z, ctx);
            PrecisionContext::Scope scope(ctx);
            double rel = static_cast<double>(abs(f - exp(to_scope(z)) * g) / abs(f));
            worst = std::max(worst, rel);
        }
        if (worst >= 1e-6) ok = false;
        detail += "residual " + fmtd(worst) + " (tol 1e-6); ";
    }
    {
        CountingFunction cf;
        for (double Rv : {16.0, 32.0, 64.0, 128.0}) {
            PrecisionContext ctx(Rv >= 128 ? 384 : 192);
            TaylorFunction F(CoefficientSequence::cos_sqrt_plus2(), ctx);
            CountSample s;
            s.R = Real(Rv);
            WindingResult w = winding_count(F, s.R);
            s.count = w.count;
            s.ratio = Real(w.count) / s.R;
            s.residual = w.residual;
            cf.samples.push_back(s);
        }
        double expo = fit_growth(cf).exponent;
        if (!(expo >= 0.35 && expo <= 0.65)) ok = false;
        detail += "counts {";
        for (const CountSample& s : cf.samples) detail += std::to_string(s.count) + ",";
        detail += "} exponent " + fmtd(expo) + " (in [0.35,0.65]); ";
    }
    {
        PrecisionContext ctx(192);
        double worst_excess = -1e300;
        for (double r : {1.0, 4.0, 16.0, 64.0, 256.0}) {
            Complex g = g_factor_contour(Complex(-r), ctx);
            PrecisionContext::Scope scope(ctx);
            double lg = static_cast<double>(boost::multiprecision::log(abs(g)));
            worst_excess = std::max(worst_excess, lg - 3 * std::sqrt(r));
        }
        if (worst_excess > 0) ok = false;
        detail += "log|G(-r)|-3sqrt(r) max " + fmtd(worst_excess) + " (<=0); ";
    }
    double secs = seconds_since(t0);
    ok = ok && secs < 600;
    report(5, "Borel-factor example", ok, detail + fmtd(secs) + "s (limit 600s)");
}

// ---------------------------------------------------------------- criterion 6
void criterion_dichotomy() {
    PrecisionContext ctx(128);
    bool ok = true;
    std::string detail;
    TaylorFunction F(
        CoefficientSequence::quadratic_phase(Rational(1, 3), Rational(0, 1), Rational(0, 1)),
        ctx);
    CountingFunction cf;
    for (double Rv : {25.0, 50.0, 75.0, 100.0}) {
        CountSample s;
        s.R = Real(Rv);
        WindingResult w = winding_count(F, s.R);
        s.count = w.count;
        s.ratio = Real(w.count) / s.R;
        cf.samples.push_back(s);
        if (w.count <= 0) { ok = false; detail += "n_F(" + fmtd(Rv) + ")=0; "; }
    }
    double expo = fit_growth(cf).exponent;
    if (!(expo >= 0.85 && expo <= 1.15)) ok = false;
    detail += "exponent " + fmtd(expo) + " (in [0.85,1.15]); ";

    bool degenerate = false;
    try {
        ExperimentConfig cfg = parse_config(R"({
            "experiment": "dichotomy-scan",
            "sequence": {"kind": "constant"},
            "radii": [2, 4, 8]
        })");
        Report rep = efet::run(cfg);
        degenerate = rep.summary.value("verdict", "") == "exponential-function candidate";
    } catch (const std::exception&) {
        degenerate = false;
    }
    if (!degenerate) ok = false;
    detail += degenerate ? "constant flagged as exponential candidate"
                         : "constant NOT flagged";
    report(6, "dichotomy illustration", ok, detail);
}

// ---------------------------------------------------------------- criterion 7
void criterion_subharmonic() {
    auto t0 = std::chrono::steady_clock::now();
    PrecisionContext ctx(128);
    bool ok = true;
    std::string detail;
    SubharmonicExample ex(Real(10000), ctx);
    PrecisionContext::Scope scope(ctx);

    double worst_axis = 0;
    for (double r : {0.0, 1.0, 100.0, 5000.0, 10000.0}) {
        Real u = u_eval(Complex(r), ex, ctx);
        worst_axis = std::max(worst_axis, std::abs(static_cast<double>(u - Real(r))));
    }
    if (worst_axis >= 1e-10) ok = false;
    detail += "axis dev " + fmtd(worst_axis) + " (tol 1e-10); ";

    double worst_margin = -1e300;
    for (double r : {1.0, 100.0, 5000.0, 10000.0}) {
        for (int i = 0; i < 720; ++i) {
            Real th = 2 * const_pi() * Real(i) / 720;
            Real u = u_eval(polar(Real(r), th), ex, ctx);
            worst_margin = std::max(worst_margin, static_cast<double>(u - Real(r) - 5));
        }
    }
    if (worst_margin > 1e-6) ok = false;
    detail += "u-(r+5) max " + fmtd(worst_margin) + " (tol 1e-6); ";

    double m1 = static_cast<double>(riesz_mass(Real(0), Real(1), ex, ctx));
    if (!(m1 >= 1.8 && m1 <= 2.0)) ok = false;
    detail += "mass(0,1) " + fmtd(m1) + " (in [1.8,2]); ";

    double ratio = static_cast<double>(riesz_mass(Real(0), ex.R, ex, ctx) /
                                       boost::multiprecision::sqrt(ex.R));
    double bound = std::sqrt(M_PI / static_cast<double>(ex.alpha)) + 0.01;
    if (ratio > bound) ok = false;
    detail += "mass/sqrtR " + fmtd(ratio) + " (<= " + fmtd(bound) + "); ";

    ClaimsReport claims = claims_check(ex, 100, ctx);
    bool claims_ok = claims.margin_a >= 0 && claims.margin_b >= 0;
    if (!claims_ok) ok = false;
    detail += std::string("claims ") + (claims_ok ? ">=0; " : "NEGATIVE; ");

    double secs = seconds_since(t0);
    ok = ok && secs < 60;
    report(7, "subharmonic example", ok, detail + fmtd(secs) + "s (limit 60s)");
}

// ---------------------------------------------------------------- criterion 8
void criterion_parseval() {
    PrecisionContext ctx(128);
    std::vector<CoefficientSequence> unimodular = {
        CoefficientSequence::constant(Complex(1.0), Complex(1.0)),
        CoefficientSequence::quadratic_phase(Rational(1, 5), Rational(0, 1), Rational(0, 1)),
        CoefficientSequence::quadratic_phase(Rational(1, 3), Rational(0, 1), Rational(0, 1)),
        CoefficientSequence::random_unimodular(7)};
    double worst = 1e300;
    for (const auto& seq : unimodular) {
        TaylorFunction F(seq, ctx);
        for (double R : {10.0, 20.0, 40.0}) {
            PrecisionContext::Scope scope(ctx);
            double margin = static_cast<double>(
                F.parseval_lower(Real(R)) - (Real(R) - boost::multiprecision::log(Real(R)) / 2 - 3));
            worst = std::min(worst, margin);
        }
    }
    report(8, "Parseval lower bound", worst >= 0,
           "min margin over catalogue " + fmtd(worst) + " (>= 0)");
}

// ---------------------------------------------------------------- criterion 9
void criterion_hadamard() {
    PrecisionContext ctx(128);
    bool ok = true;
    std::string detail;

    TaylorFunction cosF(CoefficientSequence::cosine_oracle(), ctx);
    ZeroModel model = ZeroModel::cosine(Real(20), ctx);
    HadamardData data = build_hadamard_data(cosF, model, Real(20));
    double resid = static_cast<double>(factorization_residual(cosF, data, Real(5), Real(0.5)));
    if (resid >= 1e-3) ok = false;
    detail += "cosine residual " + fmtd(resid) + " (tol 1e-3); ";

    {
        PrecisionContext::Scope scope(ctx);
        double worst = -1e300;
        for (unsigned j = 2; j <= 10; ++j) {
            Real sj = abs(data.s[j - 2].value) + data.s[j - 2].error;
            Real lhs = sj * boost::multiprecision::pow(Real(20), static_cast<int>(j) - 1);
            Real env = 2 * Real(j) / Real(j - 1);  // sigma = 1 for the cosine zeros
            worst = std::max(worst, static_cast<double>(lhs - env));
        }
        if (worst > 0) ok = false;
        detail += "Claim-1 excess " + fmtd(worst) + " (<=0); ";
    }

    {
        TaylorFunction F(CoefficientSequence::cos_sqrt_plus2(), ctx);
        ZeroSet zs = locate_zeros(F, Real(50));
        ZeroModel m;
        m.R = Real(50);
        m.tail = TailKind::BoundOnly;
        m.sigma = 1.0;
        for (const Zero& z : zs.zeros)
            for (unsigned k = 0; k < z.multiplicity; ++k) m.inside.push_back(z.location);
        Complex aR = a_R_estimate(F, m, Real(50));
        double dev = static_cast<double>(abs(aR - Complex(1.0)));
        if (dev >= 0.2) ok = false;
        detail += "|a_R - 1| " + fmtd(dev) + " (tol 0.2)";
    }
    report(9, "Hadamard consistency", ok, detail);
}

// --------------------------------------------------------------- criterion 10
void criterion_combi() {
    bool ok = true;
    std::string detail;
    struct Case {
        const char* name;
        std::function<bool(long long)> member;
        double d;
        long long R;
    };
    std::vector<Case> cases = {
        {"all,d=1,R=1000", [](long long) { return true; }, 1.0, 1000},
        {"even,d=0.5,R=2000", [](long long n) { return n % 2 == 0; }, 0.5, 2000},
        {"mask,d=0.3,R=5000",
         [](long long n) { long long m = n % 10; return m == 0 || m == 3 || m == 7; }, 0.3,
         5000}};
    for (const auto& c : cases) {
        try {
            DensityWitness w = combi_find(c.member, c.d, c.R);
            // exhaustive recheck, zero tolerance
            double c1 = std::min(c.d / 8, 0.25);
            double c2 = c.d * c.d * c1 / 10;
            long long L = static_cast<long long>(c1 * static_cast<double>(c.R));
            bool good = w.c1 == c1 && w.c2 == c2;
            for (long long j : w.J) good = good && j >= 1 && j <= L && c.member(j);
            for (long long k : w.K) good = good && k >= w.x && k <= w.x + L && c.member(k);
            good = good && 2 * c1 * static_cast<double>(c.R) < static_cast<double>(w.x);
            good = good && static_cast<double>(w.x) + c1 * static_cast<double>(c.R) <
                               static_cast<double>(c.R) - c1 * static_cast<double>(c.R) + L + 1;
            std::unordered_set<long long> kset(w.K.begin(), w.K.end());
            long long overlap = 0;
            for (long long j : w.J)
                if (kset.count(j + w.h)) ++overlap;
            good = good && overlap == w.overlap;
            good = good && static_cast<double>(overlap) >= c2 * static_cast<double>(c.R);
            if (!good) ok = false;
            detail += std::string(c.name) + (good ? " ok" : " FAILED") +
                      " (overlap " + std::to_string(w.overlap) + "); ";
        } catch (const std::exception& e) {
            ok = false;
            detail += std::string(c.name) + " threw: " + e.what() + "; ";
        }
    }
    report(10, "combinatorial witnesses", ok, detail);
}

// --------------------------------------------------------------- criterion 11
void criterion_determinism() {
    const char* text = R"({
        "experiment": "count",
        "sequence": {"kind": "random_unimodular", "seed": 42},
        "radii": [3, 9, 18]
    })";
    Report a = efet::run(parse_config(text));
    Report b = efet::run(parse_config(text));
    bool ok = a.tables.size() == b.tables.size();
    for (std::size_t i = 0; ok && i < a.tables.size(); ++i)
        ok = a.tables[i].csv == b.tables[i].csv;
    ok = ok && a.summary.dump() == b.summary.dump();
    report(11, "determinism", ok,
           ok ? "two runs byte-identical" : "runs differ");
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_exact_counts();
    criterion_interpolation();
    criterion_correlation();
    criterion_k_identity();
    criterion_sqrt_example();
    criterion_dichotomy();
    criterion_subharmonic();
    criterion_parseval();
    criterion_hadamard();
    criterion_combi();
    criterion_determinism();
    std::printf("acceptance: %d/11 passed in %.1fs\n", 11 - failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
