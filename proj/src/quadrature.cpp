#include "efetlab/quadrature.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <vector>

namespace efet {

namespace {

constexpr unsigned kMaxCircleNodes = 1u << 18;
constexpr unsigned kGLOrder = 15;
constexpr int kMaxDepth = 48;

}  // namespace

void gauss_legendre(unsigned order, unsigned bits, std::vector<Real>& nodes,
                    std::vector<Real>& weights) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::pair<std::vector<Real>, std::vector<Real>>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(order, bits);
    auto it = cache.find(key);
    if (it != cache.end()) {
        nodes = it->second.first;
        weights = it->second.second;
        return;
    }

    nodes.assign(order, Real(0));
    weights.assign(order, Real(0));
    Real pi = const_pi();
    for (unsigned i = 0; i < (order + 1) / 2; ++i) {
        Real x = cos(pi * (Real(i) + Real(0.75)) / (Real(order) + Real(0.5)));
        Real dp;
        for (int iter = 0; iter < 200; ++iter) {
            // Legendre recurrence for P_order(x) and its derivative
            Real p0 = 1, p1 = x;
            for (unsigned k = 2; k <= order; ++k) {
                Real p2 = ((2 * Real(k) - 1) * x * p1 - (Real(k) - 1) * p0) / Real(k);
                p0 = p1;
                p1 = p2;
            }
            dp = Real(order) * (x * p1 - p0) / (x * x - 1);
            Real step = p1 / dp;
            x -= step;
            if (boost::multiprecision::abs(step) < pow2(-static_cast<long>(bits) - 4)) break;
        }
        // recompute derivative at the converged node for the weight
        {
            Real p0 = 1, p1 = x;
            for (unsigned k = 2; k <= order; ++k) {
                Real p2 = ((2 * Real(k) - 1) * x * p1 - (Real(k) - 1) * p0) / Real(k);
                p0 = p1;
                p1 = p2;
            }
            dp = Real(order) * (x * p1 - p0) / (x * x - 1);
        }
        Real w = 2 / ((1 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    cache[key] = {nodes, weights};
}

Complex circle_quadrature(const ComplexFn& integrand, const Complex& center, const Real& radius,
                          unsigned nodes, const PrecisionContext& ctx) {
    if (nodes < 8) throw DomainError("circle_quadrature: nodes must be >= 8");
    if (radius <= 0) throw DomainError("circle_quadrature: radius must be positive");
    PrecisionContext::Scope scope(ctx);
    Complex c0 = to_scope(center);
    Real rad = to_scope(radius);

    Real two_pi = 2 * const_pi();
    auto sample = [&](unsigned k, unsigned n) {
        Complex dir = polar(Real(1), two_pi * Real(k) / Real(n));
        Complex v = integrand(c0 + rad * dir);
        if (!v.is_finite()) {
            std::ostringstream os;
            os << "circle_quadrature: non-finite integrand at node " << k << " of " << n;
            throw EvaluationError(os.str());
        }
        return v * dir;
    };

    unsigned n = nodes;
    Complex acc;  // sum of f(z_k) e^{i theta_k} over current nodes
    for (unsigned k = 0; k < n; ++k) acc += sample(k, n);
    Complex prev = acc * (rad / Real(n));

    Real tol = ctx.tol();
    while (n < kMaxCircleNodes) {
        // double: old nodes are the even-index subset of the new grid
        unsigned n2 = 2 * n;
        for (unsigned k = 1; k < n2; k += 2) acc += sample(k, n2);
        n = n2;
        Complex cur = acc * (rad / Real(n));
        Real scale = abs(cur) + 1;
        if (abs(cur - prev) < tol * scale) return cur;
        prev = cur;
    }
    throw ConvergenceError("circle_quadrature: node cap reached without stabilization",
                           static_cast<double>(abs(prev)), 0.0);
}

namespace {

Complex gl_panel(const ComplexFn& f, const Complex& a, const Complex& b,
                 const std::vector<Real>& xs, const std::vector<Real>& ws) {
    Complex mid = (a + b) * Real(0.5);
    Complex half = (b - a) * Real(0.5);
    Complex sum;
    for (unsigned i = 0; i < xs.size(); ++i) {
        Complex v = f(mid + half * Complex(xs[i]));
        if (!v.is_finite())
            throw EvaluationError("segment_quadrature: non-finite integrand sample");
        sum += v * ws[i];
    }
    return sum * half;
}

struct AdaptiveCtx {
    const ComplexFn* f;
    const std::vector<Real>* xs;
    const std::vector<Real>* ws;
    Real rel_tol;
    Real abs_floor;  // per unit of parameter length
    Real total_len;
};

Complex adapt(const AdaptiveCtx& c, const Complex& a, const Complex& b, const Complex& whole,
              int depth) {
    Complex mid = (a + b) * Real(0.5);
    Complex left = gl_panel(*c.f, a, mid, *c.xs, *c.ws);
    Complex right = gl_panel(*c.f, mid, b, *c.xs, *c.ws);
    Complex refined = left + right;
    Real err = abs(refined - whole);
    Real len = abs(b - a);
    if (err <= c.rel_tol * abs(refined) + c.abs_floor * (len / c.total_len)) return refined;
    if (depth >= kMaxDepth)
        throw ConvergenceError("segment_quadrature: max bisection depth reached",
                               static_cast<double>(abs(refined)), static_cast<double>(err));
    return adapt(c, a, mid, left, depth + 1) + adapt(c, mid, b, right, depth + 1);
}

}  // namespace

Complex segment_quadrature(const ComplexFn& integrand, const Complex& a, const Complex& b,
                           const PrecisionContext& ctx) {
    if (a == b) throw DomainError("segment_quadrature: endpoints must differ");
    PrecisionContext::Scope scope(ctx);

    std::vector<Real> xs, ws;
    unsigned bits = ctx.precision_bits() + ctx.guard_bits();
    gauss_legendre(kGLOrder, bits, xs, ws);

    Complex a0 = to_scope(a);
    Complex b0 = to_scope(b);

    AdaptiveCtx c;
    c.f = &integrand;
    c.xs = &xs;
    c.ws = &ws;
    c.rel_tol = pow2(-static_cast<long>(ctx.precision_bits()));
    c.total_len = abs(b0 - a0);

    Complex whole = gl_panel(integrand, a0, b0, xs, ws);
    // Absolute floor keeps near-zero tails (relative test unreachable there)
    // from being refined forever; it is tied to the coarse whole-interval scale.
    c.abs_floor = c.rel_tol * (abs(whole) + pow2(-static_cast<long>(2 * ctx.precision_bits())));
    return adapt(c, a0, b0, whole, 0);
}

}  // namespace efet
