#include "efetlab/zeros.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "efetlab/quadrature.hpp"

namespace efet {

namespace {

constexpr unsigned kMaxWindingNodes = 1u << 20;

long nearest_long(const Real& x) {
    return static_cast<long>(llround(static_cast<double>(x)));
}

// Trapezoid winding integral over |z| = R with the 0.25-stabilization rule.
// Throws ProximityToZeroError straight through so the caller can nudge R.
WindingResult winding_once(const TaylorFunction& F, const Real& R, unsigned initial_nodes) {
    const PrecisionContext& ctx = F.context();
    PrecisionContext::Scope scope(ctx);
    Real two_pi = 2 * const_pi();

    // start with enough nodes to see each zero's phase wrap individually
    unsigned n = initial_nodes ? initial_nodes
                               : std::max(64u, 16u * static_cast<unsigned>(
                                                         static_cast<double>(R) + 1));
    // round up to a power of two so doubling reuse stays exact
    unsigned p2 = 64;
    while (p2 < n) p2 <<= 1;
    n = p2;

    auto sample = [&](unsigned k, unsigned nn) {
        Complex z = polar(R, two_pi * Real(k) / Real(nn));
        Complex ld = F.eval_log_derivative(z);
        if (!ld.is_finite()) throw EvaluationError("winding_count: non-finite F'/F sample");
        return ld * z;
    };

    Complex acc;
    for (unsigned k = 0; k < n; ++k) acc += sample(k, n);
    Complex prev = acc / Real(n);
    int stable = 0;
    while (n < kMaxWindingNodes) {
        unsigned n2 = 2 * n;
        for (unsigned k = 1; k < n2; k += 2) acc += sample(k, n2);
        n = n2;
        Complex cur = acc / Real(n);
        if (abs(cur - prev) < Real(0.25))
            ++stable;
        else
            stable = 0;
        prev = cur;
        if (stable >= 2) {
            long count = nearest_long(cur.re);
            Real resid = abs(cur - Complex(Real(count)));
            if (resid < Real(0.25)) return {count, R, resid, n};
            stable = 0;  // integer proximity not yet reached; keep doubling
        }
    }
    throw ConvergenceError("winding_count: no stable integer winding",
                           static_cast<double>(prev.re),
                           static_cast<double>(abs(prev - Complex(Real(nearest_long(prev.re))))));
}

}  // namespace

WindingResult winding_count(const TaylorFunction& F, const Real& R, unsigned initial_nodes) {
    if (R <= 0) throw DomainError("winding_count: R must be positive");
    const PrecisionContext& ctx = F.context();
    PrecisionContext::Scope scope(ctx);
    Real r = to_scope(R);
    // Exponent clamped at 14: a nudge below ~R*2^-14 leaves the obstructing
    // zero so close to the contour that the trapezoid cannot resolve it
    // within the node cap.
    long nudge_exp = std::min<long>(static_cast<long>(ctx.precision_bits()) / 4, 14);
    Real eps = r * pow2(-nudge_exp);
    for (int attempt = 0;; ++attempt) {
        // 0, +eps, -eps, +2eps, -2eps, ...
        Real rr = r;
        if (attempt > 0) {
            long k = (attempt + 1) / 2;
            rr = (attempt % 2 == 1) ? r + Real(k) * eps : r - Real(k) * eps;
        }
        try {
            return winding_once(F, rr, initial_nodes);
        } catch (const ProximityToZeroError&) {
            if (attempt >= 8) throw;
        }
    }
}

namespace {

// ----- rectangle winding for quadtree cells --------------------------------

struct Cell {
    Complex center;
    Real half;  // half side length (square cells)
};

// Winding number of F over the boundary of `cell`, same stabilization rule
// as the circle. Panels per edge double until two consecutive agreements.
long rect_winding_raw(const TaylorFunction& F, const Cell& cell) {
    const PrecisionContext& ctx = F.context();
    std::vector<Real> xs, ws;
    gauss_legendre(15, ctx.precision_bits() + ctx.guard_bits(), xs, ws);

    Complex corners[4] = {
        cell.center + Complex(-cell.half, -cell.half),
        cell.center + Complex(cell.half, -cell.half),
        cell.center + Complex(cell.half, cell.half),
        cell.center + Complex(-cell.half, cell.half),
    };

    auto edge_sum = [&](const Complex& a, const Complex& b, unsigned panels) {
        Complex total;
        for (unsigned p = 0; p < panels; ++p) {
            Complex pa = a + (b - a) * (Real(p) / Real(panels));
            Complex pb = a + (b - a) * (Real(p + 1) / Real(panels));
            Complex mid = (pa + pb) * Real(0.5);
            Complex hl = (pb - pa) * Real(0.5);
            for (unsigned i = 0; i < xs.size(); ++i)
                total += F.eval_log_derivative(mid + hl * Complex(xs[i])) * ws[i] * hl;
        }
        return total;
    };

    Real two_pi = 2 * const_pi();
    Complex prev;
    int stable = 0;
    for (unsigned panels = 1; panels <= 1u << 12; panels *= 2) {
        Complex total;
        for (int e = 0; e < 4; ++e) total += edge_sum(corners[e], corners[(e + 1) % 4], panels);
        Complex cur = Complex(total.im, -total.re) / two_pi;  // divide by 2*pi*i
        if (panels > 1 && abs(cur - prev) < Real(0.25))
            ++stable;
        else
            stable = 0;
        prev = cur;
        if (stable >= 2) {
            long count = nearest_long(cur.re);
            if (abs(cur - Complex(Real(count))) < Real(0.25)) return count;
            stable = 0;
        }
    }
    throw ConvergenceError("rect_winding: no stable integer winding",
                           static_cast<double>(prev.re), 0.0);
}

// Retry wrapper: a zero on (or hugging) the cell boundary shows up as a
// proximity error or non-stabilization; expand the contour slightly. The
// children still tile the original cell, and duplicates created by the
// overlap are resolved by the cluster merge + per-cluster recount.
long rect_winding(const TaylorFunction& F, const Cell& cell) {
    for (int k = 0;; ++k) {
        Cell c = cell;
        if (k > 0) c.half = cell.half * (1 + Real(k) * pow2(-10));
        try {
            return rect_winding_raw(F, c);
        } catch (const ProximityToZeroError&) {
            if (k >= 6) throw;
        } catch (const ConvergenceError&) {
            if (k >= 6) throw;
        }
    }
}

struct Detection {
    Complex location;
    long cell_winding;
    bool refined;
};

// Newton from the cell center; success means convergence to a point that
// stays within 3 cell-halves of the start.
bool newton_refine(const TaylorFunction& F, const Cell& cell, const Real& delta_loc,
                   Complex& out) {
    const PrecisionContext& ctx = F.context();
    Real step_tol = delta_loc * ctx.tol();
    Complex z = cell.center;
    for (int it = 0; it < 50; ++it) {
        DerivPair p = F.eval_pair(z);
        if (abs(p.fp) == 0) return false;
        Complex step = -(p.f / p.fp);
        z += step;
        if (abs(z - cell.center) > 3 * cell.half) return false;
        if (abs(step) < step_tol) {
            out = z;
            return true;
        }
    }
    out = z;  // 50-iteration cap: accept the refined point
    return true;
}

void subdivide(const TaylorFunction& F, const Cell& cell, const Real& R, const Real& delta_loc,
               std::vector<Detection>& found) {
    // skip cells entirely outside the closed disk (with margin for merging)
    Real corner_dist = abs(cell.center) - cell.half * Real(1.4143);
    if (corner_dist > R + 4 * delta_loc) return;

    long w = rect_winding(F, cell);
    if (w == 0) return;

    if (w == 1 && cell.half <= R * Real(1e-2)) {
        Complex z;
        if (newton_refine(F, cell, delta_loc, z)) {
            found.push_back({z, w, true});
            return;
        }
    }
    if (cell.half <= 2 * delta_loc) {
        // unresolved cluster (e.g. multiple zero): report the cell center
        found.push_back({cell.center, w, false});
        return;
    }
    Real h = cell.half / 2;
    for (int sy = -1; sy <= 1; sy += 2)
        for (int sx = -1; sx <= 1; sx += 2)
            subdivide(F, {cell.center + Complex(Real(sx) * h, Real(sy) * h), h}, R, delta_loc,
                      found);
}

}  // namespace

ZeroSet locate_zeros(const TaylorFunction& F, const Real& R) {
    if (R <= 0) throw DomainError("locate_zeros: R must be positive");
    const PrecisionContext& ctx = F.context();
    PrecisionContext::Scope scope(ctx);
    Real r = to_scope(R);

    WindingResult total = winding_count(F, r);
    ZeroSet zs;
    zs.region_radius = total.used_radius;
    zs.winding_total = total.count;
    if (total.count == 0) return zs;

    Real delta_loc = r * Real(1e-6);
    // tiny irrational-flavored offset keeps gridlines off the axes, where
    // zeros of the catalogued functions like to sit
    Complex offset = Complex(r * Real(0.00731428), r * Real(0.00412871));
    Cell root{offset, r * Real(1.03)};

    std::vector<Detection> found;
    subdivide(F, root, total.used_radius, delta_loc, found);

    // deterministic order before merging
    std::sort(found.begin(), found.end(), [](const Detection& a, const Detection& b) {
        if (a.location.re != b.location.re) return a.location.re < b.location.re;
        return a.location.im < b.location.im;
    });

    // greedy cluster merge within 4*delta_loc
    std::vector<std::vector<Detection>> clusters;
    for (const Detection& d : found) {
        bool placed = false;
        for (auto& cl : clusters) {
            for (const Detection& e : cl) {
                if (abs(d.location - e.location) <= 4 * delta_loc) {
                    cl.push_back(d);
                    placed = true;
                    break;
                }
            }
            if (placed) break;
        }
        if (!placed) clusters.push_back({d});
    }

    long mult_sum = 0;
    for (const auto& cl : clusters) {
        // prefer a Newton-refined representative
        const Detection* rep = &cl.front();
        for (const Detection& d : cl)
            if (d.refined) {
                rep = &d;
                break;
            }
        Real spread(0);
        for (const Detection& d : cl) spread = std::max(spread, abs(d.location - rep->location));
        if (abs(rep->location) > zs.region_radius) continue;

        Cell around{rep->location, std::max(4 * delta_loc, 2 * spread)};
        long mult = rect_winding(F, around);
        if (mult <= 0)
            throw ConsistencyError("locate_zeros: merged cluster recount returned no zero");
        Real resid = abs(F.eval_pair(rep->location).f);
        zs.zeros.push_back({rep->location, static_cast<unsigned>(mult), resid});
        mult_sum += mult;
    }

    if (mult_sum != zs.winding_total) {
        std::ostringstream os;
        os << "locate_zeros: cell multiplicities sum to " << mult_sum
           << " but the disk winding is " << zs.winding_total;
        throw ConsistencyError(os.str());
    }
    return zs;
}

CountingFunction counting_profile(const TaylorFunction& F, const std::vector<Real>& radii) {
    const PrecisionContext& ctx = F.context();
    PrecisionContext::Scope scope(ctx);
    CountingFunction cf;
    long prev_count = -1;
    Real prev_r(0);
    for (const Real& R : radii) {
        Real r = to_scope(R);
        if (r <= 0) throw DomainError("counting_profile: radii must be positive");
        if (r <= prev_r) throw DomainError("counting_profile: radii must be increasing");
        WindingResult w = winding_count(F, r);
        if (w.count < prev_count)
            throw ConsistencyError("counting_profile: zero count decreased with R");
        CountSample s;
        s.R = r;
        s.count = w.count;
        s.ratio = Real(w.count) / r;
        s.residual = w.residual;
        s.truncation_N = truncation_order(r, ctx, F.sequence().C_high());
        cf.samples.push_back(s);
        prev_count = w.count;
        prev_r = r;
    }
    return cf;
}

GrowthFit fit_growth(const CountingFunction& profile) {
    std::vector<std::pair<double, double>> pts;  // (log R, log n)
    GrowthFit fit;
    bool any_positive = false;
    for (const CountSample& s : profile.samples) {
        double R = static_cast<double>(s.R);
        fit.ratio_table.emplace_back(R, static_cast<double>(s.count) / R);
        if (s.count > 0) {
            any_positive = true;
            pts.emplace_back(std::log(R), std::log(static_cast<double>(s.count)));
        }
    }
    if (!any_positive)
        throw DegenerateProfileError(
            "fit_growth: all counts are zero (exponential-function candidate)");
    if (pts.size() < 3)
        throw DomainError("fit_growth: need at least 3 samples with positive count");

    double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw DomainError("fit_growth: degenerate abscissae");
    fit.exponent = (n * sxy - sx * sy) / denom;
    double intercept = (sy - fit.exponent * sx) / n;
    fit.prefactor = std::exp(intercept);
    double ss_tot = syy - sy * sy / n;
    double ss_res = 0;
    for (auto [x, y] : pts) {
        double e = y - (fit.exponent * x + intercept);
        ss_res += e * e;
    }
    fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

// ----- serialization --------------------------------------------------------

namespace {

std::string fmt(const Real& x, int digits = 17) {
    std::ostringstream os;
    os << std::setprecision(digits) << static_cast<double>(x);
    return os.str();
}

}  // namespace

std::string to_json(const ZeroSet& zs) {
    nlohmann::json j;
    j["region_radius"] = static_cast<double>(zs.region_radius);
    j["winding_total"] = zs.winding_total;
    j["zeros"] = nlohmann::json::array();
    for (const Zero& z : zs.zeros) {
        j["zeros"].push_back({{"location_re", static_cast<double>(z.location.re)},
                              {"location_im", static_cast<double>(z.location.im)},
                              {"multiplicity", z.multiplicity},
                              {"residual", static_cast<double>(z.residual)}});
    }
    return j.dump(2);
}

std::string to_json(const CountingFunction& cf) {
    nlohmann::json j;
    j["samples"] = nlohmann::json::array();
    for (const CountSample& s : cf.samples) {
        j["samples"].push_back({{"R", static_cast<double>(s.R)},
                                {"count", s.count},
                                {"ratio_n_over_R", static_cast<double>(s.ratio)},
                                {"winding_residual", static_cast<double>(s.residual)},
                                {"truncation_N", s.truncation_N}});
    }
    return j.dump(2);
}

std::string to_csv(const CountingFunction& cf, unsigned precision_bits) {
    std::ostringstream os;
    os << "R,n_F,ratio_n_over_R,winding_residual,truncation_N,precision_bits\n";
    for (const CountSample& s : cf.samples) {
        os << fmt(s.R) << "," << s.count << "," << fmt(s.ratio) << ","
           << fmt(s.residual, 6) << "," << s.truncation_N << "," << precision_bits << "\n";
    }
    return os.str();
}

}  // namespace efet
