#include "efetlab/experiments.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "efetlab/constructions.hpp"
#include "efetlab/correlation.hpp"
#include "efetlab/hadamard.hpp"
#include "efetlab/zeros.hpp"

namespace efet {

namespace {

using nlohmann::json;

const std::set<std::string> kTags = {"dichotomy-scan", "sqrt-example", "interp-verify",
                                     "hadamard-profile", "subharmonic", "combi",
                                     "count", "locate"};

std::string fmt(const Real& x, int digits = 17) {
    std::ostringstream os;
    os << std::setprecision(digits) << static_cast<double>(x);
    return os.str();
}

Rational parse_rational(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>(), 1);
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s), 1);
            return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw ConfigError("config: bad rational '" + s + "' in " + where);
        }
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
        return Rational(j[0].get<long long>(), j[1].get<long long>());
    throw ConfigError("config: rational in " + where + " must be an integer, \"a/b\", or [a,b]");
}

Complex parse_complex(const json& j, const std::string& where) {
    if (j.is_number()) return Complex(j.get<double>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw ConfigError("config: complex value in " + where + " must be a number or [re,im]");
}

void require_fields(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown field '" + it.key() + "' in " + where);
}

CoefficientSequence parse_sequence(const json& j, std::uint64_t default_seed) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("config: sequence must be an object with a 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        require_fields(j, {"kind", "theta", "alpha"}, "sequence");
        Complex theta = j.contains("theta") ? parse_complex(j["theta"], "theta") : Complex(1.0);
        Complex alpha = j.contains("alpha") ? parse_complex(j["alpha"], "alpha") : Complex(1.0);
        return CoefficientSequence::constant(theta, alpha);
    }
    if (kind == "quadratic_phase") {
        require_fields(j, {"kind", "beta", "gamma", "delta"}, "sequence");
        Rational beta = j.contains("beta") ? parse_rational(j["beta"], "beta") : Rational(0, 1);
        Rational gamma = j.contains("gamma") ? parse_rational(j["gamma"], "gamma") : Rational(0, 1);
        Rational delta = j.contains("delta") ? parse_rational(j["delta"], "delta") : Rational(0, 1);
        return CoefficientSequence::quadratic_phase(beta, gamma, delta);
    }
    if (kind == "cos_sqrt_plus2") {
        require_fields(j, {"kind"}, "sequence");
        return CoefficientSequence::cos_sqrt_plus2();
    }
    if (kind == "random_unimodular") {
        require_fields(j, {"kind", "seed"}, "sequence");
        std::uint64_t seed = j.contains("seed") ? j["seed"].get<std::uint64_t>() : default_seed;
        return CoefficientSequence::random_unimodular(seed);
    }
    if (kind == "masked") {
        require_fields(j, {"kind", "base", "pattern"}, "sequence");
        if (!j.contains("base") || !j.contains("pattern"))
            throw ConfigError("config: masked sequence needs 'base' and 'pattern'");
        std::vector<bool> pattern;
        for (const auto& b : j["pattern"]) pattern.push_back(b.get<int>() != 0);
        return CoefficientSequence::masked(parse_sequence(j["base"], default_seed), pattern);
    }
    if (kind == "explicit") {
        require_fields(j, {"kind", "values"}, "sequence");
        if (!j.contains("values")) throw ConfigError("config: explicit sequence needs 'values'");
        std::vector<Complex> values;
        for (const auto& v : j["values"]) values.push_back(parse_complex(v, "values"));
        return CoefficientSequence::explicit_list(std::move(values));
    }
    if (kind == "cosine_oracle") {
        require_fields(j, {"kind"}, "sequence");
        return CoefficientSequence::cosine_oracle();
    }
    if (kind == "expm1_oracle") {
        require_fields(j, {"kind"}, "sequence");
        return CoefficientSequence::expm1_oracle();
    }
    throw ConfigError("config: unknown sequence kind '" + kind + "'");
}

json sequence_echo(const CoefficientSequence& seq) {
    json j;
    j["kind"] = seq.kind_name();
    if (seq.kind() == SeqKind::QuadraticPhase) {
        j["beta"] = {seq.beta().num, seq.beta().den};
        j["gamma"] = {seq.gamma().num, seq.gamma().den};
        j["delta"] = {seq.delta().num, seq.delta().den};
    }
    if (seq.kind() == SeqKind::RandomUnimodular) j["seed"] = seq.seed();
    if (seq.kind() == SeqKind::Explicit) j["size"] = seq.explicit_size();
    return j;
}

void rebuild_echo(ExperimentConfig& cfg) {
    json e;
    e["experiment"] = cfg.experiment;
    e["sequence"] = sequence_echo(cfg.sequence);
    e["radii"] = json::array();
    for (const Real& r : cfg.radii) e["radii"].push_back(static_cast<double>(r));
    e["h_list"] = cfg.h_list;
    e["precision_bits"] = cfg.precision_bits;
    e["grid_density"] = cfg.grid_density;
    e["seed"] = cfg.seed;
    e["output"] = cfg.output;
    e["extra"] = cfg.extra;
    cfg.echo = std::move(e);
}

// deterministic parallel map: worker i handles indices i, i+T, ...
template <typename Fn>
void parallel_for(std::size_t n, const Fn& fn) {
    unsigned T = thread_cap();
    if (T <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (T > n) T = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(T);
    for (unsigned t = 0; t < T; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += T) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double extra_number(const ExperimentConfig& cfg, const std::string& key, double fallback) {
    if (!cfg.extra.contains(key)) return fallback;
    if (!cfg.extra[key].is_number()) throw ConfigError("config: extra." + key + " must be a number");
    return cfg.extra[key].get<double>();
}

// ---- individual experiments ----------------------------------------------

struct CountRow {
    CountSample sample;
    bool failed = false;
    std::string message;
};

std::vector<CountRow> count_rows(const ExperimentConfig& cfg, const PrecisionContext& ctx,
                                 bool& all_ok) {
    if (cfg.radii.empty()) throw ConfigError("config: experiment needs non-empty radii");
    TaylorFunction F(cfg.sequence, ctx);
    std::vector<CountRow> rows(cfg.radii.size());
    parallel_for(cfg.radii.size(), [&](std::size_t i) {
        CountRow& row = rows[i];
        row.sample.R = cfg.radii[i];
        row.sample.truncation_N = truncation_order(cfg.radii[i], ctx, cfg.sequence.C_high());
        try {
            WindingResult w = winding_count(F, cfg.radii[i]);
            row.sample.count = w.count;
            row.sample.ratio = Real(w.count) / cfg.radii[i];
            row.sample.residual = w.residual;
        } catch (const ConvergenceError& e) {
            row.failed = true;
            row.message = e.what();
        } catch (const PrecisionError& e) {
            row.failed = true;
            row.message = e.what();
        }
    });
    all_ok = true;
    long prev = -1;
    for (const CountRow& r : rows) {
        if (r.failed) {
            all_ok = false;
            continue;
        }
        if (r.sample.count < prev)
            throw ConsistencyError("count: zero count decreased with R");
        prev = r.sample.count;
    }
    return rows;
}

std::string count_csv(const std::vector<CountRow>& rows, unsigned precision_bits, bool all_ok) {
    std::ostringstream os;
    os << "R,n_F,ratio_n_over_R,winding_residual,truncation_N,precision_bits";
    if (!all_ok) os << ",failed";
    os << "\n";
    for (const CountRow& r : rows) {
        if (r.failed)
            os << fmt(r.sample.R) << ",,,," << r.sample.truncation_N << "," << precision_bits
               << ",1\n";
        else {
            os << fmt(r.sample.R) << "," << r.sample.count << "," << fmt(r.sample.ratio) << ","
               << fmt(r.sample.residual, 6) << "," << r.sample.truncation_N << ","
               << precision_bits;
            if (!all_ok) os << ",0";
            os << "\n";
        }
    }
    return os.str();
}

CountingFunction to_profile(const std::vector<CountRow>& rows) {
    CountingFunction cf;
    for (const CountRow& r : rows)
        if (!r.failed) cf.samples.push_back(r.sample);
    return cf;
}

void fit_summary(const CountingFunction& cf, json& summary) {
    try {
        GrowthFit fit = fit_growth(cf);
        summary["exponent"] = fit.exponent;
        summary["prefactor"] = fit.prefactor;
        summary["r_squared"] = fit.r_squared;
        summary["verdict"] = "power-law counting function";
    } catch (const DegenerateProfileError&) {
        summary["verdict"] = "exponential-function candidate";
    } catch (const DomainError& e) {
        summary["verdict"] = std::string("fit unavailable: ") + e.what();
    }
}

void run_count(const ExperimentConfig& cfg, const PrecisionContext& ctx, Report& rep) {
    bool ok = true;
    auto rows = count_rows(cfg, ctx, ok);
    rep.converged = ok;
    rep.tables.push_back({"count", count_csv(rows, cfg.precision_bits, ok)});
    json counts = json::array();
    for (const CountRow& r : rows)
        counts.push_back(r.failed ? json(nullptr) : json(r.sample.count));
    rep.summary["n_F"] = counts;
}

void run_interp(const ExperimentConfig& cfg, const PrecisionContext& ctx, Report& rep) {
    std::vector<unsigned> hs = cfg.h_list.empty() ? std::vector<unsigned>{0, 1, 5} : cfg.h_list;
    Real R(extra_number(cfg, "R", cfg.radii.empty() ? 40.0
                                                    : static_cast<double>(cfg.radii.back())));
    unsigned n_max = static_cast<unsigned>(extra_number(cfg, "n_max", 25));
    TaylorFunction F(cfg.sequence, ctx);

    struct Row {
        unsigned h, n;
        double dev;
        bool failed = false;
    };
    std::vector<Row> rows;
    for (unsigned h : hs)
        for (unsigned n = 0; n <= n_max; ++n) rows.push_back({h, n, 0.0});
    bool ok = true;
    parallel_for(rows.size(), [&](std::size_t i) {
        Row& row = rows[i];
        try {
            Complex g = interp_g(F, row.h, Complex(static_cast<double>(row.n)), R);
            Complex target = F.sequence().value(row.n, ctx) *
                             conj(F.sequence().value(row.n + row.h, ctx));
            row.dev = static_cast<double>(abs(g - target));
        } catch (const Error&) {
            row.failed = true;
        }
    });
    double worst = 0;
    std::ostringstream os;
    os << "h,n,abs_deviation,failed\n";
    for (const Row& r : rows) {
        os << r.h << "," << r.n << ",";
        if (r.failed) {
            ok = false;
            os << ",1\n";
        } else {
            os << std::setprecision(17) << r.dev << ",0\n";
            worst = std::max(worst, r.dev);
        }
    }
    rep.converged = ok;
    rep.tables.push_back({"interp", os.str()});
    rep.summary["max_deviation"] = worst;
    rep.summary["R"] = static_cast<double>(R);
}

void run_hadamard(const ExperimentConfig& cfg, const PrecisionContext& ctx, Report& rep) {
    Real R(extra_number(cfg, "R", cfg.radii.empty() ? 20.0
                                                    : static_cast<double>(cfg.radii.back())));
    TaylorFunction F(cfg.sequence, ctx);
    ZeroModel model;
    if (cfg.sequence.kind() == SeqKind::CosineOracle) {
        model = ZeroModel::cosine(R, ctx);
    } else {
        ZeroSet zs = locate_zeros(F, R);
        model.R = R;
        model.tail = TailKind::BoundOnly;
        model.sigma = extra_number(cfg, "sigma", 1.0);
        for (const Zero& z : zs.zeros)
            for (unsigned m = 0; m < z.multiplicity; ++m) model.inside.push_back(z.location);
    }
    HadamardData data = build_hadamard_data(F, model, R);

    PrecisionContext::Scope scope(ctx);
    std::ostringstream os;
    os << "r,theta_star,g_R\n";
    unsigned n = cfg.grid_density;
    bool rotatable = abs(data.a_R) > 0;
    for (unsigned i = 0; i < n; ++i) {
        Real r = 1 + (R / 2 - 1) * Real(i) / Real(n - 1);
        os << fmt(r) << ",";
        if (rotatable) {
            try {
                os << fmt(theta_star(r, data, ctx));
            } catch (const ConvergenceError&) {
                os << "";
            }
        }
        os << "," << fmt(g_R_eval(r, data, ctx)) << "\n";
    }
    rep.tables.push_back({"profile", os.str()});
    rep.summary["a_R"] = {static_cast<double>(data.a_R.re), static_cast<double>(data.a_R.im)};
    rep.summary["tail_unmodeled"] = data.tail_unmodeled;
    rep.summary["n_inside"] = model.inside.size();
    bool envelope_ok = true;
    for (std::size_t i = 0; i < data.s.size(); ++i) {
        unsigned j = 2 + static_cast<unsigned>(i);
        Real env = 2 * Real(model.sigma) * Real(j) / Real(j - 1) *
                   boost::multiprecision::pow(R, 1 - static_cast<int>(j));
        if (abs(data.s[i].value) > env + data.s[i].error) envelope_ok = false;
    }
    rep.summary["claim1_envelope_ok"] = envelope_ok;
    rep.summary["factorization_residual"] =
        static_cast<double>(factorization_residual(F, data, R / 4, Real(0.5)));
}

void run_subharmonic(const ExperimentConfig& cfg, const PrecisionContext& ctx, Report& rep) {
    Real R(extra_number(cfg, "R", 1e4));
    SubharmonicExample ex(R, ctx);
    PrecisionContext::Scope scope(ctx);

    Real sqrtR = boost::multiprecision::sqrt(ex.R);
    std::vector<Real> circle_radii = {Real(1), sqrtR, ex.R / 2};
    Real worst_margin(-1e30);
    std::ostringstream os;
    os << "theta,u_minus_r_at_sqrtR\n";
    for (const Real& r : circle_radii) {
        for (unsigned i = 0; i < 720; ++i) {
            Real th = 2 * const_pi() * Real(i) / 720;
            Real u = u_eval(polar(r, th), ex, ctx);
            if (u - r - 5 > worst_margin) worst_margin = u - r - 5;
            if (r == sqrtR) os << fmt(th) << "," << fmt(u - r) << "\n";
        }
    }
    rep.tables.push_back({"u_scan", os.str()});

    Real h(0.01);
    Real lap_max(0);
    for (const Complex& z : {Complex(-50.0), Complex(300.0, 200.0), Complex(40.0, -70.0)}) {
        Real lap = u_eval(z + Complex(h), ex, ctx) + u_eval(z - Complex(h), ex, ctx) +
                   u_eval(z + Complex(Real(0), h), ex, ctx) +
                   u_eval(z - Complex(Real(0), h), ex, ctx) - 4 * u_eval(z, ex, ctx);
        lap = boost::multiprecision::abs(lap) / (h * h);
        if (lap > lap_max) lap_max = lap;
    }

    ClaimsReport claims = claims_check(ex, cfg.grid_density, ctx);
    rep.summary["R"] = static_cast<double>(ex.R);
    rep.summary["alpha"] = static_cast<double>(ex.alpha);
    rep.summary["max_theta_margin"] = static_cast<double>(worst_margin);
    rep.summary["mass_unit_disk"] = static_cast<double>(riesz_mass(Real(0), Real(1), ex, ctx));
    rep.summary["mass_full_over_sqrtR"] =
        static_cast<double>(riesz_mass(Real(0), ex.R, ex, ctx) / sqrtR);
    rep.summary["laplacian_max_abs"] = static_cast<double>(lap_max);
    rep.summary["claim_a_margin"] = static_cast<double>(claims.margin_a);
    rep.summary["claim_b_margin"] = static_cast<double>(claims.margin_b);
}

void run_combi(const ExperimentConfig& cfg, Report& rep) {
    double d = extra_number(cfg, "d", 1.0);
    long long R = static_cast<long long>(extra_number(cfg, "R", 1000));
    std::function<bool(long long)> member;
    std::string set_name = "all";
    if (cfg.extra.contains("set")) {
        const json& s = cfg.extra["set"];
        if (s.is_string()) {
            set_name = s.get<std::string>();
            if (set_name == "all")
                member = [](long long) { return true; };
            else if (set_name == "even")
                member = [](long long n) { return n % 2 == 0; };
            else
                throw ConfigError("config: extra.set must be 'all', 'even', or a mask object");
        } else if (s.is_object() && s.contains("period") && s.contains("residues")) {
            long long period = s["period"].get<long long>();
            std::vector<long long> residues = s["residues"].get<std::vector<long long>>();
            set_name = "mask";
            member = [period, residues](long long n) {
                long long m = n % period;
                for (long long r : residues)
                    if (m == r) return true;
                return false;
            };
        } else {
            throw ConfigError("config: extra.set must be 'all', 'even', or {period, residues}");
        }
    } else {
        member = [](long long) { return true; };
    }

    DensityWitness w = combi_find(member, d, R);
    std::ostringstream os;
    os << "quantity,value\n"
       << "c1," << std::setprecision(17) << w.c1 << "\n"
       << "c2," << w.c2 << "\n"
       << "x," << w.x << "\n"
       << "h," << w.h << "\n"
       << "overlap," << w.overlap << "\n"
       << "threshold_c2R," << w.c2 * static_cast<double>(R) << "\n";
    rep.tables.push_back({"witness", os.str()});
    rep.summary["set"] = set_name;
    rep.summary["d"] = d;
    rep.summary["R"] = R;
    rep.summary["c1"] = w.c1;
    rep.summary["c2"] = w.c2;
    rep.summary["x"] = w.x;
    rep.summary["h"] = w.h;
    rep.summary["overlap"] = w.overlap;
    if (w.J.size() <= 10000) {
        rep.summary["J"] = w.J;
        rep.summary["K"] = w.K;
    }
}

void run_locate(const ExperimentConfig& cfg, const PrecisionContext& ctx, Report& rep) {
    if (cfg.radii.empty()) throw ConfigError("config: locate needs one radius");
    TaylorFunction F(cfg.sequence, ctx);
    ZeroSet zs = locate_zeros(F, cfg.radii.back());
    std::ostringstream os;
    os << "re,im,multiplicity,residual\n";
    for (const Zero& z : zs.zeros)
        os << fmt(z.location.re) << "," << fmt(z.location.im) << "," << z.multiplicity << ","
           << fmt(z.residual, 6) << "\n";
    rep.tables.push_back({"zeros", os.str()});
    rep.summary["winding_total"] = zs.winding_total;
    rep.summary["distinct"] = zs.zeros.size();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    require_fields(j,
                   {"experiment", "sequence", "radii", "h_list", "precision_bits",
                    "grid_density", "seed", "output", "extra"},
                   "config");

    ExperimentConfig cfg;
    if (j.contains("experiment")) {
        cfg.experiment = j["experiment"].get<std::string>();
        if (!kTags.count(cfg.experiment))
            throw ConfigError("config: unknown experiment tag '" + cfg.experiment + "'");
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("sequence")) cfg.sequence = parse_sequence(j["sequence"], cfg.seed);
    if (j.contains("radii")) {
        double prev = 0;
        for (const auto& r : j["radii"]) {
            if (!r.is_number()) throw ConfigError("config: radii must be numbers");
            double v = r.get<double>();
            if (v <= prev) throw ConfigError("config: radii must be strictly increasing");
            cfg.radii.push_back(Real(v));
            prev = v;
        }
    }
    if (j.contains("h_list"))
        for (const auto& h : j["h_list"]) cfg.h_list.push_back(h.get<unsigned>());
    if (j.contains("precision_bits")) {
        long long p = j["precision_bits"].get<long long>();
        if (p < 64) throw ConfigError("config: precision_bits must be >= 64");
        cfg.precision_bits = static_cast<unsigned>(p);
    }
    if (j.contains("grid_density")) {
        long long g = j["grid_density"].get<long long>();
        if (g < 10) throw ConfigError("config: grid_density must be >= 10");
        cfg.grid_density = static_cast<unsigned>(g);
    }
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("extra")) {
        if (!j["extra"].is_object()) throw ConfigError("config: extra must be an object");
        cfg.extra = j["extra"];
    }
    rebuild_echo(cfg);
    return cfg;
}

void override_precision(ExperimentConfig& cfg, unsigned bits) {
    if (bits < 64) throw ConfigError("config: precision_bits must be >= 64");
    cfg.precision_bits = bits;
    rebuild_echo(cfg);
}

void override_seed(ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.seed = seed;
    if (cfg.sequence.kind() == SeqKind::RandomUnimodular)
        cfg.sequence = CoefficientSequence::random_unimodular(seed);
    rebuild_echo(cfg);
}

void set_experiment(ExperimentConfig& cfg, const std::string& tag) {
    if (!kTags.count(tag)) throw ConfigError("config: unknown experiment tag '" + tag + "'");
    if (!cfg.experiment.empty() && cfg.experiment != tag)
        throw ConfigError("config: experiment tag '" + cfg.experiment +
                          "' conflicts with subcommand '" + tag + "'");
    cfg.experiment = tag;
    rebuild_echo(cfg);
}

unsigned thread_cap() {
    const char* env = std::getenv("EFETLAB_THREADS");
    if (env) {
        long v = std::atol(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

Report run(const ExperimentConfig& cfg) {
    if (cfg.experiment.empty()) throw ConfigError("config: no experiment tag");
    auto t0 = std::chrono::steady_clock::now();
    PrecisionContext ctx(cfg.precision_bits);
    Report rep;
    rep.config_echo = cfg.echo;
    rep.summary = json::object();

    if (cfg.experiment == "count") {
        run_count(cfg, ctx, rep);
    } else if (cfg.experiment == "dichotomy-scan") {
        bool ok = true;
        auto rows = count_rows(cfg, ctx, ok);
        rep.converged = ok;
        rep.tables.push_back({"count", count_csv(rows, cfg.precision_bits, ok)});
        fit_summary(to_profile(rows), rep.summary);
    } else if (cfg.experiment == "sqrt-example") {
        bool ok = true;
        auto rows = count_rows(cfg, ctx, ok);
        rep.converged = ok;
        rep.tables.push_back({"count", count_csv(rows, cfg.precision_bits, ok)});
        fit_summary(to_profile(rows), rep.summary);
        std::ostringstream os;
        os << "r,log_abs_G,bound_3_sqrt_r\n";
        PrecisionContext::Scope scope(ctx);
        for (double r : {1.0, 4.0, 16.0, 64.0, 256.0}) {
            Complex g = g_factor_contour(Complex(-r), ctx);
            os << fmt(Real(r)) << "," << fmt(boost::multiprecision::log(abs(g))) << ","
               << fmt(3 * boost::multiprecision::sqrt(Real(r))) << "\n";
        }
        rep.tables.push_back({"g_growth", os.str()});
    } else if (cfg.experiment == "interp-verify") {
        run_interp(cfg, ctx, rep);
    } else if (cfg.experiment == "hadamard-profile") {
        run_hadamard(cfg, ctx, rep);
    } else if (cfg.experiment == "subharmonic") {
        run_subharmonic(cfg, ctx, rep);
    } else if (cfg.experiment == "combi") {
        run_combi(cfg, rep);
    } else if (cfg.experiment == "locate") {
        run_locate(cfg, ctx, rep);
    } else {
        throw ConfigError("config: unknown experiment tag '" + cfg.experiment + "'");
    }

    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

void emit_plotdata(const Report& report, const std::string& prefix) {
    auto write = [&](const std::string& path, const std::string& content) {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IOError("cannot open " + path);
        os << content;
        if (!os) throw IOError("write failed for " + path);
    };
    json manifest = json::object();
    for (const Table& t : report.tables) {
        write(prefix + t.name + ".csv", t.csv);
        json axes;
        if (t.name == "count")
            axes = {{"x", "log R"}, {"y", "log n_F"}};
        else if (t.name == "g_growth")
            axes = {{"x", "sqrt r"}, {"y", "log |G(-r)|"}};
        else if (t.name == "interp")
            axes = {{"x", "n"}, {"y", "abs_deviation"}};
        else if (t.name == "profile")
            axes = {{"x", "r"}, {"y", "g_R"}};
        else if (t.name == "u_scan")
            axes = {{"x", "theta"}, {"y", "u_minus_r_at_sqrtR"}};
        else if (t.name == "zeros")
            axes = {{"x", "re"}, {"y", "im"}};
        else
            axes = {{"x", t.csv.substr(0, t.csv.find(','))}, {"y", "value"}};
        manifest[t.name + ".csv"] = axes;
    }
    write(prefix + "manifest.json", manifest.dump(2) + "\n");

    json summary;
    summary["config"] = report.config_echo;
    summary["summary"] = report.summary;
    summary["converged"] = report.converged;
    std::string tag = report.config_echo.contains("experiment")
                          ? report.config_echo["experiment"].get<std::string>()
                          : "report";
    write(prefix + tag + ".json", summary.dump(2) + "\n");
}

}  // namespace efet
