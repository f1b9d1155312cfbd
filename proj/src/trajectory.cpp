#include "bohm/trajectory.hpp"

#include <algorithm>
#include <map>
#include <cmath>

#include "bohm/parallel.hpp"

namespace bohm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kStepFloor = 1e-8;
constexpr double kSingular2 = 1e-24;  // squared singular threshold on |B|

inline void eval_velocity(const WavefunctionModel& model, const PhaseCache& cache, double x,
                          double y, double& vx, double& vy) {
    const BracketSample s = model.bracket(cache, x, y);
    const double g = std::norm(s.b);
    if (g < kSingular2) throw NodeSingularity("velocity undefined at a node");
    vx = std::imag(s.bx * std::conj(s.b)) / g;
    vy = std::imag(s.by * std::conj(s.b)) / g;
}

// Distance estimate from the nearest node: |B|/|grad B|, sharpened for the
// three-state harmonic model by the closed-form node position.
double guard_distance(const WavefunctionModel& model, const PhaseCache& cache, double x,
                      double y) {
    const BracketSample s = model.bracket(cache, x, y);
    const double gb = std::abs(s.b);
    const double gg = std::hypot(std::abs(s.bx), std::abs(s.by));
    double d = gg > 0.0 ? gb / gg : 1e30;
    if (model.kind() == ModelKind::Harmonic3) {
        try {
            double xn, yn;
            model.nodal_point(cache.t, xn, yn);
            d = std::min(d, std::hypot(x - xn, y - yn));
        } catch (const NodeAtInfinity&) {
        }
    }
    return d;
}

struct StageCaches {
    PhaseCache c0, ch, c1;
    double t = 0.0, h = 0.0;
};

inline void rk4_step(const WavefunctionModel& model, const PhaseCache& c0, const PhaseCache& ch,
                     const PhaseCache& c1, double h, double& x, double& y) {
    double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
    eval_velocity(model, c0, x, y, k1x, k1y);
    eval_velocity(model, ch, x + 0.5 * h * k1x, y + 0.5 * h * k1y, k2x, k2y);
    eval_velocity(model, ch, x + 0.5 * h * k2x, y + 0.5 * h * k2y, k3x, k3y);
    eval_velocity(model, c1, x + h * k3x, y + h * k3y, k4x, k4y);
    x += h / 6.0 * (k1x + 2.0 * (k2x + k3x) + k4x);
    y += h / 6.0 * (k1y + 2.0 * (k2y + k3y) + k4y);
}

// Step dt allowed by the node guard at distance d: base_dt * shrink^level,
// one guard level per factor-1/shrink of proximity below the guard radius.
double guard_dt(double d, const IntegratorConfig& cfg) {
    if (d >= cfg.node_guard_radius) return cfg.dt;
    const double decades = std::log(cfg.node_guard_radius / d) / std::log(1.0 / cfg.node_guard_shrink);
    const int level = (int)std::ceil(decades - 1e-12);
    return cfg.dt * std::pow(cfg.node_guard_shrink, level);
}

// One guarded step of size h starting at t. `shared` supplies stage phases
// aligned with (t, h); the recursive shrink path computes its own.
void guarded_step(const WavefunctionModel& model, const IntegratorConfig& cfg, double& x,
                  double& y, double t, double h, const StageCaches* shared) {
    PhaseCache own0, ownh, own1;
    const PhaseCache* c0;
    if (shared && shared->t == t && shared->h == h) {
        c0 = &shared->c0;
    } else {
        model.phases(t, own0);
        c0 = &own0;
    }
    const double d = guard_distance(model, *c0, x, y);
    const double allowed = guard_dt(d, cfg);
    if (d < cfg.node_guard_radius && h > allowed * (1.0 + 1e-9)) {
        const double shrunk = h * cfg.node_guard_shrink;
        if (shrunk < kStepFloor)
            throw StepUnderflow("node region unresolvable at the step floor");
        const int n = std::max(2, (int)std::llround(1.0 / cfg.node_guard_shrink));
        const double hs = h / n;
        for (int i = 0; i < n; ++i)
            guarded_step(model, cfg, x, y, t + i * hs, hs, nullptr);
        return;
    }
    if (shared && shared->t == t && shared->h == h) {
        rk4_step(model, shared->c0, shared->ch, shared->c1, h, x, y);
    } else {
        model.phases(t + 0.5 * h, ownh);
        model.phases(t + h, own1);
        rk4_step(model, *c0, ownh, own1, h, x, y);
    }
}

void track_extrema(TrajectoryRecord& rec, double x, double y) {
    rec.x_min = std::min(rec.x_min, x);
    rec.x_max = std::max(rec.x_max, x);
    rec.y_min = std::min(rec.y_min, y);
    rec.y_max = std::max(rec.y_max, y);
}

TrajectoryRecord integrate_rk4(const WavefunctionModel& model, double x0, double y0,
                               const IntegratorConfig& cfg) {
    TrajectoryRecord rec;
    rec.x_min = rec.x_max = x0;
    rec.y_min = rec.y_max = y0;
    rec.samples.push_back({0.0, x0, y0});
    if (cfg.t_end <= 0.0) return rec;
    const long n = std::max(1L, (long)std::ceil(cfg.t_end / cfg.dt - 1e-9));
    const double h = cfg.t_end / n;
    const long sample_every =
        cfg.sample_dt > 0.0 ? std::max(1L, (long)std::llround(cfg.sample_dt / h)) : n;
    double x = x0, y = y0;
    StageCaches sc;
    model.phases(0.0, sc.c0);
    for (long i = 0; i < n; ++i) {
        sc.t = i * h;
        sc.h = h;
        model.phases(sc.t + 0.5 * h, sc.ch);
        model.phases(sc.t + h, sc.c1);
        guarded_step(model, cfg, x, y, sc.t, h, &sc);
        std::swap(sc.c0, sc.c1);
        track_extrema(rec, x, y);
        if ((i + 1) % sample_every == 0 || i + 1 == n)
            rec.samples.push_back({(i + 1) * h, x, y});
    }
    return rec;
}

// Cash-Karp embedded pair for the adaptive method.
TrajectoryRecord integrate_rk45(const WavefunctionModel& model, double x0, double y0,
                                const IntegratorConfig& cfg) {
    static const double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
    static const double b21 = 0.2;
    static const double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static const double b41 = 0.3, b42 = -0.9, b43 = 1.2;
    static const double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0, b54 = 35.0 / 27.0;
    static const double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0, b63 = 575.0 / 13824.0,
                        b64 = 44275.0 / 110592.0, b65 = 253.0 / 4096.0;
    static const double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                        c6 = 512.0 / 1771.0;
    static const double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                        d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0, d6 = c6 - 0.25;

    TrajectoryRecord rec;
    rec.x_min = rec.x_max = x0;
    rec.y_min = rec.y_max = y0;
    rec.samples.push_back({0.0, x0, y0});
    double x = x0, y = y0, t = 0.0, h = cfg.dt;
    double next_sample = cfg.sample_dt > 0.0 ? cfg.sample_dt : cfg.t_end;
    PhaseCache cache;
    auto vel = [&](double tt, double xx, double yy, double& vx, double& vy) {
        model.phases(tt, cache);
        eval_velocity(model, cache, xx, yy, vx, vy);
    };
    while (t < cfg.t_end) {
        model.phases(t, cache);
        const double d = guard_distance(model, cache, x, y);
        h = std::min({h, guard_dt(d, cfg), cfg.t_end - t});
        if (h < kStepFloor) throw StepUnderflow("adaptive step underflow near a node");
        double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y, k5x, k5y, k6x, k6y;
        eval_velocity(model, cache, x, y, k1x, k1y);
        vel(t + a2 * h, x + h * b21 * k1x, y + h * b21 * k1y, k2x, k2y);
        vel(t + a3 * h, x + h * (b31 * k1x + b32 * k2x), y + h * (b31 * k1y + b32 * k2y), k3x, k3y);
        vel(t + a4 * h, x + h * (b41 * k1x + b42 * k2x + b43 * k3x),
            y + h * (b41 * k1y + b42 * k2y + b43 * k3y), k4x, k4y);
        vel(t + a5 * h, x + h * (b51 * k1x + b52 * k2x + b53 * k3x + b54 * k4x),
            y + h * (b51 * k1y + b52 * k2y + b53 * k3y + b54 * k4y), k5x, k5y);
        vel(t + a6 * h, x + h * (b61 * k1x + b62 * k2x + b63 * k3x + b64 * k4x + b65 * k5x),
            y + h * (b61 * k1y + b62 * k2y + b63 * k3y + b64 * k4y + b65 * k5y), k6x, k6y);
        const double ex = h * (d1 * k1x + d3 * k3x + d4 * k4x + d5 * k5x + d6 * k6x);
        const double ey = h * (d1 * k1y + d3 * k3y + d4 * k4y + d5 * k5y + d6 * k6y);
        const double err = std::hypot(ex, ey) / cfg.rk45_tol;
        if (err <= 1.0) {
            x += h * (c1 * k1x + c3 * k3x + c4 * k4x + c6 * k6x);
            y += h * (c1 * k1y + c3 * k3y + c4 * k4y + c6 * k6y);
            t += h;
            track_extrema(rec, x, y);
            if (t >= next_sample - 1e-12 || t >= cfg.t_end) {
                rec.samples.push_back({t, x, y});
                if (cfg.sample_dt > 0.0)
                    while (next_sample <= t + 1e-12) next_sample += cfg.sample_dt;
                else
                    next_sample = cfg.t_end * 2.0;
            }
        }
        const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.1, 5.0);
    }
    return rec;
}

}  // namespace

TrajectoryRecord integrate(const WavefunctionModel& model, double x0, double y0,
                           const IntegratorConfig& cfg) {
    if (cfg.method == IntegratorConfig::Method::RK45)
        return integrate_rk45(model, x0, y0, cfg);
    return integrate_rk4(model, x0, y0, cfg);
}

namespace {

struct VarState {
    double x, y, xx, xy;  // position and deviation vector
};

inline void var_rhs(const WavefunctionModel& model, const PhaseCache& cache, const VarState& s,
                    VarState& k) {
    const BracketSample bs = model.bracket(cache, s.x, s.y, true);
    const double g = std::norm(bs.b);
    if (g < kSingular2) throw NodeSingularity("velocity undefined at a node");
    k.x = std::imag(bs.bx * std::conj(bs.b)) / g;
    k.y = std::imag(bs.by * std::conj(bs.b)) / g;
    const VelocityJacobian j = WavefunctionModel::jacobian_from(bs);
    k.xx = j.dvx_dx * s.xx + j.dvx_dy * s.xy;
    k.xy = j.dvy_dx * s.xx + j.dvy_dy * s.xy;
}

inline void var_rk4_step(const WavefunctionModel& model, const PhaseCache& c0,
                         const PhaseCache& ch, const PhaseCache& c1, double h, VarState& s) {
    VarState k1, k2, k3, k4, tmp;
    var_rhs(model, c0, s, k1);
    tmp = {s.x + 0.5 * h * k1.x, s.y + 0.5 * h * k1.y, s.xx + 0.5 * h * k1.xx,
           s.xy + 0.5 * h * k1.xy};
    var_rhs(model, ch, tmp, k2);
    tmp = {s.x + 0.5 * h * k2.x, s.y + 0.5 * h * k2.y, s.xx + 0.5 * h * k2.xx,
           s.xy + 0.5 * h * k2.xy};
    var_rhs(model, ch, tmp, k3);
    tmp = {s.x + h * k3.x, s.y + h * k3.y, s.xx + h * k3.xx, s.xy + h * k3.xy};
    var_rhs(model, c1, tmp, k4);
    s.x += h / 6.0 * (k1.x + 2.0 * (k2.x + k3.x) + k4.x);
    s.y += h / 6.0 * (k1.y + 2.0 * (k2.y + k3.y) + k4.y);
    s.xx += h / 6.0 * (k1.xx + 2.0 * (k2.xx + k3.xx) + k4.xx);
    s.xy += h / 6.0 * (k1.xy + 2.0 * (k2.xy + k3.xy) + k4.xy);
}

void var_guarded_step(const WavefunctionModel& model, const IntegratorConfig& cfg, VarState& s,
                      double t, double h, const StageCaches* shared) {
    PhaseCache own0, ownh, own1;
    const PhaseCache* c0;
    const bool aligned = shared && shared->t == t && shared->h == h;
    if (aligned) {
        c0 = &shared->c0;
    } else {
        model.phases(t, own0);
        c0 = &own0;
    }
    const double d = guard_distance(model, *c0, s.x, s.y);
    if (d < cfg.node_guard_radius && h > guard_dt(d, cfg) * (1.0 + 1e-9)) {
        if (h * cfg.node_guard_shrink < kStepFloor)
            throw StepUnderflow("node region unresolvable at the step floor");
        const int n = std::max(2, (int)std::llround(1.0 / cfg.node_guard_shrink));
        const double hs = h / n;
        for (int i = 0; i < n; ++i) var_guarded_step(model, cfg, s, t + i * hs, hs, nullptr);
        return;
    }
    if (aligned) {
        var_rk4_step(model, shared->c0, shared->ch, shared->c1, h, s);
    } else {
        model.phases(t + 0.5 * h, ownh);
        model.phases(t + h, own1);
        var_rk4_step(model, *c0, ownh, own1, h, s);
    }
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    // least squares on (log10 t, log10 chi)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& [lt, lc] : pts) {
        sx += lt;
        sy += lc;
        sxx += lt * lt;
        sxy += lt * lc;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

LyapunovResult lyapunov(const WavefunctionModel& model, double x0, double y0,
                        const IntegratorConfig& cfg, double xi0_x, double xi0_y) {
    if (xi0_x == 0.0 && xi0_y == 0.0)
        throw ZeroDeviation("lyapunov: initial deviation vector is zero");
    LyapunovResult res;
    TrajectoryRecord& rec = res.record;
    rec.x_min = rec.x_max = x0;
    rec.y_min = rec.y_max = y0;
    rec.samples.push_back({0.0, x0, y0});
    const double xi0 = std::hypot(xi0_x, xi0_y);
    VarState s{x0, y0, xi0_x / xi0, xi0_y / xi0};
    const long n = std::max(1L, (long)std::ceil(cfg.t_end / cfg.dt - 1e-9));
    const double h = cfg.t_end / n;
    const long sample_every =
        cfg.sample_dt > 0.0 ? std::max(1L, (long)std::llround(cfg.sample_dt / h)) : n;
    const long renorm_every = 1000;
    double log_accum = 0.0;
    // chi(t) recorded on a geometric time grid, 40 points per decade
    const double grow = std::pow(10.0, 1.0 / 40.0);
    double next_log_t = std::max(10.0 * h, 1e-2);
    const int bins_per_decade = 8;
    const double t_env_min = std::max(10.0 * h, 1e-2);
    std::map<int, std::pair<double, double>> env;  // bin -> (log10 t, max chi)
    StageCaches sc;
    model.phases(0.0, sc.c0);
    for (long i = 0; i < n; ++i) {
        sc.t = i * h;
        sc.h = h;
        model.phases(sc.t + 0.5 * h, sc.ch);
        model.phases(sc.t + h, sc.c1);
        var_guarded_step(model, cfg, s, sc.t, h, &sc);
        std::swap(sc.c0, sc.c1);
        track_extrema(rec, s.x, s.y);
        const double t1 = (i + 1) * h;
        const double ln_xi = log_accum + std::log(std::hypot(s.xx, s.xy));
        if (t1 >= t_env_min && ln_xi > 0.0) {
            const double lt = std::log10(t1);
            const double chi = ln_xi / t1;
            const int bin = (int)std::floor(lt * bins_per_decade);
            auto it = env.find(bin);
            if (it == env.end() || chi > it->second.second) env[bin] = {lt, chi};
        }
        if ((i + 1) % renorm_every == 0) {
            const double len = std::hypot(s.xx, s.xy);
            log_accum += std::log(len);
            s.xx /= len;
            s.xy /= len;
        }
        if (t1 >= next_log_t || i + 1 == n) {
            rec.xi_log.emplace_back(t1, ln_xi);
            while (next_log_t <= t1) next_log_t *= grow;
        }
        if ((i + 1) % sample_every == 0 || i + 1 == n) rec.samples.push_back({t1, s.x, s.y});
    }
    for (const auto& [bin, pt] : env) res.chi_envelope.push_back(pt);
    res.chi_end = rec.xi_log.empty() ? 0.0 : rec.xi_log.back().second / cfg.t_end;
    // Fit the envelope over the last two decades; plateau test over the last.
    std::vector<std::pair<double, double>> fit_pts;
    double chi_min = 1e300, chi_max = -1e300;
    for (const auto& pt : res.chi_envelope) {
        if (pt.first < std::log10(cfg.t_end) - 2.0) continue;
        fit_pts.emplace_back(pt.first, std::log10(pt.second));
        if (pt.first >= std::log10(cfg.t_end) - 1.0) {
            chi_min = std::min(chi_min, pt.second);
            chi_max = std::max(chi_max, pt.second);
        }
    }
    res.slope = fit_loglog_slope(fit_pts);
    if (chi_max > 0.0 && chi_min > 0.0 && chi_max / chi_min < 1.2)
        res.classification = TrajectoryClass::Chaotic;
    else if (std::abs(res.slope + 1.0) <= 0.1)
        res.classification = TrajectoryClass::Ordered;
    else
        res.classification = TrajectoryClass::Inconclusive;
    return res;
}

double NodeEvent::d() const { return std::hypot(u, v); }

std::vector<NodeEvent> node_distance_events(const WavefunctionModel& model,
                                            const TrajectoryRecord& record) {
    std::vector<NodeEvent> events;
    if (model.kind() != ModelKind::Harmonic3) return events;
    struct Entry {
        double t, u, v, d;
        bool valid;
    };
    std::vector<Entry> entries;
    entries.reserve(record.samples.size());
    for (const auto& s : record.samples) {
        Entry e{s.t, 0, 0, 0, false};
        try {
            double xn, yn;
            model.nodal_point(s.t, xn, yn);
            e.u = s.x - xn;
            e.v = s.y - yn;
            e.d = std::hypot(e.u, e.v);
            e.valid = true;
        } catch (const NodeAtInfinity&) {
        }
        entries.push_back(e);
    }
    for (std::size_t i = 1; i + 1 < entries.size(); ++i) {
        if (!entries[i - 1].valid || !entries[i].valid || !entries[i + 1].valid) continue;
        if (entries[i].d < entries[i - 1].d && entries[i].d < entries[i + 1].d)
            events.push_back({entries[i].t, entries[i].u, entries[i].v});
    }
    return events;
}

std::vector<std::vector<std::pair<double, double>>> stroboscopic_section(
    const WavefunctionModel& model, const std::vector<std::pair<double, double>>& initial,
    int n_periods, const IntegratorConfig& cfg) {
    std::vector<std::vector<std::pair<double, double>>> out(initial.size());
    EnsembleState state;
    state.x.reserve(initial.size());
    state.y.reserve(initial.size());
    for (const auto& [x, y] : initial) {
        state.x.push_back(x);
        state.y.push_back(y);
    }
    state.alive.assign(initial.size(), 1);
    for (std::size_t i = 0; i < initial.size(); ++i) out[i].push_back(initial[i]);
    for (int k = 1; k <= n_periods; ++k) {
        advance_ensemble(model, state, kTwoPi * k, cfg);
        for (std::size_t i = 0; i < initial.size(); ++i)
            if (state.alive[i]) out[i].emplace_back(state.x[i], state.y[i]);
    }
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> continued_fraction_convergents(double ratio,
                                                                                  int max_order) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    double x = ratio;
    std::int64_t h1 = 1, h0 = (std::int64_t)std::floor(x);  // numerators
    std::int64_t k1 = 0, k0 = 1;                            // denominators
    x -= std::floor(x);
    if (h0 != 0) out.emplace_back(h0, k0);
    for (int i = 0; i < max_order && x > 1e-12; ++i) {
        x = 1.0 / x;
        const double af = std::floor(x);
        if (af > 9e15) break;
        const std::int64_t a = (std::int64_t)af;
        x -= af;
        const std::int64_t h = a * h0 + h1;
        const std::int64_t k = a * k0 + k1;
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        out.emplace_back(h0, k0);
        if ((int)out.size() >= max_order) break;
    }
    return out;
}

RecurrenceAnalysis recurrence_analysis(const WavefunctionModel& model,
                                       const std::vector<std::pair<double, double>>& ensemble,
                                       int max_order, const IntegratorConfig& cfg,
                                       double t_budget) {
    const double omega1 = 1.0;
    const double omega2 = model.params().c;
    RecurrenceAnalysis res;
    auto conv = continued_fraction_convergents(omega2 / omega1, max_order);
    for (const auto& [q, p] : conv) {
        const double t = kTwoPi * p / omega1;
        if (t > t_budget) break;
        res.convergents.emplace_back(q, p);
        res.periods.push_back(t);
    }
    if (res.convergents.empty())
        throw BudgetExceeded("recurrence_analysis: first recurrence period exceeds the budget");
    EnsembleState state;
    for (const auto& [x, y] : ensemble) {
        state.x.push_back(x);
        state.y.push_back(y);
    }
    state.alive.assign(ensemble.size(), 1);
    double gamma_sum = 0.0;
    for (std::size_t n = 0; n < res.periods.size(); ++n) {
        advance_ensemble(model, state, res.periods[n], cfg);
        double dist = 0.0;
        for (std::size_t i = 0; i < ensemble.size(); ++i)
            if (state.alive[i])
                dist = std::max(dist, std::hypot(state.x[i] - ensemble[i].first,
                                                 state.y[i] - ensemble[i].second));
        res.distances.push_back(dist);
        const auto& [q, p] = res.convergents[n];
        gamma_sum += std::abs(q * omega1 - p * omega2) * (double)(q + p);
        res.bound_constant =
            std::max(res.bound_constant, dist * (double)(p + q) / kTwoPi);
    }
    res.gamma = gamma_sum / res.periods.size();
    return res;
}

std::size_t EnsembleState::failed() const {
    std::size_t n = 0;
    for (auto a : alive)
        if (!a) ++n;
    return n;
}

void advance_ensemble(const WavefunctionModel& model, EnsembleState& state, double t_to,
                      const IntegratorConfig& cfg) {
    if (t_to <= state.t) return;
    const long n = std::max(1L, (long)std::ceil((t_to - state.t) / cfg.dt - 1e-9));
    const double h = (t_to - state.t) / n;
    const double t_base = state.t;
    parallel_for(state.x.size(), [&](std::size_t lo, std::size_t hi) {
        StageCaches sc;
        model.phases(t_base, sc.c0);
        for (long i = 0; i < n; ++i) {
            sc.t = t_base + i * h;
            sc.h = h;
            model.phases(sc.t + 0.5 * h, sc.ch);
            model.phases(sc.t + h, sc.c1);
            for (std::size_t p = lo; p < hi; ++p) {
                if (!state.alive[p]) continue;
                try {
                    guarded_step(model, cfg, state.x[p], state.y[p], sc.t, h, &sc);
                } catch (const Error&) {
                    state.alive[p] = 0;
                }
            }
            std::swap(sc.c0, sc.c1);
        }
    });
    state.t = t_to;
}

}  // namespace bohm
