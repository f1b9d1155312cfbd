#include "bohm/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bohm/errors.hpp"
#include "bohm/parallel.hpp"

namespace bohm {

namespace {

constexpr double kPsFloor = 1e-30;

// Uniform double in [0,1) with 53 random bits, so streams are identical
// across standard library implementations.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double psi2_value(const WavefunctionModel& model, const PhaseCache& cache, double x, double y) {
    const auto s = model.bracket(cache, x, y);
    const double env2 =
        std::exp(-(model.envelope_x() * x * x + model.envelope_y() * y * y));
    return std::norm(s.b) * env2;
}

}  // namespace

Ensemble grid_box(double cx, double cy, double side, int per_side) {
    if (per_side < 2) throw ConfigError("grid_box needs at least 2 points per side");
    Ensemble e;
    e.box = GridBoxTag{cx, cy, side, per_side};
    const double lo_x = cx - side / 2.0;
    const double lo_y = cy - side / 2.0;
    const double step = side / (per_side - 1);
    e.x.reserve(static_cast<std::size_t>(per_side) * per_side);
    e.y.reserve(e.x.capacity());
    for (int j = 0; j < per_side; ++j)
        for (int i = 0; i < per_side; ++i) {
            e.x.push_back(lo_x + i * step);
            e.y.push_back(lo_y + j * step);
        }
    return e;
}

DensityGrid make_density_grid(int n) {
    if (n < 2) throw ConfigError("density grid needs n >= 2");
    DensityGrid g;
    g.n = n;
    g.coord.resize(n);
    for (int k = 1; k <= n; ++k) g.coord[k - 1] = -n / 10.0 + k / 5.0;
    g.p_s.assign(static_cast<std::size_t>(n) * n, 0.0);
    g.psi2.assign(static_cast<std::size_t>(n) * n, 0.0);
    return g;
}

void fill_psi2(const WavefunctionModel& model, double t, DensityGrid& grid) {
    const int n = grid.n;
    PhaseCache cache;
    model.phases(t, cache);
    double total = 0.0;
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
            const double v = psi2_value(model, cache, grid.coord[k], grid.coord[l]);
            grid.psi2[static_cast<std::size_t>(l) * n + k] = v;
            total += v;
        }
    const double scale = 1.0 / (total * grid.cell_area());
    for (double& v : grid.psi2) v *= scale;
}

Ensemble sample_born(const WavefunctionModel& model, double t0, std::size_t n,
                     std::uint64_t seed, const Rect& window) {
    if (n == 0) throw ConfigError("sample_born needs n >= 1");
    PhaseCache cache;
    model.phases(t0, cache);

    // Envelope from a grid scan of the window; 1.05 headroom over the max.
    const int scan = 400;
    double peak = 0.0;
    for (int j = 0; j <= scan; ++j)
        for (int i = 0; i <= scan; ++i) {
            const double x = window.x_min + (window.x_max - window.x_min) * i / scan;
            const double y = window.y_min + (window.y_max - window.y_min) * j / scan;
            peak = std::max(peak, psi2_value(model, cache, x, y));
        }
    const double envelope = 1.05 * peak;

    Ensemble e;
    e.born = BornTag{t0, seed};
    e.x.reserve(n);
    e.y.reserve(n);
    std::mt19937_64 rng(seed);
    while (e.x.size() < n) {
        const double x = window.x_min + (window.x_max - window.x_min) * uniform01(rng);
        const double y = window.y_min + (window.y_max - window.y_min) * uniform01(rng);
        const double v = psi2_value(model, cache, x, y);
        if (v > envelope) throw EnvelopeViolation("density exceeds rejection envelope");
        if (uniform01(rng) * envelope < v) {
            e.x.push_back(x);
            e.y.push_back(y);
        }
    }
    return e;
}

void smoothed_density(const Ensemble& ensemble, DensityGrid& grid, double sigma) {
    if (sigma <= 0.0) throw ConfigError("smoothing length must be positive");
    const int n = grid.n;
    std::fill(grid.p_s.begin(), grid.p_s.end(), 0.0);
    const double step = 0.2;
    const double lo = grid.coord.front();
    const double cutoff = 5.0 * sigma;
    const int reach = static_cast<int>(std::ceil(cutoff / step));
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);

    for (std::size_t p = 0; p < ensemble.size(); ++p) {
        const double px = ensemble.x[p];
        const double py = ensemble.y[p];
        const int kc = static_cast<int>(std::lround((px - lo) / step));
        const int lc = static_cast<int>(std::lround((py - lo) / step));
        const int k0 = std::max(0, kc - reach), k1 = std::min(n - 1, kc + reach);
        const int l0 = std::max(0, lc - reach), l1 = std::min(n - 1, lc + reach);
        for (int l = l0; l <= l1; ++l) {
            const double dy = grid.coord[l] - py;
            for (int k = k0; k <= k1; ++k) {
                const double dx = grid.coord[k] - px;
                grid.p_s[static_cast<std::size_t>(l) * n + k] +=
                    std::exp(-(dx * dx + dy * dy) * inv2s2);
            }
        }
    }
    double total = 0.0;
    for (double v : grid.p_s) total += v;
    if (total <= 0.0) throw EmptyRegion("no particle mass on the density grid");
    const double scale = 1.0 / (total * grid.cell_area());
    for (double& v : grid.p_s) v *= scale;
}

double density_difference(const DensityGrid& grid) {
    double d = 0.0;
    for (std::size_t i = 0; i < grid.p_s.size(); ++i) d += std::abs(grid.p_s[i] - grid.psi2[i]);
    return d;
}

double h_function(const DensityGrid& grid) {
    double h = 0.0;
    for (std::size_t i = 0; i < grid.p_s.size(); ++i) {
        const double p = grid.p_s[i];
        if (p <= kPsFloor) continue;
        const double q = std::max(grid.psi2[i], kPsFloor);
        h += p * std::log(p / q);
    }
    return h;
}

double restricted_difference(const DensityGrid& grid, Halfplane half) {
    const int n = grid.n;
    double mass_p = 0.0, mass_q = 0.0;
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
            const bool in = half == Halfplane::PositiveX ? grid.coord[k] > 0.0
                                                         : grid.coord[k] < 0.0;
            if (!in) continue;
            mass_p += grid.ps_at(k, l);
            mass_q += grid.psi2_at(k, l);
        }
    if (mass_p <= 0.0 || mass_q <= 0.0)
        throw EmptyRegion("halfplane carries no density");
    // Renormalize both densities to unit surface integral over the halfplane,
    // keeping the node values on the same scale as the full-grid D.
    const double sp = 1.0 / (mass_p * grid.cell_area());
    const double sq = 1.0 / (mass_q * grid.cell_area());
    double d = 0.0;
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
            const bool in = half == Halfplane::PositiveX ? grid.coord[k] > 0.0
                                                         : grid.coord[k] < 0.0;
            if (!in) continue;
            d += std::abs(grid.ps_at(k, l) * sp - grid.psi2_at(k, l) * sq);
        }
    return d;
}

RelaxationResult relaxation_run(const WavefunctionModel& model, const Ensemble& ensemble,
                                const RelaxationConfig& cfg,
                                const std::vector<double>& sample_times) {
    if (sample_times.empty()) throw ConfigError("sample_times must be non-empty");
    for (std::size_t i = 1; i < sample_times.size(); ++i)
        if (sample_times[i] <= sample_times[i - 1])
            throw ConfigError("sample_times must be strictly increasing");

    EnsembleState state;
    state.x = ensemble.x;
    state.y = ensemble.y;
    state.alive.assign(ensemble.size(), 1);
    state.t = 0.0;

    DensityGrid grid = make_density_grid(cfg.grid_n);
    RelaxationResult out;
    out.samples.reserve(sample_times.size());

    Ensemble live;
    for (double ts : sample_times) {
        if (ts > state.t) advance_ensemble(model, state, ts, cfg.integ);
        out.failed = state.failed();
        if (out.failed > cfg.max_failure_fraction * ensemble.size())
            throw StepUnderflow("too many particles lost near nodal singularities");

        live.x.clear();
        live.y.clear();
        for (std::size_t i = 0; i < state.x.size(); ++i)
            if (state.alive[i]) {
                live.x.push_back(state.x[i]);
                live.y.push_back(state.y[i]);
            }
        fill_psi2(model, ts, grid);
        smoothed_density(live, grid, cfg.sigma);

        RelaxationSample s;
        s.t = ts;
        s.d = density_difference(grid);
        s.h_s = h_function(grid);
        if (cfg.halfplane) s.d_bar = restricted_difference(grid, *cfg.halfplane);
        s.alive = live.size();
        out.samples.push_back(s);
    }
    out.x = std::move(state.x);
    out.y = std::move(state.y);
    out.alive = std::move(state.alive);
    return out;
}

std::vector<double> default_sample_times(double t_end, double dense_until, double dense_step,
                                         double sparse_step) {
    std::vector<double> times;
    times.push_back(0.0);
    double t = 0.0;
    while (t < std::min(t_end, dense_until) - 1e-9) {
        t += dense_step;
        times.push_back(t);
    }
    while (t < t_end - 1e-9) {
        t = std::min(t + sparse_step, t_end);
        times.push_back(t);
    }
    return times;
}

double hull_area(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<std::uint8_t>& alive) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (alive.empty() || alive[i]) pts.emplace_back(x[i], y[i]);
    if (pts.size() < 3) return 0.0;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return 0.0;

    auto cross = [](const auto& o, const auto& a, const auto& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    std::size_t h = 0;
    for (const auto& p : pts) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], p) <= 0.0) --h;
        hull[h++] = p;
    }
    const std::size_t lower = h + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], *it) <= 0.0) --h;
        hull[h++] = *it;
    }
    hull.resize(h - 1);
    double area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        area += a.first * b.second - b.first * a.second;
    }
    return std::abs(area) / 2.0;
}

}  // namespace bohm
