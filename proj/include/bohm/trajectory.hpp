#pragma once

#include <cstdint>
#include <vector>

#include "bohm/models.hpp"

namespace bohm {

struct IntegratorConfig {
    double dt = 1e-4;
    double t_end = 0.0;
    enum class Method { RK4, RK45 } method = Method::RK4;
    double node_guard_radius = 1.0;
    double node_guard_shrink = 0.1;
    double sample_dt = 0.1;  // 0 records only the endpoints
    double rk45_tol = 1e-10;
};

struct TrajectorySample {
    double t, x, y;
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
    std::vector<std::pair<double, double>> xi_log;  // (t, ln|xi(t)/xi(0)|)
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
};

TrajectoryRecord integrate(const WavefunctionModel& model, double x0, double y0,
                           const IntegratorConfig& cfg);

enum class TrajectoryClass { Ordered, Chaotic, Inconclusive };

struct LyapunovResult {
    TrajectoryRecord record;
    double chi_end = 0.0;   // chi(t_end)
    double slope = 0.0;     // log-log slope of the chi envelope, last two decades
    TrajectoryClass classification = TrajectoryClass::Inconclusive;
    // Per-log-bin maxima of chi(t): (log10 t, chi). chi oscillates through
    // zero on ordered orbits, so the decay law is read off the envelope.
    std::vector<std::pair<double, double>> chi_envelope;
};

LyapunovResult lyapunov(const WavefunctionModel& model, double x0, double y0,
                        const IntegratorConfig& cfg, double xi0_x = 1.0, double xi0_y = 0.0);

// chi(t) at time index i of a Lyapunov record.
inline double chi_of(const std::pair<double, double>& xi) { return xi.second / xi.first; }

struct NodeEvent {
    double t, u, v;  // u = x - x_N, v = y - y_N at a local minimum of d_N
    double d() const;
};

std::vector<NodeEvent> node_distance_events(const WavefunctionModel& model,
                                            const TrajectoryRecord& record);

// Stroboscopic section at t = 2*pi*k; one point sequence per initial condition,
// iterate 0 being the initial condition itself.
std::vector<std::vector<std::pair<double, double>>> stroboscopic_section(
    const WavefunctionModel& model, const std::vector<std::pair<double, double>>& initial,
    int n_periods, const IntegratorConfig& cfg);

struct RecurrenceAnalysis {
    std::vector<std::pair<std::int64_t, std::int64_t>> convergents;  // (q_n, p_n)
    std::vector<double> periods;                                     // T_n = 2 pi p_n / omega1
    std::vector<double> distances;  // max over particles of |r(T_n) - r(0)|
    double gamma = 0.0;             // fitted diophantine constant
    double bound_constant = 0.0;    // fitted C with distance <= C * 2 pi / (p_n + q_n)
};

std::vector<std::pair<std::int64_t, std::int64_t>> continued_fraction_convergents(double ratio,
                                                                                  int max_order);

RecurrenceAnalysis recurrence_analysis(const WavefunctionModel& model,
                                       const std::vector<std::pair<double, double>>& ensemble,
                                       int max_order, const IntegratorConfig& cfg,
                                       double t_budget);

// Lockstep ensemble evolution shared by the relaxation experiments.
struct EnsembleState {
    std::vector<double> x, y;
    std::vector<std::uint8_t> alive;
    double t = 0.0;
    std::size_t failed() const;
};

// Advances every live particle from state.t to t_to with the fixed-step scheme.
// Particles whose step underflows near a node are marked dead, not thrown on.
void advance_ensemble(const WavefunctionModel& model, EnsembleState& state, double t_to,
                      const IntegratorConfig& cfg);

}  // namespace bohm
