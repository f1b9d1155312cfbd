#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bohm/models.hpp"
#include "bohm/trajectory.hpp"

namespace bohm {

// Provenance of an ensemble: rejection-sampled from |psi|^2 at t0, or a
// uniform lattice filling a square box (edges included).
struct BornTag {
    double t0 = 0.0;
    std::uint64_t seed = 0;
};

struct GridBoxTag {
    double cx = 0.0;
    double cy = 0.0;
    double side = 0.0;
    int per_side = 31;
};

struct Ensemble {
    std::vector<double> x;
    std::vector<double> y;
    std::optional<BornTag> born;
    std::optional<GridBoxTag> box;

    std::size_t size() const { return x.size(); }
};

Ensemble grid_box(double cx, double cy, double side, int per_side = 31);

// Regular lattice x_k = -N/10 + k/5, k = 1..N (and the same in y), with
// |psi|^2 renormalized so its cell-area-weighted integral over the grid is 1.
struct DensityGrid {
    int n = 128;
    std::vector<double> coord;   // n node positions, shared by both axes
    std::vector<double> p_s;     // row-major n*n, index l*n + k for (x_k, y_l)
    std::vector<double> psi2;    // grid-renormalized |psi|^2

    double cell_area() const { return 0.04; }
    double& ps_at(int k, int l) { return p_s[static_cast<std::size_t>(l) * n + k]; }
    double ps_at(int k, int l) const { return p_s[static_cast<std::size_t>(l) * n + k]; }
    double psi2_at(int k, int l) const { return psi2[static_cast<std::size_t>(l) * n + k]; }
};

DensityGrid make_density_grid(int n = 128);

// Fills grid.psi2 from |psi(x,y,t)|^2 and renormalizes to unit grid integral.
void fill_psi2(const WavefunctionModel& model, double t, DensityGrid& grid);

Ensemble sample_born(const WavefunctionModel& model, double t0, std::size_t n,
                     std::uint64_t seed, const Rect& proposal_window = {-8.0, 8.0, -8.0, 8.0});

// Gaussian-kernel density estimate on the grid, normalized to unit grid
// integral. The kernel is truncated at 5 sigma; the tail lost that way is
// below 4e-6 of a kernel's mass.
void smoothed_density(const Ensemble& ensemble, DensityGrid& grid, double sigma = 0.3);

// Raw absolute-difference sum over nodes, no cell-area weight.
double density_difference(const DensityGrid& grid);

double h_function(const DensityGrid& grid);

enum class Halfplane { PositiveX, NegativeX };

double restricted_difference(const DensityGrid& grid, Halfplane half);

struct RelaxationSample {
    double t = 0.0;
    double d = 0.0;
    double h_s = 0.0;
    std::optional<double> d_bar;
    std::size_t alive = 0;
};

struct RelaxationConfig {
    IntegratorConfig integ;
    double sigma = 0.3;
    int grid_n = 128;
    std::optional<Halfplane> halfplane;  // also compute D-bar when set
    double max_failure_fraction = 0.01;
};

struct RelaxationResult {
    std::vector<RelaxationSample> samples;
    std::size_t failed = 0;
    // Final particle positions, for section/hull diagnostics.
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::uint8_t> alive;
};

RelaxationResult relaxation_run(const WavefunctionModel& model, const Ensemble& ensemble,
                                const RelaxationConfig& cfg,
                                const std::vector<double>& sample_times);

std::vector<double> default_sample_times(double t_end, double dense_until = 1000.0,
                                         double dense_step = 1.0, double sparse_step = 10.0);

// Area of the convex hull of the live particles.
double hull_area(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<std::uint8_t>& alive);

}  // namespace bohm
