#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bohm/errors.hpp"

namespace bohm {

using Complex = std::complex<double>;

// Spatial factor of one superposition term (the polynomial part, the common
// Gaussian envelope is stored once per model).
enum class Spatial { One, X, Y, XY, X2m1 };

struct EigenTerm {
    Complex amplitude;
    double phase_frequency = 0.0;  // omega in exp(-i omega t)
    Spatial spatial = Spatial::One;
};

enum class ModelKind { Harmonic3, Harmonic4Quartic, Harmonic5, WisPuj, HenonHeiles3 };

struct ModelParams {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;  // frequency ratio omega2/omega1
    double d = 0.0;
    double epsilon = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

struct FieldSample {
    Complex psi;
    Complex psi_x, psi_y;
    double vx = 0.0, vy = 0.0;
};

// psi = exp(-(ex x^2 + ey y^2)/2) * exp(-i front t) * B(x,y,t).
// The bracket B carries everything the velocity needs: v = Im(grad B / B).
struct BracketSample {
    Complex b, bx, by;
    Complex bxx, bxy, byy;  // filled only when second derivatives are requested
};

struct VelocityJacobian {
    double dvx_dx = 0.0, dvx_dy = 0.0;
    double dvy_dx = 0.0, dvy_dy = 0.0;
};

struct Rect {
    double x_min, x_max, y_min, y_max;
};

struct NodalLinePoint {
    double t, x, y;
};

// Time-dependent factors shared by every spatial point at a given t.
// For the closed-form models these are the per-term phases exp(-i omega t);
// for the eigenbasis model they are the combined per-basis-function weights.
struct PhaseCache {
    double t = 0.0;
    std::vector<Complex> w;
};

constexpr double kDefaultSingularThreshold = 1e-12;

class WavefunctionModel {
public:
    static WavefunctionModel harmonic3(double a, double b, double c);
    static WavefunctionModel harmonic4_quartic(double a, double b, double c);
    static WavefunctionModel harmonic5(double a, double b, double c, double d);
    static WavefunctionModel wis_puj(double a, double b, double d, double gamma1, double gamma2);

    // Eigenbasis-backed model: states given as (amplitude, energy, basis coefficients),
    // basis function j is the 2D oscillator state (n_j, m_j) with frequencies (omega1, omega2).
    static WavefunctionModel eigenbasis(double omega1, double omega2,
                                        std::vector<std::pair<int, int>> basis_nm,
                                        std::vector<Complex> state_amplitudes,
                                        std::vector<double> state_energies,
                                        std::vector<std::vector<double>> state_coeffs,
                                        ModelParams params);

    ModelKind kind() const { return kind_; }
    const ModelParams& params() const { return params_; }
    const std::vector<EigenTerm>& terms() const { return terms_; }
    double envelope_x() const { return env_x_; }
    double envelope_y() const { return env_y_; }

    void phases(double t, PhaseCache& cache) const;
    BracketSample bracket(const PhaseCache& cache, double x, double y,
                          bool second_derivatives = false) const;
    BracketSample bracket(double x, double y, double t, bool second_derivatives = false) const;

    // Full sample with envelope and overall phase; throws NodeSingularity when
    // the stripped |B| is below the threshold.
    FieldSample eval_field(double x, double y, double t,
                           double singular_threshold = kDefaultSingularThreshold) const;

    static void velocity_from(const BracketSample& s, double& vx, double& vy);
    static VelocityJacobian jacobian_from(const BracketSample& s);

    // Closed-form velocity for the three-state harmonic model; used as an
    // independent route against the generic bracket evaluation.
    void harmonic3_closed_form(double x, double y, double t, double& vx, double& vy) const;

    // Nodal point of the three-state harmonic model.
    // Throws NodeAtInfinity when a denominator is below tol.
    void nodal_point(double t, double& x_n, double& y_n, double tol = 1e-8) const;

    std::vector<NodalLinePoint> nodal_lines(const std::vector<double>& t_grid, const Rect& window,
                                            int resolution) const;

    // Scale every amplitude by a common factor (velocity-invariant).
    void scale_amplitudes(Complex factor);

private:
    WavefunctionModel() = default;

    ModelKind kind_ = ModelKind::Harmonic3;
    ModelParams params_;
    double env_x_ = 1.0, env_y_ = 1.0;
    double front_frequency_ = 0.0;
    std::vector<EigenTerm> terms_;

    // eigenbasis data
    std::vector<std::pair<int, int>> basis_nm_;
    std::vector<Complex> state_amplitudes_;
    std::vector<double> state_energies_;
    std::vector<std::vector<double>> state_coeffs_;
    int max_n_ = 0, max_m_ = 0;
};

// Plain key=value model description, one entry per line.
struct ModelSpec {
    ModelKind kind = ModelKind::Harmonic3;
    ModelParams params;
};

ModelSpec parse_model_spec(const std::string& text);
ModelSpec load_model_spec(const std::string& path);
std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

}  // namespace bohm
