#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bohm/models.hpp"

namespace bohm {

// Linear index of the 2D oscillator state (n,m): i = m+1+(n+m)(n+m+1)/2.
int index_map(int n, int m);
std::pair<int, int> inverse_index(int i);

// Truncated Hamiltonian matrix of the cubically perturbed 2D oscillator
// H = (px^2 + omega1^2 x^2)/2 + (py^2 + omega2^2 y^2)/2 + eps*x*(y^2 - x^2/3)
// in the oscillator eigenbasis, entries by closed-form ladder matrix elements.
Eigen::MatrixXd build_matrix(double omega1, double omega2, double epsilon, int K);

struct Spectrum {
    int K = 0;
    double omega1 = 1.0, omega2 = 1.0, epsilon = 0.0;
    std::vector<double> eigenvalues;  // ascending
    Eigen::MatrixXd eigenvectors;     // column i holds the coefficients of state i
    std::vector<std::pair<int, int>> labels;  // quantum numbers per state

    // State index for quantum numbers (n,m); throws if the label was not assigned.
    int state(int n, int m) const;
    double energy(int n, int m) const { return eigenvalues[state(n, m)]; }
};

Spectrum diagonalize(const Eigen::MatrixXd& matrix, double omega1, double omega2, double epsilon);

Spectrum build_spectrum(double omega1, double omega2, double epsilon, int K = 200);

// Three-state superposition Phi00 + a*Phi10 + b*Phi11 with phases exp(-iEt).
WavefunctionModel hh_wavefunction(const Spectrum& spectrum, double a, double b);

void save_spectrum(const Spectrum& spectrum, const std::string& path);
Spectrum load_spectrum(const std::string& path);

// Model assembly from a parsed spec, including the eigenbasis-backed kind.
WavefunctionModel make_model(const ModelSpec& spec, int K = 200);

}  // namespace bohm
