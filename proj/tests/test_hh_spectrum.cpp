#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bohm/hermite.hpp"
#include "bohm/hh_spectrum.hpp"
#include "bohm/trajectory.hpp"

using namespace bohm;

namespace {

const double kOmega1 = 1.0;
const double kOmega2 = std::sqrt(2.0) / 2.0;
const double kEps = 0.1118034;

// Gauss-Hermite nodes and weights by Golub-Welsch: eigenvalues of the Jacobi
// matrix of the (physicists') Hermite recurrence.
void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double off = std::sqrt(i / 2.0);
        j(i - 1, i) = off;
        j(i, i - 1) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(j);
    nodes.resize(n);
    weights.resize(n);
    const double mu0 = std::sqrt(M_PI);
    for (int i = 0; i < n; ++i) {
        nodes[i] = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        weights[i] = mu0 * v0 * v0;
    }
}

// <n1| f(x) |n2> for 1D oscillator states of frequency w, by quadrature.
double quad_element(double w, int n1, int n2, int power) {
    std::vector<double> nodes, weights, p, dp, ddp;
    gauss_hermite(80, nodes, weights);
    const int n_max = std::max(n1, n2);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        // x = u / sqrt(w) absorbs the Gaussian weight exp(-u^2).
        const double x = nodes[i] / std::sqrt(w);
        hermite_stripped(w, x, n_max, p, dp, ddp);
        acc += weights[i] / std::sqrt(w) * p[n1] * p[n2] * std::pow(x, power);
    }
    return acc;
}

}  // namespace

TEST_CASE("index map matches the triangular enumeration") {
    CHECK(index_map(0, 0) == 1);
    CHECK(index_map(1, 0) == 2);
    CHECK(index_map(0, 1) == 3);
    CHECK(index_map(2, 0) == 4);
    CHECK(index_map(1, 1) == 5);
    CHECK(index_map(0, 2) == 6);
    for (int i = 1; i <= 200; ++i) {
        auto [n, m] = inverse_index(i);
        CHECK(index_map(n, m) == i);
        CHECK(n >= 0);
        CHECK(m >= 0);
    }
}

TEST_CASE("unperturbed matrix is diagonal with exact oscillator energies") {
    auto matrix = build_matrix(kOmega1, kOmega2, 0.0, 60);
    for (int i = 0; i < 60; ++i)
        for (int j = 0; j < 60; ++j) {
            if (i == j) continue;
            CHECK(matrix(i, j) == 0.0);
        }
    auto spectrum = diagonalize(matrix, kOmega1, kOmega2, 0.0);
    CHECK(spectrum.energy(0, 0) ==
          doctest::Approx(0.5 * (kOmega1 + kOmega2)).epsilon(1e-14));
    CHECK(spectrum.energy(2, 1) ==
          doctest::Approx(2.5 * kOmega1 + 1.5 * kOmega2).epsilon(1e-13));
}

TEST_CASE("matrix is symmetric and rejects tiny truncations") {
    auto matrix = build_matrix(kOmega1, kOmega2, kEps, 120);
    CHECK((matrix - matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(build_matrix(kOmega1, kOmega2, kEps, 5), InvalidTruncation);
}

TEST_CASE("ladder matrix elements agree with Gauss-Hermite quadrature") {
    // 1D pieces first.
    const double w = kOmega1;
    CHECK(quad_element(w, 1, 0, 1) == doctest::Approx(1.0 / std::sqrt(2 * w)).epsilon(1e-12));
    CHECK(quad_element(w, 3, 0, 3) ==
          doctest::Approx(std::sqrt(6.0) / std::pow(2 * w, 1.5)).epsilon(1e-12));
    CHECK(quad_element(w, 1, 0, 3) == doctest::Approx(3.0 / std::pow(2 * w, 1.5)).epsilon(1e-12));

    // Full 36x36 block against a quadrature-built perturbation matrix.
    const int kBlock = 36;
    auto matrix = build_matrix(kOmega1, kOmega2, kEps, 200);
    for (int i = 1; i <= kBlock; ++i) {
        auto [n1, m1] = inverse_index(i);
        for (int j = i; j <= kBlock; ++j) {
            auto [n2, m2] = inverse_index(j);
            double expected = 0.0;
            if (i == j) expected += (n1 + 0.5) * kOmega1 + (m1 + 0.5) * kOmega2;
            // eps * x y^2 - eps/3 * x^3 factorizes over the two axes.
            double pert = 0.0;
            if (m1 == m2)
                pert -= kEps / 3.0 * quad_element(kOmega1, n1, n2, 3);
            pert += kEps * quad_element(kOmega1, n1, n2, 1) * quad_element(kOmega2, m1, m2, 2);
            expected += pert;
            CHECK(std::abs(matrix(i - 1, j - 1) - expected) < 1e-8);
        }
    }
}

TEST_CASE("stripped hermite basis is orthonormal under quadrature") {
    for (int n1 = 0; n1 <= 6; ++n1)
        for (int n2 = n1; n2 <= 6; ++n2) {
            const double g = quad_element(kOmega2, n1, n2, 0);
            CHECK(std::abs(g - (n1 == n2 ? 1.0 : 0.0)) < 1e-10);
        }
}

TEST_CASE("eigenvalues decrease monotonically with truncation (variational)") {
    auto s150 = build_spectrum(kOmega1, kOmega2, kEps, 150);
    auto s175 = build_spectrum(kOmega1, kOmega2, kEps, 175);
    auto s200 = build_spectrum(kOmega1, kOmega2, kEps, 200);
    for (int i = 0; i < 10; ++i) {
        CHECK(s175.eigenvalues[i] <= s150.eigenvalues[i] + 1e-12);
        CHECK(s200.eigenvalues[i] <= s175.eigenvalues[i] + 1e-12);
    }
    // The low states agree to 6 significant figures at K=150 already: their
    // 6-digit roundings coincide.
    for (auto [n, m] : {std::pair{0, 0}, {1, 0}, {1, 1}}) {
        char lo[32], hi[32];
        std::snprintf(lo, sizeof lo, "%.6g", s150.energy(n, m));
        std::snprintf(hi, sizeof hi, "%.6g", s200.energy(n, m));
        CHECK(std::string(lo) == hi);
        const double rel = std::abs(s150.energy(n, m) - s200.energy(n, m)) /
                           std::abs(s200.energy(n, m));
        CHECK(rel < 5e-6);
    }
}

TEST_CASE("spectrum save/load round trips") {
    auto spectrum = build_spectrum(kOmega1, kOmega2, kEps, 30);
    const char* path = "spectrum_roundtrip.txt";
    save_spectrum(spectrum, path);
    auto loaded = load_spectrum(path);
    std::remove(path);
    CHECK(loaded.K == spectrum.K);
    CHECK(loaded.epsilon == doctest::Approx(spectrum.epsilon).epsilon(1e-12));
    for (int i = 0; i < 30; ++i) {
        CHECK(loaded.eigenvalues[i] == doctest::Approx(spectrum.eigenvalues[i]).epsilon(1e-12));
        CHECK(loaded.labels[i] == spectrum.labels[i]);
    }
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j)
            CHECK(std::abs(loaded.eigenvectors(i, j) - spectrum.eigenvectors(i, j)) < 1e-12);
}

TEST_CASE("single eigenstate is stationary") {
    auto spectrum = build_spectrum(kOmega1, kOmega2, kEps, 100);
    auto model = hh_wavefunction(spectrum, 0.0, 0.0);
    double vx, vy;
    WavefunctionModel::velocity_from(model.bracket(0.4, -0.3, 2.7), vx, vy);
    CHECK(std::abs(vx) < 1e-10);
    CHECK(std::abs(vy) < 1e-10);
}

TEST_CASE("perturbed trajectories converge to the harmonic ones as eps -> 0") {
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 5.0;
    cfg.sample_dt = 0.0;

    auto run = [&](double eps) {
        auto spectrum = build_spectrum(kOmega1, kOmega2, eps, 100);
        auto model = hh_wavefunction(spectrum, 1.0, 1.0);
        auto rec = integrate(model, 1.1, 0.9, cfg);
        return rec.samples.back();
    };
    const auto exact = run(0.0);
    const auto mid = run(1e-3);
    const auto close = run(1e-4);
    const double err_mid = std::hypot(mid.x - exact.x, mid.y - exact.y);
    const double err_close = std::hypot(close.x - exact.x, close.y - exact.y);
    CHECK(err_close < err_mid);
    CHECK(err_close < 2e-3);
}
