#include "bohm/hh_spectrum.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace bohm {

int index_map(int n, int m) {
    if (n < 0 || m < 0) throw ConfigError("index_map: quantum numbers must be nonnegative");
    const int s = n + m;
    return m + 1 + s * (s + 1) / 2;
}

std::pair<int, int> inverse_index(int i) {
    if (i < 1) throw ConfigError("inverse_index: index must be positive");
    int s = 0;
    while ((s + 1) * (s + 2) / 2 < i) ++s;
    const int m = i - 1 - s * (s + 1) / 2;
    return {s - m, m};
}

namespace {

// <n'|x|n> for a 1D oscillator of frequency omega, nonzero for n' = n+1.
double x_up1(int n, double omega) { return std::sqrt((n + 1) / (2.0 * omega)); }

// <n+1|x^3|n> and <n+3|x^3|n>.
double x3_up1(int n, double omega) {
    return 3.0 * (n + 1.0) * std::sqrt(n + 1.0) / std::pow(2.0 * omega, 1.5);
}
double x3_up3(int n, double omega) {
    return std::sqrt((n + 1.0) * (n + 2.0) * (n + 3.0)) / std::pow(2.0 * omega, 1.5);
}

// <m|y^2|m> and <m+2|y^2|m>.
double y2_diag(int m, double omega) { return (2.0 * m + 1.0) / (2.0 * omega); }
double y2_up2(int m, double omega) { return std::sqrt((m + 1.0) * (m + 2.0)) / (2.0 * omega); }

}  // namespace

Eigen::MatrixXd build_matrix(double omega1, double omega2, double epsilon, int K) {
    if (K < 10) throw InvalidTruncation("build_matrix: truncation below minimum size");
    if (!(omega1 > 0.0) || !(omega2 > 0.0))
        throw ConfigError("build_matrix: frequencies must be positive");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(K, K);
    std::vector<std::pair<int, int>> nm(K);
    for (int i = 0; i < K; ++i) nm[i] = inverse_index(i + 1);
    for (int i = 0; i < K; ++i)
        h(i, i) = (nm[i].first + 0.5) * omega1 + (nm[i].second + 0.5) * omega2;
    if (epsilon == 0.0) return h;
    for (int i = 0; i < K; ++i) {
        const auto [n, m] = nm[i];
        for (int j = i; j < K; ++j) {
            const auto [np, mp] = nm[j];
            double xel = 0.0;  // <np|x|n>
            if (np == n + 1) xel = x_up1(n, omega1);
            else if (np == n - 1) xel = x_up1(np, omega1);
            double x3el = 0.0;  // <np|x^3|n>
            if (np == n + 1) x3el = x3_up1(n, omega1);
            else if (np == n - 1) x3el = x3_up1(np, omega1);
            else if (np == n + 3) x3el = x3_up3(n, omega1);
            else if (np == n - 3) x3el = x3_up3(np, omega1);
            double y2el = 0.0;  // <mp|y^2|m>
            if (mp == m) y2el = y2_diag(m, omega2);
            else if (mp == m + 2) y2el = y2_up2(m, omega2);
            else if (mp == m - 2) y2el = y2_up2(mp, omega2);
            double v = 0.0;
            if (xel != 0.0 && y2el != 0.0) v += epsilon * xel * y2el;
            if (x3el != 0.0 && mp == m) v -= epsilon / 3.0 * x3el;
            if (v != 0.0) {
                h(i, j) += v;
                if (j != i) h(j, i) += v;
            }
        }
    }
    return h;
}

Spectrum diagonalize(const Eigen::MatrixXd& matrix, double omega1, double omega2,
                     double epsilon) {
    if (matrix.rows() != matrix.cols())
        throw ConfigError("diagonalize: matrix must be square");
    if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * matrix.norm())
        throw ConfigError("diagonalize: matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
    if (solver.info() != Eigen::Success)
        throw ConvergenceFailure("diagonalize: eigen-solver did not converge");
    Spectrum sp;
    sp.K = (int)matrix.rows();
    sp.omega1 = omega1;
    sp.omega2 = omega2;
    sp.epsilon = epsilon;
    sp.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + sp.K);
    sp.eigenvectors = solver.eigenvectors();
    // Quantum numbers by maximal overlap with the unperturbed basis.
    sp.labels.resize(sp.K);
    for (int i = 0; i < sp.K; ++i) {
        int best = 0;
        double best_w = 0.0;
        for (int j = 0; j < sp.K; ++j) {
            const double w = std::abs(sp.eigenvectors(j, i));
            if (w > best_w) {
                best_w = w;
                best = j;
            }
        }
        sp.labels[i] = inverse_index(best + 1);
        // Sign convention: dominant coefficient positive, so states vary
        // continuously with epsilon.
        if (sp.eigenvectors(best, i) < 0.0) sp.eigenvectors.col(i) *= -1.0;
    }
    return sp;
}

Spectrum build_spectrum(double omega1, double omega2, double epsilon, int K) {
    return diagonalize(build_matrix(omega1, omega2, epsilon, K), omega1, omega2, epsilon);
}

int Spectrum::state(int n, int m) const {
    for (int i = 0; i < K; ++i)
        if (labels[i].first == n && labels[i].second == m) return i;
    throw InvalidTruncation("Spectrum::state: no state labeled with the requested quantum numbers");
}

WavefunctionModel hh_wavefunction(const Spectrum& spectrum, double a, double b) {
    const int i00 = spectrum.state(0, 0);
    const int i10 = spectrum.state(1, 0);
    const int i11 = spectrum.state(1, 1);
    std::vector<std::pair<int, int>> basis(spectrum.K);
    for (int j = 0; j < spectrum.K; ++j) basis[j] = inverse_index(j + 1);
    auto column = [&](int i) {
        return std::vector<double>(spectrum.eigenvectors.col(i).data(),
                                   spectrum.eigenvectors.col(i).data() + spectrum.K);
    };
    ModelParams params;
    params.a = a;
    params.b = b;
    params.c = spectrum.omega2 / spectrum.omega1;
    params.epsilon = spectrum.epsilon;
    return WavefunctionModel::eigenbasis(
        spectrum.omega1, spectrum.omega2, std::move(basis), {1.0, a, b},
        {spectrum.eigenvalues[i00], spectrum.eigenvalues[i10], spectrum.eigenvalues[i11]},
        {column(i00), column(i10), column(i11)}, params);
}

void save_spectrum(const Spectrum& sp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write spectrum file: " + path);
    out.precision(17);
    out << "K " << sp.K << " omega1 " << sp.omega1 << " omega2 " << sp.omega2 << " epsilon "
        << sp.epsilon << "\n";
    for (int i = 0; i < sp.K; ++i) {
        out << sp.eigenvalues[i] << " " << sp.labels[i].first << " " << sp.labels[i].second;
        for (int j = 0; j < sp.K; ++j) out << " " << sp.eigenvectors(j, i);
        out << "\n";
    }
}

Spectrum load_spectrum(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spectrum file: " + path);
    Spectrum sp;
    std::string tag;
    in >> tag >> sp.K >> tag >> sp.omega1 >> tag >> sp.omega2 >> tag >> sp.epsilon;
    if (!in || sp.K <= 0) throw ConfigError("bad spectrum file header: " + path);
    sp.eigenvalues.resize(sp.K);
    sp.labels.resize(sp.K);
    sp.eigenvectors.resize(sp.K, sp.K);
    for (int i = 0; i < sp.K; ++i) {
        in >> sp.eigenvalues[i] >> sp.labels[i].first >> sp.labels[i].second;
        for (int j = 0; j < sp.K; ++j) in >> sp.eigenvectors(j, i);
    }
    if (!in) throw ConfigError("truncated spectrum file: " + path);
    return sp;
}

WavefunctionModel make_model(const ModelSpec& spec, int K) {
    const ModelParams& p = spec.params;
    switch (spec.kind) {
        case ModelKind::Harmonic3:
            return WavefunctionModel::harmonic3(p.a, p.b, p.c);
        case ModelKind::Harmonic4Quartic:
            return WavefunctionModel::harmonic4_quartic(p.a, p.b, p.c);
        case ModelKind::Harmonic5:
            return WavefunctionModel::harmonic5(p.a, p.b, p.c, p.d);
        case ModelKind::WisPuj:
            return WavefunctionModel::wis_puj(p.a, p.b, p.d, p.gamma1, p.gamma2);
        case ModelKind::HenonHeiles3: {
            const Spectrum sp = build_spectrum(1.0, p.c, p.epsilon, K);
            return hh_wavefunction(sp, p.a, p.b);
        }
    }
    throw ConfigError("make_model: unknown kind");
}

}  // namespace bohm
