#pragma once

#include <cmath>
#include <vector>

namespace bohm {

// Normalized 1D oscillator eigenfunctions with the Gaussian stripped:
// u_n(x) = p_n(x) exp(-omega x^2/2). Fills p_n and its first/second
// x-derivatives for n = 0..n_max.
inline void hermite_stripped(double omega, double x, int n_max, std::vector<double>& p,
                             std::vector<double>& dp, std::vector<double>& ddp) {
    constexpr double kPi = 3.14159265358979323846;
    p.resize(n_max + 1);
    dp.resize(n_max + 1);
    ddp.resize(n_max + 1);
    p[0] = std::pow(omega / kPi, 0.25);
    dp[0] = 0.0;
    ddp[0] = 0.0;
    if (n_max >= 1) {
        p[1] = std::sqrt(2.0 * omega) * x * p[0];
        dp[1] = std::sqrt(2.0 * omega) * p[0];
        ddp[1] = 0.0;
    }
    for (int n = 2; n <= n_max; ++n) {
        p[n] = std::sqrt(2.0 * omega / n) * x * p[n - 1] - std::sqrt((n - 1.0) / n) * p[n - 2];
        dp[n] = std::sqrt(2.0 * n * omega) * p[n - 1];
        ddp[n] = 2.0 * omega * std::sqrt(n * (n - 1.0)) * p[n - 2];
    }
}

}  // namespace bohm
