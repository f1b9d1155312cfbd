#include "bohm/models.hpp"

#include "bohm/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bohm {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

// Spatial factor value and derivatives at (x,y).
struct SpatialEval {
    double s, sx, sy, sxx, sxy, syy;
};

SpatialEval eval_spatial(Spatial id, double x, double y) {
    switch (id) {
        case Spatial::One:
            return {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
        case Spatial::X:
            return {x, 1.0, 0.0, 0.0, 0.0, 0.0};
        case Spatial::Y:
            return {y, 0.0, 1.0, 0.0, 0.0, 0.0};
        case Spatial::XY:
            return {x * y, y, x, 0.0, 1.0, 0.0};
        case Spatial::X2m1:
            return {x * x - 1.0, 2.0 * x, 0.0, 2.0, 0.0, 0.0};
    }
    return {0, 0, 0, 0, 0, 0};
}

}  // namespace

WavefunctionModel WavefunctionModel::harmonic3(double a, double b, double c) {
    if (!(c > 0.0)) throw ConfigError("harmonic3: frequency ratio c must be positive");
    WavefunctionModel m;
    m.kind_ = ModelKind::Harmonic3;
    m.params_.a = a;
    m.params_.b = b;
    m.params_.c = c;
    m.env_x_ = 1.0;
    m.env_y_ = c;
    m.front_frequency_ = 0.5 * (1.0 + c);
    m.terms_ = {{1.0, 0.0, Spatial::One},
                {a, 1.0, Spatial::X},
                {b * std::sqrt(c), 1.0 + c, Spatial::XY}};
    return m;
}

WavefunctionModel WavefunctionModel::harmonic4_quartic(double a, double b, double c) {
    if (!(c > 0.0)) throw ConfigError("harmonic4_quartic: frequency ratio c must be positive");
    WavefunctionModel m;
    m.kind_ = ModelKind::Harmonic4Quartic;
    m.params_.a = a;
    m.params_.b = b;
    m.params_.c = c;
    m.env_x_ = 1.0;
    m.env_y_ = c;
    m.front_frequency_ = 0.5 * (1.0 + c);
    m.terms_ = {{1.0, 0.0, Spatial::One},
                {a, 2.0, Spatial::X2m1},
                {b * std::sqrt(c), 1.0, Spatial::XY}};
    return m;
}

WavefunctionModel WavefunctionModel::harmonic5(double a, double b, double c, double d) {
    if (!(c > 0.0)) throw ConfigError("harmonic5: frequency ratio c must be positive");
    WavefunctionModel m;
    m.kind_ = ModelKind::Harmonic5;
    m.params_.a = a;
    m.params_.b = b;
    m.params_.c = c;
    m.params_.d = d;
    m.env_x_ = 1.0;
    m.env_y_ = c;
    m.front_frequency_ = 0.5 * (1.0 + c);
    m.terms_ = {{1.0, 0.0, Spatial::One},
                {a, 2.0, Spatial::X2m1},
                {b * std::sqrt(c), 1.0 + c, Spatial::XY},
                {d, 1.0, Spatial::X}};
    return m;
}

WavefunctionModel WavefunctionModel::wis_puj(double a, double b, double d, double gamma1,
                                             double gamma2) {
    WavefunctionModel m;
    m.kind_ = ModelKind::WisPuj;
    m.params_.a = a;
    m.params_.b = b;
    m.params_.c = 1.0;
    m.params_.d = d;
    m.params_.gamma1 = gamma1;
    m.params_.gamma2 = gamma2;
    m.env_x_ = 1.0;
    m.env_y_ = 1.0;
    m.front_frequency_ = 0.0;
    m.terms_ = {{a, 1.0, Spatial::One},
                {b * std::exp(-gamma1), 2.0, Spatial::X},
                {d * std::exp(-gamma2), 2.0, Spatial::Y}};
    return m;
}

WavefunctionModel WavefunctionModel::eigenbasis(double omega1, double omega2,
                                                std::vector<std::pair<int, int>> basis_nm,
                                                std::vector<Complex> state_amplitudes,
                                                std::vector<double> state_energies,
                                                std::vector<std::vector<double>> state_coeffs,
                                                ModelParams params) {
    if (state_amplitudes.size() != state_energies.size() ||
        state_amplitudes.size() != state_coeffs.size())
        throw ConfigError("eigenbasis: inconsistent state arrays");
    WavefunctionModel m;
    m.kind_ = ModelKind::HenonHeiles3;
    m.params_ = params;
    m.env_x_ = omega1;
    m.env_y_ = omega2;
    m.front_frequency_ = 0.0;
    m.basis_nm_ = std::move(basis_nm);
    m.state_amplitudes_ = std::move(state_amplitudes);
    m.state_energies_ = std::move(state_energies);
    m.state_coeffs_ = std::move(state_coeffs);
    for (auto& nm : m.basis_nm_) {
        m.max_n_ = std::max(m.max_n_, nm.first);
        m.max_m_ = std::max(m.max_m_, nm.second);
    }
    return m;
}

void WavefunctionModel::phases(double t, PhaseCache& cache) const {
    cache.t = t;
    if (kind_ != ModelKind::HenonHeiles3) {
        cache.w.resize(terms_.size());
        for (size_t k = 0; k < terms_.size(); ++k)
            cache.w[k] = terms_[k].amplitude * expi(-terms_[k].phase_frequency * t);
    } else {
        cache.w.assign(basis_nm_.size(), Complex(0.0, 0.0));
        for (size_t s = 0; s < state_amplitudes_.size(); ++s) {
            const Complex f = state_amplitudes_[s] * expi(-state_energies_[s] * t);
            const auto& c = state_coeffs_[s];
            for (size_t j = 0; j < basis_nm_.size(); ++j) cache.w[j] += f * c[j];
        }
    }
}

BracketSample WavefunctionModel::bracket(const PhaseCache& cache, double x, double y,
                                         bool second) const {
    BracketSample out{};
    if (kind_ != ModelKind::HenonHeiles3) {
        for (size_t k = 0; k < terms_.size(); ++k) {
            const SpatialEval s = eval_spatial(terms_[k].spatial, x, y);
            const Complex w = cache.w[k];
            out.b += w * s.s;
            out.bx += w * s.sx;
            out.by += w * s.sy;
            if (second) {
                out.bxx += w * s.sxx;
                out.bxy += w * s.sxy;
                out.byy += w * s.syy;
            }
        }
    } else {
        thread_local std::vector<double> px, dpx, ddpx, py, dpy, ddpy;
        hermite_stripped(env_x_, x, max_n_, px, dpx, ddpx);
        hermite_stripped(env_y_, y, max_m_, py, dpy, ddpy);
        for (size_t j = 0; j < basis_nm_.size(); ++j) {
            const Complex w = cache.w[j];
            const int n = basis_nm_[j].first, m = basis_nm_[j].second;
            out.b += w * (px[n] * py[m]);
            out.bx += w * (dpx[n] * py[m]);
            out.by += w * (px[n] * dpy[m]);
            if (second) {
                out.bxx += w * (ddpx[n] * py[m]);
                out.bxy += w * (dpx[n] * dpy[m]);
                out.byy += w * (px[n] * ddpy[m]);
            }
        }
    }
    return out;
}

BracketSample WavefunctionModel::bracket(double x, double y, double t, bool second) const {
    PhaseCache cache;
    phases(t, cache);
    return bracket(cache, x, y, second);
}

void WavefunctionModel::velocity_from(const BracketSample& s, double& vx, double& vy) {
    const double g = std::norm(s.b);
    vx = std::imag(s.bx * std::conj(s.b)) / g;
    vy = std::imag(s.by * std::conj(s.b)) / g;
}

VelocityJacobian WavefunctionModel::jacobian_from(const BracketSample& s) {
    // v = grad Im(log B); the Jacobian is the (symmetric) Hessian of Im(log B).
    const Complex gx = s.bx / s.b;
    const Complex gy = s.by / s.b;
    VelocityJacobian j;
    j.dvx_dx = std::imag(s.bxx / s.b - gx * gx);
    j.dvx_dy = std::imag(s.bxy / s.b - gx * gy);
    j.dvy_dx = j.dvx_dy;
    j.dvy_dy = std::imag(s.byy / s.b - gy * gy);
    return j;
}

FieldSample WavefunctionModel::eval_field(double x, double y, double t,
                                          double singular_threshold) const {
    const BracketSample s = bracket(x, y, t);
    const double env = std::exp(-0.5 * (env_x_ * x * x + env_y_ * y * y));
    const Complex front = expi(-front_frequency_ * t);
    FieldSample f;
    f.psi = env * front * s.b;
    f.psi_x = env * front * (s.bx - env_x_ * x * s.b);
    f.psi_y = env * front * (s.by - env_y_ * y * s.b);
    if (std::abs(s.b) < singular_threshold)
        throw NodeSingularity("eval_field: |psi| below singular threshold");
    velocity_from(s, f.vx, f.vy);
    return f;
}

void WavefunctionModel::harmonic3_closed_form(double x, double y, double t, double& vx,
                                              double& vy) const {
    const double a = params_.a, b = params_.b, c = params_.c;
    const double sc = std::sqrt(c);
    const double s1 = std::sin(t), c1 = std::cos(t);
    const double sc_t = std::sin(c * t), c1c = std::cos((1.0 + c) * t);
    const double s1c = std::sin((1.0 + c) * t);
    const double g = 1.0 + a * a * x * x + b * b * c * x * x * y * y + 2.0 * a * x * c1 +
                     2.0 * b * sc * x * y * c1c + 2.0 * a * b * sc * x * x * y * std::cos(c * t);
    vx = -(a * s1 + b * sc * y * s1c) / g;
    vy = -(b * sc * x * (a * x * sc_t + s1c)) / g;
}

void WavefunctionModel::nodal_point(double t, double& x_n, double& y_n, double tol) const {
    if (kind_ != ModelKind::Harmonic3)
        throw ConfigError("nodal_point: closed form available for the three-state model only");
    const double a = params_.a, b = params_.b, c = params_.c;
    const double s_c = std::sin(c * t);
    const double s_1c = std::sin((1.0 + c) * t);
    if (std::abs(a * s_c) < tol || std::abs(b * std::sqrt(c) * s_1c) < tol)
        throw NodeAtInfinity("nodal_point: denominator vanishes, node escapes to infinity");
    x_n = -s_1c / (a * s_c);
    y_n = -a * std::sin(t) / (b * std::sqrt(c) * s_1c);
}

std::vector<NodalLinePoint> WavefunctionModel::nodal_lines(const std::vector<double>& t_grid,
                                                           const Rect& window,
                                                           int resolution) const {
    if (resolution < 2) throw ConfigError("nodal_lines: resolution must be at least 2");
    if (!(window.x_max > window.x_min) || !(window.y_max > window.y_min))
        throw ConfigError("nodal_lines: empty window");
    std::vector<NodalLinePoint> points;
    const double hx = (window.x_max - window.x_min) / (resolution - 1);
    const double hy = (window.y_max - window.y_min) / (resolution - 1);
    std::vector<double> re((size_t)resolution * resolution), im((size_t)resolution * resolution);
    PhaseCache cache;
    for (double t : t_grid) {
        phases(t, cache);
        for (int i = 0; i < resolution; ++i)
            for (int j = 0; j < resolution; ++j) {
                const BracketSample s =
                    bracket(cache, window.x_min + i * hx, window.y_min + j * hy);
                re[(size_t)i * resolution + j] = std::real(s.b);
                im[(size_t)i * resolution + j] = std::imag(s.b);
            }
        std::vector<std::pair<double, double>> found;
        for (int i = 0; i + 1 < resolution; ++i)
            for (int j = 0; j + 1 < resolution; ++j) {
                const size_t k00 = (size_t)i * resolution + j;
                const size_t k10 = k00 + resolution, k01 = k00 + 1, k11 = k10 + 1;
                auto changes = [&](const std::vector<double>& f) {
                    const double a0 = f[k00], a1 = f[k10], a2 = f[k01], a3 = f[k11];
                    const double lo = std::min(std::min(a0, a1), std::min(a2, a3));
                    const double hi = std::max(std::max(a0, a1), std::max(a2, a3));
                    return lo <= 0.0 && hi >= 0.0;
                };
                if (!changes(re) || !changes(im)) continue;
                // 2D Newton on (Re B, Im B) from the cell center
                double x = window.x_min + (i + 0.5) * hx;
                double y = window.y_min + (j + 0.5) * hy;
                bool ok = false;
                for (int it = 0; it < 40; ++it) {
                    const BracketSample s = bracket(cache, x, y);
                    const double fr = std::real(s.b), fi = std::imag(s.b);
                    const double j00 = std::real(s.bx), j01 = std::real(s.by);
                    const double j10 = std::imag(s.bx), j11 = std::imag(s.by);
                    const double det = j00 * j11 - j01 * j10;
                    if (std::abs(det) < 1e-300) break;
                    const double dx = (fr * j11 - fi * j01) / det;
                    const double dy = (fi * j00 - fr * j10) / det;
                    x -= dx;
                    y -= dy;
                    if (std::abs(dx) < 1e-13 && std::abs(dy) < 1e-13) {
                        ok = std::abs(bracket(cache, x, y).b) < 1e-10;
                        break;
                    }
                }
                if (!ok) continue;
                if (x < window.x_min - hx || x > window.x_max + hx || y < window.y_min - hy ||
                    y > window.y_max + hy)
                    continue;
                bool dup = false;
                for (auto& p : found)
                    if (std::abs(p.first - x) < 0.5 * hx && std::abs(p.second - y) < 0.5 * hy) {
                        dup = true;
                        break;
                    }
                if (!dup) {
                    found.emplace_back(x, y);
                    points.push_back({t, x, y});
                }
            }
    }
    return points;
}

void WavefunctionModel::scale_amplitudes(Complex factor) {
    if (factor == Complex(0.0, 0.0)) throw ConfigError("scale_amplitudes: zero factor");
    for (auto& term : terms_) term.amplitude *= factor;
    for (auto& amp : state_amplitudes_) amp *= factor;
}

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Harmonic3: return "harmonic3";
        case ModelKind::Harmonic4Quartic: return "harmonic4_quartic";
        case ModelKind::Harmonic5: return "harmonic5";
        case ModelKind::WisPuj: return "wis_puj";
        case ModelKind::HenonHeiles3: return "henon_heiles3";
    }
    return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "harmonic3") return ModelKind::Harmonic3;
    if (name == "harmonic4_quartic") return ModelKind::Harmonic4Quartic;
    if (name == "harmonic5") return ModelKind::Harmonic5;
    if (name == "wis_puj") return ModelKind::WisPuj;
    if (name == "henon_heiles3") return ModelKind::HenonHeiles3;
    throw ConfigError("unknown model kind: " + name);
}

ModelSpec parse_model_spec(const std::string& text) {
    ModelSpec spec;
    bool have_kind = false;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("model spec: expected key=value, got: " + line);
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key == "kind") {
            spec.kind = model_kind_from_name(value);
            have_kind = true;
            continue;
        }
        double v;
        try {
            v = std::stod(value);
        } catch (const std::exception&) {
            throw ConfigError("model spec: bad number for " + key + ": " + value);
        }
        if (key == "a") spec.params.a = v;
        else if (key == "b") spec.params.b = v;
        else if (key == "c") spec.params.c = v;
        else if (key == "d") spec.params.d = v;
        else if (key == "epsilon") spec.params.epsilon = v;
        else if (key == "gamma1") spec.params.gamma1 = v;
        else if (key == "gamma2") spec.params.gamma2 = v;
        else throw ConfigError("model spec: unknown key: " + key);
    }
    if (!have_kind) throw ConfigError("model spec: missing kind");
    return spec;
}

ModelSpec load_model_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model_spec(ss.str());
}

}  // namespace bohm
