#include "bohm/series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace bohm {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kCollisionTol = 1e-12;
}

TrigPoly TrigPoly::constant(double v, double c_value) {
    TrigPoly p(c_value);
    p.add_term(0, false, 0, 0, v);
    return p;
}

TrigPoly TrigPoly::cosine(double coeff, int n1, int n2, double c_value) {
    TrigPoly p(c_value);
    p.add_term(0, false, n1, n2, coeff);
    return p;
}

TrigPoly TrigPoly::sine(double coeff, int n1, int n2, double c_value) {
    TrigPoly p(c_value);
    p.add_term(0, true, n1, n2, coeff);
    return p;
}

void TrigPoly::add_term(int p, bool is_sin, int n1, int n2, double coeff) {
    if (coeff == 0.0) return;
    // canonical frequency sign: first nonzero component positive
    if (n1 < 0 || (n1 == 0 && n2 < 0)) {
        n1 = -n1;
        n2 = -n2;
        if (is_sin) coeff = -coeff;
    }
    if (n1 == 0 && n2 == 0) {
        if (is_sin) return;  // sin(0) = 0
    } else if (std::abs(n1 + n2 * c_) < kCollisionTol) {
        throw FrequencyCollision("distinct integer frequency combination evaluates to zero");
    }
    const Key k{p, is_sin, n1, n2};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0.0) terms_.erase(it);
    }
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    for (const auto& [k, v] : o.terms_) add_term(k.p, k.is_sin, k.n1, k.n2, v);
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
    for (const auto& [k, v] : o.terms_) add_term(k.p, k.is_sin, k.n1, k.n2, -v);
    return *this;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    TrigPoly r = *this;
    r += o;
    return r;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
    TrigPoly r = *this;
    r -= o;
    return r;
}

TrigPoly& TrigPoly::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= s;
    return *this;
}

TrigPoly TrigPoly::operator*(double s) const {
    TrigPoly r = *this;
    r *= s;
    return r;
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    TrigPoly r(c_);
    for (const auto& [ka, va] : terms_)
        for (const auto& [kb, vb] : o.terms_) {
            const int p = ka.p + kb.p;
            const double half = 0.5 * va * vb;
            const int sum1 = ka.n1 + kb.n1, sum2 = ka.n2 + kb.n2;
            const int dif1 = ka.n1 - kb.n1, dif2 = ka.n2 - kb.n2;
            if (!ka.is_sin && !kb.is_sin) {
                // cos cos = [cos(a-b) + cos(a+b)]/2
                r.add_term(p, false, dif1, dif2, half);
                r.add_term(p, false, sum1, sum2, half);
            } else if (ka.is_sin && kb.is_sin) {
                // sin sin = [cos(a-b) - cos(a+b)]/2
                r.add_term(p, false, dif1, dif2, half);
                r.add_term(p, false, sum1, sum2, -half);
            } else if (ka.is_sin && !kb.is_sin) {
                // sin a cos b = [sin(a+b) + sin(a-b)]/2
                r.add_term(p, true, sum1, sum2, half);
                r.add_term(p, true, dif1, dif2, half);
            } else {
                // cos a sin b = [sin(a+b) - sin(a-b)]/2
                r.add_term(p, true, sum1, sum2, half);
                r.add_term(p, true, dif1, dif2, -half);
            }
        }
    return r;
}

TrigPoly TrigPoly::integrate() const {
    TrigPoly anti(c_);
    for (const auto& [k, v] : terms_) {
        if (k.n1 == 0 && k.n2 == 0) {
            // constant * t^p -> t^(p+1)/(p+1)
            anti.add_term(k.p + 1, false, 0, 0, v / (k.p + 1));
            continue;
        }
        const double w = k.n1 + k.n2 * c_;
        // antiderivative of t^p trig(w t) by repeated integration by parts
        double coeff = v;
        int p = k.p;
        bool is_sin = k.is_sin;
        while (true) {
            if (is_sin) {
                anti.add_term(p, false, k.n1, k.n2, -coeff / w);
                if (p == 0) break;
                coeff = coeff * p / w;
                is_sin = false;
            } else {
                anti.add_term(p, true, k.n1, k.n2, coeff / w);
                if (p == 0) break;
                coeff = -coeff * p / w;
                is_sin = true;
            }
            --p;
        }
    }
    // subtract the value at t=0 (only p=0 cosine terms contribute)
    double at0 = 0.0;
    for (const auto& [k, v] : anti.terms_)
        if (k.p == 0 && !k.is_sin) at0 += v;
    anti.add_term(0, false, 0, 0, -at0);
    return anti;
}

TrigPoly TrigPoly::differentiate() const {
    TrigPoly d(c_);
    for (const auto& [k, v] : terms_) {
        if (k.p > 0) d.add_term(k.p - 1, k.is_sin, k.n1, k.n2, v * k.p);
        if (k.n1 != 0 || k.n2 != 0) {
            const double w = k.n1 + k.n2 * c_;
            if (k.is_sin)
                d.add_term(k.p, false, k.n1, k.n2, v * w);
            else
                d.add_term(k.p, true, k.n1, k.n2, -v * w);
        }
    }
    return d;
}

double TrigPoly::eval(double t) const {
    double sum = 0.0;
    for (const auto& [k, v] : terms_) {
        const double w = k.n1 + k.n2 * c_;
        const double trig = k.is_sin ? std::sin(w * t) : std::cos(w * t);
        sum += v * std::pow(t, k.p) * trig;
    }
    return sum;
}

int TrigPoly::max_power() const {
    int p = 0;
    for (const auto& [k, v] : terms_) p = std::max(p, k.p);
    return p;
}

double SeriesSolution::eval_x(double t) const {
    double sum = 0.0;
    for (const auto& o : orders) sum += o.first.eval(t);
    return scaled ? x0 * sum : sum;
}

double SeriesSolution::eval_y(double t) const {
    double sum = 0.0;
    for (const auto& o : orders) sum += o.second.eval(t);
    return scaled ? y0 * sum : sum;
}

TrigPoly SeriesSolution::collapse_x() const {
    TrigPoly p(c);
    for (const auto& o : orders) p += o.first;
    if (scaled) p *= x0;
    return p;
}

TrigPoly SeriesSolution::collapse_y() const {
    TrigPoly p(c);
    for (const auto& o : orders) p += o.second;
    if (scaled) p *= y0;
    return p;
}

SeriesSolution first_order_solution(double a, double b, double c, double x0, double y0) {
    SeriesSolution sol;
    sol.small_parameter = SeriesSolution::SmallParameter::Amplitude;
    sol.truncation = 1;
    sol.c = c;
    sol.x0 = x0;
    sol.y0 = y0;
    sol.scaled = false;
    const double bc = b * std::sqrt(c);
    TrigPoly x1(c), y1(c);
    // a (cos t - 1)
    x1.add_term(0, false, 1, 0, a);
    x1.add_term(0, false, 0, 0, -a);
    // b sqrt(c) y0/(1+c) (cos (1+c)t - 1)
    x1.add_term(0, false, 1, 1, bc * y0 / (1.0 + c));
    x1.add_term(0, false, 0, 0, -bc * y0 / (1.0 + c));
    y1.add_term(0, false, 1, 1, bc * x0 / (1.0 + c));
    y1.add_term(0, false, 0, 0, -bc * x0 / (1.0 + c));
    sol.orders.emplace_back(TrigPoly::constant(x0, c), TrigPoly::constant(y0, c));
    sol.orders.emplace_back(x1, y1);
    return sol;
}

namespace {

// Series graded by powers of the expansion amplitude.
using Graded = std::vector<TrigPoly>;

Graded gmake(int N, double c) { return Graded(N + 1, TrigPoly(c)); }

Graded gmul(const Graded& u, const Graded& v, int N, double c) {
    Graded r = gmake(N, c);
    for (int i = 0; i <= N; ++i) {
        if (u[i].empty()) continue;
        for (int j = 0; i + j <= N; ++j) {
            if (v[j].empty()) continue;
            r[i + j] += u[i] * v[j];
        }
    }
    return r;
}

int min_grade(const Graded& g) {
    for (int i = 0; i < (int)g.size(); ++i)
        if (!g[i].empty()) return i;
    return (int)g.size();
}

}  // namespace

InnerSeriesResult inner_series_b0(double a, double x0, int N, double c_value) {
    if (N < 1) throw ConfigError("inner_series_b0: truncation must be at least 1");
    const double c = c_value;
    Graded x = gmake(N, c);
    x[0] = TrigPoly::constant(x0, c);
    const TrigPoly cos_t = TrigPoly::cosine(1.0, 1, 0, c);
    const TrigPoly sin_t = TrigPoly::sine(1.0, 1, 0, c);
    for (int iter = 0; iter < N; ++iter) {
        // u = a x, carrying one amplitude order per power of a
        Graded u = gmake(N, c);
        for (int k = 0; k + 1 <= N; ++k) u[k + 1] = x[k] * a;
        // g = u^2 + 2 u cos t  (G = 1 + g)
        Graded g = gmul(u, u, N, c);
        for (int k = 0; k <= N; ++k) g[k] += u[k] * cos_t * 2.0;
        // 1/G by geometric expansion
        Graded inv = gmake(N, c);
        inv[0] = TrigPoly::constant(1.0, c);
        Graded pw = g;
        double sign = -1.0;
        while (min_grade(pw) <= N) {
            for (int k = 0; k <= N; ++k) inv[k] += pw[k] * sign;
            pw = gmul(pw, g, N, c);
            sign = -sign;
        }
        // dx/dt = -a sin t / G
        Graded next = gmake(N, c);
        next[0] = TrigPoly::constant(x0, c);
        for (int k = 0; k + 1 <= N; ++k) {
            TrigPoly rhs = inv[k] * sin_t * (-a);
            next[k + 1] = rhs.integrate();
        }
        x = std::move(next);
    }
    InnerSeriesResult res;
    res.solution.small_parameter = SeriesSolution::SmallParameter::Amplitude;
    res.solution.truncation = N;
    res.solution.c = c;
    res.solution.x0 = x0;
    res.solution.y0 = 0.0;
    res.solution.scaled = false;
    for (int k = 0; k <= N; ++k)
        res.solution.orders.emplace_back(x[k], TrigPoly(c));
    // convergence band test: the expansion of 1/G has its nearest pole at
    // |a| = 1/|x|, so the truncated solution must stay inside |x a| < 1
    const TrigPoly total = res.solution.collapse_x();
    double band = 0.0;
    for (double t = 0.0; t < 2.0 * kPi; t += 1e-3)
        band = std::max(band, std::abs(total.eval(t) * a));
    res.band_max = band;
    res.convergent = band < 1.0;
    return res;
}

namespace {

// Series in inverse powers of the initial coordinates; grade (k,l) holds the
// trig-polynomial coefficient of x0^-k y0^-l.
class InvPowSeries {
public:
    InvPowSeries(int N, double c) : n_(N), c_(c) {}

    static InvPowSeries unit(int N, double c) {
        InvPowSeries s(N, c);
        s.terms_[{0, 0}] = TrigPoly::constant(1.0, c);
        return s;
    }

    void add(int k, int l, const TrigPoly& p) {
        if (k + l > n_ || p.empty()) return;
        auto it = terms_.find({k, l});
        if (it == terms_.end())
            terms_.emplace(std::make_pair(k, l), p);
        else {
            it->second += p;
            if (it->second.empty()) terms_.erase(it);
        }
    }

    InvPowSeries& operator+=(const InvPowSeries& o) {
        for (const auto& [kl, p] : o.terms_) add(kl.first, kl.second, p);
        return *this;
    }

    InvPowSeries operator*(const InvPowSeries& o) const {
        InvPowSeries r(n_, c_);
        for (const auto& [ka, pa] : terms_)
            for (const auto& [kb, pb] : o.terms_) {
                const int k = ka.first + kb.first, l = ka.second + kb.second;
                if (k + l > n_) continue;
                r.add(k, l, pa * pb);
            }
        return r;
    }

    // multiply by coeff * trig at grade offset (dk, dl)
    InvPowSeries shifted(const TrigPoly& coeff, int dk, int dl) const {
        InvPowSeries r(n_, c_);
        for (const auto& [kl, p] : terms_) r.add(kl.first + dk, kl.second + dl, p * coeff);
        return r;
    }

    // 1/S for S = 1 + u with u of positive grade
    InvPowSeries reciprocal() const {
        InvPowSeries u = *this;
        auto it = u.terms_.find({0, 0});
        if (it == u.terms_.end())
            throw ConfigError("reciprocal: series has no unit leading term");
        it->second -= TrigPoly::constant(1.0, c_);
        if (it->second.empty()) u.terms_.erase(it);
        InvPowSeries inv = unit(n_, c_);
        InvPowSeries pw = u;
        double sign = -1.0;
        while (!pw.terms_.empty()) {
            for (const auto& [kl, p] : pw.terms_) inv.add(kl.first, kl.second, p * sign);
            pw = pw * u;
            sign = -sign;
        }
        return inv;
    }

    InvPowSeries integrated() const {
        InvPowSeries r(n_, c_);
        for (const auto& [kl, p] : terms_) r.add(kl.first, kl.second, p.integrate());
        return r;
    }

    const std::map<std::pair<int, int>, TrigPoly>& terms() const { return terms_; }

private:
    int n_;
    double c_;
    std::map<std::pair<int, int>, TrigPoly> terms_;
};

}  // namespace

OuterSeries::OuterSeries(double a, double b, double c, int N) : n_(N), a_(a), b_(b), c_(c) {
    if (N < 4) throw ConfigError("outer series: truncation must be at least 4");
    if (b == 0.0) throw ConfigError("outer series: b must be nonzero");
    const double sc = std::sqrt(c);
    const TrigPoly cos_t = TrigPoly::cosine(1.0, 1, 0, c);
    const TrigPoly sin_t = TrigPoly::sine(1.0, 1, 0, c);
    const TrigPoly cos_ct = TrigPoly::cosine(1.0, 0, 1, c);
    const TrigPoly sin_ct = TrigPoly::sine(1.0, 0, 1, c);
    const TrigPoly cos_1ct = TrigPoly::cosine(1.0, 1, 1, c);
    const TrigPoly sin_1ct = TrigPoly::sine(1.0, 1, 1, c);
    const TrigPoly one = TrigPoly::constant(1.0, c);

    InvPowSeries X = InvPowSeries::unit(N, c), Y = InvPowSeries::unit(N, c);
    for (int iter = 0; iter < N; ++iter) {
        const InvPowSeries Xi = X.reciprocal();
        const InvPowSeries Yi = Y.reciprocal();
        const InvPowSeries Xi2 = Xi * Xi;
        const InvPowSeries Yi2 = Yi * Yi;
        const InvPowSeries XiYi = Xi * Yi;
        const InvPowSeries Xi2Yi = Xi2 * Yi;
        const InvPowSeries Xi2Yi2 = Xi2 * Yi2;
        const InvPowSeries XiYi2 = Xi * Yi2;
        // G = b^2 c x0^2 y0^2 X^2 Y^2 (1 + u)
        InvPowSeries u(N, c);
        u += Xi2Yi2.shifted(one * (1.0 / (b * b * c)), 2, 2);
        u += Yi2.shifted(one * (a * a / (b * b * c)), 0, 2);
        u += XiYi2.shifted(cos_t * (2.0 * a / (b * b * c)), 1, 2);
        u += XiYi.shifted(cos_1ct * (2.0 / (b * sc)), 1, 1);
        u += Yi.shifted(cos_ct * (2.0 * a / (b * sc)), 0, 1);
        InvPowSeries unit_plus_u = InvPowSeries::unit(N, c);
        unit_plus_u += u;
        const InvPowSeries Ginv = unit_plus_u.reciprocal();
        // dX/dt = -a sin t /(b^2 c x0^3 y0^2 X^2 Y^2 Ghat)
        //         - sin (1+c)t /(b sqrt(c) x0^3 y0 X^2 Y Ghat)
        InvPowSeries dX = (Xi2Yi2 * Ginv).shifted(sin_t * (-a / (b * b * c)), 3, 2);
        dX += (Xi2Yi * Ginv).shifted(sin_1ct * (-1.0 / (b * sc)), 3, 1);
        // dY/dt = -a sin ct /(b sqrt(c) y0^3 Y^2 Ghat)
        //         - sin (1+c)t /(b sqrt(c) x0 y0^3 X Y^2 Ghat)
        InvPowSeries dY = (Yi2 * Ginv).shifted(sin_ct * (-a / (b * sc)), 0, 3);
        dY += (XiYi2 * Ginv).shifted(sin_1ct * (-1.0 / (b * sc)), 1, 3);
        X = InvPowSeries::unit(N, c);
        X += dX.integrated();
        Y = InvPowSeries::unit(N, c);
        Y += dY.integrated();
    }
    x_terms_ = X.terms();
    y_terms_ = Y.terms();
}

const TrigPoly* OuterSeries::term_x(int k, int l) const {
    auto it = x_terms_.find({k, l});
    return it == x_terms_.end() ? nullptr : &it->second;
}

const TrigPoly* OuterSeries::term_y(int k, int l) const {
    auto it = y_terms_.find({k, l});
    return it == y_terms_.end() ? nullptr : &it->second;
}

SeriesSolution OuterSeries::at(double x0, double y0) const {
    SeriesSolution sol;
    sol.small_parameter = SeriesSolution::SmallParameter::InverseCoordinate;
    sol.truncation = n_;
    sol.c = c_;
    sol.x0 = x0;
    sol.y0 = y0;
    sol.scaled = true;
    sol.orders.assign(n_ + 1, {TrigPoly(c_), TrigPoly(c_)});
    for (const auto& [kl, p] : x_terms_) {
        const int j = kl.first + kl.second;
        sol.orders[j].first += p * (std::pow(x0, -kl.first) * std::pow(y0, -kl.second));
    }
    for (const auto& [kl, p] : y_terms_) {
        const int j = kl.first + kl.second;
        sol.orders[j].second += p * (std::pow(x0, -kl.first) * std::pow(y0, -kl.second));
    }
    return sol;
}

std::vector<double> OuterSeries::secular_weight() const {
    std::vector<double> w(n_ + 1, 0.0);
    auto scan = [&](const std::map<std::pair<int, int>, TrigPoly>& terms) {
        for (const auto& [kl, p] : terms) {
            const int j = kl.first + kl.second;
            for (const auto& [key, coeff] : p.terms())
                if (key.p >= 1) w[j] += std::abs(coeff);
        }
    };
    scan(x_terms_);
    scan(y_terms_);
    return w;
}

SeriesSolution outer_series(double a, double b, double c, double x0, double y0, int N) {
    return OuterSeries(a, b, c, N).at(x0, y0);
}

namespace {

// Evaluate a trig polynomial along a uniform time grid with rotation
// recurrences per distinct frequency (re-anchored periodically).
class SteppedEvaluator {
public:
    SteppedEvaluator(const TrigPoly& poly, double dt) : dt_(dt) {
        for (const auto& [k, v] : poly.terms()) {
            const double w = k.n1 + k.n2 * poly.c_value();
            int fi = -1;
            for (std::size_t i = 0; i < freqs_.size(); ++i)
                if (freqs_[i] == w) {
                    fi = (int)i;
                    break;
                }
            if (fi < 0) {
                fi = (int)freqs_.size();
                freqs_.push_back(w);
            }
            terms_.push_back({k.p, k.is_sin, fi, v});
        }
        max_p_ = poly.max_power();
        reset();
    }

    void reset() {
        t_ = 0.0;
        step_i_ = 0;
        z_.assign(freqs_.size(), {1.0, 0.0});
        rot_.resize(freqs_.size());
        for (std::size_t i = 0; i < freqs_.size(); ++i)
            rot_[i] = {std::cos(freqs_[i] * dt_), std::sin(freqs_[i] * dt_)};
    }

    double t() const { return t_; }

    double value() const {
        double tp[16];
        tp[0] = 1.0;
        for (int p = 1; p <= max_p_; ++p) tp[p] = tp[p - 1] * t_;
        double sum = 0.0;
        for (const auto& term : terms_) {
            const auto& z = z_[term.freq];
            sum += term.coeff * tp[term.p] * (term.is_sin ? z.imag() : z.real());
        }
        return sum;
    }

    void advance() {
        ++step_i_;
        t_ = step_i_ * dt_;
        if (step_i_ % 100000 == 0) {
            for (std::size_t i = 0; i < freqs_.size(); ++i)
                z_[i] = {std::cos(freqs_[i] * t_), std::sin(freqs_[i] * t_)};
        } else {
            for (std::size_t i = 0; i < z_.size(); ++i) z_[i] *= rot_[i];
        }
    }

private:
    struct Term {
        int p;
        bool is_sin;
        int freq;
        double coeff;
    };
    double dt_, t_ = 0.0;
    long step_i_ = 0;
    int max_p_ = 0;
    std::vector<double> freqs_;
    std::vector<std::complex<double>> z_, rot_;
    std::vector<Term> terms_;
};

// min/max with local parabolic refinement around interior extrema
void scan_extrema(const TrigPoly& poly, double t_span, double dt, double& lo, double& hi) {
    SteppedEvaluator ev(poly, dt);
    double fm2 = 0, fm1 = 0, f0 = ev.value();
    lo = hi = f0;
    double prev_t = 0.0;
    long i = 0;
    while (ev.t() < t_span) {
        ev.advance();
        fm2 = fm1;
        fm1 = f0;
        f0 = ev.value();
        lo = std::min(lo, f0);
        hi = std::max(hi, f0);
        if (i >= 1 && ((fm1 - fm2) * (f0 - fm1) < 0.0)) {
            // parabola through the last three samples
            const double denom = fm2 - 2.0 * fm1 + f0;
            if (denom != 0.0) {
                const double delta = 0.5 * (fm2 - f0) / denom;
                const double fe = fm1 - 0.25 * (fm2 - f0) * delta;
                lo = std::min(lo, fe);
                hi = std::max(hi, fe);
            }
        }
        ++i;
        prev_t = ev.t();
    }
    (void)prev_t;
}

}  // namespace

SeriesExtrema series_extrema(const SeriesSolution& sol, double t_span, double scan_step) {
    SeriesExtrema e{};
    scan_extrema(sol.collapse_x(), t_span, scan_step, e.x_min, e.x_max);
    scan_extrema(sol.collapse_y(), t_span, scan_step, e.y_min, e.y_max);
    return e;
}

EncounterPrediction encounter_predictor(double a, double b, double c, double x0, double y0,
                                        int k_max) {
    EncounterPrediction pred;
    const double sc = std::sqrt(c);
    pred.q = (b * sc / a) * y0;
    pred.marginal = !(std::abs(pred.q) <= 0.5 && std::abs(x0 * y0) < 1.0 / (b * sc));
    pred.node_x = -1.0 / a;
    pred.node_y = y0;
    // times of maximum x: roots of a sin t + b sqrt(c) y0 sin((1+c)t) near 2 K pi,
    // kept when the second-derivative condition holds
    for (int k = 1; k <= k_max; ++k) {
        double t = 2.0 * kPi * k;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            const double f = a * std::sin(t) + b * sc * y0 * std::sin((1.0 + c) * t);
            const double fp = a * std::cos(t) + b * sc * y0 * (1.0 + c) * std::cos((1.0 + c) * t);
            if (fp == 0.0) break;
            const double step = f / fp;
            t -= step;
            if (std::abs(step) < 1e-13) {
                ok = true;
                break;
            }
        }
        if (!ok || std::abs(t - 2.0 * kPi * k) > kPi) continue;
        const double cond = a * std::cos(t) + b * sc * y0 * (1.0 + c) * std::cos((1.0 + c) * t);
        if (cond > 0.0) pred.t_max.push_back(t);
    }
    if (x0 > 0.0)
        pred.prediction = TrajectoryClass::Ordered;  // node on the opposite side in x
    else if (x0 < 0.0 && y0 < 0.0)
        pred.prediction = TrajectoryClass::Chaotic;  // node shares the quadrant
    else
        pred.prediction = TrajectoryClass::Inconclusive;
    return pred;
}

std::string dump_series(const SeriesSolution& sol) {
    std::ostringstream out;
    out.precision(17);
    auto emit = [&](const TrigPoly& p, std::size_t j) {
        for (const auto& [k, v] : p.terms())
            out << j << "," << k.p << "," << (k.is_sin ? "sin" : "cos") << "," << k.n1 << ","
                << k.n2 << ",0," << v << "\n";
    };
    out << "# x\n";
    for (std::size_t j = 0; j < sol.orders.size(); ++j) emit(sol.orders[j].first, j);
    out << "# y\n";
    for (std::size_t j = 0; j < sol.orders.size(); ++j) emit(sol.orders[j].second, j);
    return out.str();
}

}  // namespace bohm
