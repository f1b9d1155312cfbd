#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bohm/errors.hpp"
#include "bohm/trajectory.hpp"

namespace bohm {

// Finite sum of terms coeff * t^p * {cos,sin}((n1 + n2*c) t) with exact
// integer frequency bookkeeping; c is carried numerically for evaluation but
// term identity is the integer pair.
class TrigPoly {
public:
    struct Key {
        int p;
        bool is_sin;
        int n1, n2;
        bool operator<(const Key& o) const {
            if (p != o.p) return p < o.p;
            if (is_sin != o.is_sin) return is_sin < o.is_sin;
            if (n1 != o.n1) return n1 < o.n1;
            return n2 < o.n2;
        }
    };

    explicit TrigPoly(double c_value = 1.0) : c_(c_value) {}
    static TrigPoly constant(double v, double c_value);
    static TrigPoly cosine(double coeff, int n1, int n2, double c_value);
    static TrigPoly sine(double coeff, int n1, int n2, double c_value);

    void add_term(int p, bool is_sin, int n1, int n2, double coeff);

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    TrigPoly operator*(const TrigPoly& o) const;
    TrigPoly& operator*=(double s);
    TrigPoly operator*(double s) const;
    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator-(const TrigPoly& o) const;

    // Definite integral from 0 to t, as a new polynomial in t.
    TrigPoly integrate() const;
    TrigPoly differentiate() const;

    double eval(double t) const;
    double frequency(const Key& k) const { return k.n1 + k.n2 * c_; }
    double c_value() const { return c_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Key, double>& terms() const { return terms_; }
    int max_power() const;

private:
    double c_;
    std::map<Key, double> terms_;
};

struct SeriesSolution {
    enum class SmallParameter { Amplitude, InverseCoordinate };
    SmallParameter small_parameter = SmallParameter::Amplitude;
    int truncation = 0;
    double c = 1.0;
    double x0 = 0.0, y0 = 0.0;
    bool scaled = false;  // true when orders hold X = x/x0, Y = y/y0
    std::vector<std::pair<TrigPoly, TrigPoly>> orders;  // (X_j, Y_j), j = 0..N

    double eval_x(double t) const;
    double eval_y(double t) const;
    TrigPoly collapse_x() const;  // sum of orders, in absolute coordinates
    TrigPoly collapse_y() const;
};

// Exact first-order trajectory solution.
SeriesSolution first_order_solution(double a, double b, double c, double x0, double y0);

struct InnerSeriesResult {
    SeriesSolution solution;
    bool convergent = false;
    double band_max = 0.0;  // max over the scan of |x(t) * a|
};

// Expansion in powers of the amplitude a for the b=0 (periodic) family, built
// by Picard iteration with a geometric expansion of 1/G; the verdict marks the
// series divergent when the truncated x(t) crosses |x a| = 1 on [0, 2 pi).
InnerSeriesResult inner_series_b0(double a, double x0, int N, double c_value = 1.0);

// Expansion in inverse powers of (x0, y0) for trajectories far from the
// center; grade (k,l) carries the coefficient of x0^-k y0^-l.
class OuterSeries {
public:
    OuterSeries(double a, double b, double c, int N);

    int truncation() const { return n_; }
    const TrigPoly* term_x(int k, int l) const;
    const TrigPoly* term_y(int k, int l) const;
    SeriesSolution at(double x0, double y0) const;

    // Aggregate magnitude of secular (t^p, p>=1) coefficients per order.
    std::vector<double> secular_weight() const;

private:
    int n_;
    double a_, b_, c_;
    std::map<std::pair<int, int>, TrigPoly> x_terms_, y_terms_;
};

SeriesSolution outer_series(double a, double b, double c, double x0, double y0, int N);

struct SeriesExtrema {
    double x_min, x_max, y_min, y_max;
};

SeriesExtrema series_extrema(const SeriesSolution& sol, double t_span = 1e3,
                             double scan_step = 1e-3);

struct EncounterPrediction {
    TrajectoryClass prediction = TrajectoryClass::Inconclusive;
    double q = 0.0;
    bool marginal = false;  // outside the small-|q| applicability domain
    std::vector<double> t_max;
    double node_x = 0.0, node_y = 0.0;
};

EncounterPrediction encounter_predictor(double a, double b, double c, double x0, double y0,
                                        int k_max = 8);

// Text dump, one line per term: order,power_t,kind,n1,n2,n3,coeff.
std::string dump_series(const SeriesSolution& sol);

}  // namespace bohm
