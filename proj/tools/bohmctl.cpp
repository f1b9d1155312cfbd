// bohmctl: command line front end for the trajectory, series, spectrum and
// relaxation experiments. Every file-producing command writes a manifest
// next to its outputs so a run can be reproduced from the artifacts alone.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bohm/hh_spectrum.hpp"
#include "bohm/models.hpp"
#include "bohm/relaxation.hpp"
#include "bohm/series.hpp"
#include "bohm/trajectory.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct ModelOpts {
    std::string file;
    std::string kind = "harmonic3";
    double a = 1.0, b = 1.0, c = std::sqrt(2.0) / 2.0, d = 0.0;
    double gamma1 = 0.0, gamma2 = 0.0, epsilon = 0.0;
    int K = 200;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", file, "model description file (key=value lines)");
        cmd->add_option("--kind", kind,
                        "model kind: harmonic3, harmonic4_quartic, harmonic5, wispuj, "
                        "henonheiles3");
        cmd->add_option("--a", a);
        cmd->add_option("--b", b);
        cmd->add_option("--c", c, "frequency ratio omega2/omega1");
        cmd->add_option("--d", d);
        cmd->add_option("--gamma1", gamma1);
        cmd->add_option("--gamma2", gamma2);
        cmd->add_option("--epsilon", epsilon);
        cmd->add_option("--K", K, "basis truncation for spectrum-backed models");
    }

    bohm::ModelSpec spec() const {
        if (!file.empty()) return bohm::load_model_spec(file);
        bohm::ModelSpec s;
        s.kind = bohm::model_kind_from_name(kind);
        s.params.a = a;
        s.params.b = b;
        s.params.c = c;
        s.params.d = d;
        s.params.gamma1 = gamma1;
        s.params.gamma2 = gamma2;
        s.params.epsilon = epsilon;
        return s;
    }

    bohm::WavefunctionModel model() const { return bohm::make_model(spec(), K); }

    json describe() const {
        const auto s = spec();
        return {{"kind", bohm::model_kind_name(s.kind)},
                {"a", s.params.a},
                {"b", s.params.b},
                {"c", s.params.c},
                {"d", s.params.d},
                {"epsilon", s.params.epsilon},
                {"gamma1", s.params.gamma1},
                {"gamma2", s.params.gamma2},
                {"file", file}};
    }
};

struct IntegOpts {
    double dt = 1e-4;
    double tend = 100.0;
    double sample_dt = 0.1;
    std::string method = "rk4";

    void attach(CLI::App* cmd) {
        cmd->add_option("--dt", dt, "integration step");
        cmd->add_option("--tend", tend, "end time");
        cmd->add_option("--sample-dt", sample_dt, "sampling cadence (0 = endpoints only)");
        cmd->add_option("--method", method)->check(CLI::IsMember({"rk4", "rk45"}));
    }

    bohm::IntegratorConfig config() const {
        bohm::IntegratorConfig cfg;
        cfg.dt = dt;
        cfg.t_end = tend;
        cfg.sample_dt = sample_dt;
        cfg.method = method == "rk45" ? bohm::IntegratorConfig::Method::RK45
                                      : bohm::IntegratorConfig::Method::RK4;
        return cfg;
    }

    json describe() const {
        return {{"dt", dt}, {"tend", tend}, {"sample_dt", sample_dt}, {"method", method}};
    }
};

void write_manifest(const fs::path& dir, const std::string& command, const json& inputs,
                    const std::vector<std::string>& outputs) {
    json m = {{"tool", "bohmctl"},
              {"version", kVersion},
              {"command", command},
              {"inputs", inputs},
              {"outputs", outputs}};
    std::ofstream f(dir / (command + "_manifest.json"));
    f << m.dump(2) << '\n';
}

fs::path out_dir(const std::string& dir) {
    fs::create_directories(dir);
    return dir;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path, std::string& header) {
    std::ifstream in(path);
    if (!in) throw bohm::ConfigError("cannot read " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    if (!std::getline(in, header)) return rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit_plot(const std::string& csv, const std::string& kind, const std::string& out);

int run_trajectory(const ModelOpts& mo, const IntegOpts& io, double x0, double y0,
                   const std::string& dir, bool plot) {
    const auto model = mo.model();
    const auto rec = bohm::integrate(model, x0, y0, io.config());
    const auto d = out_dir(dir);
    const auto csv = (d / "trajectory.csv").string();
    {
        std::ofstream f(csv);
        f << "t,x,y\n";
        for (const auto& s : rec.samples)
            f << num(s.t) << ',' << num(s.x) << ',' << num(s.y) << '\n';
    }
    std::vector<std::string> outs = {csv};
    if (plot) {
        emit_plot(csv, "path", (d / "trajectory.svg").string());
        outs.push_back((d / "trajectory.svg").string());
    }
    json in = {{"model", mo.describe()}, {"integ", io.describe()}, {"x0", x0}, {"y0", y0}};
    write_manifest(d, "trajectory", in, outs);
    std::printf("trajectory: %zu samples, x in [%s, %s], y in [%s, %s]\n", rec.samples.size(),
                num(rec.x_min).c_str(), num(rec.x_max).c_str(), num(rec.y_min).c_str(),
                num(rec.y_max).c_str());
    return 0;
}

int run_lyapunov(const ModelOpts& mo, const IntegOpts& io, double x0, double y0,
                 const std::string& dir, bool plot) {
    const auto model = mo.model();
    auto cfg = io.config();
    const auto res = bohm::lyapunov(model, x0, y0, cfg);
    const auto d = out_dir(dir);
    const auto csv = (d / "chi.csv").string();
    {
        std::ofstream f(csv);
        f << "t,chi\n";
        for (const auto& [t, ln_xi] : res.record.xi_log)
            f << num(t) << ',' << num(ln_xi / t) << '\n';
    }
    const char* cls = res.classification == bohm::TrajectoryClass::Ordered    ? "ordered"
                      : res.classification == bohm::TrajectoryClass::Chaotic ? "chaotic"
                                                                             : "inconclusive";
    std::vector<std::string> outs = {csv};
    if (plot) {
        emit_plot(csv, "loglog-chi", (d / "chi.svg").string());
        outs.push_back((d / "chi.svg").string());
    }
    json in = {{"model", mo.describe()}, {"integ", io.describe()}, {"x0", x0}, {"y0", y0}};
    json extra = {{"chi_end", res.chi_end}, {"slope", res.slope}, {"classification", cls}};
    in["results"] = extra;
    write_manifest(d, "lyapunov", in, outs);
    std::printf("lyapunov: chi(%s) = %s, envelope slope %s, classification %s\n",
                num(io.tend).c_str(), num(res.chi_end).c_str(), num(res.slope).c_str(), cls);
    return 0;
}

int run_nodal_lines(const ModelOpts& mo, double t0, double t1, int nt, double half_window,
                    int resolution, const std::string& dir, bool plot) {
    const auto model = mo.model();
    std::vector<double> ts;
    for (int i = 0; i < nt; ++i) ts.push_back(t0 + (t1 - t0) * i / std::max(nt - 1, 1));
    const bohm::Rect window{-half_window, half_window, -half_window, half_window};
    const auto pts = model.nodal_lines(ts, window, resolution);
    const auto d = out_dir(dir);
    const auto csv = (d / "nodal_lines.csv").string();
    {
        std::ofstream f(csv);
        f << "t,x,y\n";
        for (const auto& p : pts) f << num(p.t) << ',' << num(p.x) << ',' << num(p.y) << '\n';
    }
    std::vector<std::string> outs = {csv};
    if (plot) {
        emit_plot(csv, "path", (d / "nodal_lines.svg").string());
        outs.push_back((d / "nodal_lines.svg").string());
    }
    json in = {{"model", mo.describe()}, {"t0", t0},
               {"t1", t1},               {"nt", nt},
               {"window", half_window},  {"resolution", resolution}};
    write_manifest(d, "nodal-lines", in, outs);
    std::printf("nodal-lines: %zu points\n", pts.size());
    return 0;
}

int run_node_events(const ModelOpts& mo, const IntegOpts& io, double x0, double y0,
                    const std::string& dir) {
    const auto model = mo.model();
    const auto rec = bohm::integrate(model, x0, y0, io.config());
    const auto events = bohm::node_distance_events(model, rec);
    const auto d = out_dir(dir);
    const auto csv = (d / "node_events.csv").string();
    double floor = std::numeric_limits<double>::infinity();
    {
        std::ofstream f(csv);
        f << "t,u,v,d\n";
        for (const auto& e : events) {
            f << num(e.t) << ',' << num(e.u) << ',' << num(e.v) << ',' << num(e.d()) << '\n';
            floor = std::min(floor, e.d());
        }
    }
    json in = {{"model", mo.describe()}, {"integ", io.describe()}, {"x0", x0}, {"y0", y0}};
    write_manifest(d, "node-events", in, {csv});
    std::printf("node-events: %zu minima, closest approach %s\n", events.size(),
                events.empty() ? "n/a" : num(floor).c_str());
    return 0;
}

int run_series(const ModelOpts& mo, const std::string& family, double x0, double y0, int order,
               const std::string& dir) {
    const auto spec = mo.spec();
    bohm::SeriesSolution sol;
    bool convergent = true;
    if (family == "inner") {
        const auto r = bohm::inner_series_b0(spec.params.a, x0, order, spec.params.c);
        sol = r.solution;
        convergent = r.convergent;
    } else {
        sol = bohm::outer_series(spec.params.a, spec.params.b, spec.params.c, x0, y0, order);
    }
    const auto d = out_dir(dir);
    const auto terms_path = (d / "series_terms.txt").string();
    {
        std::ofstream f(terms_path);
        f << bohm::dump_series(sol);
    }
    const auto csv = (d / "series_eval.csv").string();
    {
        std::ofstream f(csv);
        f << "t,x,y\n";
        for (int i = 0; i <= 2000; ++i) {
            const double t = 0.05 * i;
            f << num(t) << ',' << num(sol.eval_x(t)) << ',' << num(sol.eval_y(t)) << '\n';
        }
    }
    json in = {{"model", mo.describe()}, {"family", family}, {"x0", x0},
               {"y0", y0},              {"order", order}};
    in["results"] = {{"convergent", convergent}};
    write_manifest(d, "series", in, {terms_path, csv});
    std::printf("series: order %d, %s\n", order, convergent ? "convergent" : "divergent");
    return 0;
}

int run_series_table(const ModelOpts& mo, const std::vector<double>& x0s, double dt,
                     const std::string& dir) {
    const auto spec = mo.spec();
    const auto model = mo.model();
    const auto d = out_dir(dir);
    const auto csv = (d / "series_table.csv").string();
    std::ofstream f(csv);
    f << "x0,x_max_4,x_min_4,y_max_4,y_min_4,x_max_15,x_min_15,y_max_15,y_min_15,"
         "x_max_num,x_min_num,y_max_num,y_min_num\n";
    for (double x0 : x0s) {
        const auto e4 = bohm::series_extrema(
            bohm::outer_series(spec.params.a, spec.params.b, spec.params.c, x0, x0, 4));
        const auto e15 = bohm::series_extrema(
            bohm::outer_series(spec.params.a, spec.params.b, spec.params.c, x0, x0, 15));
        bohm::IntegratorConfig cfg;
        cfg.dt = dt;
        cfg.t_end = 1e3;
        cfg.sample_dt = 0.0;
        const auto rec = bohm::integrate(model, x0, x0, cfg);
        f << num(x0) << ',' << num(e4.x_max) << ',' << num(e4.x_min) << ',' << num(e4.y_max)
          << ',' << num(e4.y_min) << ',' << num(e15.x_max) << ',' << num(e15.x_min) << ','
          << num(e15.y_max) << ',' << num(e15.y_min) << ',' << num(rec.x_max) << ','
          << num(rec.x_min) << ',' << num(rec.y_max) << ',' << num(rec.y_min) << '\n';
    }
    json in = {{"model", mo.describe()}, {"x0", x0s}, {"dt", dt}};
    write_manifest(d, "series-table", in, {csv});
    std::printf("series-table: %zu rows -> %s\n", x0s.size(), csv.c_str());
    return 0;
}

int run_relax(const ModelOpts& mo, const IntegOpts& io, const std::string& mode,
              std::uint64_t seed, double cx, double cy, double side, int per_side,
              std::size_t n_born, double sample_every, const std::string& halfplane,
              const std::string& dir, bool plot, bool dump_grid) {
    const auto model = mo.model();
    bohm::Ensemble ens = mode == "born"
                             ? bohm::sample_born(model, 0.0, n_born, seed)
                             : bohm::grid_box(cx, cy, side, per_side);
    bohm::RelaxationConfig cfg;
    cfg.integ = io.config();
    if (halfplane == "pos") cfg.halfplane = bohm::Halfplane::PositiveX;
    if (halfplane == "neg") cfg.halfplane = bohm::Halfplane::NegativeX;
    std::vector<double> ts;
    for (double t = 0.0; t <= io.tend + 1e-9; t += sample_every) ts.push_back(t);
    const auto res = bohm::relaxation_run(model, ens, cfg, ts);

    const auto d = out_dir(dir);
    const auto csv = (d / "metrics.csv").string();
    {
        std::ofstream f(csv);
        f << (cfg.halfplane ? "t,D,H_s,D_bar\n" : "t,D,H_s\n");
        for (const auto& s : res.samples) {
            f << num(s.t) << ',' << num(s.d) << ',' << num(s.h_s);
            if (cfg.halfplane) f << ',' << num(s.d_bar ? *s.d_bar : 0.0);
            f << '\n';
        }
    }
    const auto snap = (d / "ensemble_final.csv").string();
    {
        std::ofstream f(snap);
        f << "t,particle_id,x,y\n";
        for (std::size_t i = 0; i < res.x.size(); ++i)
            if (res.alive[i])
                f << num(io.tend) << ',' << i << ',' << num(res.x[i]) << ',' << num(res.y[i])
                  << '\n';
    }
    std::vector<std::string> outs = {csv, snap};
    if (dump_grid) {
        auto grid = bohm::make_density_grid();
        bohm::fill_psi2(model, io.tend, grid);
        bohm::Ensemble fin;
        for (std::size_t i = 0; i < res.x.size(); ++i)
            if (res.alive[i]) {
                fin.x.push_back(res.x[i]);
                fin.y.push_back(res.y[i]);
            }
        bohm::smoothed_density(fin, grid);
        const auto gpath = (d / "grid.csv").string();
        std::ofstream f(gpath);
        f << "x,y,P_s,psi2\n";
        for (int l = 0; l < grid.n; ++l)
            for (int k = 0; k < grid.n; ++k)
                f << num(grid.coord[k]) << ',' << num(grid.coord[l]) << ','
                  << num(grid.ps_at(k, l)) << ',' << num(grid.psi2_at(k, l)) << '\n';
        outs.push_back(gpath);
        if (plot) {
            emit_plot(gpath, "contour", (d / "grid.svg").string());
            outs.push_back((d / "grid.svg").string());
        }
    }
    if (plot) {
        emit_plot(csv, "metrics", (d / "metrics.svg").string());
        outs.push_back((d / "metrics.svg").string());
    }
    json in = {{"model", mo.describe()},
               {"integ", io.describe()},
               {"mode", mode},
               {"seed", seed},
               {"box", {{"cx", cx}, {"cy", cy}, {"side", side}, {"per_side", per_side}}},
               {"n_born", n_born},
               {"sample_every", sample_every},
               {"halfplane", halfplane}};
    in["results"] = {{"failed", res.failed},
                     {"d_final", res.samples.back().d},
                     {"h_final", res.samples.back().h_s}};
    write_manifest(d, "relax", in, outs);
    std::printf("relax: %zu samples, D(end) = %s, H_s(end) = %s, failed %zu\n",
                res.samples.size(), num(res.samples.back().d).c_str(),
                num(res.samples.back().h_s).c_str(), res.failed);
    return 0;
}

int run_section(const ModelOpts& mo, double dt, double cx, double cy, double side, int per_side,
                int periods, const std::string& dir, bool plot) {
    const auto model = mo.model();
    const auto box = bohm::grid_box(cx, cy, side, per_side);
    std::vector<std::pair<double, double>> init;
    for (std::size_t i = 0; i < box.size(); ++i) init.emplace_back(box.x[i], box.y[i]);
    bohm::IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.sample_dt = 0.0;
    const auto sections = bohm::stroboscopic_section(model, init, periods, cfg);
    const auto d = out_dir(dir);
    const auto csv = (d / "section.csv").string();
    {
        std::ofstream f(csv);
        f << "traj_id,k,x,y\n";
        for (std::size_t i = 0; i < sections.size(); ++i)
            for (std::size_t k = 0; k < sections[i].size(); ++k)
                f << i << ',' << k << ',' << num(sections[i][k].first) << ','
                  << num(sections[i][k].second) << '\n';
    }
    std::vector<std::string> outs = {csv};
    if (plot) {
        emit_plot(csv, "section", (d / "section.svg").string());
        outs.push_back((d / "section.svg").string());
    }
    json in = {{"model", mo.describe()}, {"dt", dt},
               {"box", {{"cx", cx}, {"cy", cy}, {"side", side}, {"per_side", per_side}}},
               {"periods", periods}};
    write_manifest(d, "section", in, outs);
    std::printf("section: %zu trajectories, %d periods\n", sections.size(), periods);
    return 0;
}

int run_recurrence(const ModelOpts& mo, const IntegOpts& io, double cx, double cy, double side,
                   int per_side, int max_order, double t_budget, const std::string& dir) {
    const auto model = mo.model();
    const auto box = bohm::grid_box(cx, cy, side, per_side);
    std::vector<std::pair<double, double>> ens;
    for (std::size_t i = 0; i < box.size(); ++i) ens.emplace_back(box.x[i], box.y[i]);
    const auto res = bohm::recurrence_analysis(model, ens, max_order, io.config(), t_budget);
    const auto d = out_dir(dir);
    const auto csv = (d / "recurrence.csv").string();
    {
        std::ofstream f(csv);
        f << "order,q,p,T,distance\n";
        for (std::size_t i = 0; i < res.convergents.size(); ++i)
            f << i << ',' << res.convergents[i].first << ',' << res.convergents[i].second << ','
              << num(res.periods[i]) << ',' << num(res.distances[i]) << '\n';
    }
    json in = {{"model", mo.describe()},
               {"integ", io.describe()},
               {"box", {{"cx", cx}, {"cy", cy}, {"side", side}, {"per_side", per_side}}},
               {"max_order", max_order},
               {"t_budget", t_budget}};
    in["results"] = {{"gamma", res.gamma}, {"bound_constant", res.bound_constant}};
    write_manifest(d, "recurrence", in, {csv});
    std::printf("recurrence: %zu convergents, gamma = %s, C = %s\n", res.convergents.size(),
                num(res.gamma).c_str(), num(res.bound_constant).c_str());
    return 0;
}

int run_hh_spectrum(double omega1, double omega2, double epsilon, int K, int n_print,
                    const std::string& dir) {
    const auto sp = bohm::build_spectrum(omega1, omega2, epsilon, K);
    const auto d = out_dir(dir);
    const auto spath = (d / "spectrum.txt").string();
    bohm::save_spectrum(sp, spath);
    const auto csv = (d / "eigenvalues.csv").string();
    {
        std::ofstream f(csv);
        f << "i,n,m,E\n";
        const int lim = std::min<std::size_t>(n_print, sp.eigenvalues.size());
        for (int i = 0; i < lim; ++i)
            f << i << ',' << sp.labels[i].first << ',' << sp.labels[i].second << ','
              << num(sp.eigenvalues[i]) << '\n';
    }
    json in = {{"omega1", omega1}, {"omega2", omega2}, {"epsilon", epsilon}, {"K", K}};
    write_manifest(d, "hh-spectrum", in, {spath, csv});
    std::printf("hh-spectrum: K = %d, E(0,0) = %s\n", K, num(sp.eigenvalues[0]).c_str());
    return 0;
}

void emit_plot(const std::string& csv, const std::string& kind, const std::string& out) {
    std::string header;
    const auto rows = read_csv(csv, header);
    auto need = [&](const std::string& h) {
        if (header != h)
            throw bohm::SchemaMismatch("plot kind expects header '" + h + "', got '" + header +
                                       "'");
    };
    bohm::svg::Figure fig;
    if (kind == "path") {
        need("t,x,y");
        bohm::svg::Series s;
        for (const auto& r : rows) s.pts.emplace_back(std::stod(r[1]), std::stod(r[2]));
        fig = {"trajectory", "x", "y"};
        fig.series.push_back(std::move(s));
    } else if (kind == "loglog-chi") {
        need("t,chi");
        bohm::svg::Series s;
        s.label = "chi(t)";
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (const auto& r : rows) {
            const double t = std::stod(r[0]), chi = std::stod(r[1]);
            s.pts.emplace_back(t, chi);
            if (t > 0 && chi > 0) {
                const double lx = std::log10(t), ly = std::log10(chi);
                sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
                ++n;
            }
        }
        fig = {"finite-time Lyapunov exponent", "t", "chi"};
        fig.log_x = fig.log_y = true;
        fig.series.push_back(std::move(s));
        if (n >= 2) {
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            const double inter = (sy - slope * sx) / n;
            char buf[64];
            std::snprintf(buf, sizeof buf, "fit slope %.3f", slope);
            fig.legend_extra = buf;
            fig.guide = true;
            fig.guide_slope = -1.0;
            // Anchor the -1 guide at the fit's midpoint.
            fig.guide_offset = std::pow(10.0, inter + (slope + 1.0) * sx / std::max(n, 1));
        }
    } else if (kind == "contour") {
        need("x,y,P_s,psi2");
        std::vector<double> x, y, v;
        for (const auto& r : rows) {
            x.push_back(std::stod(r[0]));
            y.push_back(std::stod(r[1]));
            v.push_back(std::stod(r[2]));
        }
        bohm::svg::write_heatmap(x, y, v, "smoothed density P_s", out);
        return;
    } else if (kind == "section") {
        need("traj_id,k,x,y");
        std::map<int, bohm::svg::Series> per;
        const char* palette[] = {"#1f4e9c", "#b03030", "#2e7d32", "#7b1fa2", "#e65100"};
        for (const auto& r : rows) {
            const int id = std::stoi(r[0]);
            auto& s = per[id];
            s.scatter = true;
            s.color = palette[id % 5];
            s.pts.emplace_back(std::stod(r[2]), std::stod(r[3]));
        }
        fig = {"stroboscopic section", "x", "y"};
        for (auto& [id, s] : per) fig.series.push_back(std::move(s));
    } else if (kind == "metrics") {
        if (header != "t,D,H_s" && header != "t,D,H_s,D_bar")
            throw bohm::SchemaMismatch("metrics plot expects t,D,H_s[,D_bar], got '" + header +
                                       "'");
        bohm::svg::Series d, h;
        d.label = "D(t)";
        h.label = "H_s(t)";
        h.dashed = true;
        h.color = "#b03030";
        bohm::svg::Series dbar;
        dbar.label = "D_bar(t)";
        dbar.color = "#2e7d32";
        const bool has_bar = header == "t,D,H_s,D_bar";
        for (const auto& r : rows) {
            const double t = std::stod(r[0]);
            d.pts.emplace_back(t, std::stod(r[1]));
            h.pts.emplace_back(t, std::stod(r[2]));
            if (has_bar) dbar.pts.emplace_back(t, std::stod(r[3]));
        }
        fig = {"relaxation metrics", "t", "value"};
        fig.series.push_back(std::move(d));
        fig.series.push_back(std::move(h));
        if (has_bar) fig.series.push_back(std::move(dbar));
    } else {
        throw bohm::ConfigError("unknown plot kind: " + kind);
    }
    bohm::svg::write_figure(fig, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bohmian trajectory and quantum relaxation toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    ModelOpts mo;
    IntegOpts io;
    std::string dir = "out";
    bool plot = false;
    double x0 = 1.0, y0 = 1.0;

    auto add_common = [&](CLI::App* cmd, bool with_integ = true, bool with_xy = true) {
        mo.attach(cmd);
        if (with_integ) io.attach(cmd);
        if (with_xy) {
            cmd->add_option("--x0", x0);
            cmd->add_option("--y0", y0);
        }
        cmd->add_option("--out", dir, "output directory");
        cmd->add_flag("--plot", plot, "also emit SVG plots");
    };

    auto* c_traj = app.add_subcommand("trajectory", "integrate one trajectory");
    add_common(c_traj);

    auto* c_lyap = app.add_subcommand("lyapunov", "finite-time Lyapunov exponent");
    add_common(c_lyap);

    auto* c_nodal = app.add_subcommand("nodal-lines", "nodal curves over a time window");
    double nl_t0 = 0.0, nl_t1 = 20.0, nl_win = 10.0;
    int nl_nt = 200, nl_res = 400;
    c_nodal->add_option("--t0", nl_t0);
    c_nodal->add_option("--t1", nl_t1);
    c_nodal->add_option("--nt", nl_nt);
    c_nodal->add_option("--window", nl_win, "half width of the search square");
    c_nodal->add_option("--resolution", nl_res);
    add_common(c_nodal, false, false);

    auto* c_events = app.add_subcommand("node-events", "nodal close-approach minima");
    add_common(c_events);

    auto* c_series = app.add_subcommand("series", "trigonometric series solution");
    std::string family = "outer";
    int order = 15;
    c_series->add_option("--family", family)->check(CLI::IsMember({"inner", "outer"}));
    c_series->add_option("--order", order);
    add_common(c_series, false);

    auto* c_table = app.add_subcommand("series-table", "series vs numerical extrema");
    std::vector<double> x0s = {3.4, 3.2, 3.0};
    double table_dt = 1e-3;
    c_table->add_option("--x0", x0s, "diagonal initial conditions")->expected(-1);
    c_table->add_option("--dt", table_dt);
    add_common(c_table, false, false);

    auto* c_relax = app.add_subcommand("relax", "ensemble relaxation metrics");
    std::string mode = "born", halfplane = "none";
    std::uint64_t seed = 1;
    double cx = 1.0, cy = 1.0, side = 0.2, sample_every = 1.0;
    int per_side = 31;
    std::size_t n_born = 961;
    bool dump_grid = false;
    c_relax->add_option("--mode", mode)->check(CLI::IsMember({"born", "box"}));
    c_relax->add_option("--seed", seed);
    c_relax->add_option("--cx", cx);
    c_relax->add_option("--cy", cy);
    c_relax->add_option("--side", side);
    c_relax->add_option("--per-side", per_side);
    c_relax->add_option("--n", n_born, "particle count for born mode");
    c_relax->add_option("--sample-every", sample_every);
    c_relax->add_option("--halfplane", halfplane)->check(CLI::IsMember({"none", "pos", "neg"}));
    c_relax->add_flag("--dump-grid", dump_grid, "write the final density grid");
    add_common(c_relax);

    auto* c_section = app.add_subcommand("section", "stroboscopic surface of section");
    int periods = 500;
    double sec_dt = 1e-3;
    c_section->add_option("--periods", periods);
    c_section->add_option("--dt", sec_dt);
    c_section->add_option("--cx", cx);
    c_section->add_option("--cy", cy);
    c_section->add_option("--side", side);
    c_section->add_option("--per-side", per_side);
    add_common(c_section, false, false);

    auto* c_rec = app.add_subcommand("recurrence", "continued-fraction recurrence analysis");
    int max_order = 4;
    double t_budget = 1e4;
    c_rec->add_option("--max-order", max_order);
    c_rec->add_option("--t-budget", t_budget);
    c_rec->add_option("--cx", cx);
    c_rec->add_option("--cy", cy);
    c_rec->add_option("--side", side);
    c_rec->add_option("--per-side", per_side);
    add_common(c_rec);

    auto* c_hh = app.add_subcommand("hh-spectrum", "perturbed oscillator spectrum");
    double omega1 = 1.0, omega2 = std::sqrt(2.0) / 2.0, epsilon = 0.1118034;
    int K = 200, n_print = 20;
    c_hh->add_option("--omega1", omega1);
    c_hh->add_option("--omega2", omega2);
    c_hh->add_option("--epsilon", epsilon);
    c_hh->add_option("--K", K);
    c_hh->add_option("--n-print", n_print);
    c_hh->add_option("--out", dir);

    auto* c_plot = app.add_subcommand("plot", "render a CSV artifact as SVG");
    std::string plot_csv, plot_kind = "path", plot_out = "plot.svg";
    c_plot->add_option("--csv", plot_csv)->required();
    c_plot->add_option("--kind", plot_kind)
        ->check(CLI::IsMember({"path", "loglog-chi", "contour", "section", "metrics"}));
    c_plot->add_option("--svg", plot_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*c_traj) return run_trajectory(mo, io, x0, y0, dir, plot);
        if (*c_lyap) return run_lyapunov(mo, io, x0, y0, dir, plot);
        if (*c_nodal) return run_nodal_lines(mo, nl_t0, nl_t1, nl_nt, nl_win, nl_res, dir, plot);
        if (*c_events) return run_node_events(mo, io, x0, y0, dir);
        if (*c_series) return run_series(mo, family, x0, y0, order, dir);
        if (*c_table) return run_series_table(mo, x0s, table_dt, dir);
        if (*c_relax)
            return run_relax(mo, io, mode, seed, cx, cy, side, per_side, n_born, sample_every,
                             halfplane, dir, plot, dump_grid);
        if (*c_section) return run_section(mo, sec_dt, cx, cy, side, per_side, periods, dir, plot);
        if (*c_rec)
            return run_recurrence(mo, io, cx, cy, side, per_side, max_order, t_budget, dir);
        if (*c_hh) return run_hh_spectrum(omega1, omega2, epsilon, K, n_print, dir);
        if (*c_plot) {
            emit_plot(plot_csv, plot_kind, plot_out);
            std::printf("plot: %s -> %s\n", plot_csv.c_str(), plot_out.c_str());
            return 0;
        }
    } catch (const bohm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const bohm::SchemaMismatch& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const bohm::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
