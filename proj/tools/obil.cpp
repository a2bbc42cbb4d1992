#include <cmath>
#include <fstream>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ob/analysis.hpp"
#include "ob/billiard.hpp"
#include "ob/io.hpp"
#include "ob/moebius.hpp"
#include "ob/rotation.hpp"

namespace {

using namespace ob;

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw ValidationError("cannot open output file: " + path);
    return file;
}

// Resolves --area / --a / --normalized into an absolute cut area.
struct AreaArg {
    double area = -1.0; // A
    double two_a = -1.0; // a = 2A
    bool normalized = false;

    void add(CLI::App* cmd, bool required = true) {
        auto* opt_area = cmd->add_option("--area", area, "cut area A");
        auto* opt_a = cmd->add_option("--a", two_a, "area parameter a = 2A");
        cmd->add_flag("--normalized", normalized, "interpret areas as fractions of S");
        opt_area->excludes(opt_a);
        if (required) {
            // one of the two must be present; checked in resolve()
        }
    }
    double resolve(const Polygon& poly) const {
        double A;
        if (area >= 0.0)
            A = area;
        else if (two_a >= 0.0)
            A = 0.5 * two_a;
        else
            throw ValidationError("one of --area or --a is required");
        if (normalized) A *= poly.area();
        return A;
    }
};

void cmd_staircase(const std::string& poly_path, double a_lo, double a_hi, int samples,
                   long iters, long qmax, int grid, int jobs, bool normalized,
                   const std::string& out_path) {
    Polygon poly = load_polygon_json(poly_path);
    if (normalized) {
        a_lo *= poly.area();
        a_hi *= poly.area();
    }
    SweepOptions opts;
    opts.iters = iters;
    opts.q_max = qmax;
    opts.grid = grid;
    opts.jobs = jobs;
    auto rows = staircase_sweep(poly, a_lo, a_hi, samples, opts);

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "A,A_over_S,tau,p,q,exact\n";
    for (const auto& r : rows) {
        out << fmt_double(r.A) << ',' << fmt_double(r.A_over_S) << ',' << fmt_double(r.tau)
            << ',';
        if (r.exact)
            out << r.p << ',' << r.q;
        else
            out << ',';
        out << ',' << (r.exact ? 1 : 0) << '\n';
    }
}

void cmd_orbit(const std::string& poly_path, const AreaArg& area, double start, int steps,
               const std::string& out_path) {
    Polygon poly = load_polygon_json(poly_path);
    MapConfig cfg(poly, area.resolve(poly));
    OrbitRecord orb = orbit(cfg, start, steps);
    std::vector<ChordRecord> marks = chord_marks(poly, orb);

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "step,side,t,s_lift,x,y,derivative,sigma\n";
    for (size_t i = 0; i < orb.points.size(); ++i) {
        const BoundaryPoint& bp = orb.points[i];
        double df = 0.0;
        int sg = 0;
        if (i < marks.size()) {
            sg = marks[i].sigma;
            try {
                df = derivative(cfg, bp);
            } catch (const VertexNonSmooth&) {
                const double h = 1e-7;
                df = (phi_lift(cfg, orb.lift_values[i] + h) -
                      phi_lift(cfg, orb.lift_values[i] - h)) /
                     (2.0 * h);
            }
        }
        out << i << ',' << bp.side << ',' << fmt_double(bp.t) << ','
            << fmt_double(orb.lift_values[i]) << ',' << fmt_double(bp.xy.x) << ','
            << fmt_double(bp.xy.y) << ',';
        if (i < marks.size())
            out << fmt_double(df) << ',' << sg;
        else
            out << ',';
        out << '\n';
    }
}

void cmd_rotnum(const std::string& poly_path, const AreaArg& area, long iters, long qmax,
                int grid) {
    Polygon poly = load_polygon_json(poly_path);
    MapConfig cfg(poly, area.resolve(poly));
    RotationOptions opts;
    opts.iters = iters;
    opts.q_max = qmax;
    opts.grid = grid;
    RotationEstimate est = rotation_number(cfg, opts);
    if (est.exact) {
        std::cout << "exact " << est.p << "/" << est.q << " tau=" << fmt_double(est.value)
                  << " witness_s=" << fmt_double(est.witness->s) << " witness_xy=("
                  << fmt_double(est.witness->xy.x) << "," << fmt_double(est.witness->xy.y)
                  << ")\n";
    } else {
        std::cout << "longrun tau=" << fmt_double(est.value)
                  << " error_bound=" << fmt_double(est.error_bound)
                  << " iterations=" << est.iterations << "\n";
    }
}

void cmd_plateau(const std::string& poly_path, long p, long q, double a1, double a2,
                 double tol, bool normalized) {
    Polygon poly = load_polygon_json(poly_path);
    if (normalized) {
        a1 *= poly.area();
        a2 *= poly.area();
    }
    auto [lo, hi] = plateau_bounds(poly, p, q, a1, a2, tol);
    std::cout << "plateau " << p << "/" << q << " A_lo=" << fmt_double(lo)
              << " A_hi=" << fmt_double(hi) << "\n";
}

void cmd_verify(const std::string& poly_path, const AreaArg& area, double start, double h,
                int steps, const std::string& out_path) {
    Polygon poly = load_polygon_json(poly_path);
    MapConfig cfg(poly, area.resolve(poly));
    OrbitRecord orb = orbit(cfg, start, steps);
    std::vector<ChordRecord> marks = chord_marks(poly, orb);

    nlohmann::json report;
    report["area"] = cfg.area;
    report["start"] = start;
    report["steps"] = steps;
    report["winding"] = orb.winding;
    report["derivative_product"] = orb.derivative_product;

    bool cyclic = std::abs(orb.lift_values.back() - orb.lift_values.front() -
                           std::round(orb.lift_values.back() - orb.lift_values.front())) <= 1e-9;
    report["closed"] = cyclic;

    std::vector<int> sigmas;
    for (const auto& m : marks) sigmas.push_back(m.sigma);
    report["sigma"] = sigmas;

    auto v1 = verify_lemma1(marks, cyclic);
    report["lemma1"] = {{"pass", v1.empty()}, {"violations", v1}};

    try {
        DeformationRecord def = deformation_velocities(cfg, orb, h);
        double worst = 0.0;
        for (size_t j = 0; j + 1 < def.velocities.size(); ++j) {
            double fd_ratio = def.velocities[j + 1] / def.velocities[j];
            worst = std::max(worst, std::abs(fd_ratio - def.analytic_ratios[j]));
        }
        report["lemma3"] = {{"pass", worst <= 1e-5}, {"max_ratio_error", worst}};
    } catch (const VertexNonSmooth& e) {
        report["lemma3"] = {{"pass", false}, {"error", e.what()}};
    }

    try {
        Lemma2Report l2 = verify_lemma2(cfg, orb, h);
        report["lemma2"] = {{"pass", l2.pass},
                            {"max_product_variation", l2.max_product_variation},
                            {"max_sum_variation", l2.max_sum_variation}};
    } catch (const VertexNonSmooth& e) {
        report["lemma2"] = {{"pass", false}, {"error", e.what()}};
    }

    try {
        Lemma4Report l4 = verify_lemma4(cfg, orb, h);
        report["lemma4"] = {{"pass", l4.violations == 0 && l4.same_side_confirmed},
                            {"checked", l4.checked},
                            {"violations", l4.violations},
                            {"equality_cases", l4.equality_cases},
                            {"same_side_confirmed", l4.same_side_confirmed}};
    } catch (const VertexNonSmooth& e) {
        report["lemma4"] = {{"pass", false}, {"error", e.what()}};
    }

    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << report.dump(2) << "\n";
}

void print_chain(const MarkedConfig& cfg, const std::vector<ProjMap>& maps, double u0) {
    const size_t n = cfg.lines.size();
    double u = u0;
    std::cout << "  " << (std::isinf(u) ? std::string("inf") : fmt_double(u));
    for (size_t k = 0; k < n; ++k) {
        u = maps[k].apply(u);
        std::cout << " -> " << (std::isinf(u) ? std::string("inf") : fmt_double(u));
    }
    std::cout << "\n";
}

void cmd_counterexample(const std::string& which, double perturb) {
    MarkedConfig cfg = which == "triangle" ? triangle_config() : parallelogram_config();
    if (perturb != 0.0) {
        // move M2 along its own line
        size_t idx = 1;
        const ChartedLine& l = cfg.lines[idx];
        Vec2 moved = cfg.marked[idx] + perturb * l.dir;
        for (auto& pair : cfg.calibration) {
            if (dist(pair.first, cfg.marked[idx]) < 1e-14) pair.first = moved;
            if (dist(pair.second, cfg.marked[idx]) < 1e-14) pair.second = moved;
        }
        cfg.marked[idx] = moved;
    }
    std::vector<ProjMap> maps = config_maps(cfg, true);
    ProjMap total = compose(maps);
    std::cout << "composition = [[" << fmt_double(total.m00) << ", " << fmt_double(total.m01)
              << "], [" << fmt_double(total.m10) << ", " << fmt_double(total.m11) << "]]\n";
    std::cout << "identity_distance = " << fmt_double(total.identity_distance()) << "\n";
    std::cout << "is_identity(1e-9) = " << (is_identity(total, 1e-9) ? "yes" : "no") << "\n";
    std::cout << "chains (chart coordinates on l1 ... back to l1):\n";
    print_chain(cfg, maps, cfg.lines[0].coord(cfg.calibration[0].first));
    print_chain(cfg, maps, std::numeric_limits<double>::infinity());
    for (const Vec2& I : cfg.intersections) {
        // every intersection lying on l1 seeds a documented chain
        if (std::abs(cross(I - cfg.lines[0].origin, cfg.lines[0].dir)) < 1e-12)
            print_chain(cfg, maps, cfg.lines[0].coord(I));
    }
}

void cmd_table(const std::string& poly_path, const AreaArg& area, int n_samples, double start,
               const std::string& out_path) {
    Polygon poly = load_polygon_json(poly_path);
    MapConfig cfg(poly, area.resolve(poly));
    std::ofstream file;
    std::ostream& out = open_out(file, out_path);
    out << "i,s,x,y\n";
    for (int i = 0; i < n_samples; ++i) {
        double s = start + static_cast<double>(i) / n_samples;
        Vec2 m = envelope_midpoint(cfg, point_at(poly, s));
        out << i << ',' << fmt_double(s) << ',' << fmt_double(m.x) << ',' << fmt_double(m.y)
            << '\n';
    }
}

void cmd_fake_orbit(const std::string& poly_path, const std::string& areas_csv, long p,
                    double b_lo, double b_hi, bool normalized) {
    Polygon poly = load_polygon_json(poly_path);
    std::vector<double> areas;
    std::stringstream ss(areas_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) areas.push_back(std::stod(tok));
    if (normalized)
        for (double& a : areas) a *= poly.area();

    OrbitRecord orb = fake_orbit(poly, areas, p, {b_lo, b_hi});
    std::cout << "closed fake orbit: s0=" << fmt_double(orb.lift_values.front())
              << " winding=" << orb.winding
              << " derivative_product=" << fmt_double(orb.derivative_product) << "\n";
    for (size_t i = 0; i < orb.points.size(); ++i) {
        const BoundaryPoint& bp = orb.points[i];
        std::cout << "  step " << i << ": side=" << bp.side << " t=" << fmt_double(bp.t)
                  << " xy=(" << fmt_double(bp.xy.x) << "," << fmt_double(bp.xy.y) << ")\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"constant-area chord maps on convex polygons: rotation numbers, "
                 "staircase sweeps, lemma verification, Moebius counterexamples"};
    app.require_subcommand(1);

    std::string poly_path, out_path, which, areas_csv;
    double a_lo = 0.02, a_hi = 0.48, start = 0.0, tol = 1e-6, h = 1e-6;
    double b_lo = 0.0, b_hi = 1.0, perturb = 0.0, p1 = 0.0, p2 = 0.0;
    int samples = 500, steps = 16, grid = 64, jobs = 1, n_samples = 400;
    long iters = 200000, qmax = 200, p = 1, q = 4;
    bool normalized = false;
    AreaArg area;

    auto* sc = app.add_subcommand("staircase", "rotation number sweep over A, CSV output");
    sc->add_option("--polygon", poly_path)->required();
    sc->add_option("--a-lo", a_lo)->required();
    sc->add_option("--a-hi", a_hi)->required();
    sc->add_option("--samples", samples);
    sc->add_option("--iters", iters);
    sc->add_option("--qmax", qmax);
    sc->add_option("--grid", grid);
    sc->add_option("--jobs", jobs);
    sc->add_flag("--normalized", normalized);
    sc->add_option("--out", out_path);

    auto* oc = app.add_subcommand("orbit", "iterate the map and dump the orbit as CSV");
    oc->add_option("--polygon", poly_path)->required();
    area.add(oc);
    oc->add_option("--start", start);
    oc->add_option("--steps", steps);
    oc->add_option("--out", out_path);

    auto* rc = app.add_subcommand("rotnum", "rotation number at one area value");
    rc->add_option("--polygon", poly_path)->required();
    AreaArg rarea;
    rarea.add(rc);
    rc->add_option("--iters", iters);
    rc->add_option("--qmax", qmax);
    rc->add_option("--grid", grid);

    auto* pc = app.add_subcommand("plateau", "bisect the p/q plateau edges inside a bracket");
    pc->add_option("--polygon", poly_path)->required();
    pc->add_option("--p", p)->required();
    pc->add_option("--q", q)->required();
    pc->add_option("--a1", p1)->required();
    pc->add_option("--a2", p2)->required();
    pc->add_option("--tol", tol);
    pc->add_flag("--normalized", normalized);

    auto* vc = app.add_subcommand("verify", "run the lemma checks on one orbit, JSON report");
    vc->set_help_flag("--help", "print help"); // frees -h for the step size
    vc->add_option("--polygon", poly_path)->required();
    AreaArg varea;
    varea.add(vc);
    vc->add_option("--start", start);
    vc->add_option("-h,--h", h);
    vc->add_option("--steps", steps);
    vc->add_option("--out", out_path);

    auto* cc = app.add_subcommand("counterexample",
                                  "identity compositions of line-to-line area maps");
    cc->add_option("config", which)->required()->check(CLI::IsMember({"triangle", "parallelogram"}));
    cc->add_option("--perturb", perturb);

    auto* tc = app.add_subcommand("table", "envelope (table boundary) points as CSV");
    tc->add_option("--polygon", poly_path)->required();
    AreaArg tarea;
    tarea.add(tc);
    tc->add_option("--n", n_samples);
    tc->add_option("--start", start);
    tc->add_option("--out", out_path);

    auto* fc = app.add_subcommand("fake-orbit", "close an orbit with a prescribed area list");
    fc->add_option("--polygon", poly_path)->required();
    fc->add_option("--areas", areas_csv)->required();
    fc->add_option("--p", p);
    fc->add_option("--bracket-lo", b_lo);
    fc->add_option("--bracket-hi", b_hi);
    fc->add_flag("--normalized", normalized);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sc->parsed())
            cmd_staircase(poly_path, a_lo, a_hi, samples, iters, qmax, grid, jobs, normalized,
                          out_path);
        else if (oc->parsed())
            cmd_orbit(poly_path, area, start, steps, out_path);
        else if (rc->parsed())
            cmd_rotnum(poly_path, rarea, iters, qmax, grid);
        else if (pc->parsed())
            cmd_plateau(poly_path, p, q, p1, p2, tol, normalized);
        else if (vc->parsed())
            cmd_verify(poly_path, varea, start, h, steps, out_path);
        else if (cc->parsed())
            cmd_counterexample(which, perturb);
        else if (tc->parsed())
            cmd_table(poly_path, tarea, n_samples, start, out_path);
        else if (fc->parsed())
            cmd_fake_orbit(poly_path, areas_csv, p, b_lo, b_hi, normalized);
    } catch (const ob::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ob::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
