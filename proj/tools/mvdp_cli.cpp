// mvdp: oscillator equilibria, phase portraits, saddle-connection detection,
// and Z2 connection/transition-matrix certificates.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mvdp/report.hpp"
#include "mvdp/scenario.hpp"

namespace fs = std::filesystem;
using namespace mvdp;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid_input = 2;
constexpr int exit_numerical = 3;

fs::path resolve_output(const std::string& name) {
    fs::path p(name);
    if (p.is_absolute())
        return p;
    if (const char* dir = std::getenv("MVDP_OUTPUT_DIR"))
        return fs::path(dir) / p;
    return p;
}

void emit(const Json& bundle, const std::string& output) {
    const std::string text = bundle.dump() + "\n";
    if (output.empty()) {
        std::cout << text;
        return;
    }
    const fs::path path = resolve_output(output);
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open output file: " + path.string());
    os << text;
}

struct CommonOpts {
    double d = 0.5;
    double e = 2.0;
    double tol = 1e-9;
    double seed_offset = 1e-6;
};

Json common_config(const CommonOpts& c) {
    Json j = Json::object();
    j["d"] = c.d;
    j["e"] = c.e;
    j["tol"] = c.tol;
    j["seed_offset"] = c.seed_offset;
    return j;
}

// ---------------------------------------------------------------- equilibria

int cmd_equilibria(const CommonOpts& c, double theta, const std::string& output) {
    const auto p = SystemParams::make(c.d, c.e, theta);
    Json cfg = common_config(c);
    cfg["theta"] = theta;
    cfg["command"] = "equilibria";
    Json bundle = make_bundle(cfg);
    Json reports = Json::array();
    for (const auto id : all_equilibria)
        reports.push_back(json_equilibrium_report(p, id));
    bundle["equilibria"] = reports;
    emit(bundle, output);
    return exit_ok;
}

// ------------------------------------------------------------------ portrait

struct PortraitOpts {
    double theta = 0.02;
    int grid = 6;
    double tmax = 40.0;
    int samples = 400;
    std::string csv;
    std::string svg;
};

Trajectory resample(const Trajectory& traj, int n) {
    Trajectory out;
    out.forward = traj.forward;
    out.stop = traj.stop;
    if (traj.samples.size() < 2 || n < 2) {
        out.samples = traj.samples;
        return out;
    }
    const double t0 = traj.samples.front().t;
    const double t1 = traj.samples.back().t;
    std::size_t k = 1;
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (t1 - t0) * double(i) / double(n - 1);
        while (k + 1 < traj.samples.size() &&
               (traj.forward ? traj.samples[k].t < t : traj.samples[k].t > t))
            ++k;
        const auto& a = traj.samples[k - 1];
        const auto& b = traj.samples[k];
        const double w = (b.t == a.t) ? 0.0 : (t - a.t) / (b.t - a.t);
        out.samples.push_back({t, State{a.s.x + w * (b.s.x - a.s.x),
                                        a.s.y + w * (b.s.y - a.s.y)}});
    }
    return out;
}

struct Branch {
    int id;
    std::string label;
    Trajectory traj;
};

void write_svg(const fs::path& path, const SystemParams& p, const std::vector<Branch>& branches,
               double xlo, double xhi, double ylo, double yhi) {
    const int W = 800, H = 600;
    auto X = [&](double x) { return (x - xlo) / (xhi - xlo) * (W - 40) + 20; };
    auto Y = [&](double y) { return H - ((y - ylo) / (yhi - ylo) * (H - 40) + 20); };

    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open output file: " + path.string());
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
       << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // direction field on a lattice
    for (int i = 0; i < 24; ++i) {
        for (int j = 0; j < 18; ++j) {
            const double x = xlo + (xhi - xlo) * (i + 0.5) / 24;
            const double y = ylo + (yhi - ylo) * (j + 0.5) / 18;
            const auto v = vector_field(p, {x, y});
            const double n = std::hypot(v.x, v.y);
            if (n < 1e-12)
                continue;
            const double sx = (xhi - xlo) / 60 * v.x / n, sy = (yhi - ylo) / 45 * v.y / n;
            os << "<line x1=\"" << X(x - sx / 2) << "\" y1=\"" << Y(y - sy / 2) << "\" x2=\""
               << X(x + sx / 2) << "\" y2=\"" << Y(y + sy / 2)
               << "\" stroke=\"#c8c8c8\" stroke-width=\"1\"/>\n";
        }
    }

    for (const auto& b : branches) {
        const bool separatrix = b.id >= 1000;
        os << "<polyline fill=\"none\" stroke=\"" << (separatrix ? "#c03020" : "#4060a0")
           << "\" stroke-width=\"" << (separatrix ? 1.8 : 0.8) << "\" points=\"";
        for (const auto& s : b.traj.samples) {
            if (s.s.x < xlo || s.s.x > xhi || s.s.y < ylo || s.s.y > yhi)
                continue;
            os << X(s.s.x) << ',' << Y(s.s.y) << ' ';
        }
        os << "\"/>\n";
    }

    for (const auto& eq : equilibria(p))
        os << "<circle cx=\"" << X(eq.x) << "\" cy=\"" << Y(eq.y)
           << "\" r=\"4\" fill=\"black\"/>\n";
    os << "</svg>\n";
}

int cmd_portrait(const CommonOpts& c, const PortraitOpts& po, const std::string& output) {
    const auto p = SystemParams::make(c.d, c.e, po.theta);
    const double xmin = std::min({0.0, -p.d, -p.e}) - 1.0;
    const double xmax = std::max({0.0, -p.d, -p.e}) + 1.0;
    const double ylo = -1.5, yhi = 1.5;

    std::vector<Branch> branches;
    IntegrateOptions io;
    io.tol = c.tol;
    int id = 0;
    for (int i = 0; i < po.grid; ++i) {
        for (int j = 0; j < po.grid; ++j) {
            const State s0{xmin + (xmax - xmin) * (i + 0.5) / po.grid,
                           ylo + (yhi - ylo) * (j + 0.5) / po.grid};
            auto traj = integrate(p, s0, po.tmax, io);
            char label[64];
            std::snprintf(label, sizeof label, "grid seed (%.3f, %.3f)", s0.x, s0.y);
            branches.push_back({id++, label, resample(traj, po.samples)});
        }
    }

    int sep_id = 1000;
    for (const auto eq_id : all_equilibria) {
        if (classify(p, eq_id).second.kind != Stability::Saddle)
            continue;
        for (const auto kind : {ManifoldKind::Unstable, ManifoldKind::Stable}) {
            for (const auto side : {BranchSide::Plus, BranchSide::Minus}) {
                BranchOptions bo;
                bo.tol = c.tol;
                bo.t_budget = po.tmax;
                auto mb = manifold_branch(p, eq_id, kind, side, c.seed_offset, bo);
                const std::string label =
                    std::string("separatrix ") + to_string(eq_id) +
                    (kind == ManifoldKind::Unstable ? " unstable " : " stable ") +
                    (side == BranchSide::Plus ? "plus" : "minus");
                branches.push_back({sep_id++, label, resample(mb.path, po.samples)});
            }
        }
    }

    const fs::path csv_path = resolve_output(po.csv);
    {
        std::ofstream os(csv_path);
        if (!os)
            throw std::runtime_error("cannot open output file: " + csv_path.string());
        os << "t,x,y,branch_id\n";
        for (const auto& b : branches)
            for (const auto& s : b.traj.samples)
                os << format_double(s.t) << ',' << format_double(s.s.x) << ','
                   << format_double(s.s.y) << ',' << b.id << '\n';
    }

    Json cfg = common_config(c);
    cfg["theta"] = po.theta;
    cfg["command"] = "portrait";
    cfg["grid"] = po.grid;
    cfg["tmax"] = po.tmax;
    cfg["samples"] = po.samples;
    Json bundle = make_bundle(cfg);
    Json files = Json::object();
    files["csv"] = csv_path.string();

    if (!po.svg.empty()) {
        const fs::path svg_path = resolve_output(po.svg);
        write_svg(svg_path, p, branches, xmin, xmax, ylo, yhi);
        files["svg"] = svg_path.string();
    }
    bundle["files"] = files;

    Json legend = Json::array();
    for (const auto& b : branches) {
        Json e = Json::object();
        e["branch_id"] = b.id;
        e["label"] = b.label;
        e["rows"] = b.traj.samples.size();
        e["truncated"] = b.traj.stop != Trajectory::Stop::TimeReached;
        legend.push_back(e);
    }
    bundle["branches"] = legend;
    emit(bundle, output);
    return exit_ok;
}

// -------------------------------------------------------------------- detect

int cmd_detect(const CommonOpts& c, const std::string& range, double step, double tol_theta,
               const std::string& kind, int threads, const std::string& output) {
    const auto colon = range.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("range must look like lo:hi");
    const double lo = std::stod(range.substr(0, colon));
    const double hi = std::stod(range.substr(colon + 1));
    if (!(lo < hi))
        throw std::invalid_argument("range requires lo < hi");

    Json cfg = common_config(c);
    cfg["command"] = "detect";
    cfg["range_lo"] = lo;
    cfg["range_hi"] = hi;
    cfg["step"] = step;
    cfg["tol_theta"] = tol_theta;
    cfg["kind"] = kind;
    Json bundle = make_bundle(cfg);
    Json brackets = Json::array();

    if (kind == "hopf") {
        const auto p_lo = SystemParams::make(c.d, c.e, lo);
        const auto p_hi = SystemParams::make(c.d, c.e, hi);
        const double re_lo = eigenvalues_at(p_lo, EquilibriumId::E0).lambda1.real();
        const double re_hi = eigenvalues_at(p_hi, EquilibriumId::E0).lambda1.real();
        if ((re_lo < 0) != (re_hi < 0)) {
            // Re lambda(E0) = theta/2 near the axis: the root is exact
            Json b = Json::object();
            b["kind"] = "hopf";
            b["theta_lo"] = lo;
            b["theta_hi"] = hi;
            b["refined_theta"] = 0.0;
            const auto [nf, L] = lyapunov_coefficient(SystemParams::make(c.d, c.e, 0.0));
            (void)nf;
            b["lyapunov_coefficient"] = L;
            b["note"] = "stable limit cycle on the source side (L < 0)";
            brackets.push_back(b);
        } else {
            bundle["note"] = "no eigenvalue real-part sign change in range";
        }
    } else {
        ConnectionKind ck;
        if (kind == "homoclinic")
            ck = ConnectionKind::Homoclinic;
        else if (kind == "heteroclinic-upper")
            ck = ConnectionKind::HeteroclinicUpper;
        else if (kind == "heteroclinic-lower")
            ck = ConnectionKind::HeteroclinicLower;
        else
            throw std::invalid_argument("kind must be one of homoclinic, heteroclinic-upper, "
                                        "heteroclinic-lower, hopf");
        SweepOptions so;
        so.gap.tol = c.tol;
        so.gap.seed_offset = c.seed_offset;
        so.tol_theta = tol_theta;
        so.threads = threads;
        const auto found =
            sweep_bifurcations(SystemParams::make(c.d, c.e, lo), lo, hi, step, ck, so);
        for (const auto& b : found)
            brackets.push_back(json_bracket(b));
        if (found.empty())
            bundle["note"] = "no gap sign change in range";
    }
    bundle["brackets"] = brackets;
    emit(bundle, output);
    return exit_ok;
}

// -------------------------------------------------------------------- conley

int cmd_conley(const std::string& preset, const std::string& file, bool list_presets,
               const std::string& output) {
    if (list_presets) {
        Json bundle = make_bundle(Json::object());
        Json names = Json::array();
        for (const auto& [name, text] : scenario_presets()) {
            (void)text;
            names.push_back(name);
        }
        bundle["presets"] = names;
        emit(bundle, output);
        return exit_ok;
    }

    std::string text;
    if (!preset.empty()) {
        const auto& presets = scenario_presets();
        const auto it = presets.find(preset);
        if (it == presets.end())
            throw std::invalid_argument("unknown preset: " + preset);
        text = it->second;
    } else if (!file.empty()) {
        std::ifstream is(file);
        if (!is)
            throw std::invalid_argument("cannot read scenario file: " + file);
        text.assign(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
    } else {
        throw std::invalid_argument("conley needs --preset NAME or --scenario FILE");
    }

    const Scenario s = parse_scenario(text);
    const ScenarioResult r = run_scenario(s);

    Json cfg = Json::object();
    cfg["command"] = "conley";
    cfg["scenario"] = s.name;
    if (!preset.empty())
        cfg["preset"] = preset;
    if (!file.empty())
        cfg["scenario_file"] = file;
    Json bundle = make_bundle(cfg);
    bundle["validation_before"] = json_validation(r.before_report);
    bundle["validation_after"] = json_validation(r.after_report);
    bundle["delta_before"] = json_map(s.delta_before);
    bundle["delta_after"] = json_map(s.delta_after);

    Json forced = Json::array();
    for (const auto& f : r.transition.forced) {
        Json e = Json::object();
        e["target"] = f.target;
        e["source"] = f.source;
        e["q"] = f.q;
        e["value"] = f.value ? 1 : 0;
        forced.push_back(e);
    }
    bundle["forced_entries"] = forced;
    bundle["transition_solutions"] = r.transition.solutions.size();
    if (!r.transition.solutions.empty())
        bundle["transition_example"] = json_map(r.transition.solutions.front());

    Json certs = Json::array();
    for (const auto& c : r.certificates)
        certs.push_back(json_certificate(c));
    bundle["certificates"] = certs;
    emit(bundle, output);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modified van der Pol oscillator: classification, portraits, "
                 "saddle-connection detection, connection-matrix certificates"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    CommonOpts common;
    std::string output;

    auto add_common = [&](CLI::App* sub, bool with_params = true) {
        if (with_params) {
            sub->add_option("--d", common.d, "parameter d (nonzero, |d| <= |e|)");
            sub->add_option("--e", common.e, "parameter e (nonzero, de != 0, d != e)");
            sub->add_option("--tol", common.tol, "integrator tolerance")
                ->default_val(1e-9);
            sub->add_option("--seed-offset", common.seed_offset,
                            "manifold seed offset along the eigenvector")
                ->default_val(1e-6);
        }
        sub->add_option("-o,--output", output,
                        "write the JSON bundle to this file (default: stdout; relative "
                        "paths resolve under $MVDP_OUTPUT_DIR)");
    };

    double theta = 0.0;
    auto* eq = app.add_subcommand("equilibria", "classify the three equilibria");
    add_common(eq);
    eq->add_option("--theta", theta, "parameter theta")->required();

    PortraitOpts po;
    auto* pt = app.add_subcommand("portrait", "sample trajectories and separatrices");
    add_common(pt);
    pt->add_option("--theta", po.theta, "parameter theta")->required();
    pt->add_option("--grid", po.grid, "seed lattice size per axis")->default_val(6);
    pt->add_option("--tmax", po.tmax, "time budget per orbit")->default_val(40.0);
    pt->add_option("--samples", po.samples, "rows per branch in the CSV")->default_val(400);
    pt->add_option("--csv", po.csv, "CSV output path")->required();
    pt->add_option("--svg", po.svg, "optional SVG rendering path");

    std::string range, kind = "homoclinic";
    double step = 0.0, tol_theta = 1e-4;
    int threads = 0;
    auto* dt = app.add_subcommand("detect", "scan theta for bifurcations and bisect");
    add_common(dt);
    dt->add_option("--range", range, "theta range lo:hi (default -1:1 for --kind hopf)");
    dt->add_option("--step", step, "scan step (default: range/20)");
    dt->add_option("--tol-theta", tol_theta, "bisection width target")->default_val(1e-4);
    dt->add_option("--kind", kind,
                   "homoclinic | heteroclinic-upper | heteroclinic-lower | hopf")
        ->default_val("homoclinic");
    dt->add_option("--threads", threads, "sweep worker threads (0 = hardware)");

    std::string preset, scenario_file;
    bool list_presets = false;
    auto* cn = app.add_subcommand("conley", "validate connection matrices, solve for "
                                            "transition matrices, emit certificates");
    add_common(cn, false);
    cn->add_option("--preset", preset, "built-in scenario name");
    cn->add_option("--scenario", scenario_file, "scenario file path");
    cn->add_flag("--list-presets", list_presets, "list built-in scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid_input;
    }

    try {
        if (eq->parsed())
            return cmd_equilibria(common, theta, output);
        if (pt->parsed())
            return cmd_portrait(common, po, output);
        if (dt->parsed()) {
            if (range.empty()) {
                if (kind == "hopf")
                    range = "-1:1";
                else
                    throw std::invalid_argument("detect needs --range lo:hi");
            }
            if (step == 0.0) {
                const auto colon = range.find(':');
                if (colon != std::string::npos)
                    step = (std::stod(range.substr(colon + 1)) -
                            std::stod(range.substr(0, colon))) /
                           20.0;
            }
            return cmd_detect(common, range, step, tol_theta, kind, threads, output);
        }
        if (cn->parsed())
            return cmd_conley(preset, scenario_file, list_presets, output);
    } catch (const ScenarioParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return exit_invalid_input;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return exit_invalid_input;
    } catch (const NumericalError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return exit_numerical;
    }
    return exit_ok;
}
