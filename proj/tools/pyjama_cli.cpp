#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pyjama/cover.hpp"
#include "pyjama/density.hpp"
#include "pyjama/errors.hpp"
#include "pyjama/svg.hpp"
#include "pyjama/sweep.hpp"
#include "pyjama/witness.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace pyjama;

namespace {

constexpr int kExitDefinite = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

struct CommonOpts {
    std::string builder;
    std::string config_path;
    long long max_hypotenuse = 5;
    bool no_reflected = false;
    bool no_negated = false;
    std::string epsilon_expr;
    std::string tol_expr = "1/1000";
    std::uint64_t budget = 1'000'000;
    std::string out_dir;
    bool approx = false;
};

void add_config_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--builder", o.builder, "cube_roots | section3 | pythagorean");
    cmd->add_option("--config", o.config_path, "configuration JSON file");
    cmd->add_option("--max-hypotenuse", o.max_hypotenuse, "bound for the pythagorean builder");
    cmd->add_flag("--no-reflected", o.no_reflected, "drop the (b/c, a/c) family");
    cmd->add_flag("--no-negated", o.no_negated, "drop the (-a/c, b/c) family");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Configuration resolve_config(const CommonOpts& o) {
    if (!o.config_path.empty()) return parse_config(read_file(o.config_path));
    if (o.builder == "cube_roots") return build_cube_roots();
    if (o.builder == "section3") return build_section3();
    if (o.builder == "pythagorean")
        return build_pythagorean(Int(o.max_hypotenuse),
                                 {!o.no_reflected, !o.no_negated});
    if (o.builder.empty()) throw ParseError("need --builder or --config");
    throw ParseError("unknown builder '" + o.builder + "'");
}

ordered_json rat_json(const Rat& r, bool approx) {
    if (!approx) return rat_to_string(r);
    ordered_json j;
    j["exact"] = rat_to_string(r);
    j["approx"] = static_cast<double>(r);
    return j;
}

std::string quad_text_vector(const QuadElem& x, const QuadElem& y) {
    return "(" + x.to_string() + ", " + y.to_string() + ")";
}

int cmd_relations(const CommonOpts& o) {
    Configuration cfg = resolve_config(o);
    RelationLattice rl = relation_lattice(cfg);
    SubgroupParam sp = subgroup_param(rl);
    ordered_json j;
    j["label"] = cfg.label;
    j["n"] = cfg.size();
    j["rank"] = rl.rank;
    j["d"] = rl.dim_d;
    ordered_json basis = ordered_json::array();
    for (int i = 0; i < rl.basis.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < rl.basis.cols(); ++c)
            row.push_back(static_cast<long long>(rl.basis.at(i, c)));
        basis.push_back(std::move(row));
    }
    j["basis"] = std::move(basis);
    j["chart"] = sp.chart ? ordered_json(*sp.chart) : ordered_json(nullptr);
    j["periodic"] = is_periodic(cfg);
    if (auto pb = period_lattice(cfg)) {
        j["period_basis"] = {quad_text_vector(pb->v0[0], pb->v0[1]),
                             quad_text_vector(pb->v1[0], pb->v1[1])};
    } else {
        j["period_basis"] = nullptr;
    }
    if (auto qc = classify_quadratic(cfg)) {
        ordered_json q;
        q["D"] = qc->D.str();
        q["M"] = qc->Mprod.str();
        ordered_json triples = ordered_json::array();
        for (const QuadTriple& t : qc->triples)
            triples.push_back({t.m.str(), t.k.str(), t.n.str()});
        q["triples"] = std::move(triples);
        j["quadratic_class"] = std::move(q);
    } else {
        j["quadratic_class"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
    return kExitDefinite;
}

int cmd_radius(const CommonOpts& o) {
    Configuration cfg = resolve_config(o);
    try {
        RadiusResult rr = covering_radius_exact(cfg);
        if (o.approx)
            std::cout << rat_to_string(rr.value) << " (" << static_cast<double>(rr.value)
                      << ")\n";
        else
            std::cout << rat_to_string(rr.value) << "\n";
        return kExitDefinite;
    } catch (const UnsupportedDimension&) {
        Enclosure enc =
            covering_radius_enclosure(cfg, parse_rat_expr(o.tol_expr), o.budget);
        ordered_json j;
        j["lo"] = rat_json(enc.lo, o.approx);
        j["hi"] = rat_json(enc.hi, o.approx);
        std::cout << j.dump() << "\n";
        return kExitDefinite;
    }
}

int cmd_verify(const CommonOpts& o) {
    Configuration cfg = resolve_config(o);
    if (o.epsilon_expr.empty()) throw ParseError("verify needs --epsilon");
    Rat eps = parse_rat_expr(o.epsilon_expr);
    CoverVerdict v = is_covering(cfg, eps, o.budget);
    ordered_json j;
    j["label"] = cfg.label;
    j["epsilon"] = rat_to_string(eps);
    j["nodes"] = v.stats.nodes;
    switch (v.kind) {
        case CoverVerdict::Kind::CoversCertified: {
            j["verdict"] = "CoversCertified";
            if (v.exact_radius) j["exact_radius"] = rat_json(*v.exact_radius, o.approx);
            if (v.certificate) {
                fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
                fs::create_directories(dir);
                fs::path cert = dir / (cfg.label + "_certificate.json");
                write_file(cert.string(), certificate_to_json(*v.certificate));
                j["certificate_path"] = cert.string();
            }
            j["note"] = v.note;
            std::cout << j.dump(2) << "\n";
            return kExitDefinite;
        }
        case CoverVerdict::Kind::UncoveredWitness: {
            j["verdict"] = "UncoveredWitness";
            ordered_json w = ordered_json::array();
            for (const Rat& z : v.witness_chart) w.push_back(rat_to_string(z));
            j["witness_chart"] = std::move(w);
            j["witness_value"] = rat_json(*v.witness_value, o.approx);
            j["note"] = v.note;
            std::cout << j.dump(2) << "\n";
            return kExitDefinite;
        }
        default:
            j["verdict"] = "Unknown";
            j["note"] = v.note;
            std::cout << j.dump(2) << "\n";
            return kExitUnknown;
    }
}

int cmd_witness(const CommonOpts& o) {
    Configuration cfg = resolve_config(o);
    PeriodicWitness w = periodic_witness(cfg);
    ordered_json j;
    j["label"] = cfg.label;
    switch (w.kase) {
        case PeriodicWitness::Case::D1: j["case"] = "D1"; break;
        case PeriodicWitness::Case::EvenD: j["case"] = "EvenD"; break;
        case PeriodicWitness::Case::OddPrime: j["case"] = "OddPrime"; break;
    }
    j["D"] = w.qc.D.str();
    j["M"] = w.qc.Mprod.str();
    if (w.kase == PeriodicWitness::Case::OddPrime) j["p"] = w.prime.str();
    j["point"] = {{"x", w.x.to_string()}, {"y", w.y.to_string()}};
    j["bound"] = rat_to_string(w.bound);
    j["achieved"] = rat_json(w.achieved, o.approx);
    ordered_json ips = ordered_json::array();
    for (const Rat& s : w.inner_products) ips.push_back(rat_to_string(s));
    j["inner_products"] = std::move(ips);
    j["conclusion"] = "point " + quad_text_vector(w.x, w.y) +
                      " stays uncovered for every eps < " + rat_to_string(w.achieved) +
                      "; periodic strip unions of this class need eps >= " +
                      rat_to_string(w.bound);
    std::cout << j.dump(2) << "\n";
    return kExitDefinite;
}

int cmd_density(const CommonOpts& o) {
    Configuration cfg = resolve_config(o);
    if (o.epsilon_expr.empty()) throw ParseError("density needs --epsilon");
    Rat eps = parse_rat_expr(o.epsilon_expr);
    Budget budget(o.budget);
    DensityVerdict dv = density_test(cfg, eps, Exec::Parallel, &budget);
    ordered_json j;
    j["label"] = cfg.label;
    j["epsilon"] = rat_to_string(eps);
    switch (dv.kind) {
        case DensityVerdict::Kind::NotDense: j["verdict"] = "NotDense"; break;
        case DensityVerdict::Kind::Dense: j["verdict"] = "Dense"; break;
        case DensityVerdict::Kind::Unknown: j["verdict"] = "Unknown"; break;
    }
    if (dv.center) {
        j["ball_center"] = {rat_to_string(dv.center->x), rat_to_string(dv.center->y)};
        j["ball_clearance"] = rat_to_string(*dv.clearance);
        j["epsilon0_upper_bound"] = rat_to_string(eps);
    }
    j["note"] = dv.reason;
    if (!o.out_dir.empty() && dv.kind != DensityVerdict::Kind::Unknown) {
        fs::create_directories(o.out_dir);
        PolySet x = uncovered_region(cfg, eps, Exec::Parallel, &budget);
        PolySet diff = difference_set(x, Exec::Parallel, &budget);
        std::string svg = render_svg({{&x, "#3465a4"}, {&diff, "#f57900"}},
                                     cfg.label + " X_eps and X-X at eps=" + rat_to_string(eps));
        fs::path p = fs::path(o.out_dir) / (cfg.label + "_density.svg");
        write_file(p.string(), svg);
        j["svg"] = p.string();
    }
    std::cout << j.dump(2) << "\n";
    return dv.kind == DensityVerdict::Kind::Unknown ? kExitUnknown : kExitDefinite;
}

int cmd_bound(const CommonOpts& o) {
    Configuration cfg = resolve_config(o);
    Budget budget(o.budget);
    auto b = epsilon0_bound(cfg, parse_rat_expr(o.tol_expr), Exec::Parallel, &budget);
    ordered_json j;
    j["label"] = cfg.label;
    j["tol"] = o.tol_expr;
    j["epsilon0_upper_bound"] = b ? ordered_json(rat_to_string(*b)) : ordered_json(nullptr);
    if (b && o.approx) j["approx"] = static_cast<double>(*b);
    std::cout << j.dump(2) << "\n";
    return kExitDefinite;
}

// Per-row companion file: the exact witness behind the radius claim plus the
// density ball when one was found.
void write_sweep_row_files(const fs::path& dir, const SweepRecord& rec,
                           PythagoreanOptions opts) {
    Configuration cfg = build_pythagorean(rec.N, opts);
    RelationLattice rl = relation_lattice(cfg);
    SubgroupParam sp = subgroup_param(rl);
    ordered_json cert;
    cert["format"] = "pyjama-radius-witness";
    cert["N"] = rec.N.str();
    cert["radius"] = rat_to_string(rec.radius);
    ordered_json zs = ordered_json::array();
    for (const Rat& z : rec.radius_witness) zs.push_back(rat_to_string(z));
    cert["chart_point"] = std::move(zs);
    ordered_json coords = ordered_json::array();
    for (int j = 0; j < sp.n(); ++j) {
        Rat v(0);
        for (int t = 0; t < sp.d(); ++t) v += Rat(sp.B.at(j, t)) * rec.radius_witness[t];
        coords.push_back(rat_to_string(frac_part(v)));
    }
    cert["torus_point"] = std::move(coords);
    if (rec.density_bound) {
        cert["density"] = {{"epsilon", rat_to_string(*rec.density_bound)},
                           {"ball_center",
                            {rat_to_string(rec.density_center->x),
                             rat_to_string(rec.density_center->y)}},
                           {"ball_clearance", rat_to_string(*rec.density_clearance)}};
    } else {
        cert["density"] = nullptr;
    }
    write_file((dir / ("cert_" + rec.N.str() + ".json")).string(), cert.dump(1) + "\n");

    std::string caption = "pythagorean N=" + rec.N.str();
    if (rec.density_bound) {
        // X_eps in blue, the part of the torus missed by X - X in green.
        Budget budget(Budget::kUnlimited);
        PolySet x = uncovered_region(cfg, *rec.density_bound, Exec::Serial, &budget);
        PolySet gap = difference_set_complement(x, Exec::Serial, &budget);
        write_file((dir / ("row_" + rec.N.str() + ".svg")).string(),
                   render_svg({{&x, "#3465a4"}, {&gap, "#4e9a06"}},
                              caption + " X_eps and torus minus (X-X) at eps=" +
                                  rat_to_string(*rec.density_bound)));
    } else {
        PolySet none;
        write_file((dir / ("row_" + rec.N.str() + ".svg")).string(),
                   render_svg({{&none, "#3465a4"}}, caption + " (no density plot: " +
                                                        (rec.note.empty() ? "none" : rec.note) +
                                                        ")"));
    }
}

int cmd_sweep(const CommonOpts& o) {
    PythagoreanOptions opts{!o.no_reflected, !o.no_negated};
    std::vector<SweepRecord> rows =
        sweep_pythagorean(Int(o.max_hypotenuse), parse_rat_expr(o.tol_expr), o.budget,
                          Exec::Parallel, opts);
    fs::path dir = o.out_dir.empty() ? fs::path("sweep_out") : fs::path(o.out_dir);
    fs::create_directories(dir);

    std::ostringstream jsonl, csv;
    ordered_json header;
    header["report"] = "pyjama-sweep";
    header["max_hypotenuse"] = o.max_hypotenuse;
    header["tol"] = o.tol_expr;
    header["row_budget"] = o.budget;
    header["timestamp"] =
        static_cast<long long>(std::chrono::duration_cast<std::chrono::seconds>(
                                   std::chrono::system_clock::now().time_since_epoch())
                                   .count());
    jsonl << header.dump() << "\n";
    csv << sweep_record_csv_header() << "\n";
    for (const SweepRecord& rec : rows) {
        jsonl << sweep_record_to_json(rec) << "\n";
        csv << sweep_record_to_csv(rec) << "\n";
        write_sweep_row_files(dir, rec, opts);
        std::cout << "N=" << rec.N << " vectors=" << rec.vector_count
                  << " radius=" << rat_to_string(rec.radius) << " density_bound="
                  << (rec.density_bound ? rat_to_string(*rec.density_bound) : "-")
                  << " work=" << rec.work_units << " (" << rec.seconds << " s)"
                  << (rec.note.empty() ? "" : " note=" + rec.note) << "\n";
    }
    write_file((dir / "report.jsonl").string(), jsonl.str());
    write_file((dir / "report.csv").string(), csv.str());
    std::cout << "report written to " << (dir / "report.jsonl").string() << "\n";
    return kExitDefinite;
}

int cmd_plot(const CommonOpts& o, bool with_diff, bool with_strips) {
    Configuration cfg = resolve_config(o);
    fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
    fs::create_directories(dir);

    if (with_strips) {
        auto pb = period_lattice(cfg);
        if (!pb) throw ParseError("--strips needs a periodic configuration (d = 2)");
        if (o.epsilon_expr.empty()) throw ParseError("plot needs --epsilon");
        Rat eps = parse_rat_expr(o.epsilon_expr);
        fs::path p = dir / (cfg.label + "_strips.svg");
        write_file(p.string(), render_plane_strips(cfg, *pb, eps));
        std::cout << p.string() << "\n";
        return kExitDefinite;
    }

    if (o.epsilon_expr.empty()) throw ParseError("plot needs --epsilon");
    Rat eps = parse_rat_expr(o.epsilon_expr);
    Budget budget(o.budget);
    PolySet x = uncovered_region(cfg, eps, Exec::Parallel, &budget);
    std::vector<SvgLayer> layers = {{&x, "#3465a4"}};
    PolySet diff;
    if (with_diff) {
        diff = difference_set(x, Exec::Parallel, &budget);
        layers.push_back({&diff, "#f57900"});
    }
    fs::path p = dir / (cfg.label + "_plot.svg");
    write_file(p.string(),
               render_svg(layers, cfg.label + " at eps=" + rat_to_string(eps)));
    std::cout << p.string() << "\n";
    return kExitDefinite;
}

int cmd_check_cert(const CommonOpts& o, const std::string& cert_path) {
    Configuration cfg = resolve_config(o);
    EmptinessCertificate cert = certificate_from_json(read_file(cert_path));
    Rat eps = o.epsilon_expr.empty() ? cert.eps : parse_rat_expr(o.epsilon_expr);

    // Bind the certificate to the configuration: every relation row must
    // annihilate the direction vectors exactly.
    if (cert.relations.cols() != cfg.size()) {
        std::cout << "INVALID: relation length does not match configuration\n";
        return kExitError;
    }
    for (int i = 0; i < cert.relations.rows(); ++i) {
        QuadElem sx, sy;
        for (int j = 0; j < cfg.size(); ++j) {
            QuadElem m(Rat(cert.relations.at(i, j)));
            sx = sx + m * cfg.vectors[j].cos;
            sy = sy + m * cfg.vectors[j].sin;
        }
        if (!sx.is_zero() || !sy.is_zero()) {
            std::cout << "INVALID: row " << i << " is not a relation of the configuration\n";
            return kExitError;
        }
    }
    bool ok = check_certificate(cert, cert.relations, eps);
    std::cout << (ok ? "VALID" : "INVALID") << ": emptiness certificate at eps="
              << rat_to_string(eps) << " for " << cfg.label << "\n";
    return ok ? kExitDefinite : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact finite-rotation strip covering toolkit"};
    app.require_subcommand(1);
    CommonOpts o;

    auto* relations_cmd = app.add_subcommand("relations", "relation lattice, periodicity, class");
    auto* radius_cmd = app.add_subcommand("radius", "exact covering radius (enclosure for d>2)");
    auto* verify_cmd = app.add_subcommand("verify", "decide covering at a given eps");
    auto* witness_cmd = app.add_subcommand("witness", "periodic uncovered point");
    auto* density_cmd = app.add_subcommand("density", "difference-set density test at eps");
    auto* bound_cmd = app.add_subcommand("bound", "smallest certified NotDense eps");
    auto* sweep_cmd = app.add_subcommand("sweep", "per-N pythagorean sweep with reports");
    auto* plot_cmd = app.add_subcommand("plot", "SVG figures");
    auto* check_cmd = app.add_subcommand("check-cert", "replay an emptiness certificate");

    bool plot_diff = false, plot_strips = false;
    std::string cert_path;
    for (CLI::App* cmd : {relations_cmd, radius_cmd, verify_cmd, witness_cmd, density_cmd,
                          bound_cmd, plot_cmd, check_cmd})
        add_config_opts(cmd, o);
    for (CLI::App* cmd : {radius_cmd, verify_cmd, density_cmd, bound_cmd, sweep_cmd, plot_cmd,
                          check_cmd}) {
        cmd->add_option("--epsilon", o.epsilon_expr, "exact value, e.g. 1/3-1/48");
        cmd->add_option("--tol", o.tol_expr, "exact tolerance, e.g. 1/1000");
        cmd->add_option("--budget", o.budget, "node/work budget");
        cmd->add_option("--out", o.out_dir, "output directory");
        cmd->add_flag("--approx", o.approx, "add float approximations to output");
    }
    sweep_cmd->add_option("--max-hypotenuse", o.max_hypotenuse, "sweep bound N")->required();
    sweep_cmd->add_flag("--no-reflected", o.no_reflected);
    sweep_cmd->add_flag("--no-negated", o.no_negated);
    plot_cmd->add_flag("--diff", plot_diff, "overlay the difference set");
    plot_cmd->add_flag("--strips", plot_strips, "plane strips over a period fundamental domain");
    check_cmd->add_option("--cert", cert_path, "certificate JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (relations_cmd->parsed()) return cmd_relations(o);
        if (radius_cmd->parsed()) return cmd_radius(o);
        if (verify_cmd->parsed()) return cmd_verify(o);
        if (witness_cmd->parsed()) return cmd_witness(o);
        if (density_cmd->parsed()) return cmd_density(o);
        if (bound_cmd->parsed()) return cmd_bound(o);
        if (sweep_cmd->parsed()) return cmd_sweep(o);
        if (plot_cmd->parsed()) return cmd_plot(o, plot_diff, plot_strips);
        if (check_cmd->parsed()) return cmd_check_cert(o, cert_path);
    } catch (const BudgetExhausted& e) {
        std::cerr << "unknown: " << e.what() << "\n";
        return kExitUnknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
