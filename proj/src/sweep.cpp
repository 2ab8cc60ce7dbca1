#include "pyjama/sweep.hpp"

#include <chrono>

#include <json.hpp>

#include "pyjama/cover.hpp"
#include "pyjama/density.hpp"
#include "pyjama/errors.hpp"
#include "pyjama/relations.hpp"

namespace pyjama {

namespace {

using ordered_json = nlohmann::ordered_json;

SweepRecord run_row(const Int& N, const Rat& tol, std::uint64_t row_budget,
                    PythagoreanOptions opts) {
    auto start = std::chrono::steady_clock::now();
    SweepRecord rec;
    rec.N = N;
    Configuration cfg = build_pythagorean(N, opts);
    rec.vector_count = cfg.size();
    RelationLattice rl = relation_lattice(cfg);
    rec.d = rl.dim_d;

    RadiusResult rr = covering_radius_exact(cfg, Exec::Serial);
    rec.radius = rr.value;
    rec.radius_witness = rr.argmax;

    Budget budget(row_budget);
    try {
        Rat achieved_tol;
        if (auto bound = epsilon0_bound(cfg, tol, Exec::Serial, &budget, &achieved_tol)) {
            rec.density_bound = *bound;
            if (achieved_tol > tol)
                rec.note = "density budget exhausted at bracket width " +
                           rat_to_string(achieved_tol);
            Budget audit(Budget::kUnlimited);
            DensityVerdict dv = density_test(cfg, *bound, Exec::Serial, &audit);
            if (dv.kind == DensityVerdict::Kind::NotDense) {
                rec.density_center = dv.center;
                rec.density_clearance = dv.clearance;
            }
        } else {
            rec.note = "no NotDense eps found below 1/2";
        }
    } catch (const BudgetExhausted&) {
        rec.note = "density budget exhausted before any verdict";
    }
    rec.work_units = budget.used();
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

}  // namespace

std::vector<SweepRecord> sweep_pythagorean(const Int& n_max, const Rat& tol,
                                           std::uint64_t row_budget, Exec exec,
                                           PythagoreanOptions opts) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    std::vector<Int> rows;
    rows.push_back(n_max < 4 ? n_max : Int(4));  // axes-only baseline
    for (const Triple& t : primitive_triples(n_max))
        if (rows.empty() || rows.back() != t.c) rows.push_back(t.c);

    std::vector<SweepRecord> out(rows.size());
    parallel_for(exec, rows.size(),
                 [&](std::size_t i) { out[i] = run_row(rows[i], tol, row_budget, opts); });
    return out;
}

namespace {

ordered_json opt_rat(const std::optional<Rat>& r) {
    if (!r) return nullptr;
    return rat_to_string(*r);
}

}  // namespace

std::string sweep_record_to_json(const SweepRecord& rec) {
    ordered_json j;
    j["N"] = rec.N.str();
    j["vectors"] = rec.vector_count;
    j["d"] = rec.d;
    j["radius"] = rat_to_string(rec.radius);
    ordered_json w = ordered_json::array();
    for (const Rat& z : rec.radius_witness) w.push_back(rat_to_string(z));
    j["radius_witness"] = std::move(w);
    j["density_bound"] = opt_rat(rec.density_bound);
    if (rec.density_center) {
        j["density_center"] = {rat_to_string(rec.density_center->x),
                               rat_to_string(rec.density_center->y)};
        j["density_clearance"] = opt_rat(rec.density_clearance);
    } else {
        j["density_center"] = nullptr;
        j["density_clearance"] = nullptr;
    }
    j["note"] = rec.note;
    j["work_units"] = rec.work_units;
    return j.dump();
}

SweepRecord sweep_record_from_json(std::string_view line) {
    ordered_json j = ordered_json::parse(line);
    SweepRecord rec;
    rec.N = Int(j.at("N").get<std::string>());
    rec.vector_count = j.at("vectors").get<int>();
    rec.d = j.at("d").get<int>();
    rec.radius = parse_rat_expr(j.at("radius").get<std::string>());
    for (const auto& z : j.at("radius_witness"))
        rec.radius_witness.push_back(parse_rat_expr(z.get<std::string>()));
    if (!j.at("density_bound").is_null())
        rec.density_bound = parse_rat_expr(j.at("density_bound").get<std::string>());
    if (!j.at("density_center").is_null()) {
        rec.density_center = RatPoint2{parse_rat_expr(j.at("density_center")[0].get<std::string>()),
                                       parse_rat_expr(j.at("density_center")[1].get<std::string>())};
        rec.density_clearance = parse_rat_expr(j.at("density_clearance").get<std::string>());
    }
    rec.note = j.at("note").get<std::string>();
    rec.work_units = j.at("work_units").get<std::uint64_t>();
    return rec;
}

std::string sweep_record_csv_header() {
    return "N,vectors,d,radius,density_bound,work_units,note";
}

std::string sweep_record_to_csv(const SweepRecord& rec) {
    std::string density = rec.density_bound ? rat_to_string(*rec.density_bound) : "";
    return rec.N.str() + "," + std::to_string(rec.vector_count) + "," + std::to_string(rec.d) +
           "," + rat_to_string(rec.radius) + "," + density + "," +
           std::to_string(rec.work_units) + "," + rec.note;
}

}  // namespace pyjama
