// SPDX-License-Identifier: Apache-2.0
//
// dpc — del Pezzo point-count toolkit.
//
// Subcommands: census, verify, smooth, fibers, exc-curves, weil, urabe,
// urabe-f. Exit codes: 0 success / all claims pass, 1 claim failure,
// 2 usage or input error.

#include "dpc/census.hpp"
#include "dpc/claims.hpp"
#include "dpc/picard.hpp"
#include "dpc/smooth.hpp"
#include "dpc/surface_io.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <cstdlib>
#include <iostream>

using namespace dpc;
using io::json;

namespace {

std::string echo_command(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += " ";
        s += argv[i];
    }
    return s;
}

long long budget_from_env() {
    const char* env = std::getenv("DPC_BUDGET");
    if (!env) return 1LL << 40;
    try {
        return std::stoll(env);
    } catch (const std::exception&) {
        throw std::runtime_error("DPC_BUDGET is not an integer");
    }
}

void emit(const json& payload, const std::string& out_path, const std::string& command,
          const std::map<std::string, std::string>& inputs, double wall) {
    if (out_path.empty()) {
        std::cout << payload.dump(2) << "\n";
        return;
    }
    io::ReportFile rf;
    rf.command = command;
    rf.inputs = inputs;
    rf.payload = payload;
    rf.wall_seconds = wall;
    io::save_report(rf, out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exhaustive point-count censuses and Picard-lattice arithmetic for del Pezzo surfaces over small finite fields"};
    app.require_subcommand(1);
    int exit_code = 0;
    const std::string command = echo_command(argc, argv);

    // census
    auto* census_cmd = app.add_subcommand("census", "exhaust a coefficient space and histogram point counts");
    std::string family_id, field_lit, mode_str = "projective", ckpt, census_out;
    bool reduce = false;
    std::vector<std::string> pin_args;
    long long early_exit = -1;
    int workers = omp_get_max_threads();
    census_cmd->add_option("--family", family_id, "built-in family id")->required();
    census_cmd->add_option("--field", field_lit, "field literal, e.g. 2, 4, 3^2")->required();
    census_cmd->add_flag("--reduce", reduce, "census the reduced family over the field");
    census_cmd->add_option("--pin", pin_args, "pin a slot, e.g. --pin 0.2.0.0=1")->take_all();
    census_cmd->add_option("--mode", mode_str, "projective|affine")->check(CLI::IsMember({"projective", "affine"}));
    census_cmd->add_option("--early-exit", early_exit, "stop counting a surface beyond this many points");
    census_cmd->add_option("--workers", workers, "parallel workers");
    census_cmd->add_option("--checkpoint", ckpt, "checkpoint file, resumed when present");
    census_cmd->add_option("--out", census_out, "report file")->required();
    census_cmd->callback([&] {
        const gf::Field& f = gf::field(field_lit);
        fam::FamilySpec fm = fam::builtin_family(family_id);
        if (reduce) fm = fam::reduced_family(fm, f);
        census::SearchSpace space = census::SearchSpace::over(fm, f);
        for (const std::string& pin : pin_args) {
            auto eq = pin.find('=');
            if (eq == std::string::npos) throw std::runtime_error("bad --pin, expected key=value: " + pin);
            int idx = fm.slot_index(fam::Monomial::parse(pin.substr(0, eq), fm.nvars()));
            if (idx < 0) throw std::runtime_error("--pin names a monomial that is not a slot: " + pin);
            space.pins[idx] = f.parse_element(pin.substr(eq + 1));
        }
        census::RunOptions opt;
        opt.mode = mode_str == "affine" ? census::Mode::affine : census::Mode::projective;
        if (early_exit >= 0) opt.early_exit = early_exit;
        opt.workers = workers;
        opt.checkpoint_path = ckpt;
        opt.budget = budget_from_env();
        census::CensusReport r = census::run_census(space, opt);
        emit(io::census_report_to_json(r, fm, f), census_out, command, {}, r.wall_seconds);
        std::cout << "scanned " << r.scanned << " surfaces, min count " << r.min_count << "\n";
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run registered claims against the search engine");
    std::vector<std::string> claim_ids;
    bool all_claims = false, include_slow = false;
    std::string verify_out;
    int verify_workers = omp_get_max_threads();
    verify_cmd->add_option("--claim", claim_ids, "claim id (repeatable)")->take_all();
    verify_cmd->add_flag("--all", all_claims, "run every instant/minutes claim");
    verify_cmd->add_flag("--include-slow", include_slow, "include hours-class claims with --all");
    verify_cmd->add_option("--workers", verify_workers, "parallel workers");
    verify_cmd->add_option("--out", verify_out, "write outcomes as a report file");
    verify_cmd->callback([&] {
        std::vector<std::string> ids = claim_ids;
        if (all_claims)
            for (const auto& c : claims::registry())
                if (include_slow || c.runtime != claims::Runtime::hours) ids.push_back(c.id);
        if (ids.empty()) throw CLI::ValidationError("verify", "need --claim <id> or --all");
        json outcomes = json::array();
        bool any_fail = false;
        double wall = 0;
        for (const std::string& id : ids) {
            const claims::Claim& meta = claims::find_claim(id); // throws on unknown id
            claims::Outcome o = claims::verify_claim(id, verify_workers);
            any_fail |= !o.pass;
            wall += o.seconds;
            std::printf("[%s] %s — %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id.c_str(),
                        o.detail.c_str(), o.seconds);
            json j;
            j["id"] = id;
            j["description"] = meta.description;
            j["runtime_class"] = claims::runtime_name(meta.runtime);
            j["pass"] = o.pass;
            j["detail"] = o.detail;
            j["evidence"] = o.evidence;
            outcomes.push_back(j);
        }
        if (!verify_out.empty()) emit(json{{"claims", outcomes}}, verify_out, command, {}, wall);
        if (any_fail) exit_code = 1;
    });

    // smooth
    auto* smooth_cmd = app.add_subcommand("smooth", "Jacobian-criterion smoothness scan over small extensions");
    std::string surface_path, smooth_out;
    int max_ext = 3;
    smooth_cmd->add_option("--surface", surface_path, "surface JSON file")->required();
    smooth_cmd->add_option("--max-ext", max_ext, "largest extension degree to scan");
    smooth_cmd->add_option("--out", smooth_out, "report file");
    smooth_cmd->callback([&] {
        fam::Surface s = io::load_surface(surface_path);
        auto verdict = smooth::is_smooth_up_to(s, max_ext);
        emit(io::verdict_to_json(verdict, s.gf()), smooth_out, command,
             {{surface_path, io::hash_file(surface_path)}}, 0.0);
    });

    // fibers
    auto* fibers_cmd = app.add_subcommand("fibers", "anticanonical fiber counts and Hasse flags for a degree-1 surface");
    std::string fiber_surface, fibers_out;
    fibers_cmd->add_option("--surface", fiber_surface, "surface JSON file")->required();
    fibers_cmd->add_option("--out", fibers_out, "report file");
    fibers_cmd->callback([&] {
        fam::Surface s = io::load_surface(fiber_surface);
        json reports = json::array();
        for (const auto& rep : picard::all_fibers(s))
            reports.push_back(io::fiber_report_to_json(rep, s.gf()));
        json payload;
        payload["fibers"] = reports;
        payload["base_locus_points"] = picard::base_locus_points(s);
        payload["total_projective_points"] = fam::count_points(s, fam::Mode::projective);
        emit(payload, fibers_out, command, {{fiber_surface, io::hash_file(fiber_surface)}}, 0.0);
    });

    // exc-curves
    auto* exc_cmd = app.add_subcommand("exc-curves", "exceptional classes of a blowup of r points");
    int exc_r = 0;
    std::string exc_out;
    exc_cmd->add_option("--r", exc_r, "number of blown-up points, 0..8")->required();
    exc_cmd->add_option("--out", exc_out, "report file");
    exc_cmd->callback([&] {
        auto classes = picard::exceptional_classes(exc_r);
        json list = json::array();
        for (const auto& c : classes) {
            json j;
            j["d"] = c.d;
            j["m"] = c.m;
            list.push_back(j);
        }
        emit(json{{"r", exc_r}, {"count", classes.size()}, {"classes", list}}, exc_out, command, {}, 0.0);
    });

    // weil
    auto* weil_cmd = app.add_subcommand("weil", "candidate fields for a target point count");
    int weil_degree = 1;
    long long weil_target = 1;
    std::string weil_out;
    weil_cmd->add_option("--degree", weil_degree, "del Pezzo degree, 1..3")->required();
    weil_cmd->add_option("--target-points", weil_target, "target number of points")->required();
    weil_cmd->add_option("--out", weil_out, "report file");
    weil_cmd->callback([&] {
        auto fields = picard::candidate_fields(weil_degree, weil_target);
        emit(json{{"degree", weil_degree},
                  {"target_points", weil_target},
                  {"min_trace", picard::min_trace_on_pic(weil_degree)},
                  {"fields", fields}},
             weil_out, command, {}, 0.0);
    });

    // urabe
    auto* urabe_cmd = app.add_subcommand("urabe", "filter class-table rows by the trace equation");
    std::string table_path, urabe_out;
    long long urabe_q = 2, urabe_target = 1;
    urabe_cmd->add_option("--table", table_path, "CSV table file")->required();
    urabe_cmd->add_option("--q", urabe_q, "field size")->required();
    urabe_cmd->add_option("--target", urabe_target, "target point count");
    urabe_cmd->add_option("--out", urabe_out, "report file");
    urabe_cmd->callback([&] {
        auto rows = picard::parse_table_file(table_path);
        auto hits = picard::filter_rows(rows, urabe_q, urabe_target);
        emit(json{{"q", urabe_q}, {"target", urabe_target}, {"rows", hits}}, urabe_out, command,
             {{table_path, io::hash_file(table_path)}}, 0.0);
    });

    // urabe-f
    auto* uf_cmd = app.add_subcommand("urabe-f", "the blowup row map between the E7 and E8 tables");
    int uf_i = 1;
    uf_cmd->add_option("--i", uf_i, "row index, 1..60")->required();
    uf_cmd->callback([&] { std::cout << picard::urabe_f(uf_i) << "\n"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
