// SPDX-License-Identifier: Apache-2.0
#include "dpc/surface_io.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dpc::io {

namespace {
[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw std::runtime_error("schema error at " + path + ": " + what);
}
} // namespace

fam::FamilySpec resolve_family(const std::string& id, const gf::Field& f) {
    auto at = id.find('@');
    if (at == std::string::npos) return fam::builtin_family(id);
    std::string base = id.substr(0, at);
    fam::FamilySpec red = fam::reduced_family(fam::builtin_family(base), f);
    if (red.id != id)
        throw std::invalid_argument("family " + id + " does not match field " + f.literal());
    return red;
}

fam::Surface surface_from_json(const json& j) {
    if (!j.is_object()) schema_error("$", "expected an object");
    if (!j.contains("family") || !j["family"].is_string()) schema_error("family", "expected a string");
    if (!j.contains("field") || !j["field"].is_string()) schema_error("field", "expected a string");
    const gf::Field* f = nullptr;
    try {
        f = &gf::field(j["field"].get<std::string>());
    } catch (const std::exception& e) {
        schema_error("field", e.what());
    }
    fam::FamilySpec fm;
    try {
        fm = resolve_family(j["family"].get<std::string>(), *f);
    } catch (const std::exception& e) {
        schema_error("family", e.what());
    }
    std::vector<int> coeffs(fm.slots.size(), 0);
    if (j.contains("coefficients")) {
        if (!j["coefficients"].is_object()) schema_error("coefficients", "expected an object");
        for (auto it = j["coefficients"].begin(); it != j["coefficients"].end(); ++it) {
            const std::string path = "coefficients." + it.key();
            fam::Monomial m;
            try {
                m = fam::Monomial::parse(it.key(), fm.nvars());
            } catch (const std::exception& e) {
                schema_error(path, e.what());
            }
            int idx = fm.slot_index(m);
            if (idx < 0) schema_error(path, "monomial is not a slot of family " + fm.id);
            if (!it.value().is_string()) schema_error(path, "expected an element literal string");
            try {
                coeffs[idx] = f->parse_element(it.value().get<std::string>());
            } catch (const std::exception& e) {
                schema_error(path, e.what());
            }
        }
    }
    return fam::make_surface(fm, *f, std::move(coeffs));
}

json surface_to_json(const fam::Surface& s) {
    json j;
    j["family"] = s.family.id;
    j["field"] = s.gf().literal();
    json coeffs = json::object();
    for (size_t i = 0; i < s.coeffs.size(); ++i)
        if (s.coeffs[i] != 0) coeffs[s.family.slots[i].key()] = s.gf().element_literal(s.coeffs[i]);
    j["coefficients"] = coeffs;
    return j;
}

fam::Surface load_surface(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open surface file " + path);
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": not valid JSON: " + e.what());
    }
    return surface_from_json(j);
}

void save_surface(const fam::Surface& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << surface_to_json(s).dump(2) << "\n";
}

namespace {
json coeff_vectors_to_json(const std::vector<std::vector<int>>& vecs, const gf::Field& f) {
    json out = json::array();
    for (const auto& v : vecs) {
        json row = json::array();
        for (int c : v) row.push_back(f.element_literal(c));
        out.push_back(row);
    }
    return out;
}
} // namespace

json census_report_to_json(const census::CensusReport& r, const fam::FamilySpec& fm,
                           const gf::Field& f) {
    json j;
    j["descriptor"] = r.descriptor;
    j["mode"] = r.mode == census::Mode::projective ? "projective" : "affine";
    if (r.early_exit) j["early_exit"] = *r.early_exit;
    j["range"] = {r.range_lo, r.range_hi};
    json hist = json::object();
    for (const auto& [c, n] : r.histogram) hist[std::to_string(c)] = n;
    j["histogram"] = hist;
    j["min_count"] = r.min_count;
    j["max_count"] = r.max_count;
    j["scanned"] = r.scanned;
    json slots = json::array();
    for (const auto& m : fm.slots) slots.push_back(m.key());
    j["slots"] = slots;
    j["extremal"] = coeff_vectors_to_json(r.extremal, f);
    if (r.collect_count) {
        j["collect_count"] = *r.collect_count;
        j["collected"] = coeff_vectors_to_json(r.collected, f);
        j["collected_overflow"] = r.collected_overflow;
    }
    if (r.sample_skipped) j["sample_skipped"] = r.sample_skipped;
    return j;
}

json phase1_to_json(const census::Phase1Result& p, const fam::FamilySpec& fm, const gf::Field& f) {
    json j;
    json slots = json::array();
    for (int s : p.filter_slots) slots.push_back(fm.slot_key(s));
    j["filter_slots"] = slots;
    j["assignments"] = p.assignments;
    j["locus_points"] = p.locus_points;
    json survivors = json::array();
    for (const auto& a : p.survivors) {
        json one = json::object();
        for (size_t k = 0; k < a.size(); ++k)
            one[fm.slot_key(p.filter_slots[k])] = f.element_literal(a[k]);
        survivors.push_back(one);
    }
    j["survivors"] = survivors;
    return j;
}

json verdict_to_json(const smooth::SmoothnessVerdict& v, const gf::Field& base) {
    json j;
    j["status"] = v.smooth ? "smooth" : "singular";
    if (v.smooth) {
        j["checked_up_to"] = v.checked_up_to;
    } else {
        const gf::Field& ext =
            v.witness_degree == 1 ? base : gf::extension_of(base, v.witness_degree);
        j["k"] = v.witness_degree;
        j["witness"] = wps::tuple_literal(ext, *v.witness);
    }
    j["checked_degrees"] = v.checked_degrees;
    return j;
}

json fiber_report_to_json(const picard::FiberReport& rep, const gf::Field& f) {
    json j;
    j["base"] = "(" + f.element_literal(rep.base.first) + ":" + f.element_literal(rep.base.second) + ")";
    j["fiber_points"] = rep.fiber_points;
    j["curve_points"] = rep.curve_points;
    j["smooth"] = rep.smooth;
    j["hasse_ok"] = rep.hasse_ok;
    return j;
}

json report_to_json(const ReportFile& r) {
    json j;
    j["schema_version"] = 1;
    j["command"] = r.command;
    json inputs = json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    j["inputs"] = inputs;
    j["payload"] = r.payload;
    j["timing"] = {{"wall_seconds", r.wall_seconds}};
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
    j["generated_at"] = buf;
    return j;
}

void save_report(const ReportFile& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report " + path);
    out << report_to_json(r).dump(2) << "\n";
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(census::fnv1a(ss.str())));
    return buf;
}

} // namespace dpc::io
