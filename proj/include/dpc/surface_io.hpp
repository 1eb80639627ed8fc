// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dpc/census.hpp"
#include "dpc/families.hpp"
#include "dpc/picard.hpp"
#include "dpc/smooth.hpp"

#include "json.hpp"

#include <map>
#include <string>

namespace dpc::io {

using json = nlohmann::ordered_json;

/// Resolve a family id: a built-in name, or `BASE@field` for the reduced
/// family of BASE over that field.
fam::FamilySpec resolve_family(const std::string& id, const gf::Field& f);

/// Surface files: {"family": id, "field": "p^r",
///                 "coefficients": {"e0.e1.e2.e3": element literal, ...}};
/// absent monomial keys mean zero. Schema violations report the field path.
fam::Surface surface_from_json(const json& j);
json surface_to_json(const fam::Surface& s);
fam::Surface load_surface(const std::string& path);
void save_surface(const fam::Surface& s, const std::string& path);

json census_report_to_json(const census::CensusReport& r, const fam::FamilySpec& fm,
                           const gf::Field& f);
json phase1_to_json(const census::Phase1Result& p, const fam::FamilySpec& fm, const gf::Field& f);
json verdict_to_json(const smooth::SmoothnessVerdict& v, const gf::Field& base);
json fiber_report_to_json(const picard::FiberReport& rep, const gf::Field& f);

/// Versioned report envelope. The payload is the reproducible part;
/// timestamps and wall time live outside it.
struct ReportFile {
    std::string command;
    std::map<std::string, std::string> inputs; // name -> content hash
    json payload;
    double wall_seconds = 0.0;
};

json report_to_json(const ReportFile& r);
void save_report(const ReportFile& r, const std::string& path);

std::string hash_file(const std::string& path); // fnv1a of the bytes, hex

} // namespace dpc::io
