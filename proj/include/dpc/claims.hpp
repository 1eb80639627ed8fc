// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dpc/families.hpp"
#include "dpc/surface_io.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dpc::claims {

enum class Runtime { instant, minutes, hours };

struct Outcome {
    std::string id;
    bool pass = false;
    std::string detail; // one line of evidence
    io::json evidence;
    double seconds = 0.0;
};

struct Claim {
    std::string id;
    std::string description;
    Runtime runtime = Runtime::instant;
    std::function<Outcome(int workers)> run;
};

/// Every verifiable claim, in presentation order. Expected values are frozen
/// from the normal forms; a mismatch against the exhaustive search is
/// reported as a failure with the evidence attached, never adjusted.
const std::vector<Claim>& registry();
const Claim& find_claim(const std::string& id); // throws std::invalid_argument

Outcome verify_claim(const std::string& id, int workers);

/// The unique-point cubic over F_2:
/// xw^2 + x^2w + y^3 + z^2y + z^3 + x^3 + xyz + x^2y + x^2z.
fam::Surface example_cubic_f2();

const char* runtime_name(Runtime rt);

} // namespace dpc::claims
