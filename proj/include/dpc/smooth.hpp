// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dpc/families.hpp"

#include <optional>
#include <vector>

namespace dpc::smooth {

/// Outcome of the Jacobian-criterion scan over F_{q^k} for k = 1..B.
/// A singular witness is a nonzero tuple over F_{q^k} (element indices of
/// the extension field) at which the surface and all formal partials vanish;
/// witnesses always lie on the surface by construction.
struct SmoothnessVerdict {
    bool smooth = false;
    int checked_up_to = 0;               // B when smooth
    std::optional<wps::Tuple> witness;   // first witness in scan order
    int witness_degree = 0;              // extension degree k of the witness
    std::vector<int> checked_degrees;
};

/// Hard cap on the extension size a scan may touch.
constexpr int kMaxExtensionSize = 4096;

/// All singular tuples of s over F_{q^k}, deduplicated up to geometric
/// equivalence and sorted; deterministic. Throws std::invalid_argument when
/// q^k exceeds kMaxExtensionSize.
std::vector<wps::Tuple> singular_tuples(const fam::Surface& s, int k);

/// Smooth iff singular_tuples is empty for every k <= B. The verdict carries
/// the first witness found, scanning k = 1, 2, ... in order.
SmoothnessVerdict is_smooth_up_to(const fam::Surface& s, int max_ext);

} // namespace dpc::smooth
