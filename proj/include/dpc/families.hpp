// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dpc/gf.hpp"
#include "dpc/wps.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dpc::fam {

struct Monomial {
    std::vector<int> exps; // one exponent per ambient variable

    int total_degree() const;
    int weighted_degree(const wps::WeightSystem& ws) const;
    std::string key() const; // "e0.e1.e2.e3"
    static Monomial parse(const std::string& key, int nvars);
    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator<(const Monomial& o) const; // graded-lex: total degree, then exps
};

/// A graded family of hypersurfaces: fixed terms plus an ordered list of
/// free coefficient slots. Slots are kept in graded-lex order so coefficient
/// vectors have a stable meaning in reports and checkpoints.
struct FamilySpec {
    std::string id;
    wps::WeightSystem ambient;
    int degree = 0; // weighted total degree of a homogeneous family
    std::vector<std::pair<Monomial, int>> fixed; // monomial, small-integer coefficient
    std::vector<Monomial> slots;
    bool homogeneous = true;
    std::string parent; // original family id for derived (reduced) families

    int nvars() const { return ambient.size(); }
    int slot_index(const Monomial& m) const; // -1 if absent
    std::string slot_key(int i) const { return slots[i].key(); }
};

/// Built-in normal forms. DP1_* live in P(1,1,2,3) with fixed w^2 + z^3,
/// DP2_* in P(1,1,1,2) with fixed w^2, CUBIC_P3 is the full cubic in P^3.
const FamilySpec& builtin_family(const std::string& id);
const std::vector<std::string>& builtin_family_ids();

struct Surface {
    FamilySpec family;
    const gf::Field* field = nullptr;
    std::vector<int> coeffs; // one element index per slot

    const gf::Field& gf() const { return *field; }
};

Surface make_surface(const FamilySpec& fm, const gf::Field& f, std::vector<int> coeffs);

/// Value of c * prod x_i^{e_i} with the 0^0 = 1 convention.
int evaluate_monomial(const gf::Field& f, const Monomial& m, const wps::Tuple& t);
int evaluate(const Surface& s, const wps::Tuple& t);

/// Exponent reduction e -> ((e-1) mod (q-1)) + 1 for e > 0, using x^q = x.
/// Preserves the F_q solution set of every surface.
int reduce_exponent(int e, int q);

/// The collapsed coefficient space actually searched: slots are the distinct
/// reduced images of f's slots; fixed monomials are reduced in place.
FamilySpec reduced_family(const FamilySpec& f, const gf::Field& field);

/// Same surface as a member of the reduced family; colliding coefficients
/// are summed. evaluate(reduce_exponents(s), t) == evaluate(s, t) for every
/// tuple t over F_q.
Surface reduce_exponents(const Surface& s);

/// Specialize some variables to constants, folding them into coefficients.
/// subst[i] is the value for variable i, or nullopt to keep it. The result
/// is a surface over the kept variables whose family has one slot per
/// distinct surviving monomial and no fixed terms.
Surface restrict_vars(const Surface& s, const std::vector<std::optional<int>>& subst);

/// Substitute x_i = m*s, x_j = n*s for a fresh weight-1 variable s placed
/// first; used for the fibers of the degree-1 anticanonical pencil.
Surface restrict_to_line(const Surface& s, int i, int j, int m, int n);

/// Formal partial derivative: c x^e -> (e mod p) c x^{e-1}.
Surface partial_derivative(const Surface& s, int var);

enum class Mode { projective, affine };

/// Reference point counter. Affine mode counts nonzero solution tuples;
/// projective mode counts solution classes via canonical representatives.
/// With early_exit = B the scan may stop once the count exceeds B and
/// report B + 1.
long long count_points(const Surface& s, Mode mode,
                       std::optional<long long> early_exit = std::nullopt);

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

Surface random_surface(const FamilySpec& fm, const gf::Field& f, SplitMix64& rng);

/// Flattened term list (fixed + slotted, merged) of a surface.
struct Term {
    Monomial m;
    int c; // element index
};
std::vector<Term> surface_terms(const Surface& s);

/// Visit every nonzero tuple where the term polynomial vanishes, in
/// lexicographic order; the callback returns false to stop the scan.
/// Evaluation specializes one variable at a time, so the grid walk costs
/// roughly one field op per tuple.
void for_each_zero(const gf::Field& f, int nvars, const std::vector<Term>& terms,
                   const std::function<bool(const wps::Tuple&)>& fn);

} // namespace dpc::fam
