// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dpc/gf.hpp"

#include <string>
#include <vector>

namespace dpc::wps {

/// Weights of a weighted projective space P(w_0..w_n). All weights are
/// positive and their gcd is 1.
struct WeightSystem {
    std::vector<int> weights;

    WeightSystem() = default; // empty placeholder, assign before use
    explicit WeightSystem(std::vector<int> w);

    /// Positive weights without the gcd/arity checks, for the ambients of
    /// derived objects (restrictions, fiber curves).
    static WeightSystem raw(std::vector<int> w);

    int size() const { return static_cast<int>(weights.size()); }
    bool operator==(const WeightSystem& o) const { return weights == o.weights; }
    std::string literal() const; // "(1,1,2,3)"
};

/// A coordinate tuple is a vector of element indices over a common field;
/// the all-zero tuple is not a point and is rejected where it matters.
using Tuple = std::vector<int>;

bool is_zero_tuple(const Tuple& t);

/// The defining G_m action: coordinate i is multiplied by lambda^{w_i}.
Tuple scale(const gf::Field& f, const WeightSystem& ws, const Tuple& t, int lambda);

/// Geometric-point equality: u and v name the same point of the weighted
/// projective space over the algebraic closure. True iff the supports agree
/// and the coordinate ratios r_i = v_i/u_i satisfy r_i^{w_j} = r_j^{w_i} for
/// all i, j in the support.
bool equivalent(const gf::Field& f, const WeightSystem& ws, const Tuple& u, const Tuple& v);

/// Lexicographically smallest tuple (by element index, coordinate-major)
/// among all tuples equivalent to t. Idempotent and constant on classes.
Tuple canonicalize(const gf::Field& f, const WeightSystem& ws, const Tuple& t);

/// All distinct points as canonical representatives, in lexicographic order.
std::vector<Tuple> enumerate_points(const gf::Field& f, const WeightSystem& ws);

/// All nonzero tuples in lexicographic order (the "affine" counting mode).
std::vector<Tuple> enumerate_tuples(const gf::Field& f, int n);

std::string tuple_literal(const gf::Field& f, const Tuple& t); // "[0,0,1,1]"
Tuple parse_tuple(const gf::Field& f, const std::string& s);

} // namespace dpc::wps
