// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dpc::gf {

/// Arithmetic in F_{p^r} for small prime powers.
///
/// Elements are identified by their index in [0, q): the base-p digit vector
/// of the residue polynomial, least significant digit first. Index 0 and 1
/// are the additive and multiplicative identities in every field. Arithmetic
/// is table-backed up to q = 512; larger fields fall back to on-demand
/// polynomial arithmetic modulo the field's irreducible modulus.
class Field {
public:
    static constexpr int kTableLimit = 512;
    static constexpr int kMaxSize = 65536; // element indices must fit 16 bits

    /// modulus: coefficients of a monic degree-r polynomial over F_p,
    /// constant term first. Must be irreducible; checked at construction.
    Field(int p, int r, std::vector<int> modulus);

    int characteristic() const { return p_; }
    int degree() const { return r_; }
    int size() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }
    std::string literal() const; // "p" when r == 1, else "p^r"

    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const;              // throws std::domain_error on 0
    int pow(int a, long long e) const; // pow(a, 0) == 1, including a == 0
    int from_int(long long n) const;   // n mod p, embedded as a constant
    int frobenius(int a) const { return pow(a, p_); }

    std::vector<int> digits(int a) const;
    int from_digits(const std::vector<int>& d) const;

    /// Little-endian base-p digit string, e.g. "01" is t in F_4.
    std::string element_literal(int a) const;
    int parse_element(const std::string& s) const;

    bool operator==(const Field& o) const {
        return p_ == o.p_ && r_ == o.r_ && modulus_ == o.modulus_;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

    // Raw tables for hot loops; null when q > kTableLimit.
    const uint16_t* add_table() const { return add_.empty() ? nullptr : add_.data(); }
    const uint16_t* mul_table() const { return mul_.empty() ? nullptr : mul_.data(); }

private:
    int p_, r_, q_;
    std::vector<int> modulus_;
    std::vector<uint16_t> add_, mul_;
    std::vector<uint16_t> inv_;

    std::vector<int> to_poly(int a) const;
    int from_poly(const std::vector<int>& c) const;
    int mul_poly(int a, int b) const;
};

/// A field element bound to its field; operations on elements of different
/// fields throw std::invalid_argument.
class Element {
public:
    Element(const Field& f, int index);
    const Field& field() const { return *f_; }
    int index() const { return idx_; }

    friend Element operator+(const Element& a, const Element& b);
    friend Element operator-(const Element& a, const Element& b);
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator/(const Element& a, const Element& b);
    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
    const Field* f_;
    int idx_;
};

bool is_prime(int n);
bool is_prime_power(int n, int* p_out = nullptr, int* r_out = nullptr);

/// Irreducibility over F_p by exhaustive search for monic factors of degree
/// <= deg/2. Intended for the small degrees used here.
bool is_irreducible(const std::vector<int>& poly, int p);

/// The canonical modulus is the first monic irreducible of degree r over F_p
/// in index order (poly encoded as sum of coeff_i * p^i). This reproduces
/// t^2+t+1 for F_4, t^3+t+1 for F_8, t^2+1 for F_9, t^4+t+1 for F_16,
/// t^2+2 for F_25 and t^2+1 for F_49.
std::vector<int> canonical_modulus(int p, int r);

/// Cached field access. Fields live for the program's lifetime, so const
/// references remain valid and shareable across threads.
const Field& field(int p, int r);
const Field& field(int q); // prime power, canonical modulus
const Field& field(const std::string& literal); // "q" or "p^r"
const Field& make_field(int p, int r, std::vector<int> modulus);

/// F_{q^k} over the same characteristic, with canonical modulus.
const Field& extension_of(const Field& base, int k);

/// Index map of the unique-up-to-Frobenius embedding sub -> sup picking the
/// smallest-index root of sub's modulus in sup. Verifies sup is a valid
/// extension; throws std::invalid_argument otherwise.
std::vector<int> embedding(const Field& sub, const Field& sup);

std::vector<Element> enumerate(const Field& f);

} // namespace dpc::gf
