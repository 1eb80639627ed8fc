// SPDX-License-Identifier: Apache-2.0
#include "dpc/gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace dpc::gf {

namespace {

// Dense little-endian polynomial helpers over F_p.

void trim(std::vector<int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    trim(out);
    return out;
}

// Remainder of a by monic m.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
    trim(a);
    const int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        int lead = a.back();
        int shift = static_cast<int>(a.size()) - 1 - dm;
        for (int i = 0; i <= dm; ++i) {
            int& c = a[i + shift];
            c = ((c - lead * m[i]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

long long poly_index(const std::vector<int>& a, int p) {
    long long idx = 0, base = 1;
    for (int c : a) {
        idx += c * base;
        base *= p;
    }
    return idx;
}

std::vector<int> poly_from_index(long long idx, int p, int len) {
    std::vector<int> out(len, 0);
    for (int i = 0; i < len; ++i) {
        out[i] = static_cast<int>(idx % p);
        idx /= p;
    }
    return out;
}

} // namespace

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_prime_power(int n, int* p_out, int* r_out) {
    if (n < 2) return false;
    int p = 0;
    for (int d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = n; // n itself prime
    int r = 0, m = n;
    while (m % p == 0) {
        m /= p;
        ++r;
    }
    if (m != 1) return false;
    if (p_out) *p_out = p;
    if (r_out) *r_out = r;
    return true;
}

bool is_irreducible(const std::vector<int>& poly, int p) {
    std::vector<int> f = poly;
    trim(f);
    const int deg = static_cast<int>(f.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    // No monic factor of degree d for 1 <= d <= deg/2.
    for (int d = 1; 2 * d <= deg; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long idx = 0; idx < count; ++idx) {
            std::vector<int> g = poly_from_index(idx, p, d);
            g.push_back(1); // monic of degree d
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<int> canonical_modulus(int p, int r) {
    if (r == 1) return {0, 1}; // t, the residue field F_p[t]/(t)
    long long count = 1;
    for (int i = 0; i < r; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
        std::vector<int> m = poly_from_index(idx, p, r);
        m.push_back(1);
        if (is_irreducible(m, p)) return m;
    }
    throw std::logic_error("no irreducible polynomial found"); // unreachable for r >= 1
}

Field::Field(int p, int r, std::vector<int> modulus)
    : p_(p), r_(r), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw std::invalid_argument("characteristic is not prime");
    if (r_ < 1) throw std::invalid_argument("extension degree must be positive");
    if (static_cast<int>(modulus_.size()) != r_ + 1 || modulus_.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree r");
    for (int& c : modulus_) {
        if (c < 0 || c >= p_) throw std::invalid_argument("modulus coefficient out of range");
        (void)c;
    }
    if (r_ > 1 && !is_irreducible(modulus_, p_))
        throw std::invalid_argument("modulus is reducible");

    long long q = 1;
    for (int i = 0; i < r_; ++i) {
        q *= p_;
        if (q > kMaxSize) throw std::invalid_argument("field too large");
    }
    q_ = static_cast<int>(q);

    if (q_ <= kTableLimit) {
        add_.resize(static_cast<size_t>(q_) * q_);
        mul_.resize(static_cast<size_t>(q_) * q_);
        inv_.assign(q_, 0);
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b) {
                // addition is digit-wise mod p
                std::vector<int> da = poly_from_index(a, p_, r_);
                std::vector<int> db = poly_from_index(b, p_, r_);
                for (int i = 0; i < r_; ++i) da[i] = (da[i] + db[i]) % p_;
                add_[static_cast<size_t>(a) * q_ + b] = static_cast<uint16_t>(poly_index(da, p_));
                mul_[static_cast<size_t>(a) * q_ + b] = static_cast<uint16_t>(mul_poly(a, b));
            }
        }
        for (int a = 1; a < q_; ++a)
            for (int b = 1; b < q_; ++b)
                if (mul_[static_cast<size_t>(a) * q_ + b] == 1) {
                    inv_[a] = static_cast<uint16_t>(b);
                    break;
                }
    }
}

std::string Field::literal() const {
    return r_ == 1 ? std::to_string(p_) : std::to_string(p_) + "^" + std::to_string(r_);
}

std::vector<int> Field::to_poly(int a) const { return poly_from_index(a, p_, r_); }

int Field::from_poly(const std::vector<int>& c) const {
    return static_cast<int>(poly_index(c, p_));
}

int Field::mul_poly(int a, int b) const {
    std::vector<int> prod = dpc::gf::poly_mul(to_poly(a), to_poly(b), p_);
    return from_poly(poly_mod(std::move(prod), modulus_, p_));
}

int Field::add(int a, int b) const {
    if (!add_.empty()) return add_[static_cast<size_t>(a) * q_ + b];
    std::vector<int> da = to_poly(a), db = to_poly(b);
    for (int i = 0; i < r_; ++i) da[i] = (da[i] + db[i]) % p_;
    return from_poly(da);
}

int Field::neg(int a) const {
    std::vector<int> d = to_poly(a);
    for (int& c : d) c = (p_ - c) % p_;
    return from_poly(d);
}

int Field::sub(int a, int b) const { return add(a, neg(b)); }

int Field::mul(int a, int b) const {
    if (!mul_.empty()) return mul_[static_cast<size_t>(a) * q_ + b];
    return mul_poly(a, b);
}

int Field::inv(int a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    if (!inv_.empty()) return inv_[a];
    return pow(a, static_cast<long long>(q_) - 2);
}

int Field::pow(int a, long long e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    int result = 1, base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

int Field::from_int(long long n) const {
    return static_cast<int>(((n % p_) + p_) % p_);
}

std::vector<int> Field::digits(int a) const {
    if (a < 0 || a >= q_) throw std::invalid_argument("element index out of range");
    return to_poly(a);
}

int Field::from_digits(const std::vector<int>& d) const {
    if (static_cast<int>(d.size()) > r_) throw std::invalid_argument("too many digits");
    int idx = 0, base = 1;
    for (int c : d) {
        if (c < 0 || c >= p_) throw std::invalid_argument("digit out of range");
        idx += c * base;
        base *= p_;
    }
    return idx;
}

std::string Field::element_literal(int a) const {
    std::vector<int> d = digits(a);
    std::string s;
    for (int c : d) s += static_cast<char>('0' + c);
    return s;
}

int Field::parse_element(const std::string& s) const {
    if (s.empty()) throw std::invalid_argument("empty element literal");
    std::vector<int> d;
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad element literal: " + s);
        d.push_back(ch - '0');
    }
    return from_digits(d);
}

Element::Element(const Field& f, int index) : f_(&f), idx_(index) {
    if (index < 0 || index >= f.size()) throw std::invalid_argument("element index out of range");
}

namespace {
void check_same(const Element& a, const Element& b) {
    if (a.field() != b.field()) throw std::invalid_argument("field mismatch");
}
} // namespace

Element operator+(const Element& a, const Element& b) {
    check_same(a, b);
    return Element(a.field(), a.field().add(a.index(), b.index()));
}
Element operator-(const Element& a, const Element& b) {
    check_same(a, b);
    return Element(a.field(), a.field().sub(a.index(), b.index()));
}
Element operator*(const Element& a, const Element& b) {
    check_same(a, b);
    return Element(a.field(), a.field().mul(a.index(), b.index()));
}
Element operator/(const Element& a, const Element& b) {
    check_same(a, b);
    return Element(a.field(), a.field().mul(a.index(), a.field().inv(b.index())));
}
bool operator==(const Element& a, const Element& b) {
    check_same(a, b);
    return a.index() == b.index();
}

namespace {

std::mutex registry_mutex;
std::map<std::tuple<int, int, std::vector<int>>, std::unique_ptr<Field>>& registry() {
    static std::map<std::tuple<int, int, std::vector<int>>, std::unique_ptr<Field>> r;
    return r;
}

} // namespace

const Field& make_field(int p, int r, std::vector<int> modulus) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto key = std::make_tuple(p, r, modulus);
    auto it = registry().find(key);
    if (it == registry().end())
        it = registry().emplace(key, std::make_unique<Field>(p, r, std::move(modulus))).first;
    return *it->second;
}

const Field& field(int p, int r) { return make_field(p, r, canonical_modulus(p, r)); }

const Field& field(int q) {
    int p = 0, r = 0;
    if (!is_prime_power(q, &p, &r)) throw std::invalid_argument("not a prime power");
    return field(p, r);
}

const Field& field(const std::string& literal) {
    auto caret = literal.find('^');
    try {
        if (caret != std::string::npos) {
            int p = std::stoi(literal.substr(0, caret));
            int r = std::stoi(literal.substr(caret + 1));
            if (r < 1) throw std::invalid_argument("bad");
            return field(p, r);
        }
        int q = std::stoi(literal);
        int p = 0, r = 0;
        if (!is_prime_power(q, &p, &r)) throw std::invalid_argument("bad");
        return field(p, r);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad field literal: " + literal);
    }
}

const Field& extension_of(const Field& base, int k) {
    if (k < 1) throw std::invalid_argument("extension degree must be positive");
    return field(base.characteristic(), base.degree() * k);
}

std::vector<int> embedding(const Field& sub, const Field& sup) {
    if (sub.characteristic() != sup.characteristic() || sup.degree() % sub.degree() != 0)
        throw std::invalid_argument("not an extension");
    // Smallest-index root of sub's modulus in sup.
    int root = -1;
    for (int g = 0; g < sup.size(); ++g) {
        int v = 0;
        const std::vector<int>& m = sub.modulus();
        for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i)
            v = sup.add(sup.mul(v, g), sup.from_int(m[i]));
        if (v == 0) {
            root = g;
            break;
        }
    }
    if (root < 0) throw std::logic_error("modulus has no root in extension");
    std::vector<int> map(sub.size());
    for (int a = 0; a < sub.size(); ++a) {
        std::vector<int> d = sub.digits(a);
        int v = 0, basis = 1;
        for (int i = 0; i < static_cast<int>(d.size()); ++i) {
            v = sup.add(v, sup.mul(sup.from_int(d[i]), basis));
            basis = sup.mul(basis, root);
        }
        map[a] = v;
    }
    return map;
}

std::vector<Element> enumerate(const Field& f) {
    std::vector<Element> out;
    out.reserve(f.size());
    for (int a = 0; a < f.size(); ++a) out.emplace_back(f, a);
    return out;
}

} // namespace dpc::gf
