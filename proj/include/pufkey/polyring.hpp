#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pufkey/gf2m.hpp"

namespace pufkey {

// Dense univariate polynomial. coeffs.size()-1 is the capacity degree, which
// may exceed the mathematical degree; arithmetic walks every slot up to
// capacity so op counts depend only on shape, never on values.
struct UniPoly {
    std::vector<uint32_t> coeffs;

    UniPoly() = default;
    explicit UniPoly(std::vector<uint32_t> c) : coeffs(std::move(c)) {}

    static UniPoly zero(int capacity) { return UniPoly(std::vector<uint32_t>(capacity + 1, 0)); }

    int capacity() const { return static_cast<int>(coeffs.size()) - 1; }

    // -1 for the zero polynomial; kept out of constant-op code paths
    int math_degree() const {
        for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; i--)
            if (coeffs[i]) return i;
        return -1;
    }

    bool is_zero() const { return math_degree() < 0; }
    bool operator==(const UniPoly&) const = default;
};

// Q(x,y) = sum_eta rows[eta](x) * y^eta; per-row x capacities are the row sizes.
struct BivarPoly {
    std::vector<UniPoly> rows;

    int y_cap() const { return static_cast<int>(rows.size()) - 1; }
    int x_cap(int eta) const { return rows[eta].capacity(); }
    bool is_zero() const {
        for (const auto& r : rows)
            if (!r.is_zero()) return false;
        return true;
    }
};

// parity of binomial(n, k) over F_2 (Lucas)
inline bool binom_odd(unsigned n, unsigned k) { return (n & k) == k; }

// Horner over the full capacity; fixed op count for fixed capacity
uint32_t eval(const Field& f, const UniPoly& p, uint32_t a);

uint32_t eval_bivar(const Field& f, const BivarPoly& M, uint32_t x, uint32_t y);

// M(x, x*(y - gamma)); y capacity unchanged, row h capacity max_{eta>=h}(cap_eta + eta)
BivarPoly shift_substitute(const Field& f, const BivarPoly& M, uint32_t gamma);

// divide out the largest x power dividing every row; index shift plus
// zero-fill, capacities unchanged, no field arithmetic
std::pair<BivarPoly, int> strip_x_power(const BivarPoly& M);

// p(y) = M(0, y): coefficient eta is the constant term of row eta
UniPoly y_slice_at_zero(const BivarPoly& M);

} // namespace pufkey
