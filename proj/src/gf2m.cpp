#include "pufkey/gf2m.hpp"

#include <stdexcept>
#include <string>

namespace pufkey {

namespace {

// remainder of poly (degree pdeg) divided by divisor (degree ddeg), both over F_2
bool divides(uint32_t divisor, int ddeg, uint32_t poly, int pdeg) {
    for (int sh = pdeg - ddeg; sh >= 0; sh--) {
        if ((poly >> (sh + ddeg)) & 1u) poly ^= divisor << sh;
    }
    return poly == 0;
}

bool irreducible(uint32_t modulus, int m) {
    if (m == 1) return true; // both degree-1 polynomials are irreducible
    for (int d = 1; d <= m / 2; d++) {
        for (uint32_t div = 1u << d; div < (2u << d); div++) {
            if (divides(div, d, modulus, m)) return false;
        }
    }
    return true;
}

} // namespace

Field::Field(int m, uint32_t modulus) : m_(m), modulus_(modulus), q_(1u << m) {
    if (m < 1 || m > 16) throw std::invalid_argument("extension degree must be in [1,16]");
    if (modulus >> m != 1u)
        throw std::invalid_argument("modulus must have degree exactly m");
    if (!irreducible(modulus, m))
        throw std::invalid_argument("modulus " + std::to_string(modulus) + " is reducible");
}

uint32_t Field::default_modulus(int m) {
    // primitive polynomials, so powers of x enumerate all nonzero elements
    static const uint32_t table[17] = {
        0,      0x3,    0x7,    0xB,   0x13,   0x25,   0x43,   0x89,  0x11D,
        0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
    };
    if (m < 1 || m > 16) throw std::invalid_argument("extension degree must be in [1,16]");
    return table[m];
}

uint32_t Field::mul_core(uint32_t a, uint32_t b) const {
    uint32_t acc = 0;
    for (int i = 0; i < m_; i++) {
        acc ^= a & static_cast<uint32_t>(-static_cast<int32_t>((b >> i) & 1u));
        uint32_t carry = static_cast<uint32_t>(-static_cast<int32_t>((a >> (m_ - 1)) & 1u));
        a = (a << 1) ^ (modulus_ & carry);
    }
    return acc;
}

uint32_t Field::inv_core(uint32_t a) const {
    // a^(2^m - 2) = prod_{i=1}^{m-1} a^(2^i), fixed-length chain
    uint32_t acc = 1, sq = a;
    for (int i = 1; i < m_; i++) {
        sq = mul_core(sq, sq);
        acc = mul_core(acc, sq);
    }
    return acc;
}

void Field::build_tables() {
    if (m_ > 8) throw TableTooLarge(m_);
    mul_table_.assign(static_cast<size_t>(q_) * q_, 0);
    for (uint32_t a = 0; a < q_; a++) {
        for (uint32_t b = 0; b < q_; b++) {
            mul_table_[(static_cast<size_t>(a) << m_) | b] = static_cast<uint16_t>(mul_core(a, b));
        }
    }
    inv_table_.assign(q_, 0);
    for (uint32_t a = 1; a < q_; a++) inv_table_[a] = static_cast<uint16_t>(inv_core(a));
}

FieldElement::FieldElement(const Field& f, uint32_t v) : field_(&f), v_(v) {
    if (v >= f.q()) throw std::invalid_argument("element value out of range");
}

static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!a.field().same_as(b.field()))
        throw std::invalid_argument("operands belong to different fields");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return FieldElement(a.field(), a.field().add(a.value(), b.value()));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return FieldElement(a.field(), a.field().mul(a.value(), b.value()));
}

FieldElement FieldElement::inverse() const {
    return FieldElement(*field_, field_->inv(v_));
}

} // namespace pufkey
