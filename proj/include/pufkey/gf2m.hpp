#pragma once

#include <cstdint>
#include <vector>

#include "pufkey/errors.hpp"
#include "pufkey/opcount.hpp"

namespace pufkey {

// F_{2^m}, 1 <= m <= 16. Element values are polynomial-basis coordinate
// vectors packed into integers below 2^m. Multiplication runs a fixed
// shift-and-add schedule (m iterations, branchless selects) so the work done
// never depends on operand values; inversion is a fixed square-and-multiply
// chain computing a^(2^m - 2). With build_tables() both become single lookups.
class Field {
public:
    Field(int m, uint32_t modulus);

    static uint32_t default_modulus(int m);
    static Field with_default_modulus(int m) { return Field(m, default_modulus(m)); }

    int m() const { return m_; }
    uint32_t q() const { return q_; }
    uint32_t modulus() const { return modulus_; }

    // Each call increments exactly one counter of its kind in the active
    // CountScope; internal steps are never counted separately.
    uint32_t add(uint32_t a, uint32_t b) const {
        count_add();
        return a ^ b;
    }

    uint32_t mul(uint32_t a, uint32_t b) const {
        count_mul();
        if (!mul_table_.empty()) return mul_table_[(static_cast<size_t>(a) << m_) | b];
        return mul_core(a, b);
    }

    uint32_t inv(uint32_t a) const {
        count_inv();
        if (a == 0) throw InversionOfZero();
        if (!inv_table_.empty()) return inv_table_[a];
        return inv_core(a);
    }

    void build_tables(); // m <= 8, else TableTooLarge
    bool has_tables() const { return !mul_table_.empty(); }
    size_t table_entries() const { return mul_table_.size(); }

    bool same_as(const Field& o) const { return m_ == o.m_ && modulus_ == o.modulus_; }

    // uncounted variants for test oracles and table building
    uint32_t add_uncounted(uint32_t a, uint32_t b) const { return a ^ b; }
    uint32_t mul_uncounted(uint32_t a, uint32_t b) const { return mul_core(a, b); }
    uint32_t inv_uncounted(uint32_t a) const {
        if (a == 0) throw InversionOfZero();
        return inv_core(a);
    }

private:
    uint32_t mul_core(uint32_t a, uint32_t b) const;
    uint32_t inv_core(uint32_t a) const;

    int m_;
    uint32_t modulus_;
    uint32_t q_;
    std::vector<uint16_t> mul_table_; // q*q entries when built
    std::vector<uint16_t> inv_table_; // q entries when built ([0] unused)
};

// Checked wrapper for the public API surface; decoders work on raw values.
class FieldElement {
public:
    FieldElement(const Field& f, uint32_t v);

    uint32_t value() const { return v_; }
    const Field& field() const { return *field_; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    FieldElement inverse() const;
    bool operator==(const FieldElement& o) const {
        return field_->same_as(*o.field_) && v_ == o.v_;
    }

private:
    const Field* field_;
    uint32_t v_;
};

} // namespace pufkey
