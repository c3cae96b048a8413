#pragma once

#include <cstdint>

namespace pufkey {

// Ground truth for the constant-operation audits. Every field primitive and
// every inner-decoder word operation executed inside a CountScope lands here.
struct OpCountReport {
    uint64_t adds = 0;
    uint64_t muls = 0;
    uint64_t invs = 0;
    uint64_t rr_calls = 0; // root-finder slot processings
    uint64_t bit_ops = 0;  // packed-word XOR+popcount steps in inner decoders

    bool operator==(const OpCountReport&) const = default;

    OpCountReport& operator+=(const OpCountReport& o) {
        adds += o.adds;
        muls += o.muls;
        invs += o.invs;
        rr_calls += o.rr_calls;
        bit_ops += o.bit_ops;
        return *this;
    }
};

namespace detail {
inline thread_local OpCountReport* active_counts = nullptr;
}

// RAII counting frame. Frames nest; a child's totals roll into its parent on
// exit so a surrounding scope sees everything. Thread-local, so concurrent
// decodes never contend.
class CountScope {
public:
    CountScope() : parent_(detail::active_counts) { detail::active_counts = &counts_; }
    ~CountScope() {
        detail::active_counts = parent_;
        if (parent_) *parent_ += counts_;
    }
    CountScope(const CountScope&) = delete;
    CountScope& operator=(const CountScope&) = delete;

    const OpCountReport& counts() const { return counts_; }

private:
    OpCountReport counts_;
    OpCountReport* parent_;
};

inline void count_add() {
    if (auto* c = detail::active_counts) c->adds++;
}
inline void count_mul() {
    if (auto* c = detail::active_counts) c->muls++;
}
inline void count_inv() {
    if (auto* c = detail::active_counts) c->invs++;
}
inline void count_rr() {
    if (auto* c = detail::active_counts) c->rr_calls++;
}
inline void count_bit_ops(uint64_t n) {
    if (auto* c = detail::active_counts) c->bit_ops += n;
}

} // namespace pufkey
