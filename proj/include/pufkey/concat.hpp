#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pufkey/gsdecoder.hpp"
#include "pufkey/rmcode.hpp"
#include "pufkey/rscode.hpp"

namespace pufkey {

// little-endian: bit i of value at offset + i
Bits symbol_to_bits(uint32_t value, int m);
uint32_t bits_to_symbol(const Bits& bits, size_t offset, int m);

// Outer RS symbols carried by inner RM codewords, one outer position per
// inner block. Requires inner k == outer field degree so symbols and inner
// messages identify bit-for-bit.
class ConcatSpec {
  public:
    ConcatSpec(RmSpec inner, RsSpec outer);

    const RmSpec& inner() const { return inner_; }
    const RsSpec& outer() const { return outer_; }
    int n() const { return inner_.n() * outer_.n(); }
    int k() const { return inner_.k() * outer_.k(); }
    int min_distance_bound() const { return inner_.min_distance() * outer_.d(); }

  private:
    RmSpec inner_;
    RsSpec outer_;
};

Bits concat_encode(const ConcatSpec& spec, const Bits& msg);

struct ConcatDecodeOptions {
    int tau = -1;  // -1: widest radius whose multiplicity stays within s_cap
    int s_cap = 3;
    PaddingMode mode = PaddingMode::ByErasureCount;
};

struct ConcatDecodeResult {
    std::optional<Bits> message; // unique closest list entry; nullopt on failure or tie
    std::vector<GsCandidate> outer_candidates;
    int inner_erasures = 0;
    OpCountReport ops;
};

// Inner blocks decode to symbols or erasures; the outer list decoder runs at
// the requested (or policy-derived) radius. More erasures than the outer
// decoder admits is a failure outcome, not an error.
ConcatDecodeResult concat_decode(const ConcatSpec& spec, const Bits& received, uint64_t seed,
                                 const ConcatDecodeOptions& opts = {});

} // namespace pufkey
