#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pufkey/concat.hpp"

namespace pufkey {

enum class MaskKind { None, Codeword, Permutation };

// w = response XOR codeword; safe to store in the open. The mask material
// kept here is the enrollment-time sample for serialization round-trips;
// reproduction draws fresh material every call.
struct HelperBundle {
    Bits helper;
    MaskKind mask = MaskKind::None;
    Bits mask_codeword;                // when mask == Codeword
    std::vector<int> mask_permutation; // when mask == Permutation, over outer positions
};

Bits xor_bits(const Bits& a, const Bits& b);

HelperBundle enroll(const ConcatSpec& spec, const Bits& response, uint64_t seed,
                    MaskKind mask = MaskKind::None);

// noisy_response XOR helper = codeword + error
Bits preprocess_classical(const HelperBundle& bundle, const Bits& noisy_response);

struct MaskedInput {
    Bits word;                    // what the decoder sees
    Bits mask_message;            // codeword masking: message of the fresh mask codeword
    std::vector<int> permutation; // permutation masking: word block i came from block permutation[i]
};

// Codeword masking adds a fresh random codeword; permutation masking shuffles
// the outer blocks (the decoder must run with correspondingly permuted
// locators). Fresh randomness per call.
MaskedInput preprocess_masked(const ConcatSpec& spec, const HelperBundle& bundle,
                              const Bits& noisy_response, uint64_t seed);

enum class ReproduceStatus { Success, Failure };

struct ReproductionOutcome {
    ReproduceStatus status = ReproduceStatus::Failure;
    Bits recovered_response; // candidate codeword + helper; empty on failure
    Bits key;                // digest of recovered_response; empty on failure
    Bits message;            // recovered message bits; empty on failure
    int inner_erasures = 0;
    OpCountReport ops;
};

using Digest = std::function<Bits(const Bits&)>; // identity when empty

// Preprocess per the bundle's mask kind, decode, unmask, rebuild the codeword
// from the winning message, and add the helper back. Decoder failures and
// distance ties come back as Failure outcomes, not exceptions. tau < 0 picks
// the widest radius within opts.s_cap.
ReproductionOutcome reproduce(const ConcatSpec& spec, const HelperBundle& bundle,
                              const Bits& noisy_response, int tau, uint64_t seed,
                              const Digest& digest = {}, const ConcatDecodeOptions& opts = {});

} // namespace pufkey
