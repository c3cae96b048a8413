#include "pufkey/keyflow.hpp"

#include <stdexcept>
#include <utility>

namespace pufkey {

namespace {

Bits random_bits(Rng& rng, size_t count) {
    Bits out(count);
    for (uint8_t& b : out) b = static_cast<uint8_t>(rng.below(2));
    return out;
}

std::vector<int> random_permutation(Rng& rng, int count) {
    std::vector<int> perm(count);
    for (int i = 0; i < count; i++) perm[i] = i;
    for (int i = count - 1; i > 0; i--) std::swap(perm[i], perm[static_cast<int>(rng.below(i + 1))]);
    return perm;
}

Bits permute_blocks(const Bits& bits, const std::vector<int>& perm, int block) {
    Bits out(bits.size());
    for (size_t i = 0; i < perm.size(); i++)
        std::copy(bits.begin() + static_cast<size_t>(perm[i]) * block,
                  bits.begin() + static_cast<size_t>(perm[i] + 1) * block,
                  out.begin() + i * block);
    return out;
}

} // namespace

Bits xor_bits(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) throw std::invalid_argument("xor_bits: length mismatch");
    Bits out(a.size());
    for (size_t i = 0; i < a.size(); i++) out[i] = (a[i] ^ b[i]) & 1;
    return out;
}

HelperBundle enroll(const ConcatSpec& spec, const Bits& response, uint64_t seed, MaskKind mask) {
    if (static_cast<int>(response.size()) != spec.n())
        throw std::invalid_argument("enroll: response must have n bits");
    Rng msg_rng(seed, 20);
    const Bits msg = random_bits(msg_rng, spec.k());
    HelperBundle bundle;
    bundle.helper = xor_bits(response, concat_encode(spec, msg));
    bundle.mask = mask;
    Rng mask_rng(seed, 21);
    if (mask == MaskKind::Codeword)
        bundle.mask_codeword = concat_encode(spec, random_bits(mask_rng, spec.k()));
    else if (mask == MaskKind::Permutation)
        bundle.mask_permutation = random_permutation(mask_rng, spec.outer().n());
    return bundle;
}

Bits preprocess_classical(const HelperBundle& bundle, const Bits& noisy_response) {
    return xor_bits(noisy_response, bundle.helper);
}

MaskedInput preprocess_masked(const ConcatSpec& spec, const HelperBundle& bundle,
                              const Bits& noisy_response, uint64_t seed) {
    if (bundle.mask == MaskKind::None)
        throw std::invalid_argument("preprocess_masked: bundle carries no mask");
    const Bits plain = preprocess_classical(bundle, noisy_response);
    Rng rng(seed, 10);
    MaskedInput out;
    if (bundle.mask == MaskKind::Codeword) {
        out.mask_message = random_bits(rng, spec.k());
        out.word = xor_bits(plain, concat_encode(spec, out.mask_message));
    } else {
        out.permutation = random_permutation(rng, spec.outer().n());
        out.word = permute_blocks(plain, out.permutation, spec.inner().n());
    }
    return out;
}

ReproductionOutcome reproduce(const ConcatSpec& spec, const HelperBundle& bundle,
                              const Bits& noisy_response, int tau, uint64_t seed,
                              const Digest& digest, const ConcatDecodeOptions& opts) {
    if (noisy_response.size() != bundle.helper.size() ||
        static_cast<int>(noisy_response.size()) != spec.n())
        throw std::invalid_argument("reproduce: response/helper length mismatch");

    ReproductionOutcome out;
    CountScope scope;
    ConcatDecodeOptions run_opts = opts;
    run_opts.tau = tau;
    const uint64_t decode_seed = Rng(seed, 11).next_u64();

    ConcatDecodeResult dec;
    Bits mask_message;
    if (bundle.mask == MaskKind::None) {
        dec = concat_decode(spec, preprocess_classical(bundle, noisy_response), decode_seed,
                            run_opts);
    } else if (bundle.mask == MaskKind::Codeword) {
        MaskedInput mi = preprocess_masked(spec, bundle, noisy_response, seed);
        mask_message = std::move(mi.mask_message);
        dec = concat_decode(spec, mi.word, decode_seed, run_opts);
    } else {
        MaskedInput mi = preprocess_masked(spec, bundle, noisy_response, seed);
        std::vector<uint32_t> locators(spec.outer().n());
        for (int i = 0; i < spec.outer().n(); i++)
            locators[i] = spec.outer().locators()[mi.permutation[i]];
        RsSpec outer(spec.outer().field(), spec.outer().n(), spec.outer().k(), locators);
        ConcatSpec shuffled(spec.inner(), std::move(outer));
        dec = concat_decode(shuffled, mi.word, decode_seed, run_opts);
    }

    out.inner_erasures = dec.inner_erasures;
    if (!dec.message) {
        out.ops = scope.counts();
        return out;
    }
    Bits msg = *dec.message;
    if (!mask_message.empty()) msg = xor_bits(msg, mask_message);

    out.status = ReproduceStatus::Success;
    out.recovered_response = xor_bits(concat_encode(spec, msg), bundle.helper);
    out.key = digest ? digest(out.recovered_response) : out.recovered_response;
    out.message = std::move(msg);
    out.ops = scope.counts();
    return out;
}

} // namespace pufkey
