#include "pufkey/concat.hpp"

#include <stdexcept>
#include <utility>

namespace pufkey {

Bits symbol_to_bits(uint32_t value, int m) {
    Bits out(m);
    for (int i = 0; i < m; i++) out[i] = (value >> i) & 1;
    return out;
}

uint32_t bits_to_symbol(const Bits& bits, size_t offset, int m) {
    if (offset + m > bits.size()) throw std::invalid_argument("bits_to_symbol: out of range");
    uint32_t v = 0;
    for (int i = 0; i < m; i++) v |= static_cast<uint32_t>(bits[offset + i] & 1) << i;
    return v;
}

ConcatSpec::ConcatSpec(RmSpec inner, RsSpec outer)
    : inner_(std::move(inner)), outer_(std::move(outer)) {
    if (inner_.k() != outer_.field().m())
        throw std::invalid_argument("concat: inner dimension must match outer symbol width");
}

Bits concat_encode(const ConcatSpec& spec, const Bits& msg) {
    if (static_cast<int>(msg.size()) != spec.k())
        throw std::invalid_argument("concat_encode: message must have k bits");
    const int m = spec.inner().k();
    UniPoly outer_msg = UniPoly::zero(spec.outer().k() - 1);
    for (int i = 0; i < spec.outer().k(); i++)
        outer_msg.coeffs[i] = bits_to_symbol(msg, static_cast<size_t>(i) * m, m);
    const Word cw = rs_encode(spec.outer(), outer_msg);

    Bits out;
    out.reserve(spec.n());
    for (uint32_t sym : cw.symbols) {
        const Bits block = rm_encode(spec.inner(), sym);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

ConcatDecodeResult concat_decode(const ConcatSpec& spec, const Bits& received, uint64_t seed,
                                 const ConcatDecodeOptions& opts) {
    if (static_cast<int>(received.size()) != spec.n())
        throw std::invalid_argument("concat_decode: word must have n bits");
    const RsSpec& outer = spec.outer();
    const int n_in = spec.inner().n();
    const int n_out = outer.n(), k_out = outer.k();

    ConcatDecodeResult res;
    CountScope scope;
    Rng inner_rng(seed, 1);

    Word word;
    word.symbols.assign(n_out, 0);
    word.erased.assign(n_out, 0);
    Bits block(n_in);
    for (int i = 0; i < n_out; i++) {
        std::copy(received.begin() + static_cast<size_t>(i) * n_in,
                  received.begin() + static_cast<size_t>(i + 1) * n_in, block.begin());
        const std::optional<uint32_t> sym = ml_decode(spec.inner(), block, inner_rng);
        if (sym)
            word.symbols[i] = *sym;
        else
            word.erased[i] = 1;
    }
    res.inner_erasures = word.erasure_count();

    if (opts.mode == PaddingMode::ByErasureCount && res.inner_erasures > n_out - k_out - 1) {
        res.ops = scope.counts();
        return res; // nothing the outer decoder can do
    }

    int tau = opts.tau;
    if (tau < 0) {
        const int nu = (opts.mode == PaddingMode::Strict) ? n_out : n_out - res.inner_erasures;
        tau = max_list_radius(nu, k_out, opts.s_cap);
    }
    GsParams prm;
    if (opts.mode == PaddingMode::Strict)
        prm = select_params(outer.n(), outer.k(), tau);
    else
        prm.tau = tau;

    DecodeResult dec = decode_list(outer, prm, word, Rng(seed, 2).next_u64(), opts.mode);
    res.outer_candidates = std::move(dec.candidates);

    const bool unique = res.outer_candidates.size() == 1 ||
                        (res.outer_candidates.size() > 1 &&
                         res.outer_candidates[0].distance < res.outer_candidates[1].distance);
    if (unique) {
        const int m = spec.inner().k();
        Bits msg(spec.k());
        for (int i = 0; i < k_out; i++) {
            const Bits sym_bits = symbol_to_bits(res.outer_candidates[0].message.coeffs[i], m);
            std::copy(sym_bits.begin(), sym_bits.end(), msg.begin() + static_cast<size_t>(i) * m);
        }
        res.message = std::move(msg);
    }
    res.ops = scope.counts();
    return res;
}

} // namespace pufkey
