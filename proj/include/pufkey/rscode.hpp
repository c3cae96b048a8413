#pragma once

#include <cstdint>
#include <vector>

#include "pufkey/gf2m.hpp"
#include "pufkey/polyring.hpp"
#include "pufkey/rng.hpp"

namespace pufkey {

// Received or transmitted symbol vector with per-position erasure flags.
// Canonical form: erased positions carry symbol value 0.
struct Word {
    std::vector<uint32_t> symbols;
    std::vector<uint8_t> erased;

    int n() const { return static_cast<int>(symbols.size()); }
    int erasure_count() const {
        int c = 0;
        for (auto e : erased) c += e;
        return c;
    }

    static Word clean(std::vector<uint32_t> syms) {
        Word w;
        w.erased.assign(syms.size(), 0);
        w.symbols = std::move(syms);
        return w;
    }
};

// Evaluation-style Reed-Solomon code: codewords are (f(a_1), ..., f(a_n)) for
// message polynomials f of degree < k.
class RsSpec {
public:
    RsSpec(Field field, int n, int k);
    RsSpec(Field field, int n, int k, std::vector<uint32_t> locators);

    const Field& field() const { return field_; }
    Field& field() { return field_; }
    int n() const { return n_; }
    int k() const { return k_; }
    int d() const { return n_ - k_ + 1; }
    const std::vector<uint32_t>& locators() const { return locators_; }

private:
    Field field_;
    int n_, k_;
    std::vector<uint32_t> locators_;
};

Word rs_encode(const RsSpec& spec, const UniPoly& message); // MessageTooLong if deg >= k
UniPoly rs_random_message(const RsSpec& spec, Rng& rng);
Word rs_random_codeword(const RsSpec& spec, Rng& rng);

// Lagrange interpolation through the first k positions, then re-check every
// symbol. Test oracle, not constant-op. Erased input is a usage error.
bool rs_is_codeword(const RsSpec& spec, const Word& w);

} // namespace pufkey
