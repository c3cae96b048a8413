#include "pufkey/rscode.hpp"

#include <set>
#include <stdexcept>

namespace pufkey {

namespace {

std::vector<uint32_t> default_locators(const Field& f, int n) {
    // powers of x; when n = 2^m the zero element is appended last
    std::vector<uint32_t> locs;
    locs.reserve(n);
    uint32_t a = 1;
    const int npow = std::min<int>(n, f.q() - 1);
    for (int i = 0; i < npow; i++) {
        locs.push_back(a);
        a = f.mul_uncounted(a, 2);
    }
    if (n == static_cast<int>(f.q())) locs.push_back(0);
    return locs;
}

} // namespace

RsSpec::RsSpec(Field field, int n, int k)
    : RsSpec(std::move(field), n, k, {}) {}

RsSpec::RsSpec(Field field, int n, int k, std::vector<uint32_t> locators)
    : field_(std::move(field)), n_(n), k_(k), locators_(std::move(locators)) {
    if (k < 1 || k >= n || n > static_cast<int>(field_.q()))
        throw std::invalid_argument("require 1 <= k < n <= 2^m");
    if (locators_.empty()) locators_ = default_locators(field_, n);
    if (static_cast<int>(locators_.size()) != n)
        throw std::invalid_argument("locator count must equal n");
    std::set<uint32_t> distinct(locators_.begin(), locators_.end());
    if (static_cast<int>(distinct.size()) != n)
        throw std::invalid_argument("locators must be pairwise distinct");
    for (uint32_t a : locators_)
        if (a >= field_.q()) throw std::invalid_argument("locator out of field range");
}

Word rs_encode(const RsSpec& spec, const UniPoly& message) {
    if (message.math_degree() >= spec.k())
        throw MessageTooLong("message degree " + std::to_string(message.math_degree()) +
                             " exceeds k-1 = " + std::to_string(spec.k() - 1));
    std::vector<uint32_t> syms(spec.n());
    for (int i = 0; i < spec.n(); i++) syms[i] = eval(spec.field(), message, spec.locators()[i]);
    return Word::clean(std::move(syms));
}

UniPoly rs_random_message(const RsSpec& spec, Rng& rng) {
    UniPoly f = UniPoly::zero(spec.k() - 1);
    for (auto& c : f.coeffs) c = rng.below(spec.field().q());
    return f;
}

Word rs_random_codeword(const RsSpec& spec, Rng& rng) {
    return rs_encode(spec, rs_random_message(spec, rng));
}

bool rs_is_codeword(const RsSpec& spec, const Word& w) {
    if (w.n() != spec.n()) throw std::invalid_argument("word length mismatch");
    if (w.erasure_count() != 0) throw std::invalid_argument("erased word is not checkable");

    const Field& f = spec.field();
    const int k = spec.k();

    // Lagrange interpolation through positions 0..k-1
    UniPoly poly = UniPoly::zero(k - 1);
    for (int i = 0; i < k; i++) {
        // basis polynomial for locator i, scaled by symbol i
        std::vector<uint32_t> basis{1}; // running product of (x - a_j)/(a_i - a_j)
        uint32_t denom = 1;
        for (int j = 0; j < k; j++) {
            if (j == i) continue;
            const uint32_t aj = spec.locators()[j];
            std::vector<uint32_t> next(basis.size() + 1, 0);
            for (size_t t = 0; t < basis.size(); t++) {
                next[t + 1] ^= basis[t];
                next[t] ^= f.mul_uncounted(basis[t], aj);
            }
            basis = std::move(next);
            denom = f.mul_uncounted(denom, spec.locators()[i] ^ aj);
        }
        uint32_t scale = f.mul_uncounted(w.symbols[i], f.inv_uncounted(denom));
        for (size_t t = 0; t < basis.size(); t++)
            poly.coeffs[t] ^= f.mul_uncounted(basis[t], scale);
    }

    for (int i = 0; i < spec.n(); i++) {
        uint32_t acc = 0;
        for (int t = k - 1; t >= 0; t--)
            acc = f.mul_uncounted(acc, spec.locators()[i]) ^ poly.coeffs[t];
        if (acc != w.symbols[i]) return false;
    }
    return true;
}

} // namespace pufkey
