#include "pufkey/polyring.hpp"

#include <algorithm>

namespace pufkey {

uint32_t eval(const Field& f, const UniPoly& p, uint32_t a) {
    uint32_t acc = 0;
    for (int i = p.capacity(); i >= 0; i--) {
        acc = f.add(f.mul(acc, a), p.coeffs[i]);
    }
    return acc;
}

uint32_t eval_bivar(const Field& f, const BivarPoly& M, uint32_t x, uint32_t y) {
    uint32_t acc = 0;
    for (int eta = M.y_cap(); eta >= 0; eta--) {
        acc = f.add(f.mul(acc, y), eval(f, M.rows[eta], x));
    }
    return acc;
}

BivarPoly shift_substitute(const Field& f, const BivarPoly& M, uint32_t gamma) {
    const int l = M.y_cap();

    // gamma^0..gamma^l
    std::vector<uint32_t> pg(l + 1);
    pg[0] = 1;
    for (int j = 1; j <= l; j++) pg[j] = f.mul(pg[j - 1], gamma);

    // M(x, x(y-gamma)) = sum_eta M_eta(x) x^eta (y-gamma)^eta
    // row h collects gamma^(eta-h) x^eta M_eta(x) over eta >= h with odd C(eta,h)
    BivarPoly out;
    out.rows.resize(l + 1);
    for (int h = 0; h <= l; h++) {
        int ncap = 0;
        for (int eta = h; eta <= l; eta++) ncap = std::max(ncap, M.x_cap(eta) + eta);
        out.rows[h] = UniPoly::zero(ncap);
        for (int eta = h; eta <= l; eta++) {
            if (!binom_odd(eta, h)) continue;
            const uint32_t g = pg[eta - h];
            const auto& src = M.rows[eta].coeffs;
            for (size_t t = 0; t < src.size(); t++) {
                uint32_t& slot = out.rows[h].coeffs[eta + t];
                slot = f.add(slot, f.mul(g, src[t]));
            }
        }
    }
    return out;
}

std::pair<BivarPoly, int> strip_x_power(const BivarPoly& M) {
    if (M.is_zero()) throw ZeroPolynomial();
    int r = -1;
    for (const auto& row : M.rows) {
        for (size_t t = 0; t < row.coeffs.size(); t++) {
            if (row.coeffs[t]) {
                int lead = static_cast<int>(t);
                r = (r < 0) ? lead : std::min(r, lead);
                break;
            }
        }
    }
    BivarPoly out;
    out.rows.reserve(M.rows.size());
    for (const auto& row : M.rows) {
        UniPoly shifted = UniPoly::zero(row.capacity());
        for (size_t t = r; t < row.coeffs.size(); t++) shifted.coeffs[t - r] = row.coeffs[t];
        out.rows.push_back(std::move(shifted));
    }
    return {std::move(out), r};
}

UniPoly y_slice_at_zero(const BivarPoly& M) {
    UniPoly p = UniPoly::zero(M.y_cap());
    for (int eta = 0; eta <= M.y_cap(); eta++) p.coeffs[eta] = M.rows[eta].coeffs[0];
    return p;
}

} // namespace pufkey
