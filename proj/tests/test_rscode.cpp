#include "doctest.h"

#include <set>
#include <stdexcept>
#include <vector>

#include "pufkey/errors.hpp"
#include "pufkey/rscode.hpp"

using namespace pufkey;

namespace {

int hamming(const Word& a, const Word& b) {
    int d = 0;
    for (int i = 0; i < a.n(); i++) d += a.symbols[i] != b.symbols[i];
    return d;
}

} // namespace

TEST_CASE("default locators are consecutive powers of x") {
    RsSpec rs(Field(3, 0xB), 7, 3);
    CHECK(rs.locators() == std::vector<uint32_t>{1, 2, 4, 3, 6, 7, 5});

    // full-length code gets the zero element appended
    RsSpec full(Field(3, 0xB), 8, 3);
    CHECK(full.locators() == std::vector<uint32_t>{1, 2, 4, 3, 6, 7, 5, 0});

    RsSpec big(Field(6, 0x43), 64, 22);
    CHECK(big.locators().size() == 64);
    CHECK(big.locators()[0] == 1);
    CHECK(big.locators()[1] == 2);
    CHECK(big.locators()[63] == 0);
    std::set<uint32_t> distinct(big.locators().begin(), big.locators().end());
    CHECK(distinct.size() == 64);
}

TEST_CASE("spec validation") {
    Field f8(3, 0xB);
    CHECK_THROWS_AS(RsSpec(f8, 7, 0), std::invalid_argument);
    CHECK_THROWS_AS(RsSpec(f8, 7, 7), std::invalid_argument);
    CHECK_THROWS_AS(RsSpec(f8, 9, 3), std::invalid_argument);  // n > 2^m
    CHECK_THROWS_AS(RsSpec(f8, 3, 2, {1, 2}), std::invalid_argument); // count != n
    CHECK_THROWS_AS(RsSpec(f8, 3, 2, {1, 2, 2}), std::invalid_argument); // repeat
    CHECK_THROWS_AS(RsSpec(f8, 3, 2, {1, 2, 9}), std::invalid_argument); // out of range

    RsSpec custom(f8, 3, 2, {5, 0, 3});
    CHECK(custom.locators() == std::vector<uint32_t>{5, 0, 3});
    CHECK(custom.d() == 2);
}

TEST_CASE("encode evaluates the message at every locator") {
    RsSpec rs(Field(3, 0xB), 7, 3);

    // constants broadcast
    Word c = rs_encode(rs, UniPoly({6}));
    CHECK(c.symbols == std::vector<uint32_t>(7, 6));
    CHECK(c.erasure_count() == 0);

    // f(x) = x reproduces the locators
    Word x = rs_encode(rs, UniPoly({0, 1}));
    CHECK(x.symbols == rs.locators());

    // f(x) = x^2 + 1 at locator 2: 4 ^ 1
    Word p = rs_encode(rs, UniPoly({1, 0, 1}));
    CHECK(p.symbols[1] == 5);

    // capacity above k is fine as long as the degree is in range
    Word padded = rs_encode(rs, UniPoly({1, 0, 1, 0, 0}));
    CHECK(padded.symbols == p.symbols);

    CHECK_THROWS_AS(rs_encode(rs, UniPoly({0, 0, 0, 1})), MessageTooLong);
}

TEST_CASE("encoding is linear and deterministic") {
    RsSpec rs(Field(4, 0x13), 15, 5);
    Rng rng(3, 0);
    for (int trial = 0; trial < 50; trial++) {
        UniPoly a = rs_random_message(rs, rng);
        UniPoly b = rs_random_message(rs, rng);
        UniPoly sum = UniPoly::zero(rs.k() - 1);
        for (int i = 0; i < rs.k(); i++) sum.coeffs[i] = a.coeffs[i] ^ b.coeffs[i];

        Word wa = rs_encode(rs, a);
        Word wb = rs_encode(rs, b);
        Word ws = rs_encode(rs, sum);
        for (int i = 0; i < rs.n(); i++) CHECK(ws.symbols[i] == (wa.symbols[i] ^ wb.symbols[i]));

        CHECK(rs_encode(rs, a).symbols == wa.symbols);
    }
}

TEST_CASE("exhaustive distance check for the (7,3) code") {
    RsSpec rs(Field(3, 0xB), 7, 3);
    std::vector<Word> codebook;
    codebook.reserve(512);
    for (uint32_t c0 = 0; c0 < 8; c0++)
        for (uint32_t c1 = 0; c1 < 8; c1++)
            for (uint32_t c2 = 0; c2 < 8; c2++)
                codebook.push_back(rs_encode(rs, UniPoly({c0, c1, c2})));

    REQUIRE(codebook.size() == 512);
    int min_d = rs.n();
    for (size_t i = 0; i < codebook.size(); i++)
        for (size_t j = i + 1; j < codebook.size(); j++)
            min_d = std::min(min_d, hamming(codebook[i], codebook[j]));
    CHECK(min_d == rs.d()); // MDS: n - k + 1
}

TEST_CASE("rs_is_codeword accepts codewords and rejects corruption") {
    RsSpec rs(Field(4, 0x13), 15, 5);
    Rng rng(9, 0);
    for (int trial = 0; trial < 40; trial++) {
        Word w = rs_random_codeword(rs, rng);
        CHECK(rs_is_codeword(rs, w));

        Word bad = w;
        const int pos = static_cast<int>(rng.below(15));
        bad.symbols[pos] ^= 1 + rng.below(15);
        CHECK_FALSE(rs_is_codeword(rs, bad));
    }

    Word wrong_len = Word::clean(std::vector<uint32_t>(14, 0));
    CHECK_THROWS_AS(rs_is_codeword(rs, wrong_len), std::invalid_argument);

    Word erased = rs_random_codeword(rs, rng);
    erased.erased[3] = 1;
    CHECK_THROWS_AS(rs_is_codeword(rs, erased), std::invalid_argument);
}

TEST_CASE("random messages stay in range and reproduce by seed") {
    RsSpec rs(Field(6, 0x43), 64, 22);
    Rng a(42, 5), b(42, 5), c(43, 5);
    UniPoly ma = rs_random_message(rs, a);
    UniPoly mb = rs_random_message(rs, b);
    UniPoly mc = rs_random_message(rs, c);
    CHECK(ma.capacity() == 21);
    CHECK(ma == mb);
    CHECK_FALSE(ma == mc);
    for (uint32_t coef : ma.coeffs) CHECK(coef < 64);
}

TEST_CASE("word erasure bookkeeping") {
    Word w = Word::clean({1, 2, 3});
    CHECK(w.n() == 3);
    CHECK(w.erasure_count() == 0);
    w.erased[0] = 1;
    w.erased[2] = 1;
    CHECK(w.erasure_count() == 2);
}
