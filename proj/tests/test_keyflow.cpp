#include "doctest.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "pufkey/keyflow.hpp"
#include "pufkey/textio.hpp"

using namespace pufkey;

namespace {

ConcatSpec small_spec() { return ConcatSpec(RmSpec(1, 3), RsSpec(Field(4, 0x13), 15, 5)); }

Bits random_response(const ConcatSpec& spec, Rng& rng) {
    Bits r(spec.n());
    for (auto& b : r) b = static_cast<uint8_t>(rng.below(2));
    return r;
}

Bits flip_bits(const Bits& in, int count, Rng& rng) {
    Bits out = in;
    std::vector<int> pos(in.size());
    for (size_t i = 0; i < in.size(); i++) pos[i] = static_cast<int>(i);
    for (size_t i = in.size() - 1; i > 0; i--) std::swap(pos[i], pos[rng.below(i + 1)]);
    for (int i = 0; i < count; i++) out[pos[i]] ^= 1;
    return out;
}

bool is_concat_codeword(const ConcatSpec& spec, const Bits& w) {
    ConcatDecodeResult res = concat_decode(spec, w, 0);
    return res.message.has_value() && res.outer_candidates[0].distance == 0 &&
           concat_encode(spec, *res.message) == w;
}

} // namespace

TEST_CASE("xor_bits") {
    CHECK(xor_bits(Bits{1, 0, 1}, Bits{1, 1, 0}) == Bits{0, 1, 1});
    CHECK_THROWS_AS(xor_bits(Bits{1}, Bits{1, 0}), std::invalid_argument);
}

TEST_CASE("enrollment hides the response behind a codeword") {
    ConcatSpec spec = small_spec();
    Rng rng(40, 0);
    Bits response = random_response(spec, rng);

    HelperBundle b = enroll(spec, response, 7);
    REQUIRE(static_cast<int>(b.helper.size()) == spec.n());
    CHECK(b.mask == MaskKind::None);
    CHECK(b.mask_codeword.empty());
    CHECK(b.mask_permutation.empty());
    // helper XOR response is the enrollment codeword
    CHECK(is_concat_codeword(spec, xor_bits(b.helper, response)));

    // deterministic in the seed
    HelperBundle b2 = enroll(spec, response, 7);
    CHECK(b2.helper == b.helper);
    HelperBundle b3 = enroll(spec, response, 8);
    CHECK(b3.helper != b.helper);

    CHECK_THROWS_AS(enroll(spec, Bits(119, 0), 7), std::invalid_argument);
}

TEST_CASE("enrollment mask material") {
    ConcatSpec spec = small_spec();
    Rng rng(41, 0);
    Bits response = random_response(spec, rng);

    HelperBundle cw = enroll(spec, response, 3, MaskKind::Codeword);
    CHECK(cw.mask == MaskKind::Codeword);
    REQUIRE(static_cast<int>(cw.mask_codeword.size()) == spec.n());
    CHECK(is_concat_codeword(spec, cw.mask_codeword));

    HelperBundle pm = enroll(spec, response, 3, MaskKind::Permutation);
    CHECK(pm.mask == MaskKind::Permutation);
    REQUIRE(static_cast<int>(pm.mask_permutation.size()) == spec.outer().n());
    std::vector<int> sorted = pm.mask_permutation;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < spec.outer().n(); i++) CHECK(sorted[i] == i);
}

TEST_CASE("noise-free reproduction returns the exact response under every mask") {
    ConcatSpec spec = small_spec();
    Rng rng(42, 0);
    for (MaskKind mask : {MaskKind::None, MaskKind::Codeword, MaskKind::Permutation}) {
        for (int trial = 0; trial < 5; trial++) {
            Bits response = random_response(spec, rng);
            HelperBundle b = enroll(spec, response, trial, mask);
            ReproductionOutcome out = reproduce(spec, b, response, -1, trial);
            REQUIRE(out.status == ReproduceStatus::Success);
            CHECK(out.recovered_response == response);
            CHECK(out.key == response); // identity digest
            CHECK(out.inner_erasures == 0);
            REQUIRE_FALSE(out.message.empty());
        }
    }
}

TEST_CASE("preprocessing identities") {
    ConcatSpec spec = small_spec();
    Rng rng(43, 0);
    Bits response = random_response(spec, rng);

    SUBCASE("classical: helper cancels to codeword plus noise") {
        HelperBundle b = enroll(spec, response, 1);
        CHECK(is_concat_codeword(spec, preprocess_classical(b, response)));
        Bits noisy = flip_bits(response, 3, rng);
        Bits plain = preprocess_classical(b, noisy);
        // the noise pattern survives the XOR untouched
        CHECK(xor_bits(plain, preprocess_classical(b, response)) == xor_bits(noisy, response));
    }

    SUBCASE("codeword mask keeps the word inside the code") {
        HelperBundle b = enroll(spec, response, 1, MaskKind::Codeword);
        MaskedInput mi = preprocess_masked(spec, b, response, 99);
        REQUIRE(static_cast<int>(mi.mask_message.size()) == spec.k());
        CHECK(is_concat_codeword(spec, mi.word));
        // word = plain XOR fresh codeword
        Bits plain = preprocess_classical(b, response);
        CHECK(xor_bits(mi.word, plain) == concat_encode(spec, mi.mask_message));
    }

    SUBCASE("permutation mask moves whole blocks") {
        HelperBundle b = enroll(spec, response, 1, MaskKind::Permutation);
        Bits noisy = flip_bits(response, 5, rng);
        MaskedInput mi = preprocess_masked(spec, b, noisy, 99);
        REQUIRE(static_cast<int>(mi.permutation.size()) == spec.outer().n());
        Bits plain = preprocess_classical(b, noisy);
        const int n_in = spec.inner().n();
        for (int i = 0; i < spec.outer().n(); i++)
            for (int j = 0; j < n_in; j++)
                CHECK(mi.word[static_cast<size_t>(i) * n_in + j] ==
                      plain[static_cast<size_t>(mi.permutation[i]) * n_in + j]);
        // block shuffling preserves the total error weight
        int before = 0, after = 0;
        for (size_t i = 0; i < plain.size(); i++) before += plain[i];
        for (size_t i = 0; i < mi.word.size(); i++) after += mi.word[i];
        CHECK(before == after);
    }

    SUBCASE("maskless bundles refuse masked preprocessing") {
        HelperBundle b = enroll(spec, response, 1);
        CHECK_THROWS_AS(preprocess_masked(spec, b, response, 0), std::invalid_argument);
    }
}

TEST_CASE("mask material is fresh per call but reproducible per seed") {
    ConcatSpec spec = small_spec();
    Rng rng(44, 0);
    Bits response = random_response(spec, rng);

    HelperBundle cw = enroll(spec, response, 5, MaskKind::Codeword);
    std::set<Bits> masks;
    for (uint64_t seed = 0; seed < 20; seed++)
        masks.insert(preprocess_masked(spec, cw, response, seed).mask_message);
    CHECK(masks.size() > 1);
    CHECK(preprocess_masked(spec, cw, response, 4).mask_message ==
          preprocess_masked(spec, cw, response, 4).mask_message);

    HelperBundle pm = enroll(spec, response, 5, MaskKind::Permutation);
    std::set<std::vector<int>> perms;
    for (uint64_t seed = 0; seed < 20; seed++)
        perms.insert(preprocess_masked(spec, pm, response, seed).permutation);
    CHECK(perms.size() > 1);
    // the enrollment-time sample does not constrain reproduction draws
    CHECK(preprocess_masked(spec, pm, response, 977).permutation.size() == 15);
}

TEST_CASE("masked decoder input stays in the coset of the code") {
    // tiny composite: identity inner (2,2), repetition-style outer (3,1) over F_4
    ConcatSpec tiny(RmSpec(1, 1), RsSpec(Field(2, 0x7), 3, 1));
    CHECK(tiny.n() == 6);
    CHECK(tiny.k() == 2);
    Rng rng(45, 0);
    Bits response = random_response(tiny, rng);
    HelperBundle b = enroll(tiny, response, 2, MaskKind::Codeword);
    const Bits plain = preprocess_classical(b, response);

    // exhaustively many draws: every masked word differs from plain by a
    // codeword, and all four mask messages eventually show up
    std::set<Bits> seen;
    for (uint64_t seed = 0; seed < 64; seed++) {
        MaskedInput mi = preprocess_masked(tiny, b, response, seed);
        CHECK(xor_bits(mi.word, plain) == concat_encode(tiny, mi.mask_message));
        seen.insert(mi.mask_message);
    }
    CHECK(seen.size() == 4);
}

TEST_CASE("noisy reproduction recovers the response under every mask") {
    ConcatSpec spec = small_spec();
    Rng rng(46, 0);
    for (MaskKind mask : {MaskKind::None, MaskKind::Codeword, MaskKind::Permutation}) {
        int ok = 0;
        for (int trial = 0; trial < 20; trial++) {
            Bits response = random_response(spec, rng);
            HelperBundle b = enroll(spec, response, 100 + trial, mask);
            Bits noisy = flip_bits(response, 6, rng); // ~5% bit error rate
            ReproductionOutcome out = reproduce(spec, b, noisy, -1, trial);
            if (out.status != ReproduceStatus::Success) continue;
            CHECK(out.recovered_response == response);
            ok++;
        }
        CHECK(ok == 20); // 6 scattered flips stay well inside the budget
    }
}

TEST_CASE("hopeless inputs fail cleanly") {
    ConcatSpec spec = small_spec();
    Rng rng(47, 0);
    Bits response = random_response(spec, rng);
    HelperBundle b = enroll(spec, response, 9);

    SUBCASE("uniform noise") {
        Bits garbage(spec.n());
        for (auto& bit : garbage) bit = static_cast<uint8_t>(rng.below(2));
        ReproductionOutcome out = reproduce(spec, b, garbage, -1, 1);
        if (out.status == ReproduceStatus::Failure) {
            CHECK(out.key.empty());
            CHECK(out.recovered_response.empty());
            CHECK(out.message.empty());
        }
        CHECK(out.ops.bit_ops >= 240); // the decode attempt really ran
    }

    SUBCASE("radius zero rejects any corruption") {
        Bits noisy = response;
        for (int i = 0; i < 8; i++) noisy[i] ^= 1; // wreck block 0
        ReproductionOutcome out = reproduce(spec, b, noisy, 0, 1);
        // block 0 inverts to the complement codeword: one outer error, radius 0
        CHECK(out.status == ReproduceStatus::Failure);
        CHECK(out.key.empty());
    }

    SUBCASE("length mismatch is an error, not a failure") {
        CHECK_THROWS_AS(reproduce(spec, b, Bits(119, 0), -1, 1), std::invalid_argument);
    }
}

TEST_CASE("digest shapes the key, not the response") {
    ConcatSpec spec = small_spec();
    Rng rng(48, 0);
    Bits response = random_response(spec, rng);
    HelperBundle b = enroll(spec, response, 11);

    Digest fold = [](const Bits& r) {
        Bits out(8, 0);
        for (size_t i = 0; i < r.size(); i++) out[i % 8] ^= r[i];
        return out;
    };
    ReproductionOutcome out = reproduce(spec, b, response, -1, 1, fold);
    REQUIRE(out.status == ReproduceStatus::Success);
    CHECK(out.recovered_response == response);
    CHECK(out.key == fold(response));
    CHECK(out.key.size() == 8);
}

TEST_CASE("reproduction cost is the decode plus one re-encode") {
    ConcatSpec spec = small_spec();
    Rng rng(49, 0);
    Bits response = random_response(spec, rng);
    HelperBundle b = enroll(spec, response, 13);
    Bits noisy = flip_bits(response, 4, rng);

    ReproductionOutcome out = reproduce(spec, b, noisy, -1, 21);
    REQUIRE(out.status == ReproduceStatus::Success);
    ConcatDecodeResult dec = concat_decode(spec, preprocess_classical(b, noisy), 77);
    // re-encoding the winning message costs 15 positions x 5 slots
    CHECK(out.ops.muls == dec.ops.muls + 75);
    CHECK(out.ops.adds == dec.ops.adds + 75);
    CHECK(out.ops.invs == dec.ops.invs);
    CHECK(out.ops.bit_ops == dec.ops.bit_ops);

    // determinism: same seed, same everything
    ReproductionOutcome again = reproduce(spec, b, noisy, -1, 21);
    CHECK(again.status == out.status);
    CHECK(again.key == out.key);
    CHECK(again.ops == out.ops);
}

TEST_CASE("helper bundle text round trip") {
    ConcatSpec spec = small_spec();
    Rng rng(50, 0);
    Bits response = random_response(spec, rng);

    for (MaskKind mask : {MaskKind::None, MaskKind::Codeword, MaskKind::Permutation}) {
        HelperBundle b = enroll(spec, response, 17, mask);
        const std::string text = helper_bundle_to_text(b);
        HelperBundle back = helper_bundle_from_text(text, spec.n(), spec.outer().n());
        CHECK(back.helper == b.helper);
        CHECK(back.mask == b.mask);
        CHECK(back.mask_codeword == b.mask_codeword);
        CHECK(back.mask_permutation == b.mask_permutation);
    }
}

TEST_CASE("kv config parsing") {
    ParsedConfig cfg = parse_kv("n=15 k=5 # trailing comment\nfield=0x13 "
                                "inner=\"type=rm r=1 m=3\"\n");
    CHECK(cfg.require("n") == "15");
    CHECK(cfg.require_int("k") == 5);
    CHECK(cfg.require_hex("field") == 0x13);
    CHECK(cfg.require("inner") == "type=rm r=1 m=3"); // quotes guard spaces and '='
    CHECK_FALSE(cfg.get("missing").has_value());
    CHECK_THROWS_AS(cfg.require("missing"), std::invalid_argument);

    ParsedConfig nested = parse_kv(cfg.require("inner"));
    CHECK(nested.require("type") == "rm");
    CHECK(nested.require_int("r") == 1);
    CHECK(nested.require_int("m") == 3);
}

TEST_CASE("hex bit serialization is MSB-first per byte") {
    CHECK(bits_to_hex(Bits{1, 0, 0, 0, 0, 0, 0, 0}) == "80");
    CHECK(bits_to_hex(Bits{1, 1, 1, 1, 0, 0, 0, 0, 1}) == "f080");
    CHECK(hex_to_bits("80", 8) == Bits{1, 0, 0, 0, 0, 0, 0, 0});
    Rng rng(51, 0);
    for (int trial = 0; trial < 30; trial++) {
        const size_t nbits = 1 + rng.below(200);
        Bits b(nbits);
        for (auto& bit : b) bit = static_cast<uint8_t>(rng.below(2));
        CHECK(hex_to_bits(bits_to_hex(b), nbits) == b);
    }
}
