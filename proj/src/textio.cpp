#include "pufkey/textio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pufkey {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument(std::string("bad hex digit '") + c + "'");
}

uint32_t parse_hex_value(const std::string& s) {
    std::string body = s;
    if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) body = body.substr(2);
    if (body.empty() || body.size() > 8) throw std::invalid_argument("bad hex value: " + s);
    uint32_t v = 0;
    for (char c : body) v = (v << 4) | static_cast<uint32_t>(hex_digit(c));
    return v;
}

} // namespace

std::string bits_to_hex(const Bits& bits) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (size_t base = 0; base < bits.size(); base += 8) {
        int byte = 0;
        for (size_t j = 0; j < 8 && base + j < bits.size(); j++)
            byte |= (bits[base + j] & 1) << (7 - j);
        out.push_back(digits[byte >> 4]);
        out.push_back(digits[byte & 0xF]);
    }
    return out;
}

Bits hex_to_bits(const std::string& hex, size_t nbits) {
    const size_t want = 2 * ((nbits + 7) / 8);
    if (hex.size() != want)
        throw std::invalid_argument("hex string has " + std::to_string(hex.size()) +
                                    " digits, expected " + std::to_string(want));
    Bits out(nbits, 0);
    for (size_t i = 0; i < nbits; i++) {
        const int byte = (hex_digit(hex[2 * (i / 8)]) << 4) | hex_digit(hex[2 * (i / 8) + 1]);
        out[i] = static_cast<uint8_t>((byte >> (7 - i % 8)) & 1);
    }
    return out;
}

std::string symbols_to_text(const std::vector<uint32_t>& symbols) {
    std::ostringstream out;
    for (size_t i = 0; i < symbols.size(); i++) {
        if (i) out << ' ';
        out << std::hex << symbols[i];
    }
    return out.str();
}

std::vector<uint32_t> symbols_from_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<uint32_t> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_hex_value(tok));
    return out;
}

std::optional<std::string> ParsedConfig::get(const std::string& key) const {
    for (const auto& [k, v] : pairs)
        if (k == key) return v;
    return std::nullopt;
}

std::string ParsedConfig::require(const std::string& key) const {
    if (auto v = get(key)) return *v;
    throw std::invalid_argument("missing config key '" + key + "'");
}

int ParsedConfig::require_int(const std::string& key) const {
    const std::string v = require(key);
    try {
        size_t used = 0;
        const int out = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "' is not an integer: " + v);
    }
}

uint32_t ParsedConfig::require_hex(const std::string& key) const {
    return parse_hex_value(require(key));
}

ParsedConfig parse_kv(const std::string& text) {
    ParsedConfig cfg;
    size_t i = 0;
    const size_t len = text.size();
    while (i < len) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            i++;
            continue;
        }
        if (text[i] == '#') {
            while (i < len && text[i] != '\n') i++;
            continue;
        }
        // key
        std::string key;
        while (i < len && text[i] != '=' && !std::isspace(static_cast<unsigned char>(text[i])))
            key.push_back(text[i++]);
        if (i >= len || text[i] != '=' || key.empty())
            throw std::invalid_argument("expected key=value near '" + key + "'");
        i++;
        // value, optionally quoted
        std::string value;
        if (i < len && text[i] == '"') {
            i++;
            while (i < len && text[i] != '"') value.push_back(text[i++]);
            if (i >= len) throw std::invalid_argument("unterminated quote in config");
            i++;
        } else {
            while (i < len && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#')
                value.push_back(text[i++]);
        }
        cfg.pairs.emplace_back(std::move(key), std::move(value));
    }
    return cfg;
}

Field field_from_config(const ParsedConfig& cfg) {
    const int m = cfg.require_int("m");
    if (auto mod = cfg.get("modulus")) return Field(m, parse_hex_value(*mod));
    return Field::with_default_modulus(m);
}

RsSpec rs_from_config(const ParsedConfig& cfg) {
    if (cfg.require("type") != "rs") throw std::invalid_argument("config is not type=rs");
    return RsSpec(field_from_config(cfg), cfg.require_int("n"), cfg.require_int("k"));
}

RmSpec rm_from_config(const ParsedConfig& cfg) {
    if (cfg.require("type") != "rm") throw std::invalid_argument("config is not type=rm");
    return RmSpec(cfg.require_int("r"), cfg.require_int("m"));
}

ConcatSpec concat_from_config(const ParsedConfig& cfg) {
    if (cfg.require("type") != "concat") throw std::invalid_argument("config is not type=concat");
    return ConcatSpec(rm_from_config(parse_kv(cfg.require("inner"))),
                      rs_from_config(parse_kv(cfg.require("outer"))));
}

namespace {

Bits permutation_to_bits(const std::vector<int>& perm) {
    Bits out;
    out.reserve(perm.size() * 16);
    for (int idx : perm)
        for (int j = 15; j >= 0; j--) out.push_back(static_cast<uint8_t>((idx >> j) & 1));
    return out;
}

std::vector<int> permutation_from_bits(const Bits& bits, int n_outer) {
    std::vector<int> perm(n_outer, 0);
    std::vector<uint8_t> seen(n_outer, 0);
    for (int i = 0; i < n_outer; i++) {
        int v = 0;
        for (int j = 0; j < 16; j++) v = (v << 1) | bits[static_cast<size_t>(i) * 16 + j];
        if (v >= n_outer || seen[v]) throw std::invalid_argument("mask_data is not a permutation");
        seen[v] = 1;
        perm[i] = v;
    }
    return perm;
}

} // namespace

std::string helper_bundle_to_text(const HelperBundle& bundle) {
    std::ostringstream out;
    out << "helper=" << bits_to_hex(bundle.helper) << "\n";
    switch (bundle.mask) {
    case MaskKind::None:
        out << "mask=none\n";
        break;
    case MaskKind::Codeword:
        out << "mask=codeword\n";
        out << "mask_data=" << bits_to_hex(bundle.mask_codeword) << "\n";
        break;
    case MaskKind::Permutation:
        out << "mask=permutation\n";
        out << "mask_data=" << bits_to_hex(permutation_to_bits(bundle.mask_permutation)) << "\n";
        break;
    }
    return out.str();
}

HelperBundle helper_bundle_from_text(const std::string& text, int n_bits, int n_outer) {
    const ParsedConfig cfg = parse_kv(text);
    HelperBundle bundle;
    bundle.helper = hex_to_bits(cfg.require("helper"), n_bits);
    const std::string mask = cfg.require("mask");
    if (mask == "none") {
        bundle.mask = MaskKind::None;
    } else if (mask == "codeword") {
        bundle.mask = MaskKind::Codeword;
        bundle.mask_codeword = hex_to_bits(cfg.require("mask_data"), n_bits);
    } else if (mask == "permutation") {
        bundle.mask = MaskKind::Permutation;
        bundle.mask_permutation = permutation_from_bits(
            hex_to_bits(cfg.require("mask_data"), static_cast<size_t>(n_outer) * 16), n_outer);
    } else {
        throw std::invalid_argument("unknown mask kind: " + mask);
    }
    return bundle;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
    if (!out) throw std::invalid_argument("write failed for " + path);
}

} // namespace pufkey
