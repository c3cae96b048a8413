#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pufkey/concat.hpp"
#include "pufkey/gf2m.hpp"
#include "pufkey/keyflow.hpp"

namespace pufkey {

// MSB-first within each byte: bit 0 of the vector is the high bit of the
// first hex byte; the final byte is zero-padded. Lowercase output.
std::string bits_to_hex(const Bits& bits);
Bits hex_to_bits(const std::string& hex, size_t nbits);

std::string symbols_to_text(const std::vector<uint32_t>& symbols); // space-separated hex
std::vector<uint32_t> symbols_from_text(const std::string& text);

// flat key=value pairs, values optionally double-quoted (quotes may enclose
// spaces and '='), '#' starts a comment outside quotes
struct ParsedConfig {
    std::vector<std::pair<std::string, std::string>> pairs;

    std::optional<std::string> get(const std::string& key) const;
    std::string require(const std::string& key) const;
    int require_int(const std::string& key) const;
    uint32_t require_hex(const std::string& key) const;
};

ParsedConfig parse_kv(const std::string& text);

Field field_from_config(const ParsedConfig& cfg);
RsSpec rs_from_config(const ParsedConfig& cfg);
RmSpec rm_from_config(const ParsedConfig& cfg);
ConcatSpec concat_from_config(const ParsedConfig& cfg);

std::string helper_bundle_to_text(const HelperBundle& bundle);
HelperBundle helper_bundle_from_text(const std::string& text, int n_bits, int n_outer);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace pufkey
