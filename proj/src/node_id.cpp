#include "kadconn/node_id.hpp"

#include <bit>
#include <stdexcept>

namespace kadconn {

void KademliaParams::validate() const {
    if (bits < 4 || bits > NodeId::max_bits)
        throw std::invalid_argument("params: bits must be in [4, 192]");
    if (k < 1) throw std::invalid_argument("params: k must be >= 1");
    if (alpha < 1 || alpha > k)
        throw std::invalid_argument("params: alpha must be in [1, k]");
}

bool operator<(const NodeId& a, const NodeId& b) {
    for (int i = 2; i >= 0; --i) {
        if (a.w[i] != b.w[i]) return a.w[i] < b.w[i];
    }
    return false;
}

NodeId xor_distance(const NodeId& a, const NodeId& b) {
    NodeId d;
    for (int i = 0; i < 3; ++i) d.w[i] = a.w[i] ^ b.w[i];
    return d;
}

int msb_index(const NodeId& id) {
    for (int i = 2; i >= 0; --i) {
        if (id.w[i] != 0) return 64 * i + 63 - std::countl_zero(id.w[i]);
    }
    return -1;
}

int bucket_index(const NodeId& owner, const NodeId& other) {
    const NodeId d = xor_distance(owner, other);
    if (d.is_zero())
        throw std::invalid_argument("bucket_index: identical ids have no bucket");
    return msb_index(d);
}

static int hex_digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string to_hex(const NodeId& id, int bits) {
    const int digits = (bits + 3) / 4;
    std::string out(static_cast<std::size_t>(digits), '0');
    for (int i = 0; i < digits; ++i) {
        // digit i counts from the least significant nibble
        const int limb = i / 16;
        const int shift = (i % 16) * 4;
        const unsigned nibble = (id.w[limb] >> shift) & 0xfu;
        out[static_cast<std::size_t>(digits - 1 - i)] = "0123456789abcdef"[nibble];
    }
    return out;
}

NodeId from_hex(std::string_view hex, int bits) {
    const int digits = (bits + 3) / 4;
    if (static_cast<int>(hex.size()) != digits)
        throw std::invalid_argument("from_hex: expected " + std::to_string(digits) +
                                    " hex digits, got " + std::to_string(hex.size()));
    NodeId id;
    for (int i = 0; i < digits; ++i) {
        const int v = hex_digit_value(hex[static_cast<std::size_t>(digits - 1 - i)]);
        if (v < 0) throw std::invalid_argument("from_hex: invalid hex digit");
        const int limb = i / 16;
        const int shift = (i % 16) * 4;
        id.w[limb] |= static_cast<std::uint64_t>(v) << shift;
    }
    NodeId masked = mask_to_bits(id, bits);
    if (!(masked == id))
        throw std::invalid_argument("from_hex: value exceeds id width");
    return id;
}

NodeId mask_to_bits(const NodeId& id, int bits) {
    NodeId out = id;
    for (int i = 0; i < 3; ++i) {
        const int lo = 64 * i;
        if (bits <= lo) {
            out.w[i] = 0;
        } else if (bits < lo + 64) {
            out.w[i] &= (~std::uint64_t{0}) >> (lo + 64 - bits);
        }
    }
    return out;
}

}  // namespace kadconn
