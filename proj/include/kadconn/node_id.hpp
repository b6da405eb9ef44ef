#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace kadconn {

// Protocol parameters: id bit-length b, bucket capacity k, lookup parallelism
// alpha. Defaults follow the original protocol proposal.
struct KademliaParams {
    int bits = 160;
    int k = 20;
    int alpha = 3;

    void validate() const;
};

// Fixed-width node identifier of up to 192 bits, stored as three 64-bit limbs
// with w[0] least significant. The active width is KademliaParams::bits; all
// ids are masked to that width on creation.
struct NodeId {
    std::array<std::uint64_t, 3> w{};

    static constexpr int max_bits = 192;

    static NodeId from_u64(std::uint64_t value) {
        NodeId id;
        id.w[0] = value;
        return id;
    }

    bool is_zero() const { return w[0] == 0 && w[1] == 0 && w[2] == 0; }

    friend bool operator==(const NodeId&, const NodeId&) = default;
};

// Compare as unsigned integers (most significant limb first).
bool operator<(const NodeId& a, const NodeId& b);
inline bool operator>(const NodeId& a, const NodeId& b) { return b < a; }
inline bool operator<=(const NodeId& a, const NodeId& b) { return !(b < a); }
inline bool operator>=(const NodeId& a, const NodeId& b) { return !(a < b); }

// XOR distance between two ids, interpreted as an unsigned integer.
// Symmetric, and xor_distance(a, a) is zero.
NodeId xor_distance(const NodeId& a, const NodeId& b);

// Index of the highest set bit, or -1 for zero.
int msb_index(const NodeId& id);

// Bucket index i such that 2^i <= dist(owner, other) < 2^(i+1).
// Throws std::invalid_argument when owner == other (distance 0 has no bucket).
int bucket_index(const NodeId& owner, const NodeId& other);

// Hex round-trip at a fixed width of ceil(bits/4) digits, lowercase.
std::string to_hex(const NodeId& id, int bits);
NodeId from_hex(std::string_view hex, int bits);

// Mask an id down to `bits` bits.
NodeId mask_to_bits(const NodeId& id, int bits);

}  // namespace kadconn
