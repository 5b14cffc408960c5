#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>

#include "pktpath/errors.hpp"

namespace pktpath {

enum class Proto : std::uint8_t { TCP = 0, UDP = 1, ICMP = 2, OTHER = 3 };

const char* proto_name(Proto p);
Proto proto_from_name(const std::string& s);

/// IPv4 5-tuple identifying a connection. Both directions of a flow map to
/// one key after canonicalize().
struct ConnKey {
    std::uint32_t src_addr = 0;
    std::uint32_t dst_addr = 0;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;
    Proto proto = Proto::OTHER;

    friend auto operator<=>(const ConnKey&, const ConnKey&) = default;
};

/// Swap the two endpoints (the reverse direction of the same flow).
inline ConnKey reverse(const ConnKey& k) {
    return ConnKey{k.dst_addr, k.src_addr, k.dst_port, k.src_port, k.proto};
}

/// Canonical form: the lexicographically smaller (addr, port) endpoint comes
/// first. Idempotent, and canonicalize(k) == canonicalize(reverse(k)).
inline ConnKey canonicalize(const ConnKey& k) {
    const auto a = std::make_pair(k.src_addr, k.src_port);
    const auto b = std::make_pair(k.dst_addr, k.dst_port);
    return b < a ? reverse(k) : k;
}

/// One packet of a trace. ts is seconds since trace start; seq_in_conn is the
/// 0-based index of this packet within its (canonical) connection.
struct Packet {
    double ts = 0.0;
    ConnKey key;
    std::uint32_t size_bytes = 0;
    std::uint32_t seq_in_conn = 0;
    bool encrypted = false;
};

/// Control metadata handed between queues: a handle to the packet buffer plus
/// the length and tuple hash the NIC would precompute.
struct PacketDescriptor {
    std::uint64_t packet_id = 0;
    std::uint32_t length = 0;
    std::uint64_t tuple_hash = 0;
};

namespace detail {

inline constexpr std::uint64_t kMixMul1 = 0xbf58476d1ce4e5b9ULL;
inline constexpr std::uint64_t kMixMul2 = 0x94d049bb133111ebULL;

// splitmix64 finalizer; full avalanche on a 64-bit word.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= kMixMul1;
    x ^= x >> 27;
    x *= kMixMul2;
    x ^= x >> 31;
    return x;
}

} // namespace detail

/// Seeded avalanche hash over raw bytes. Deterministic across runs and
/// platforms; the fixed default seed keeps tuple hashes reproducible.
inline constexpr std::uint64_t kDefaultHashSeed = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t hash64(std::span<const std::byte> bytes,
                            std::uint64_t seed = kDefaultHashSeed) {
    std::uint64_t h = seed ^ (static_cast<std::uint64_t>(bytes.size()) * detail::kMixMul1);
    std::size_t i = 0;
    while (bytes.size() - i >= 8) {
        std::uint64_t w;
        std::memcpy(&w, bytes.data() + i, 8);
        h = detail::mix64(h ^ w);
        i += 8;
    }
    if (i < bytes.size()) {
        std::uint64_t w = 0;
        std::memcpy(&w, bytes.data() + i, bytes.size() - i);
        h = detail::mix64(h ^ w);
    }
    return detail::mix64(h);
}

/// Pack the key into two words (addresses | ports+proto).
inline std::array<std::uint64_t, 2> key_words(const ConnKey& k) {
    return {
        (static_cast<std::uint64_t>(k.src_addr) << 32) | k.dst_addr,
        (static_cast<std::uint64_t>(k.src_port) << 24) |
            (static_cast<std::uint64_t>(k.dst_port) << 8) |
            static_cast<std::uint64_t>(k.proto),
    };
}

inline std::uint64_t hash64(const ConnKey& k, std::uint64_t seed = kDefaultHashSeed) {
    const auto w = key_words(k);
    return detail::mix64(detail::mix64(seed ^ w[0]) ^ w[1]);
}

/// h(x, k): hash of the key modulo x.
inline std::uint64_t hash_mod(const ConnKey& k, std::uint64_t modulus) {
    if (modulus == 0) throw ValidationError("hash_mod: modulus must be >= 1");
    return hash64(k) % modulus;
}

/// Descriptor for a stored packet; tuple_hash is taken over the canonical key.
inline PacketDescriptor make_descriptor(std::uint64_t packet_id, const Packet& pkt) {
    return PacketDescriptor{packet_id, pkt.size_bytes, hash64(canonicalize(pkt.key))};
}

/// Maximum time the application may spend per drain cycle before a ring of
/// s_lsr bytes overflows at burst rate lambda_max: s_lsr * 8 / lambda_max.
inline double processing_budget(std::uint64_t s_lsr_bytes, double lambda_max_bps) {
    if (s_lsr_bytes == 0) throw ValidationError("processing_budget: s_lsr_bytes must be > 0");
    if (!(lambda_max_bps > 0.0))
        throw ValidationError("processing_budget: lambda_max_bps must be > 0");
    return static_cast<double>(s_lsr_bytes) * 8.0 / lambda_max_bps;
}

} // namespace pktpath
