#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mfdh/types.hpp"

namespace mfdh {

struct TrainState;
struct MultiViewDescriptor;

/// An L-bit code over {-1,+1} with a packed representation: +1 maps to bit 1,
/// little-endian within 64-bit words, pad bits zero.
class BinaryCode {
public:
    BinaryCode() = default;

    /// sign quantization with sgn(0) = +1
    static BinaryCode from_signs(const Vector& values);
    static BinaryCode from_bits(std::span<const int> bits);  // entries must be +/-1
    static BinaryCode from_packed(Index length, std::vector<std::uint64_t> words);

    Index length() const { return length_; }
    int sign_at(Index i) const;         // +1 or -1
    std::vector<int> signs() const;
    const std::vector<std::uint64_t>& words() const { return words_; }
    BinaryCode complemented() const;

    /// Hex encoding of the packed bytes, lowest-index byte first.
    std::string to_hex() const;
    static BinaryCode from_hex(Index length, std::string_view hex);

    bool operator==(const BinaryCode&) const = default;

private:
    Index length_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Bit positions where the two codes differ. Throws on length mismatch.
int hamming_distance(const BinaryCode& a, const BinaryCode& b);

/// Flat code database for linear Hamming scans; immutable once built.
struct HammingIndex {
    Index code_length = 0;
    std::vector<std::string> ids;
    std::vector<BinaryCode> codes;

    std::size_t size() const { return codes.size(); }
    void add(std::string id, BinaryCode code);
};

struct RankedHit {
    std::size_t item;  // position in the index
    int distance;
};

/// Up to top_r items sorted by ascending Hamming distance, ties by insertion
/// order (stable).
std::vector<RankedHit> search_ranked(const BinaryCode& query, const HammingIndex& index,
                                     std::size_t top_r);

/// Positions of every item with distance <= radius, in insertion order.
std::vector<std::size_t> search_radius(const BinaryCode& query, const HammingIndex& index,
                                       int radius);

/// Out-of-sample encoding: kernelize against the model's anchors for the
/// given modality and quantize sign(P x).
BinaryCode encode(const MultiViewDescriptor& sample, const TrainState& state, Modality modality);

}  // namespace mfdh
