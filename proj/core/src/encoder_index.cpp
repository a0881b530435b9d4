#include "mfdh/encoder_index.hpp"

#include <algorithm>
#include <bit>

#include "mfdh/errors.hpp"
#include "mfdh/model.hpp"

namespace mfdh {

namespace {

std::size_t word_count(Index length) {
    return static_cast<std::size_t>((length + 63) / 64);
}

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

BinaryCode BinaryCode::from_signs(const Vector& values) {
    BinaryCode code;
    code.length_ = values.size();
    code.words_.assign(word_count(code.length_), 0);
    for (Index i = 0; i < code.length_; ++i)
        if (values(i) >= 0.0)
            code.words_[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
    return code;
}

BinaryCode BinaryCode::from_bits(std::span<const int> bits) {
    BinaryCode code;
    code.length_ = static_cast<Index>(bits.size());
    code.words_.assign(word_count(code.length_), 0);
    for (Index i = 0; i < code.length_; ++i) {
        const int v = bits[static_cast<std::size_t>(i)];
        if (v != 1 && v != -1) throw invalid_argument("BinaryCode: bits must be +1 or -1");
        if (v == 1) code.words_[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
    }
    return code;
}

BinaryCode BinaryCode::from_packed(Index length, std::vector<std::uint64_t> words) {
    if (length < 0 || words.size() != word_count(length))
        throw invalid_argument("BinaryCode: packed word count does not match length");
    if (length % 64 != 0 && !words.empty()) {
        const std::uint64_t pad_mask = ~std::uint64_t{0} << (length % 64);
        if (words.back() & pad_mask) throw invalid_argument("BinaryCode: nonzero pad bits");
    }
    BinaryCode code;
    code.length_ = length;
    code.words_ = std::move(words);
    return code;
}

int BinaryCode::sign_at(Index i) const {
    if (i < 0 || i >= length_) throw invalid_argument("BinaryCode: bit index out of range");
    return (words_[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1u ? 1 : -1;
}

std::vector<int> BinaryCode::signs() const {
    std::vector<int> out(static_cast<std::size_t>(length_));
    for (Index i = 0; i < length_; ++i) out[static_cast<std::size_t>(i)] = sign_at(i);
    return out;
}

BinaryCode BinaryCode::complemented() const {
    BinaryCode out = *this;
    for (auto& w : out.words_) w = ~w;
    if (length_ % 64 != 0 && !out.words_.empty())
        out.words_.back() &= ~(~std::uint64_t{0} << (length_ % 64));
    return out;
}

std::string BinaryCode::to_hex() const {
    const auto n_bytes = static_cast<std::size_t>((length_ + 7) / 8);
    std::string hex;
    hex.reserve(n_bytes * 2);
    for (std::size_t b = 0; b < n_bytes; ++b) {
        const auto byte =
            static_cast<unsigned>((words_[b / 8] >> (8 * (b % 8))) & 0xffu);
        hex.push_back(kHexDigits[byte >> 4]);
        hex.push_back(kHexDigits[byte & 0xfu]);
    }
    return hex;
}

BinaryCode BinaryCode::from_hex(Index length, std::string_view hex) {
    const auto n_bytes = static_cast<std::size_t>((length + 7) / 8);
    if (hex.size() != n_bytes * 2)
        throw invalid_argument("BinaryCode: hex string length does not match code length");
    std::vector<std::uint64_t> words(word_count(length), 0);
    for (std::size_t b = 0; b < n_bytes; ++b) {
        const int hi = hex_value(hex[2 * b]);
        const int lo = hex_value(hex[2 * b + 1]);
        if (hi < 0 || lo < 0) throw invalid_argument("BinaryCode: invalid hex digit");
        words[b / 8] |= static_cast<std::uint64_t>(hi * 16 + lo) << (8 * (b % 8));
    }
    return from_packed(length, std::move(words));  // validates pad bits
}

int hamming_distance(const BinaryCode& a, const BinaryCode& b) {
    if (a.length() != b.length())
        throw invalid_argument("hamming_distance: code lengths differ");
    int distance = 0;
    for (std::size_t w = 0; w < a.words().size(); ++w)
        distance += std::popcount(a.words()[w] ^ b.words()[w]);
    return distance;
}

void HammingIndex::add(std::string id, BinaryCode code) {
    if (code.length() != code_length)
        throw invalid_argument("HammingIndex: code length mismatch");
    ids.push_back(std::move(id));
    codes.push_back(std::move(code));
}

std::vector<RankedHit> search_ranked(const BinaryCode& query, const HammingIndex& index,
                                     std::size_t top_r) {
    if (top_r < 1) throw invalid_argument("search_ranked: top_r must be >= 1");
    if (index.size() == 0) return {};

    // bucket by distance; scanning buckets in order keeps ties stable
    std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(index.code_length) + 1);
    for (std::size_t i = 0; i < index.size(); ++i)
        buckets[static_cast<std::size_t>(hamming_distance(query, index.codes[i]))].push_back(i);

    std::vector<RankedHit> hits;
    hits.reserve(std::min(top_r, index.size()));
    for (int d = 0; d <= index.code_length && hits.size() < top_r; ++d)
        for (const std::size_t i : buckets[static_cast<std::size_t>(d)]) {
            hits.push_back(RankedHit{i, d});
            if (hits.size() == top_r) break;
        }
    return hits;
}

std::vector<std::size_t> search_radius(const BinaryCode& query, const HammingIndex& index,
                                       int radius) {
    if (radius < 0 || radius > index.code_length)
        throw invalid_argument("search_radius: radius out of range");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < index.size(); ++i)
        if (hamming_distance(query, index.codes[i]) <= radius) out.push_back(i);
    return out;
}

BinaryCode encode(const MultiViewDescriptor& sample, const TrainState& state, Modality modality) {
    const Vector x = kernelize(sample, state.anchors(modality),
                               state.combo.for_modality(modality), state.eta(modality));
    return BinaryCode::from_signs(state.projection(modality) * x);
}

}  // namespace mfdh
