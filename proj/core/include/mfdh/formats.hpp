#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "mfdh/descriptors.hpp"
#include "mfdh/encoder_index.hpp"
#include "mfdh/types.hpp"

namespace mfdh {

/// "MFDH-DESC v1 dim=<d>" header, then one record per local descriptor:
/// <sample_id>\t<v1>,<v2>,...,<vd>. Records of one sample need not be
/// contiguous; samples keep first-appearance order.
struct DescriptorFile {
    Index dim = 0;
    std::vector<DescriptorSet> sets;
};

DescriptorFile read_descriptor_file(const std::filesystem::path& path);
void write_descriptor_file(const std::filesystem::path& path, const DescriptorFile& file);

/// CSV with one center per row.
void write_dictionary_csv(const std::filesystem::path& path, const Dictionary& dict);
Dictionary read_dictionary_csv(const std::filesystem::path& path);

/// "MFDH-CODES v1 L=<L> n=<n>" header, then <id>\t<hex-packed-code> records.
struct CodesFile {
    Index code_length = 0;
    std::vector<std::string> ids;
    std::vector<BinaryCode> codes;
};

CodesFile read_codes_file(const std::filesystem::path& path);
void write_codes_file(const std::filesystem::path& path, const CodesFile& file);

/// "MFDH-LABELS v1" header, then <sample_id>\t<label[,label...]> records.
class LabelTable {
public:
    void add(std::string id, std::vector<std::string> labels);
    const std::vector<std::string>* find(const std::string& id) const;
    const std::vector<std::string>& ids() const { return ids_; }
    const std::vector<std::vector<std::string>>& label_sets() const { return label_sets_; }
    std::size_t size() const { return ids_.size(); }

    /// Adds every entry of `other`; duplicate ids must carry identical sets.
    void merge(const LabelTable& other);

private:
    std::vector<std::string> ids_;
    std::vector<std::vector<std::string>> label_sets_;  // sorted, unique
    std::unordered_map<std::string, std::size_t> by_id_;
};

LabelTable read_labels_file(const std::filesystem::path& path);
void write_labels_file(const std::filesystem::path& path, const LabelTable& table);

/// Shortest round-trip decimal formatting (used by all text writers).
std::string format_double(double v);

}  // namespace mfdh
