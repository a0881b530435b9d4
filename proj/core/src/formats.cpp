#include "mfdh/formats.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "mfdh/errors.hpp"

namespace mfdh {

namespace {

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open file for writing: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw io_error("failed writing file: " + path.string());
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line, const std::string& msg) {
    throw io_error(path.string() + ":" + std::to_string(line) + ": " + msg);
}

/// Splits into lines, dropping a trailing '\r' per line and a final empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        std::string_view line = end == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

double parse_double(std::string_view token, const std::filesystem::path& path, std::size_t line) {
    double v = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last) fail(path, line, "bad number '" + std::string(token) + "'");
    return v;
}

std::uint64_t parse_u64(std::string_view token, const std::filesystem::path& path,
                        std::size_t line) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || p != token.data() + token.size())
        fail(path, line, "bad integer '" + std::string(token) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = text.find(sep, start);
        if (end == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, end - start));
        start = end + 1;
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw io_error("format_double failed");
    return std::string(buf, p);
}

DescriptorFile read_descriptor_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const auto lines = split_lines(text);
    if (lines.empty()) throw io_error(path.string() + ": missing header");

    constexpr std::string_view prefix = "MFDH-DESC v1 dim=";
    if (!lines[0].starts_with(prefix)) fail(path, 1, "expected 'MFDH-DESC v1 dim=<d>' header");
    DescriptorFile file;
    file.dim = static_cast<Index>(parse_u64(lines[0].substr(prefix.size()), path, 1));
    if (file.dim < 1) fail(path, 1, "dimension must be >= 1");

    // gather columns per sample id, keeping first-appearance order
    std::unordered_map<std::string, std::size_t> by_id;
    std::vector<std::vector<double>> values;  // flat column-major buffers
    std::vector<std::string> order;

    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const auto line = lines[ln];
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) fail(path, ln + 1, "expected <id>\\t<values>");
        std::string id(line.substr(0, tab));
        if (id.empty()) fail(path, ln + 1, "empty sample id");
        const auto tokens = split(line.substr(tab + 1), ',');
        if (static_cast<Index>(tokens.size()) != file.dim)
            fail(path, ln + 1, "expected " + std::to_string(file.dim) + " values");

        auto [it, inserted] = by_id.try_emplace(std::move(id), values.size());
        if (inserted) {
            values.emplace_back();
            order.push_back(it->first);
        }
        auto& buf = values[it->second];
        for (const auto token : tokens) buf.push_back(parse_double(token, path, ln + 1));
    }

    file.sets.reserve(order.size());
    for (std::size_t s = 0; s < order.size(); ++s) {
        const auto& buf = values[s];
        const Index count = static_cast<Index>(buf.size()) / file.dim;
        DescriptorSet set;
        set.sample_id = order[s];
        set.vectors = Eigen::Map<const Matrix>(buf.data(), file.dim, count);
        file.sets.push_back(std::move(set));
    }
    return file;
}

void write_descriptor_file(const std::filesystem::path& path, const DescriptorFile& file) {
    std::string out = "MFDH-DESC v1 dim=" + std::to_string(file.dim) + "\n";
    for (const auto& set : file.sets) {
        if (set.dim() != file.dim)
            throw invalid_argument("write_descriptor_file: dimension mismatch for sample '" +
                                   set.sample_id + "'");
        for (Index c = 0; c < set.count(); ++c) {
            out += set.sample_id;
            out.push_back('\t');
            for (Index r = 0; r < file.dim; ++r) {
                if (r > 0) out.push_back(',');
                out += format_double(set.vectors(r, c));
            }
            out.push_back('\n');
        }
    }
    write_text_file(path, out);
}

void write_dictionary_csv(const std::filesystem::path& path, const Dictionary& dict) {
    std::string out;
    for (Index j = 0; j < dict.size(); ++j) {
        for (Index r = 0; r < dict.dim(); ++r) {
            if (r > 0) out.push_back(',');
            out += format_double(dict.centers(r, j));
        }
        out.push_back('\n');
    }
    write_text_file(path, out);
}

Dictionary read_dictionary_csv(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const auto lines = split_lines(text);
    if (lines.empty()) throw io_error(path.string() + ": empty dictionary");
    std::vector<std::vector<double>> rows;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        const auto tokens = split(lines[ln], ',');
        std::vector<double> row;
        row.reserve(tokens.size());
        for (const auto token : tokens) row.push_back(parse_double(token, path, ln + 1));
        if (!rows.empty() && row.size() != rows.front().size())
            fail(path, ln + 1, "inconsistent center dimension");
        rows.push_back(std::move(row));
    }
    Dictionary dict;
    dict.centers.resize(static_cast<Index>(rows.front().size()), static_cast<Index>(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (std::size_t r = 0; r < rows[j].size(); ++r)
            dict.centers(static_cast<Index>(r), static_cast<Index>(j)) = rows[j][r];
    return dict;
}

CodesFile read_codes_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const auto lines = split_lines(text);
    if (lines.empty()) throw io_error(path.string() + ": missing header");

    constexpr std::string_view prefix = "MFDH-CODES v1 L=";
    if (!lines[0].starts_with(prefix)) fail(path, 1, "expected 'MFDH-CODES v1 L=<L> n=<n>' header");
    const auto rest = lines[0].substr(prefix.size());
    const std::size_t space = rest.find(" n=");
    if (space == std::string_view::npos) fail(path, 1, "missing n= field");

    CodesFile file;
    file.code_length = static_cast<Index>(parse_u64(rest.substr(0, space), path, 1));
    const auto expected_n = parse_u64(rest.substr(space + 3), path, 1);
    if (file.code_length < 1) fail(path, 1, "code length must be >= 1");

    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        const std::size_t tab = lines[ln].find('\t');
        if (tab == std::string_view::npos) fail(path, ln + 1, "expected <id>\\t<hex>");
        file.ids.emplace_back(lines[ln].substr(0, tab));
        try {
            file.codes.push_back(BinaryCode::from_hex(file.code_length, lines[ln].substr(tab + 1)));
        } catch (const invalid_argument& e) {
            fail(path, ln + 1, e.what());
        }
    }
    if (file.ids.size() != expected_n)
        throw io_error(path.string() + ": header n=" + std::to_string(expected_n) +
                       " but found " + std::to_string(file.ids.size()) + " records");
    return file;
}

void write_codes_file(const std::filesystem::path& path, const CodesFile& file) {
    if (file.ids.size() != file.codes.size())
        throw invalid_argument("write_codes_file: ids/codes size mismatch");
    std::string out = "MFDH-CODES v1 L=" + std::to_string(file.code_length) +
                      " n=" + std::to_string(file.ids.size()) + "\n";
    for (std::size_t i = 0; i < file.ids.size(); ++i) {
        if (file.codes[i].length() != file.code_length)
            throw invalid_argument("write_codes_file: code length mismatch");
        out += file.ids[i];
        out.push_back('\t');
        out += file.codes[i].to_hex();
        out.push_back('\n');
    }
    write_text_file(path, out);
}

void LabelTable::add(std::string id, std::vector<std::string> labels) {
    if (labels.empty()) throw invalid_argument("LabelTable: empty label set for '" + id + "'");
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    const auto [it, inserted] = by_id_.try_emplace(id, ids_.size());
    if (!inserted) {
        if (label_sets_[it->second] != labels)
            throw io_error("conflicting label sets for sample '" + id + "'");
        return;
    }
    ids_.push_back(std::move(id));
    label_sets_.push_back(std::move(labels));
}

const std::vector<std::string>* LabelTable::find(const std::string& id) const {
    const auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &label_sets_[it->second];
}

void LabelTable::merge(const LabelTable& other) {
    for (std::size_t i = 0; i < other.size(); ++i) add(other.ids_[i], other.label_sets_[i]);
}

LabelTable read_labels_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0] != "MFDH-LABELS v1")
        throw io_error(path.string() + ": expected 'MFDH-LABELS v1' header");
    LabelTable table;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        if (lines[ln].empty()) continue;
        const std::size_t tab = lines[ln].find('\t');
        if (tab == std::string_view::npos) fail(path, ln + 1, "expected <id>\\t<labels>");
        std::vector<std::string> labels;
        for (const auto token : split(lines[ln].substr(tab + 1), ',')) {
            if (token.empty()) fail(path, ln + 1, "empty label token");
            labels.emplace_back(token);
        }
        try {
            table.add(std::string(lines[ln].substr(0, tab)), std::move(labels));
        } catch (const error& e) {
            fail(path, ln + 1, e.what());
        }
    }
    return table;
}

void write_labels_file(const std::filesystem::path& path, const LabelTable& table) {
    std::string out = "MFDH-LABELS v1\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        out += table.ids()[i];
        out.push_back('\t');
        const auto& labels = table.label_sets()[i];
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (j > 0) out.push_back(',');
            out += labels[j];
        }
        out.push_back('\n');
    }
    write_text_file(path, out);
}

}  // namespace mfdh
