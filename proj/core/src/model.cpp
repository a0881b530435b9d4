#include "mfdh/model.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "mfdh/encoder_index.hpp"
#include "mfdh/errors.hpp"

namespace mfdh {

namespace {

constexpr std::string_view kMagic = "MFDH-MODEL v1\n";

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

void put_matrix_rowmajor(std::string& out, const Matrix& m) {
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) put_f64(out, m(r, c));
}

class Reader {
public:
    explicit Reader(std::string_view bytes) : bytes_(bytes) {}

    void expect_magic() {
        if (bytes_.size() < kMagic.size() || bytes_.substr(0, kMagic.size()) != kMagic)
            throw io_error("model: bad magic header");
        at_ = kMagic.size();
    }

    std::uint64_t u64() {
        require(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[at_ + i])) << (8 * i);
        at_ += 8;
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    Index dim(const char* what) {
        const std::uint64_t v = u64();
        if (v > static_cast<std::uint64_t>(1) << 40)
            throw io_error(std::string("model: implausible dimension for ") + what);
        return static_cast<Index>(v);
    }

    Matrix matrix_rowmajor(Index rows, Index cols) {
        Matrix m(rows, cols);
        for (Index r = 0; r < rows; ++r)
            for (Index c = 0; c < cols; ++c) m(r, c) = f64();
        return m;
    }

    std::string bytes(std::size_t n) {
        require(n);
        std::string out(bytes_.substr(at_, n));
        at_ += n;
        return out;
    }

    void expect_end() const {
        if (at_ != bytes_.size()) throw io_error("model: trailing bytes");
    }

private:
    void require(std::size_t n) const {
        if (bytes_.size() - at_ < n) throw io_error("model: truncated file");
    }

    std::string_view bytes_;
    std::size_t at_ = 0;
};

void put_anchor_set(std::string& out, const AnchorSet& a) {
    put_u64(out, static_cast<std::uint64_t>(a.histogram.rows()));
    for (Index j = 0; j < a.histogram.cols(); ++j)
        for (Index r = 0; r < a.histogram.rows(); ++r) put_f64(out, a.histogram(r, j));
    put_u64(out, static_cast<std::uint64_t>(a.mean.rows()));
    for (Index j = 0; j < a.mean.cols(); ++j)
        for (Index r = 0; r < a.mean.rows(); ++r) put_f64(out, a.mean(r, j));
    put_u64(out, a.cov_log.empty() ? 0 : static_cast<std::uint64_t>(a.cov_log.front().rows()));
    for (const auto& m : a.cov_log) put_matrix_rowmajor(out, m);
}

AnchorSet read_anchor_set(Reader& in, Index d1, Index d2, Index d3) {
    AnchorSet a;
    const Index hist_dim = in.dim("anchor histogram");
    a.histogram.resize(hist_dim, d1);
    for (Index j = 0; j < d1; ++j)
        for (Index r = 0; r < hist_dim; ++r) a.histogram(r, j) = in.f64();
    const Index mean_dim = in.dim("anchor mean");
    a.mean.resize(mean_dim, d2);
    for (Index j = 0; j < d2; ++j)
        for (Index r = 0; r < mean_dim; ++r) a.mean(r, j) = in.f64();
    const Index cov_dim = in.dim("anchor covariance");
    a.cov_log.reserve(static_cast<std::size_t>(d3));
    for (Index j = 0; j < d3; ++j) a.cov_log.push_back(in.matrix_rowmajor(cov_dim, cov_dim));
    return a;
}

void put_spec(std::string& out, const KernelFunctionSpec& spec) {
    out.push_back(spec.kind == KernelKind::rbf ? '\0' : '\1');
    put_f64(out, spec.sigma);
    put_f64(out, spec.a);
    put_u64(out, static_cast<std::uint64_t>(spec.s));
}

KernelFunctionSpec read_spec(Reader& in, std::string_view raw_kind) {
    KernelFunctionSpec spec;
    if (raw_kind.size() != 1 || (raw_kind[0] != '\0' && raw_kind[0] != '\1'))
        throw io_error("model: bad kernel kind");
    spec.kind = raw_kind[0] == '\0' ? KernelKind::rbf : KernelKind::polynomial;
    spec.sigma = in.f64();
    spec.a = in.f64();
    spec.s = static_cast<int>(in.u64());
    return spec;
}

void put_dictionary(std::string& out, const Dictionary& d) {
    put_u64(out, static_cast<std::uint64_t>(d.dim()));
    put_u64(out, static_cast<std::uint64_t>(d.size()));
    for (Index j = 0; j < d.size(); ++j)
        for (Index r = 0; r < d.dim(); ++r) put_f64(out, d.centers(r, j));
}

Dictionary read_dictionary(Reader& in) {
    const Index dim = in.dim("dictionary");
    const Index k = in.dim("dictionary size");
    Dictionary d;
    d.centers.resize(dim, k);
    for (Index j = 0; j < k; ++j)
        for (Index r = 0; r < dim; ++r) d.centers(r, j) = in.f64();
    return d;
}

}  // namespace

std::string serialize_model(const TrainState& state) {
    const Index code_len = state.code_length();
    const Index feat = state.feature_dim();
    const Index classes = state.class_count();
    const Index n = state.sample_count();
    const auto img_counts = state.anchors_img.counts();

    std::string out;
    out += kMagic;
    put_u64(out, static_cast<std::uint64_t>(code_len));
    put_u64(out, static_cast<std::uint64_t>(feat));
    put_u64(out, static_cast<std::uint64_t>(classes));
    put_u64(out, static_cast<std::uint64_t>(img_counts[0]));
    put_u64(out, static_cast<std::uint64_t>(img_counts[1]));
    put_u64(out, static_cast<std::uint64_t>(img_counts[2]));
    put_u64(out, static_cast<std::uint64_t>(n));

    put_matrix_rowmajor(out, state.p_img);
    put_matrix_rowmajor(out, state.p_txt);
    put_matrix_rowmajor(out, state.w);

    for (Index i = 0; i < n; ++i) {
        const BinaryCode code = BinaryCode::from_signs(state.b.col(i));
        for (const std::uint64_t word : code.words()) put_u64(out, word);
    }

    put_anchor_set(out, state.anchors_img);
    put_anchor_set(out, state.anchors_txt);

    out.push_back(state.combo.shared_across_modalities ? '\1' : '\0');
    for (const auto& spec : state.combo.image) put_spec(out, spec);
    for (const auto& spec : state.combo.text) put_spec(out, spec);
    for (const double e : state.eta_img) put_f64(out, e);
    for (const double e : state.eta_txt) put_f64(out, e);
    put_f64(out, state.eps_spd);

    put_dictionary(out, state.dict_img);
    put_dictionary(out, state.dict_txt);

    put_u64(out, static_cast<std::uint64_t>(state.cfg.code_length));
    put_f64(out, state.cfg.alpha);
    put_f64(out, state.cfg.beta);
    put_f64(out, state.cfg.lambda);
    put_u64(out, static_cast<std::uint64_t>(state.cfg.max_outer_iters));
    put_u64(out, static_cast<std::uint64_t>(state.cfg.dcc_sweeps));
    put_f64(out, state.cfg.tol_rel);
    put_u64(out, state.cfg.seed);

    put_u64(out, static_cast<std::uint64_t>(state.objective_trace.size()));
    for (const double f : state.objective_trace) put_f64(out, f);

    put_u64(out, static_cast<std::uint64_t>(state.config_echo.size()));
    out += state.config_echo;
    return out;
}

TrainState parse_model(std::string_view bytes) {
    Reader in(bytes);
    in.expect_magic();

    TrainState state;
    const Index code_len = in.dim("L");
    const Index feat = in.dim("D");
    const Index classes = in.dim("c");
    const Index d1 = in.dim("d1");
    const Index d2 = in.dim("d2");
    const Index d3 = in.dim("d3");
    const Index n = in.dim("n");
    if (d1 + d2 + d3 != feat) throw io_error("model: anchor counts do not sum to D");

    state.p_img = in.matrix_rowmajor(code_len, feat);
    state.p_txt = in.matrix_rowmajor(code_len, feat);
    state.w = in.matrix_rowmajor(code_len, classes);

    state.b.resize(code_len, n);
    const auto words_per_code = static_cast<std::size_t>((code_len + 63) / 64);
    for (Index i = 0; i < n; ++i) {
        std::vector<std::uint64_t> words(words_per_code);
        for (auto& w : words) w = in.u64();
        const BinaryCode code = BinaryCode::from_packed(code_len, std::move(words));
        for (Index l = 0; l < code_len; ++l) state.b(l, i) = code.sign_at(l);
    }

    state.anchors_img = read_anchor_set(in, d1, d2, d3);
    state.anchors_txt = read_anchor_set(in, d1, d2, d3);

    const std::string shared = in.bytes(1);
    state.combo.shared_across_modalities = shared[0] == '\1';
    for (auto& spec : state.combo.image) spec = read_spec(in, in.bytes(1));
    for (auto& spec : state.combo.text) spec = read_spec(in, in.bytes(1));
    for (auto& e : state.eta_img) e = in.f64();
    for (auto& e : state.eta_txt) e = in.f64();
    state.eps_spd = in.f64();

    state.dict_img = read_dictionary(in);
    state.dict_txt = read_dictionary(in);

    state.cfg.code_length = in.dim("cfg L");
    state.cfg.alpha = in.f64();
    state.cfg.beta = in.f64();
    state.cfg.lambda = in.f64();
    state.cfg.max_outer_iters = static_cast<int>(in.u64());
    state.cfg.dcc_sweeps = static_cast<int>(in.u64());
    state.cfg.tol_rel = in.f64();
    state.cfg.seed = in.u64();

    const std::uint64_t trace_len = in.u64();
    state.objective_trace.resize(trace_len);
    for (auto& f : state.objective_trace) f = in.f64();

    const std::uint64_t echo_len = in.u64();
    state.config_echo = in.bytes(echo_len);
    in.expect_end();
    return state;
}

void save_model(const TrainState& state, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open model file for writing: " + path.string());
    const std::string bytes = serialize_model(state);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("failed writing model file: " + path.string());
}

TrainState load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open model file: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_model(bytes);
}

}  // namespace mfdh
