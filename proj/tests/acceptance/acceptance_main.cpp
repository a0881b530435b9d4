// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mfdh/config.hpp"
#include "mfdh/encoder_index.hpp"
#include "mfdh/evaluation.hpp"
#include "mfdh/formats.hpp"
#include "mfdh/model.hpp"
#include "mfdh/optimizer.hpp"
#include "mfdh/pipeline.hpp"
#include "mfdh/synth.hpp"
#include "support/test_util.hpp"

using namespace mfdh;
using testutil::Rng;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail.str(what);
        } else if (!cond) {
            detail << "; " << what;
        }
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

void subproblem_exactness(Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(1001);
    for (int trial = 0; trial < 200 && c.ok; ++trial) {
        const Index code_len = 1 + static_cast<Index>(rng.below(6));
        const Index n = 2 + static_cast<Index>(rng.below(9));
        const Index classes = 1 + static_cast<Index>(rng.below(4));
        const Index feat = 1 + static_cast<Index>(rng.below(8));
        const Matrix b = testutil::random_sign_matrix(rng, code_len, n);
        const Matrix y = testutil::random_onehot(rng, classes, n);

        // (a) classifier stationarity
        const double lambda = 0.01;
        const Matrix w = update_w(b, y, lambda);
        Matrix gram = b * b.transpose();
        gram.diagonal().array() += lambda;
        const double rhs = std::max(1e-12, (b * y.transpose()).norm());
        c.require((gram * w - b * y.transpose()).norm() <= 1e-8 * rhs,
                  "update_w stationarity violated at trial " + std::to_string(trial));

        // (b) projection normal equations (full-row-rank K)
        const Index feat_p = std::min(feat, n);
        const Matrix k = testutil::random_matrix(rng, feat_p, n);
        const Matrix p = update_p(b, k, 0.0);
        c.require(((b - p * k) * k.transpose()).norm() <= 1e-8 * b.norm(),
                  "update_p normal-equation residual too large at trial " + std::to_string(trial));

        // (c) exhaustive single-flip oracle on the DCC output
        const Matrix p_img = testutil::random_matrix(rng, code_len, feat);
        const Matrix p_txt = testutil::random_matrix(rng, code_len, feat);
        const Matrix psi = testutil::random_unit_matrix(rng, feat, n);
        const Matrix phi = testutil::random_unit_matrix(rng, feat, n);
        const double alpha = 0.1, beta = 0.1;
        const Matrix updated =
            update_b_dcc(b, w, p_img, p_txt, y, psi, phi, alpha, beta, 50);
        const double base =
            objective(updated, p_img, p_txt, w, y, psi, phi, alpha, beta, lambda);
        for (Index l = 0; l < code_len && c.ok; ++l)
            for (Index i = 0; i < n && c.ok; ++i) {
                Matrix flipped = updated;
                flipped(l, i) = -flipped(l, i);
                const double flipped_obj =
                    objective(flipped, p_img, p_txt, w, y, psi, phi, alpha, beta, lambda);
                c.require(flipped_obj >= base - 1e-9 * std::abs(base),
                          "a single sign flip beats the DCC output at trial " +
                              std::to_string(trial));
            }
    }
    const double elapsed = seconds_since(start);
    c.require(elapsed < 10.0, "runtime " + fmt(elapsed) + "s exceeds 10s");
    if (c.ok) c.detail << "200 instances, " << fmt(elapsed) << "s";
}

// ---------------------------------------------------------------- criterion 2

void monotone_convergence(Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(2002);
    int total_iters = 0;
    for (int run = 0; run < 50 && c.ok; ++run) {
        const Index n = 20 + static_cast<Index>(rng.below(181));
        const Index feat = 8 + static_cast<Index>(rng.below(18));
        const Index classes = 2 + static_cast<Index>(rng.below(5));
        TrainConfig cfg;
        cfg.code_length = (run % 2 == 0) ? 8 : 16;
        cfg.tol_rel = 1e-5;
        cfg.max_outer_iters = 50;
        cfg.seed = 5000 + static_cast<std::uint64_t>(run);

        const Matrix psi = testutil::random_unit_matrix(rng, feat, n);
        const Matrix phi = testutil::random_unit_matrix(rng, feat, n);
        const Matrix y = testutil::random_onehot(rng, classes, n);
        const TrainResult r = train(psi, phi, y, cfg);
        total_iters += r.iterations;

        for (std::size_t t = 1; t < r.objective_trace.size(); ++t)
            c.require(r.objective_trace[t] <=
                          r.objective_trace[t - 1] +
                              1e-9 * std::abs(r.objective_trace[t - 1]),
                      "objective increased in run " + std::to_string(run));

        const auto last = r.objective_trace.size() - 1;
        const bool converged =
            r.iterations < cfg.max_outer_iters ||
            std::abs(r.objective_trace[last] - r.objective_trace[last - 1]) <
                cfg.tol_rel * std::max(std::abs(r.objective_trace[last - 1]), 1e-30);
        c.require(converged, "run " + std::to_string(run) + " did not converge within 50 iters");
    }
    const double elapsed = seconds_since(start);
    c.require(elapsed < 60.0, "runtime " + fmt(elapsed) + "s exceeds 60s");
    if (c.ok)
        c.detail << "50 runs, mean " << fmt(total_iters / 50.0) << " iters, " << fmt(elapsed)
                 << "s";
}

// ---------------------------------------------------------------- criterion 3

struct TaskCodes {
    std::vector<BinaryCode> query, db;
    std::vector<std::vector<int>> query_labels, db_labels;
};

double evaluate_map(const TaskCodes& t, Index code_length) {
    HammingIndex index;
    index.code_length = code_length;
    for (std::size_t i = 0; i < t.db.size(); ++i) index.add(std::to_string(i), t.db[i]);
    const RelevanceJudge judge(RelevanceMode::single_label, t.query_labels, t.db_labels);
    return mean_average_precision(t.query, index, judge, index.size());
}

void synthetic_end_to_end(Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    const fs::path dir = fs::temp_directory_path() / "mfdh_acceptance_synth";
    fs::remove_all(dir);

    SynthOptions opt;  // 3 classes, 300/90 pairs, L=16
    const SynthDataset data = generate_synth_dataset(opt, dir);
    const RunConfig cfg = load_run_config(data.config);
    const TrainState state = run_train(cfg);

    const CodesFile qi = encode_descriptor_file(state, data.image_query, Modality::image);
    const CodesFile qt = encode_descriptor_file(state, data.text_query, Modality::text);
    const CodesFile di = encode_descriptor_file(state, data.image_train, Modality::image);
    const CodesFile dt = encode_descriptor_file(state, data.text_train, Modality::text);

    LabelTable labels = read_labels_file(data.labels_train);
    labels.merge(read_labels_file(data.labels_query));
    const auto label_ids = [&](const CodesFile& f) {
        std::vector<std::vector<int>> out;
        for (const auto& id : f.ids) {
            const auto& set = *labels.find(id);
            out.push_back({std::stoi(set.front().substr(5))});  // "classN"
        }
        return out;
    };

    TaskCodes i2t{qi.codes, dt.codes, label_ids(qi), label_ids(dt)};
    TaskCodes t2i{qt.codes, di.codes, label_ids(qt), label_ids(di)};
    const double map_i2t = evaluate_map(i2t, 16);
    const double map_t2i = evaluate_map(t2i, 16);

    // measured random-code baseline, 20 seeds
    Rng rng(3003);
    double baseline = 0.0;
    for (int seed = 0; seed < 20; ++seed) {
        TaskCodes random_task;
        random_task.query_labels = i2t.query_labels;
        random_task.db_labels = i2t.db_labels;
        const auto draw = [&](std::size_t count) {
            std::vector<BinaryCode> codes;
            for (std::size_t i = 0; i < count; ++i) {
                std::vector<int> bits(16);
                for (auto& bit : bits) bit = rng.sign() > 0 ? 1 : -1;
                codes.push_back(BinaryCode::from_bits(bits));
            }
            return codes;
        };
        random_task.query = draw(i2t.query.size());
        random_task.db = draw(i2t.db.size());
        baseline += evaluate_map(random_task, 16) / 20.0;
    }

    c.require(map_i2t >= 0.90, "I2T map " + fmt(map_i2t) + " below 0.90");
    c.require(map_t2i >= 0.90, "T2I map " + fmt(map_t2i) + " below 0.90");
    c.require(map_i2t >= 2.5 * baseline,
              "I2T map " + fmt(map_i2t) + " below 2.5x baseline " + fmt(baseline));
    c.require(map_t2i >= 2.5 * baseline,
              "T2I map " + fmt(map_t2i) + " below 2.5x baseline " + fmt(baseline));
    const double elapsed = seconds_since(start);
    c.require(elapsed < 120.0, "runtime " + fmt(elapsed) + "s exceeds 120s");
    fs::remove_all(dir);
    if (c.ok)
        c.detail << "I2T " << fmt(map_i2t) << ", T2I " << fmt(map_t2i) << ", baseline "
                 << fmt(baseline) << ", " << fmt(elapsed) << "s";
}

// ---------------------------------------------------------------- criterion 4

void metric_oracles(Criterion& c) {
    struct Case {
        std::vector<bool> rel;
        std::size_t top_r;
        double want;
    };
    const bool T = true, F = false;
    const std::vector<Case> table{
        {{T, F, T}, 3, 5.0 / 6.0},
        {{T, T, T}, 3, 1.0},
        {{F, F, F}, 3, 0.0},
        {{F, T}, 2, 0.5},
        {{T}, 1, 1.0},
        {{F, T, T, F}, 4, 7.0 / 12.0},
        {{T, F, F, T}, 4, 0.75},
        {{F, F, T}, 3, 1.0 / 3.0},
        {{T, T, F, F, T}, 5, 13.0 / 15.0},
        {{T, F, T, F, T, F}, 4, 5.0 / 6.0},
    };
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double got = average_precision(table[i].rel, table[i].top_r);
        c.require(std::abs(got - table[i].want) <= 1e-9,
                  "AP case " + std::to_string(i) + ": got " + fmt(got) + ", want " +
                      fmt(table[i].want));
    }

    // pr_curve against the triple-loop oracle, L = 4, n <= 30
    Rng rng(4004);
    for (int trial = 0; trial < 25 && c.ok; ++trial) {
        const Index n = 3 + static_cast<Index>(rng.below(28));
        HammingIndex index;
        index.code_length = 4;
        std::vector<std::vector<int>> db_labels;
        for (Index i = 0; i < n; ++i) {
            std::vector<int> bits(4);
            for (auto& bit : bits) bit = rng.sign() > 0 ? 1 : -1;
            index.add(std::to_string(i), BinaryCode::from_bits(bits));
            db_labels.push_back({static_cast<int>(rng.below(3))});
        }
        std::vector<BinaryCode> queries;
        std::vector<std::vector<int>> q_labels;
        for (int i = 0; i < 7; ++i) {
            std::vector<int> bits(4);
            for (auto& bit : bits) bit = rng.sign() > 0 ? 1 : -1;
            queries.push_back(BinaryCode::from_bits(bits));
            q_labels.push_back({static_cast<int>(rng.below(3))});
        }
        const RelevanceJudge judge(RelevanceMode::single_label, q_labels, db_labels);
        const PrCurve curve = pr_curve(queries, index, judge);

        long long total_rel = 0;
        for (std::size_t q = 0; q < queries.size(); ++q)
            for (std::size_t j = 0; j < index.size(); ++j) total_rel += judge.relevant(q, j);
        std::size_t at = 0;
        for (int r = 0; r <= 4; ++r) {
            long long retrieved = 0, retrieved_rel = 0;
            for (std::size_t q = 0; q < queries.size(); ++q)
                for (std::size_t j = 0; j < index.size(); ++j) {
                    int d = 0;
                    for (Index bit = 0; bit < 4; ++bit)
                        d += queries[q].sign_at(bit) != index.codes[j].sign_at(bit);
                    if (d <= r) {
                        ++retrieved;
                        retrieved_rel += judge.relevant(q, j);
                    }
                }
            if (retrieved == 0) continue;  // point omitted by contract
            const bool in_range = at < curve.points.size();
            c.require(in_range, "pr_curve missing a point");
            if (!in_range) break;
            c.require(curve.points[at].radius == r &&
                          curve.points[at].precision ==
                              static_cast<double>(retrieved_rel) /
                                  static_cast<double>(retrieved) &&
                          curve.points[at].recall ==
                              (total_rel == 0 ? 0.0
                                              : static_cast<double>(retrieved_rel) /
                                                    static_cast<double>(total_rel)),
                      "pr_curve disagrees with the triple-loop oracle at r=" + std::to_string(r));
            ++at;
        }
    }
    if (c.ok) c.detail << "10 AP cases, 25 pr-curve instances";
}

// ---------------------------------------------------------------- criterion 5

void kernel_manifold_suite(Criterion& c) {
    Rng rng(5005);

    // RBF per-view Grams are PSD
    for (int trial = 0; trial < 5 && c.ok; ++trial) {
        const Index n = 5 + static_cast<Index>(rng.below(26));
        std::vector<MultiViewDescriptor> samples;
        for (Index i = 0; i < n; ++i) {
            MultiViewDescriptor s;
            s.histogram = testutil::random_unit_matrix(rng, 4, 1);
            s.histogram /= s.histogram.sum();
            s.mean = testutil::random_matrix(rng, 3, 1);
            s.covariance = testutil::random_spd(rng, 3);
            samples.push_back(std::move(s));
        }
        const AnchorSet anchors = testutil::anchors_from_samples(samples);
        const std::array<KernelFunctionSpec, 3> specs{};
        const Matrix k = build_kernel_matrix(samples, anchors, specs);
        for (int view = 0; view < 3; ++view) {
            const Matrix block = k.middleRows(view * n, n);
            Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (block + block.transpose()));
            c.require(eig.eigenvalues().minCoeff() >= -1e-8,
                      "rbf Gram not PSD for view " + std::to_string(view));
        }
    }

    // LED metric axioms and congruence invariance
    for (int trial = 0; trial < 50 && c.ok; ++trial) {
        const Index d = 2 + static_cast<Index>(rng.below(5));
        const Matrix x = testutil::random_spd(rng, d);
        const Matrix y = testutil::random_spd(rng, d);
        const Matrix z = testutil::random_spd(rng, d);
        c.require(led_distance(x, y) >= 0.0, "LED negative");
        c.require(led_distance(x, y) == led_distance(y, x), "LED asymmetric");
        c.require(led_distance(x, z) <= led_distance(x, y) + led_distance(y, z) + 1e-9,
                  "LED triangle inequality violated");
        const Matrix q = testutil::random_orthogonal(rng, d);
        c.require(std::abs(led_distance((q * x * q.transpose()).eval(),
                                        (q * y * q.transpose()).eval()) -
                           led_distance(x, y)) < 1e-8,
                  "LED not invariant under orthogonal congruence");
    }

    // log/exp round trip on 100 random SPD matrices
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        const Index d = 2 + static_cast<Index>(rng.below(7));
        const Matrix spd = testutil::random_spd(rng, d);
        c.require((testutil::exp_map_oracle(log_map(spd)) - spd).cwiseAbs().maxCoeff() < 1e-8,
                  "log/exp round trip beyond 1e-8");
    }
    if (c.ok) c.detail << "Gram PSD, LED axioms, 100 round trips";
}

// ---------------------------------------------------------------- criterion 6

void hamming_suite(Criterion& c) {
    // identity + symmetry + triangle, exhaustive for L <= 10. Distances are
    // XOR-translation invariant (checked below), so triples reduce to pairs
    // (x, y) against the zero code; L <= 6 also runs the raw triple loop.
    Rng rng(6006);
    for (Index code_len = 1; code_len <= 10 && c.ok; ++code_len) {
        const std::uint64_t count = std::uint64_t{1} << code_len;
        for (std::uint64_t x = 0; x < count && c.ok; ++x) {
            const BinaryCode a = BinaryCode::from_packed(code_len, {x});
            c.require(hamming_distance(a, a) == 0, "d(a,a) != 0");
            for (std::uint64_t y = 0; y < count; ++y) {
                const BinaryCode b = BinaryCode::from_packed(code_len, {y});
                const BinaryCode xored = BinaryCode::from_packed(code_len, {x ^ y});
                const BinaryCode zero = BinaryCode::from_packed(code_len, {0});
                const int dxy = hamming_distance(a, b);
                if (dxy != hamming_distance(b, a)) {
                    c.require(false, "symmetry violated");
                    break;
                }
                // triangle over all triples via translation: d(a,c) <= d(a,b) + d(b,c)
                // with a = x, b = 0, c = y
                if (hamming_distance(a, zero) + hamming_distance(zero, b) < dxy) {
                    c.require(false, "triangle inequality violated");
                    break;
                }
                if (hamming_distance(xored, zero) != dxy) {
                    c.require(false, "XOR translation invariance violated");
                    break;
                }
            }
        }
    }

    // search_radius equals the brute-force filter on 100 random instances
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        const Index code_len = trial % 2 == 0 ? 8 : 16;
        const Index n = 5 + static_cast<Index>(rng.below(36));
        HammingIndex index;
        index.code_length = code_len;
        std::vector<BinaryCode> pool;
        for (Index i = 0; i < n; ++i) {
            std::vector<int> bits(static_cast<std::size_t>(code_len));
            for (auto& bit : bits) bit = rng.sign() > 0 ? 1 : -1;
            index.add(std::to_string(i), BinaryCode::from_bits(bits));
        }
        std::vector<int> qbits(static_cast<std::size_t>(code_len));
        for (auto& bit : qbits) bit = rng.sign() > 0 ? 1 : -1;
        const BinaryCode q = BinaryCode::from_bits(qbits);
        const int radius = static_cast<int>(rng.below(static_cast<std::uint64_t>(code_len) + 1));
        std::vector<std::size_t> want;
        for (std::size_t j = 0; j < index.size(); ++j) {
            int d = 0;
            for (Index bit = 0; bit < code_len; ++bit)
                d += q.sign_at(bit) != index.codes[j].sign_at(bit);
            if (d <= radius) want.push_back(j);
        }
        c.require(search_radius(q, index, radius) == want,
                  "search_radius disagrees with brute force at trial " + std::to_string(trial));
    }

    // pack/unpack bit-exact across word boundaries
    for (const Index code_len : {1, 16, 63, 64, 65, 128}) {
        std::vector<int> bits(static_cast<std::size_t>(code_len));
        for (auto& bit : bits) bit = rng.sign() > 0 ? 1 : -1;
        const BinaryCode code = BinaryCode::from_bits(bits);
        const std::vector<int> back = code.signs();
        c.require(back == bits, "pack/unpack mismatch at L=" + std::to_string(code_len));
        c.require(BinaryCode::from_hex(code_len, code.to_hex()) == code,
                  "hex round trip mismatch at L=" + std::to_string(code_len));
    }
    if (c.ok) c.detail << "exhaustive L<=10, 100 radius instances, 6 pack lengths";
}

// ---------------------------------------------------------------- criterion 7

void determinism(Criterion& c) {
    const fs::path dir = fs::temp_directory_path() / "mfdh_acceptance_det";
    fs::remove_all(dir);
    SynthOptions opt;
    opt.train_pairs = 48;
    opt.query_pairs = 12;
    opt.seed = 21;
    const SynthDataset data = generate_synth_dataset(opt, dir);
    const RunConfig cfg = load_run_config(data.config);

    const std::string first = serialize_model(run_train(cfg));
    const std::string second = serialize_model(run_train(cfg));
    c.require(first == second, "two identical train runs produced different model bytes");
    fs::remove_all(dir);

    // column-permutation equivariance of train()
    Rng rng(7007);
    const Index feat = 9, n = 40, classes = 3;
    const Matrix psi = testutil::random_unit_matrix(rng, feat, n);
    const Matrix phi = testutil::random_unit_matrix(rng, feat, n);
    const Matrix y = testutil::random_onehot(rng, classes, n);
    TrainConfig tcfg;
    tcfg.code_length = 8;
    tcfg.seed = 13;
    const TrainResult base = train(psi, phi, y, tcfg);

    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[rng.below(i)]);
    Matrix psi_p(feat, n), phi_p(feat, n), y_p(classes, n);
    for (Index i = 0; i < n; ++i) {
        psi_p.col(i) = psi.col(perm[static_cast<std::size_t>(i)]);
        phi_p.col(i) = phi.col(perm[static_cast<std::size_t>(i)]);
        y_p.col(i) = y.col(perm[static_cast<std::size_t>(i)]);
    }
    const TrainResult permuted = train(psi_p, phi_p, y_p, tcfg);
    bool equivariant = true;
    for (Index i = 0; i < n; ++i)
        equivariant =
            equivariant && permuted.b.col(i) == base.b.col(perm[static_cast<std::size_t>(i)]);
    c.require(equivariant, "sample permutation did not permute B bit-exactly");
    if (c.ok) c.detail << "byte-identical models, bit-exact column permutation";
}

// ---------------------------------------------------------------- criterion 8

void linear_complexity(Criterion& c) {
    Rng rng(8008);
    const Index feat = 160, classes = 4;
    TrainConfig cfg;
    cfg.code_length = 16;
    cfg.max_outer_iters = 6;
    cfg.tol_rel = 1e-12;
    cfg.seed = 5;

    const std::vector<Index> sizes{500, 1000, 2000};
    std::vector<double> times;
    for (const Index n : sizes) {
        const Matrix psi = testutil::random_unit_matrix(rng, feat, n);
        const Matrix phi = testutil::random_unit_matrix(rng, feat, n);
        const Matrix y = testutil::random_onehot(rng, classes, n);
        double best = 1e300;
        for (int rep = 0; rep < 5; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            const TrainResult r = train(psi, phi, y, cfg);
            const double elapsed = seconds_since(start);
            best = std::min(best, elapsed);
            if (r.iterations != cfg.max_outer_iters)
                c.require(false, "early stop distorted the timing run");
        }
        times.push_back(best);
    }

    // least-squares fit t = a + b n and its R^2
    const double n_mean = std::accumulate(sizes.begin(), sizes.end(), 0.0) / 3.0;
    const double t_mean = std::accumulate(times.begin(), times.end(), 0.0) / 3.0;
    double sxx = 0.0, sxy = 0.0, stt = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double dx = static_cast<double>(sizes[i]) - n_mean;
        const double dt = times[i] - t_mean;
        sxx += dx * dx;
        sxy += dx * dt;
        stt += dt * dt;
    }
    const double slope = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double pred = t_mean + slope * (static_cast<double>(sizes[i]) - n_mean);
        ss_res += (times[i] - pred) * (times[i] - pred);
    }
    const double r2 = stt == 0.0 ? 1.0 : 1.0 - ss_res / stt;
    c.require(r2 >= 0.95, "R^2 " + fmt(r2) + " below 0.95 (times " + fmt(times[0]) + "/" +
                              fmt(times[1]) + "/" + fmt(times[2]) + "s)");
    if (c.ok)
        c.detail << "R^2 " << fmt(r2) << ", times " << fmt(times[0]) << "/" << fmt(times[1])
                 << "/" << fmt(times[2]) << "s";
}

}  // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<void(Criterion&)> fn;
    };
    const std::vector<Entry> criteria{
        {"subproblem exactness (update_w / update_p / DCC flip oracle)", subproblem_exactness},
        {"monotone convergence over 50 random training runs", monotone_convergence},
        {"synthetic end-to-end cross-modal retrieval", synthetic_end_to_end},
        {"metric oracles (AP table, pr-curve triple loop)", metric_oracles},
        {"kernel/manifold suite (Gram PSD, LED axioms, log/exp)", kernel_manifold_suite},
        {"Hamming suite (metric axioms, radius filter, packing)", hamming_suite},
        {"determinism and permutation equivariance", determinism},
        {"linear training complexity in n", linear_complexity},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Criterion c;
        try {
            criteria[i].fn(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail << "exception: " << e.what();
        }
        std::printf("[%s] criterion %zu: %s (%s)\n", c.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, c.detail.str().c_str());
        std::fflush(stdout);
        failures += c.ok ? 0 : 1;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
