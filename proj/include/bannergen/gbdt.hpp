#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "bannergen/features.hpp"
#include "bannergen/model_io.hpp"

namespace bannergen {

struct SingleClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct GbdtHyper {
    int trees = 100;
    int depth = 4;
    double learning_rate = 0.1;
    int min_leaf = 20;
};

/// Axis-aligned regression tree, flattened. Leaves carry log-odds deltas
/// (Newton step: sum residual / sum hessian).
struct Tree {
    struct Node {
        int feature = -1;  // -1 = leaf
        double threshold = 0;
        int left = -1;
        int right = -1;
        double value = 0;
    };
    std::vector<Node> nodes;

    double predict(const std::vector<double>& x) const {
        int at = 0;
        while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
            const Node& n = nodes[static_cast<std::size_t>(at)];
            at = x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
        }
        return nodes[static_cast<std::size_t>(at)].value;
    }
};

struct RankModel {
    GbdtHyper hyper;
    double base_score = 0;  // log-odds of the training positive rate
    std::vector<Tree> trees;
    FeatureSpace space;
    std::string metadata;                // period range, sample count
    std::vector<double> train_logloss;   // per boosting round

    bool empty() const { return trees.empty(); }
};

namespace detail {

struct SplitCand {
    double gain = 0;
    int feature = -1;
    double threshold = 0;
};

}  // namespace detail

/// Logistic gradient boosting with greedy variance-reduction splits. No
/// row or feature subsampling, strict-improvement tie-breaks, so training
/// is deterministic for fixed samples and hyperparameters.
inline RankModel train_gbdt(const std::vector<std::vector<double>>& rows,
                            const std::vector<int>& labels, const GbdtHyper& hyper) {
    const std::size_t n = rows.size();
    if (n == 0 || labels.size() != n) throw std::invalid_argument("bad training input");
    const std::size_t dim = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != dim) throw LayoutMismatch("inconsistent feature vector length");

    std::int64_t pos = 0;
    for (int y : labels) pos += y;
    if (pos == 0 || pos == static_cast<std::int64_t>(n))
        throw SingleClass("training data contains a single class");

    RankModel model;
    model.hyper = hyper;
    const double p0 = double(pos) / double(n);
    model.base_score = std::log(p0 / (1.0 - p0));

    // presort each feature once; ties by sample index keep things stable
    std::vector<std::vector<int>> sorted(dim);
    for (std::size_t f = 0; f < dim; ++f) {
        auto& idx = sorted[f];
        idx.resize(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = int(i);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            const double va = rows[std::size_t(a)][f], vb = rows[std::size_t(b)][f];
            if (va != vb) return va < vb;
            return a < b;
        });
    }

    std::vector<double> margin(n, model.base_score);
    std::vector<double> grad(n), hess(n);

    for (int round = 0; round < hyper.trees; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = sigmoid(margin[i]);
            grad[i] = double(labels[i]) - p;  // negative gradient of log-loss
            hess[i] = std::max(p * (1.0 - p), 1e-12);
        }

        Tree tree;
        tree.nodes.push_back({});
        std::vector<int> node_of(n, 0);
        std::vector<int> level = {0};

        for (int d = 0; d < hyper.depth && !level.empty(); ++d) {
            const int max_node = int(tree.nodes.size());
            std::vector<char> in_level(max_node, 0);
            for (int nd : level) in_level[std::size_t(nd)] = 1;

            std::vector<std::int64_t> count(max_node, 0);
            std::vector<double> sum_g(max_node, 0), sum_h(max_node, 0);
            for (std::size_t i = 0; i < n; ++i) {
                const int nd = node_of[i];
                if (nd < 0 || !in_level[std::size_t(nd)]) continue;
                ++count[nd];
                sum_g[nd] += grad[i];
                sum_h[nd] += hess[i];
            }

            std::vector<detail::SplitCand> best(max_node);
            std::vector<std::int64_t> lcount(max_node);
            std::vector<double> lsum(max_node), prev(max_node);
            std::vector<char> seen(max_node);

            for (std::size_t f = 0; f < dim; ++f) {
                for (int nd : level) {
                    lcount[nd] = 0;
                    lsum[nd] = 0;
                    seen[nd] = 0;
                }
                for (int i : sorted[f]) {
                    const int nd = node_of[std::size_t(i)];
                    if (nd < 0 || !in_level[std::size_t(nd)]) continue;
                    const double v = rows[std::size_t(i)][f];
                    if (seen[nd] && v > prev[nd] && lcount[nd] >= hyper.min_leaf &&
                        count[nd] - lcount[nd] >= hyper.min_leaf) {
                        const double rsum = sum_g[nd] - lsum[nd];
                        const double gain = lsum[nd] * lsum[nd] / double(lcount[nd]) +
                                            rsum * rsum / double(count[nd] - lcount[nd]) -
                                            sum_g[nd] * sum_g[nd] / double(count[nd]);
                        if (gain > best[nd].gain + 1e-12) {
                            best[nd] = {gain, int(f), (prev[nd] + v) / 2.0};
                        }
                    }
                    ++lcount[nd];
                    lsum[nd] += grad[std::size_t(i)];
                    prev[nd] = v;
                    seen[nd] = 1;
                }
            }

            std::vector<int> next_level;
            std::vector<int> remap_left(max_node, -1), remap_right(max_node, -1);
            for (int nd : level) {
                if (best[nd].feature < 0) continue;  // degenerate: stays a leaf
                Tree::Node& parent = tree.nodes[std::size_t(nd)];
                parent.feature = best[nd].feature;
                parent.threshold = best[nd].threshold;
                parent.left = int(tree.nodes.size());
                parent.right = parent.left + 1;
                remap_left[nd] = parent.left;
                remap_right[nd] = parent.right;
                tree.nodes.push_back({});
                tree.nodes.push_back({});
                next_level.push_back(parent.left);
                next_level.push_back(parent.right);
            }
            if (next_level.empty()) break;
            for (std::size_t i = 0; i < n; ++i) {
                const int nd = node_of[i];
                if (nd < 0 || nd >= max_node || remap_left[nd] < 0) continue;
                const Tree::Node& parent = tree.nodes[std::size_t(nd)];
                node_of[i] = rows[i][std::size_t(parent.feature)] <= parent.threshold
                                 ? remap_left[nd]
                                 : remap_right[nd];
            }
            level = std::move(next_level);
        }

        // leaf values: Newton step over the samples in each leaf
        {
            std::vector<double> leaf_g(tree.nodes.size(), 0), leaf_h(tree.nodes.size(), 0);
            for (std::size_t i = 0; i < n; ++i) {
                leaf_g[std::size_t(node_of[i])] += grad[i];
                leaf_h[std::size_t(node_of[i])] += hess[i];
            }
            for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
                if (tree.nodes[k].feature >= 0) continue;
                tree.nodes[k].value = leaf_h[k] > 1e-12 ? leaf_g[k] / leaf_h[k] : 0.0;
            }
        }

        for (std::size_t i = 0; i < n; ++i)
            margin[i] += hyper.learning_rate * tree.nodes[std::size_t(node_of[i])].value;
        model.trees.push_back(std::move(tree));

        double ll = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = std::clamp(sigmoid(margin[i]), 1e-12, 1.0 - 1e-12);
            ll -= labels[i] ? std::log(p) : std::log(1.0 - p);
        }
        model.train_logloss.push_back(ll / double(n));
    }
    return model;
}

/// Raw additive margin: base + lr * sum of leaf values.
inline double gbdt_margin(const RankModel& model, const std::vector<double>& x) {
    double m = model.base_score;
    for (const Tree& t : model.trees) m += model.hyper.learning_rate * t.predict(x);
    return m;
}

/// Click probability in (0,1); checks the vector against the model layout.
inline double gbdt_score(const RankModel& model, const FeatureVector& fv) {
    if (int(fv.values.size()) != model.space.dim())
        throw LayoutMismatch("feature vector length " + std::to_string(fv.values.size()) +
                             " does not match model dim " + std::to_string(model.space.dim()));
    return sigmoid(gbdt_margin(model, fv.values));
}

inline void write_rank_model(model_io::Writer& w, const RankModel& m) {
    w.line("bannergen-model v1");
    w.line("kind rank");
    w.fields("hyper", m.hyper.trees, m.hyper.depth, m.hyper.learning_rate, m.hyper.min_leaf);
    w.fields("base_score", m.base_score);
    w.line("metadata " + m.metadata);
    write_feature_space(w, m.space);
    w.fields("trees", m.trees.size());
    for (const Tree& t : m.trees) {
        w.fields("tree", t.nodes.size());
        for (const Tree::Node& nd : t.nodes)
            w.fields(nd.feature, nd.threshold, nd.left, nd.right, nd.value);
    }
    w.line("end");
}

inline RankModel read_rank_model(model_io::Reader& r) {
    if (r.line() != "bannergen-model v1") throw ModelIoError("bad model header");
    if (r.line() != "kind rank") throw ModelIoError("not a rank model");
    RankModel m;
    const auto hyper = r.tagged("hyper");
    m.hyper.trees = model_io::parse_int(hyper.at(0));
    m.hyper.depth = model_io::parse_int(hyper.at(1));
    m.hyper.learning_rate = model_io::parse_double(hyper.at(2));
    m.hyper.min_leaf = model_io::parse_int(hyper.at(3));
    m.base_score = model_io::parse_double(r.tagged("base_score").at(0));
    const std::string meta = r.line();
    if (meta.rfind("metadata", 0) != 0) throw ModelIoError("expected metadata line");
    m.metadata = meta.size() > 9 ? meta.substr(9) : std::string();
    m.space = read_feature_space(r);
    const int ntrees = model_io::parse_int(r.tagged("trees").at(0));
    for (int i = 0; i < ntrees; ++i) {
        const int nnodes = model_io::parse_int(r.tagged("tree").at(0));
        Tree t;
        for (int k = 0; k < nnodes; ++k) {
            const auto ts = r.tokens();
            if (ts.size() != 5) throw ModelIoError("bad tree node");
            Tree::Node nd;
            nd.feature = model_io::parse_int(ts[0]);
            nd.threshold = model_io::parse_double(ts[1]);
            nd.left = model_io::parse_int(ts[2]);
            nd.right = model_io::parse_int(ts[3]);
            nd.value = model_io::parse_double(ts[4]);
            t.nodes.push_back(nd);
        }
        m.trees.push_back(std::move(t));
    }
    if (r.line() != "end") throw ModelIoError("missing end marker");
    return m;
}

inline void save_rank_model(const RankModel& m, const std::string& path) {
    model_io::Writer w;
    write_rank_model(w, m);
    w.save(path);
}

inline RankModel load_rank_model(const std::string& path) {
    auto r = model_io::Reader::from_file(path);
    return read_rank_model(r);
}

}  // namespace bannergen
