#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bannergen/model_io.hpp"
#include "bannergen/rng.hpp"
#include "bannergen/typesetting.hpp"

namespace bannergen {

struct EmptyDataset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TextSample {
    std::vector<double> features;   // text_features() output
    std::vector<double> widths;     // up to 3, normalized by the text area width
    std::vector<double> width_mask; // 1 for present lines
    int form = 0;                   // TypesettingForm index
};

struct TextNetHyper {
    int epochs = 300;
    int batch_size = 16;
    double learning_rate = 0.05;
    double momentum = 0.9;
    std::uint64_t seed = 1;
};

/// Two-head MLP: shared ReLU trunk, a linear width head (3 outputs, masked
/// MSE) and a 7-way typesetting classifier (softmax cross-entropy). All math
/// in doubles so the finite-difference gradient check is meaningful.
class TextLayoutNet {
public:
    static constexpr int kWidthOutputs = 3;

    TextLayoutNet() = default;

    TextLayoutNet(int input_dim, int hidden, std::uint64_t seed) { init(input_dim, hidden, seed); }

    void init(int input_dim, int hidden, std::uint64_t seed) {
        input_dim_ = input_dim;
        hidden_ = hidden;
        Rng rng(seed);
        auto fill = [&](std::vector<double>& v, std::size_t n, int fan_in, int fan_out) {
            const double a = std::sqrt(6.0 / double(fan_in + fan_out));
            v.resize(n);
            for (double& x : v) x = rng.next_double(-a, a);
        };
        fill(w1_, std::size_t(hidden) * input_dim, input_dim, hidden);
        b1_.assign(std::size_t(hidden), 0.0);
        fill(w2_, std::size_t(hidden) * hidden, hidden, hidden);
        b2_.assign(std::size_t(hidden), 0.0);
        fill(w3w_, std::size_t(kWidthOutputs) * hidden, hidden, kWidthOutputs);
        b3w_.assign(kWidthOutputs, 0.0);
        fill(w3f_, std::size_t(kFormCount) * hidden, hidden, kFormCount);
        b3f_.assign(kFormCount, 0.0);
    }

    int input_dim() const { return input_dim_; }
    int hidden() const { return hidden_; }

    struct Output {
        std::vector<double> widths;  // kWidthOutputs raw head values
        std::vector<double> form_probs;  // softmax over kFormCount
        int form_argmax = 0;
    };

    Output forward(const std::vector<double>& x) const {
        if (int(x.size()) != input_dim_) throw std::invalid_argument("bad input dimension");
        std::vector<double> h1, h2;
        return forward_impl(x, h1, h2);
    }

    /// Flattened parameter access for the gradient check.
    std::vector<double*> params() {
        std::vector<double*> out;
        for (auto* v : {&w1_, &b1_, &w2_, &b2_, &w3w_, &b3w_, &w3f_, &b3f_})
            for (double& x : *v) out.push_back(&x);
        return out;
    }

    /// Loss on one sample: masked mean-squared width error plus form
    /// cross-entropy, equally weighted.
    double loss(const TextSample& s) const {
        const Output o = forward(s.features);
        return width_loss(o, s) + form_loss(o, s);
    }

    /// Analytic gradient of the per-sample loss; layout matches params().
    std::vector<double> gradient(const TextSample& s) const {
        std::vector<double> h1, h2;
        const Output o = forward_impl(s.features, h1, h2);

        // head deltas
        double mask_sum = 0;
        for (double m : s.width_mask) mask_sum += m;
        std::vector<double> d_widths(kWidthOutputs, 0.0);
        if (mask_sum > 0) {
            for (int i = 0; i < kWidthOutputs; ++i) {
                const double m = i < int(s.width_mask.size()) ? s.width_mask[std::size_t(i)] : 0.0;
                const double target = i < int(s.widths.size()) ? s.widths[std::size_t(i)] : 0.0;
                d_widths[std::size_t(i)] =
                    m * 2.0 * (o.widths[std::size_t(i)] - target) / mask_sum;
            }
        }
        std::vector<double> d_logits(kFormCount);
        for (int i = 0; i < kFormCount; ++i)
            d_logits[std::size_t(i)] = o.form_probs[std::size_t(i)] - (i == s.form ? 1.0 : 0.0);

        // backprop through the trunk
        std::vector<double> g_w3w(w3w_.size()), g_b3w(b3w_.size());
        std::vector<double> g_w3f(w3f_.size()), g_b3f(b3f_.size());
        std::vector<double> d_h2(std::size_t(hidden_), 0.0);
        for (int i = 0; i < kWidthOutputs; ++i) {
            g_b3w[std::size_t(i)] = d_widths[std::size_t(i)];
            for (int j = 0; j < hidden_; ++j) {
                g_w3w[std::size_t(i) * hidden_ + j] = d_widths[std::size_t(i)] * h2[std::size_t(j)];
                d_h2[std::size_t(j)] += d_widths[std::size_t(i)] * w3w_[std::size_t(i) * hidden_ + j];
            }
        }
        for (int i = 0; i < kFormCount; ++i) {
            g_b3f[std::size_t(i)] = d_logits[std::size_t(i)];
            for (int j = 0; j < hidden_; ++j) {
                g_w3f[std::size_t(i) * hidden_ + j] = d_logits[std::size_t(i)] * h2[std::size_t(j)];
                d_h2[std::size_t(j)] += d_logits[std::size_t(i)] * w3f_[std::size_t(i) * hidden_ + j];
            }
        }
        for (int j = 0; j < hidden_; ++j)
            if (h2[std::size_t(j)] <= 0) d_h2[std::size_t(j)] = 0;  // ReLU

        std::vector<double> g_w2(w2_.size()), g_b2(b2_.size());
        std::vector<double> d_h1(std::size_t(hidden_), 0.0);
        for (int i = 0; i < hidden_; ++i) {
            g_b2[std::size_t(i)] = d_h2[std::size_t(i)];
            for (int j = 0; j < hidden_; ++j) {
                g_w2[std::size_t(i) * hidden_ + j] = d_h2[std::size_t(i)] * h1[std::size_t(j)];
                d_h1[std::size_t(j)] += d_h2[std::size_t(i)] * w2_[std::size_t(i) * hidden_ + j];
            }
        }
        for (int j = 0; j < hidden_; ++j)
            if (h1[std::size_t(j)] <= 0) d_h1[std::size_t(j)] = 0;

        std::vector<double> g_w1(w1_.size()), g_b1(b1_.size());
        for (int i = 0; i < hidden_; ++i) {
            g_b1[std::size_t(i)] = d_h1[std::size_t(i)];
            for (int j = 0; j < input_dim_; ++j)
                g_w1[std::size_t(i) * input_dim_ + j] =
                    d_h1[std::size_t(i)] * s.features[std::size_t(j)];
        }

        std::vector<double> flat;
        flat.reserve(param_count());
        for (const auto* v : {&g_w1, &g_b1, &g_w2, &g_b2, &g_w3w, &g_b3w, &g_w3f, &g_b3f})
            flat.insert(flat.end(), v->begin(), v->end());
        return flat;
    }

    std::size_t param_count() const {
        return w1_.size() + b1_.size() + w2_.size() + b2_.size() + w3w_.size() + b3w_.size() +
               w3f_.size() + b3f_.size();
    }

    void serialize(model_io::Writer& w) const {
        w.line("bannergen-model v1");
        w.line("kind textnet");
        w.fields("shape", input_dim_, hidden_);
        auto dump = [&](const char* tag, const std::vector<double>& v) {
            w.fields(tag, v.size());
            for (double x : v) w.fields(x);
        };
        dump("w1", w1_);
        dump("b1", b1_);
        dump("w2", w2_);
        dump("b2", b2_);
        dump("w3w", w3w_);
        dump("b3w", b3w_);
        dump("w3f", w3f_);
        dump("b3f", b3f_);
        w.line("end");
    }

    static TextLayoutNet deserialize(model_io::Reader& r) {
        if (r.line() != "bannergen-model v1") throw ModelIoError("bad model header");
        if (r.line() != "kind textnet") throw ModelIoError("not a textnet model");
        const auto shape = r.tagged("shape");
        TextLayoutNet net;
        net.input_dim_ = model_io::parse_int(shape.at(0));
        net.hidden_ = model_io::parse_int(shape.at(1));
        auto load = [&](const char* tag, std::vector<double>& v) {
            const int n = model_io::parse_int(r.tagged(tag).at(0));
            v.resize(std::size_t(n));
            for (int i = 0; i < n; ++i) v[std::size_t(i)] = model_io::parse_double(r.line());
        };
        load("w1", net.w1_);
        load("b1", net.b1_);
        load("w2", net.w2_);
        load("b2", net.b2_);
        load("w3w", net.w3w_);
        load("b3w", net.b3w_);
        load("w3f", net.w3f_);
        load("b3f", net.b3f_);
        if (r.line() != "end") throw ModelIoError("missing end marker");
        return net;
    }

    void save(const std::string& path) const {
        model_io::Writer w;
        serialize(w);
        w.save(path);
    }

    static TextLayoutNet load(const std::string& path) {
        auto r = model_io::Reader::from_file(path);
        return deserialize(r);
    }

private:
    Output forward_impl(const std::vector<double>& x, std::vector<double>& h1,
                        std::vector<double>& h2) const {
        h1.assign(std::size_t(hidden_), 0.0);
        for (int i = 0; i < hidden_; ++i) {
            double acc = b1_[std::size_t(i)];
            for (int j = 0; j < input_dim_; ++j)
                acc += w1_[std::size_t(i) * input_dim_ + j] * x[std::size_t(j)];
            h1[std::size_t(i)] = acc > 0 ? acc : 0.0;
        }
        h2.assign(std::size_t(hidden_), 0.0);
        for (int i = 0; i < hidden_; ++i) {
            double acc = b2_[std::size_t(i)];
            for (int j = 0; j < hidden_; ++j)
                acc += w2_[std::size_t(i) * hidden_ + j] * h1[std::size_t(j)];
            h2[std::size_t(i)] = acc > 0 ? acc : 0.0;
        }
        Output o;
        o.widths.assign(kWidthOutputs, 0.0);
        for (int i = 0; i < kWidthOutputs; ++i) {
            double acc = b3w_[std::size_t(i)];
            for (int j = 0; j < hidden_; ++j)
                acc += w3w_[std::size_t(i) * hidden_ + j] * h2[std::size_t(j)];
            o.widths[std::size_t(i)] = acc;
        }
        std::vector<double> logits(kFormCount, 0.0);
        for (int i = 0; i < kFormCount; ++i) {
            double acc = b3f_[std::size_t(i)];
            for (int j = 0; j < hidden_; ++j)
                acc += w3f_[std::size_t(i) * hidden_ + j] * h2[std::size_t(j)];
            logits[std::size_t(i)] = acc;
        }
        const double mx = *std::max_element(logits.begin(), logits.end());
        double z = 0;
        o.form_probs.assign(kFormCount, 0.0);
        for (int i = 0; i < kFormCount; ++i) {
            o.form_probs[std::size_t(i)] = std::exp(logits[std::size_t(i)] - mx);
            z += o.form_probs[std::size_t(i)];
        }
        for (double& p : o.form_probs) p /= z;
        o.form_argmax = int(std::max_element(o.form_probs.begin(), o.form_probs.end()) -
                            o.form_probs.begin());
        return o;
    }

    double width_loss(const Output& o, const TextSample& s) const {
        double mask_sum = 0, acc = 0;
        for (std::size_t i = 0; i < s.width_mask.size() && i < std::size_t(kWidthOutputs); ++i) {
            const double m = s.width_mask[i];
            const double target = i < s.widths.size() ? s.widths[i] : 0.0;
            const double d = o.widths[i] - target;
            acc += m * d * d;
            mask_sum += m;
        }
        return mask_sum > 0 ? acc / mask_sum : 0.0;
    }

    double form_loss(const Output& o, const TextSample& s) const {
        const double p = std::clamp(o.form_probs[std::size_t(s.form)], 1e-300, 1.0);
        return -std::log(p);
    }

    int input_dim_ = 0;
    int hidden_ = 0;
    std::vector<double> w1_, b1_, w2_, b2_, w3w_, b3w_, w3f_, b3f_;
};

/// Mini-batch SGD with momentum on the combined loss. Deterministic for a
/// fixed seed; epoch losses (optional out-param) are averaged over samples.
inline TextLayoutNet train_text_net(const std::vector<TextSample>& samples,
                                    const TextNetHyper& hyper = {}, int hidden = 64,
                                    std::vector<double>* epoch_losses = nullptr) {
    if (samples.empty()) throw EmptyDataset("no text layout samples");
    const int input_dim = int(samples[0].features.size());
    TextLayoutNet net(input_dim, hidden, hyper.seed);

    std::vector<double> velocity(net.param_count(), 0.0);
    Rng rng(hyper.seed ^ 0x5bd1e995u);

    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
        // seeded shuffle
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[std::size_t(rng.next_int(0, std::int64_t(i) - 1))]);

        for (std::size_t start = 0; start < order.size();
             start += std::size_t(hyper.batch_size)) {
            const std::size_t end =
                std::min(order.size(), start + std::size_t(hyper.batch_size));
            std::vector<double> grad(net.param_count(), 0.0);
            for (std::size_t k = start; k < end; ++k) {
                const std::vector<double> g = net.gradient(samples[order[k]]);
                for (std::size_t p = 0; p < g.size(); ++p) grad[p] += g[p];
            }
            const double scale = 1.0 / double(end - start);
            auto params = net.params();
            for (std::size_t p = 0; p < params.size(); ++p) {
                velocity[p] = hyper.momentum * velocity[p] - hyper.learning_rate * grad[p] * scale;
                *params[p] += velocity[p];
            }
        }
        if (epoch_losses != nullptr) {
            double total = 0;
            for (const TextSample& s : samples) total += net.loss(s);
            epoch_losses->push_back(total / double(samples.size()));
        }
    }
    return net;
}

}  // namespace bannergen
