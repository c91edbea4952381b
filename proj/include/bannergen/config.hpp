#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bannergen/adjuster.hpp"
#include "bannergen/gbdt.hpp"
#include "bannergen/prerank.hpp"
#include "bannergen/recall.hpp"
#include "bannergen/textnet.hpp"

namespace bannergen {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything the engine needs at startup. Loaded from a JSON file; every
/// constant is overridable there. The config path itself can come from the
/// BANNERGEN_CONFIG environment variable.
struct EngineConfig {
    std::filesystem::path template_library;
    std::filesystem::path element_library;  // optional, empty = none
    std::filesystem::path rank_model;       // optional
    std::filesystem::path textnet_model;    // optional

    RecallConfig recall;
    PrerankConfig prerank;
    GbdtHyper rank_hyper;
    TextNetHyper textnet_hyper;
    EvalWeights eval_weights;
    FinetuneConfig adjuster;
    int top_k = 10;
    std::uint64_t default_seed = 1;
};

inline EngineConfig engine_config_from_json(const nlohmann::json& j,
                                            const std::filesystem::path& base_dir) {
    EngineConfig cfg;
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw ConfigError("unsupported config schema_version");

    auto path_of = [&](const std::string& key) -> std::filesystem::path {
        if (!j.contains("paths") || !j.at("paths").contains(key)) return {};
        const std::string s = j.at("paths").at(key).get<std::string>();
        if (s.empty()) return {};
        const std::filesystem::path p(s);
        return p.is_absolute() ? p : base_dir / p;
    };
    cfg.template_library = path_of("template_library");
    cfg.element_library = path_of("element_library");
    cfg.rank_model = path_of("rank_model");
    cfg.textnet_model = path_of("textnet_model");

    if (j.contains("recall")) {
        const auto& r = j.at("recall");
        cfg.recall.wordnummin = r.value("wordnummin", cfg.recall.wordnummin);
        cfg.recall.wordnummax = r.value("wordnummax", cfg.recall.wordnummax);
        cfg.recall.alpha2_pos = r.value("alpha2_pos", cfg.recall.alpha2_pos);
        cfg.recall.alpha2_neg = r.value("alpha2_neg", cfg.recall.alpha2_neg);
        cfg.recall.max_lines = r.value("max_lines", cfg.recall.max_lines);
        cfg.recall.text_weights = r.value("text_weights", cfg.recall.text_weights);
        cfg.recall.goods_weights = r.value("goods_weights", cfg.recall.goods_weights);
        cfg.recall.top_k = r.value("top_k", cfg.recall.top_k);
    }
    if (j.contains("prerank")) {
        const auto& p = j.at("prerank");
        cfg.prerank.clash_saturation = p.value("clash_saturation", cfg.prerank.clash_saturation);
        cfg.prerank.clash_hue_min = p.value("clash_hue_min", cfg.prerank.clash_hue_min);
        cfg.prerank.clash_hue_max = p.value("clash_hue_max", cfg.prerank.clash_hue_max);
        cfg.prerank.top_k = p.value("top_k", cfg.prerank.top_k);
    }
    if (j.contains("rank")) {
        const auto& r = j.at("rank");
        cfg.rank_hyper.trees = r.value("trees", cfg.rank_hyper.trees);
        cfg.rank_hyper.depth = r.value("depth", cfg.rank_hyper.depth);
        cfg.rank_hyper.learning_rate = r.value("learning_rate", cfg.rank_hyper.learning_rate);
        cfg.rank_hyper.min_leaf = r.value("min_leaf", cfg.rank_hyper.min_leaf);
    }
    if (j.contains("textnet")) {
        const auto& t = j.at("textnet");
        cfg.textnet_hyper.epochs = t.value("epochs", cfg.textnet_hyper.epochs);
        cfg.textnet_hyper.batch_size = t.value("batch_size", cfg.textnet_hyper.batch_size);
        cfg.textnet_hyper.learning_rate = t.value("learning_rate", cfg.textnet_hyper.learning_rate);
        cfg.textnet_hyper.momentum = t.value("momentum", cfg.textnet_hyper.momentum);
    }
    if (j.contains("eval_weights")) {
        const auto& w = j.at("eval_weights");
        cfg.eval_weights.occlusion = w.value("occlusion", cfg.eval_weights.occlusion);
        cfg.eval_weights.containment = w.value("containment", cfg.eval_weights.containment);
        cfg.eval_weights.margin = w.value("margin", cfg.eval_weights.margin);
        cfg.eval_weights.alignment = w.value("alignment", cfg.eval_weights.alignment);
        cfg.eval_weights.harmony = w.value("harmony", cfg.eval_weights.harmony);
        cfg.eval_weights.simplicity = w.value("simplicity", cfg.eval_weights.simplicity);
    }
    if (j.contains("adjuster")) {
        const auto& a = j.at("adjuster");
        cfg.adjuster.budget = a.value("budget", cfg.adjuster.budget);
        cfg.adjuster.stall_limit = a.value("stall_limit", cfg.adjuster.stall_limit);
        cfg.adjuster.move_step = a.value("move_step", cfg.adjuster.move_step);
    }
    cfg.top_k = j.value("top_k", cfg.top_k);
    cfg.default_seed = j.value("seed", cfg.default_seed);
    return cfg;
}

/// Range and existence checks; returns a complaint or empty.
inline std::string validate_config(const EngineConfig& cfg) {
    namespace fs = std::filesystem;
    if (cfg.template_library.empty()) return "paths.template_library is required";
    if (!fs::exists(cfg.template_library))
        return "template library not found: " + cfg.template_library.string();
    for (const auto& [name, p] : {std::pair{"element_library", cfg.element_library},
                                  {"rank_model", cfg.rank_model},
                                  {"textnet_model", cfg.textnet_model}}) {
        if (!p.empty() && !fs::exists(p))
            return std::string("paths.") + name + " not found: " + p.string();
    }
    if (cfg.recall.wordnummin < 1 || cfg.recall.wordnummax <= cfg.recall.wordnummin)
        return "recall word bounds invalid";
    if (std::fabs(cfg.recall.text_weights + cfg.recall.goods_weights - 1.0) > 1e-9)
        return "recall weights must sum to 1";
    if (std::fabs(cfg.eval_weights.sum() - 1.0) > 1e-9)
        return "eval_weights must sum to 1";
    if (cfg.top_k < 1) return "top_k must be positive";
    if (cfg.adjuster.budget < 0) return "adjuster budget must be non-negative";
    if (cfg.rank_hyper.trees < 1 || cfg.rank_hyper.depth < 1)
        return "rank hyperparameters invalid";
    return {};
}

inline EngineConfig load_engine_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config: " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    EngineConfig cfg = engine_config_from_json(j, path.parent_path());
    if (const std::string err = validate_config(cfg); !err.empty())
        throw ConfigError(path.string() + ": " + err);
    return cfg;
}

}  // namespace bannergen
