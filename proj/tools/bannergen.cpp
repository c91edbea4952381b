// bannergen: template-based banner synthesis engine.
//
// Subcommands cover the full pipeline (synth, batch) plus every stage as a
// standalone tool: lint, expand, train-rank, train-textnet, eval-rank,
// simulate-log. Exit codes: 0 ok, 1 lint violations, 2 no compatible
// template, 3 I/O failure, 4 configuration/usage error.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bannergen/adjuster.hpp"
#include "bannergen/click_data.hpp"
#include "bannergen/config.hpp"
#include "bannergen/fixtures.hpp"
#include "bannergen/metrics.hpp"
#include "bannergen/pipeline.hpp"
#include "bannergen/png_io.hpp"
#include "bannergen/rank.hpp"
#include "bannergen/simulate.hpp"
#include "bannergen/size_expand.hpp"
#include "bannergen/template_model.hpp"
#include "bannergen/textnet.hpp"

using namespace bannergen;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitEmptyRecall = 2;
constexpr int kExitIo = 3;
constexpr int kExitConfig = 4;

struct GlobalArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir = ".";
    int workers = int(std::thread::hardware_concurrency());
    int variants = 1;
};

void add_global_options(CLI::App* cmd, GlobalArgs& g) {
    cmd->add_option("--config", g.config_path,
                    "engine config file (default: $BANNERGEN_CONFIG)");
    cmd->add_option("--seed", g.seed, "seed for all stochastic stages")
        ->each([&](const std::string&) { g.seed_set = true; });
    cmd->add_option("--out", g.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--workers", g.workers, "parallel workers for batch")
        ->capture_default_str();
    cmd->add_option("--variants", g.variants, "banners per request, distinct templates")
        ->capture_default_str();
}

EngineConfig resolve_config(const GlobalArgs& g) {
    std::string path = g.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv("BANNERGEN_CONFIG")) path = env;
    }
    if (path.empty()) throw ConfigError("no config: pass --config or set BANNERGEN_CONFIG");
    return load_engine_config(path);
}

/// Shell-like tokenizer for request lines: splits on whitespace, honors
/// double quotes.
std::vector<std::string> split_request_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (!quoted && (c == ' ' || c == '\t')) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::pair<int, int> parse_size(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw std::invalid_argument("size must be WxH: " + s);
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

/// Build a request from flag-style tokens. Product paths resolve against
/// base_dir; the same grammar serves single-shot flags and batch lines.
BannerRequest parse_request_tokens(const std::vector<std::string>& tokens,
                                   const fs::path& base_dir, std::uint64_t default_seed) {
    BannerRequest req;
    req.seed = default_seed;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& t = tokens[i];
        auto next = [&]() -> const std::string& {
            if (i + 1 >= tokens.size())
                throw std::invalid_argument("missing value after " + t);
            return tokens[++i];
        };
        if (t == "--product") {
            const std::string& spec = next();
            const auto colon = spec.rfind(':');
            std::string path = spec, category;
            // a colon after the last slash separates the category tag
            const auto slash = spec.find_last_of('/');
            if (colon != std::string::npos && (slash == std::string::npos || colon > slash)) {
                path = spec.substr(0, colon);
                category = spec.substr(colon + 1);
            }
            const fs::path full = fs::path(path).is_absolute() ? fs::path(path)
                                                               : base_dir / path;
            req.products.push_back({png_load(full), category});
        } else if (t == "--text") {
            req.texts.push_back(next());
        } else if (t == "--size") {
            std::tie(req.target_width, req.target_height) = parse_size(next());
        } else if (t == "--department") {
            req.department_id = std::stoi(next());
        } else if (t == "--style") {
            req.style_hint = next();
        } else if (t == "--seed") {
            req.seed = std::stoull(next());
        } else {
            throw std::invalid_argument("unknown request token: " + t);
        }
    }
    return req;
}

void write_outputs(const SynthOutput& out, const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    png_save(out.image, dir / (name + ".png"));
    std::ofstream f(dir / (name + ".provenance.json"));
    if (!f) throw PngError("cannot write provenance for " + name);
    f << out.provenance.dump(2) << '\n';
}

int classify_exception(const std::exception& e, const char* stage) {
    std::cerr << "error [" << stage << "]: " << e.what() << '\n';
    if (dynamic_cast<const EmptyRecall*>(&e) != nullptr ||
        dynamic_cast<const ClashExhausted*>(&e) != nullptr)
        return kExitEmptyRecall;
    if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
        dynamic_cast<const std::invalid_argument*>(&e) != nullptr)
        return kExitConfig;
    return kExitIo;
}

std::pair<int, int> parse_period_range(const std::string& s) {
    const auto dash = s.find('-');
    if (dash == std::string::npos) {
        const int p = std::stoi(s);
        return {p, p};
    }
    return {std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1))};
}

// ----------------------------------------------------------- subcommands

int cmd_synth(const GlobalArgs& g, const std::vector<std::string>& products,
              const std::vector<std::string>& texts, const std::string& size,
              int department, const std::string& style, const std::string& name) {
    const char* stage = "config";
    try {
        const EngineConfig cfg = resolve_config(g);
        const Engine engine = Engine::load(cfg);

        stage = "request";
        std::vector<std::string> tokens;
        for (const auto& p : products) {
            tokens.push_back("--product");
            tokens.push_back(p);
        }
        for (const auto& t : texts) {
            tokens.push_back("--text");
            tokens.push_back(t);
        }
        tokens.insert(tokens.end(), {"--size", size});
        tokens.insert(tokens.end(), {"--department", std::to_string(department)});
        if (!style.empty()) tokens.insert(tokens.end(), {"--style", style});
        BannerRequest req = parse_request_tokens(tokens, fs::current_path(),
                                                 g.seed_set ? g.seed : cfg.default_seed);

        stage = "synth";
        const std::vector<SynthOutput> outs = engine.synth(req, std::max(1, g.variants));
        stage = "write";
        for (std::size_t i = 0; i < outs.size(); ++i) {
            const std::string n = outs.size() == 1 ? name : name + "-" + std::to_string(i + 1);
            write_outputs(outs[i], g.out_dir, n);
            std::cout << n << ".png template=" << outs[i].banner.template_id
                      << " form=" << form_name(outs[i].banner.form) << '\n';
        }
        return kExitOk;
    } catch (const std::exception& e) {
        return classify_exception(e, stage);
    }
}

int cmd_batch(const GlobalArgs& g, const std::string& requests_file) {
    const char* stage = "config";
    try {
        const EngineConfig cfg = resolve_config(g);
        const Engine engine = Engine::load(cfg);

        stage = "requests";
        std::ifstream f(requests_file);
        if (!f) throw PngError("cannot open requests file: " + requests_file);
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(f, line))
            if (!line.empty()) lines.push_back(line);

        const fs::path base_dir = fs::path(requests_file).parent_path();
        const std::uint64_t base_seed = g.seed_set ? g.seed : cfg.default_seed;

        struct LineResult {
            bool ok = false;
            std::string error;
        };
        std::vector<LineResult> results(lines.size());
        std::atomic<std::size_t> cursor{0};
        const int workers = std::max(1, std::min<int>(g.workers, int(lines.size())));

        auto worker = [&]() {
            while (true) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= lines.size()) break;
                try {
                    BannerRequest req = parse_request_tokens(split_request_line(lines[i]),
                                                             base_dir, base_seed + i);
                    const auto outs = engine.synth(req, 1);
                    char name[32];
                    std::snprintf(name, sizeof(name), "banner-%04zu", i + 1);
                    write_outputs(outs.at(0), g.out_dir, name);
                    results[i].ok = true;
                } catch (const std::exception& e) {
                    results[i].error = e.what();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();

        std::size_t ok = 0;
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].ok) {
                ++ok;
            } else {
                std::cerr << "line " << (i + 1) << " failed: " << results[i].error << '\n';
            }
        }
        std::cout << "ok=" << ok << " failed=" << (results.size() - ok) << " of "
                  << results.size() << '\n';
        if (lines.empty() || ok == 0) return kExitEmptyRecall;
        return kExitOk;
    } catch (const std::exception& e) {
        return classify_exception(e, stage);
    }
}

int cmd_lint(const std::string& library_dir) {
    try {
        const LibraryLoadResult result = load_library_lenient(library_dir);
        for (const std::string& p : result.problems) std::cout << p << '\n';
        std::cout << (result.problems.empty() ? "ok: " : "violations: ")
                  << (result.problems.empty() ? result.library.templates.size()
                                              : result.problems.size())
                  << (result.problems.empty() ? " templates valid" : "") << '\n';
        return result.problems.empty() ? kExitOk : kExitViolations;
    } catch (const std::exception& e) {
        return classify_exception(e, "lint");
    }
}

int cmd_expand(const GlobalArgs& g, const std::string& library_dir,
               const std::vector<double>& hues, const std::vector<std::string>& sizes) {
    try {
        const TemplateLibrary lib = load_library(library_dir);
        std::vector<Template> out_templates = lib.templates;
        for (const Template& t : lib.templates)
            for (double hue : hues) out_templates.push_back(expand_by_color(t, hue, lib.palette));

        std::vector<Template> sized;
        for (const Template& t : out_templates) {
            for (const std::string& s : sizes) {
                const auto [w, h] = parse_size(s);
                if (w == t.width && h == t.height) continue;
                if (!aspect_gate(t.width, t.height, w, h)) continue;
                Template v = expand_size(t, w, h);
                v.id = t.id + "-" + std::to_string(w) + "x" + std::to_string(h);
                sized.push_back(std::move(v));
            }
        }
        out_templates.insert(out_templates.end(), sized.begin(), sized.end());

        const fs::path out_root = g.out_dir;
        fs::create_directories(out_root / "templates");
        fs::create_directories(out_root / "assets");

        // materialize every referenced raster, hue-rotated variants included
        for (Template& t : out_templates) {
            for (Layer& l : t.layers) {
                if (l.asset_ref.empty()) continue;
                const auto [base, deg] = AssetStore::split_ref(l.asset_ref);
                std::string out_rel;
                if (deg == 0.0) {
                    out_rel = base;
                } else {
                    std::ostringstream os;
                    os << "assets/hue" << std::lround(deg) << "-"
                       << fs::path(base).filename().string();
                    out_rel = os.str();
                }
                const fs::path dst = out_root / out_rel;
                if (!fs::exists(dst)) {
                    fs::create_directories(dst.parent_path());
                    png_save(*lib.assets->get(l.asset_ref), dst);
                }
                l.asset_ref = out_rel;
            }
        }

        nlohmann::json manifest;
        manifest["schema_version"] = kSchemaVersion;
        manifest["name"] = lib.name + " (expanded)";
        manifest["palette"] = palette_to_json(lib.palette);
        manifest["templates"] = nlohmann::json::array();
        std::sort(out_templates.begin(), out_templates.end(),
                  [](const Template& a, const Template& b) { return a.id < b.id; });
        for (const Template& t : out_templates) {
            manifest["templates"].push_back(t.id);
            std::ofstream f(out_root / "templates" / (t.id + ".json"));
            f << template_to_json(t).dump(2) << '\n';
        }
        std::ofstream mf(out_root / "manifest.json");
        mf << manifest.dump(2) << '\n';
        std::cout << "expanded " << lib.templates.size() << " -> " << out_templates.size()
                  << " templates at " << out_root.string() << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        return classify_exception(e, "expand");
    }
}

int cmd_simulate_log(const GlobalArgs& g, const std::string& library_dir, int n_templates,
                     int n_periods, double base_ctr, double boost_ctr,
                     const std::vector<std::string>& boost_colors, const std::string& out_file) {
    try {
        const TemplateLibrary lib = load_library(library_dir);
        PlantedSignal planted;
        planted.base_ctr = base_ctr;
        planted.boosted_ctr = boost_ctr;
        if (!boost_colors.empty())
            planted.boost_colors = std::set<std::string>(boost_colors.begin(),
                                                         boost_colors.end());
        const std::size_t n = n_templates > 0 ? std::size_t(n_templates) : lib.templates.size();
        const auto log = simulate_log(lib, n, n_periods, planted, g.seed_set ? g.seed : 1);
        save_click_log(log, out_file);
        std::cout << "wrote " << log.size() << " records to " << out_file << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        return classify_exception(e, "simulate-log");
    }
}

int cmd_train_rank(const GlobalArgs& g, const std::string& library_dir,
                   const std::string& log_file, const std::string& periods,
                   const std::string& texts_file, const std::string& out_file) {
    try {
        const TemplateLibrary lib = load_library(library_dir);
        const auto log = load_click_log(log_file);
        auto [pmin, pmax] = periods.empty()
                                ? std::pair<int, int>{std::numeric_limits<int>::min(),
                                                      std::numeric_limits<int>::max()}
                                : parse_period_range(periods);
        std::vector<std::string> corpus;
        if (!texts_file.empty()) {
            std::ifstream f(texts_file);
            if (!f) throw ModelIoError("cannot open texts file: " + texts_file);
            std::string line;
            while (std::getline(f, line))
                if (!line.empty()) corpus.push_back(line);
        }
        GbdtHyper hyper;
        if (!g.config_path.empty() || std::getenv("BANNERGEN_CONFIG") != nullptr)
            hyper = resolve_config(g).rank_hyper;
        const RankModel model = train_rank_model(log, lib, hyper, corpus, pmin, pmax);
        save_rank_model(model, out_file);
        std::cout << "trained " << model.trees.size() << " trees ("
                  << model.metadata << "), final log-loss "
                  << (model.train_logloss.empty() ? 0.0 : model.train_logloss.back()) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        return classify_exception(e, "train-rank");
    }
}

int cmd_eval_rank(const std::string& library_dir, const std::string& log_file,
                  const std::string& model_file, const std::string& periods) {
    try {
        const TemplateLibrary lib = load_library(library_dir);
        const RankModel model = load_rank_model(model_file);
        auto all = load_click_log(log_file);
        std::vector<ClickRecord> in_range;
        auto [pmin, pmax] = periods.empty()
                                ? std::pair<int, int>{std::numeric_limits<int>::min(),
                                                      std::numeric_limits<int>::max()}
                                : parse_period_range(periods);
        for (const ClickRecord& r : all)
            if (r.period_id >= pmin && r.period_id <= pmax) in_range.push_back(r);
        const BucketResult buckets = bucket_labels(in_range);
        std::vector<double> scores;
        std::vector<int> labels;
        for (const LabeledSample& s : buckets.samples) {
            const Template* t = lib.find(s.template_id);
            if (t == nullptr) continue;
            const FeatureVector fv =
                featurize(*t, {}, 0, 0.0, 0.0, model.space, lib.palette);
            scores.push_back(gbdt_score(model, fv));
            labels.push_back(s.label);
        }
        const MetricReport report = evaluate_scores(scores, labels);
        std::cout << report.to_string() << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        return classify_exception(e, "eval-rank");
    }
}

int cmd_train_textnet(const GlobalArgs& g, const std::string& library_dir, int epochs,
                      const std::string& out_file) {
    try {
        const TemplateLibrary lib = load_library(library_dir);
        const std::vector<TextSample> samples = text_samples_from_library(lib);
        TextNetHyper hyper;
        hyper.epochs = epochs;
        hyper.seed = g.seed_set ? g.seed : 1;
        std::vector<double> losses;
        const TextLayoutNet net = train_text_net(samples, hyper, 64, &losses);
        net.save(out_file);
        std::cout << "trained on " << samples.size() << " samples, loss "
                  << (losses.empty() ? 0.0 : losses.front()) << " -> "
                  << (losses.empty() ? 0.0 : losses.back()) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        return classify_exception(e, "train-textnet");
    }
}

int cmd_verify_fixtures(const std::string& fixtures_dir) {
    try {
        const FixtureReport report = verify_fixtures(fixtures_dir);
        for (const std::string& m : report.mismatches) std::cout << m << '\n';
        std::cout << (report.ok() ? "fixtures ok" : "fixtures corrupt") << '\n';
        return report.ok() ? kExitOk : kExitViolations;
    } catch (const std::exception& e) {
        return classify_exception(e, "verify-fixtures");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bannergen: template-based banner synthesis engine"};
    app.require_subcommand(1);

    GlobalArgs g;

    // synth
    std::vector<std::string> s_products, s_texts;
    std::string s_size = "800x800", s_style, s_name = "banner";
    int s_department = 0;
    auto* synth = app.add_subcommand("synth", "synthesize one banner from flags");
    add_global_options(synth, g);
    synth->add_option("--product", s_products, "product cutout PNG, path[:category]")
        ->required();
    synth->add_option("--text", s_texts, "text line (1-3, role order: main, sub, action)")
        ->required();
    synth->add_option("--size", s_size, "target size WxH")->capture_default_str();
    synth->add_option("--department", s_department, "department id")->capture_default_str();
    synth->add_option("--style", s_style, "style hint tag");
    synth->add_option("--name", s_name, "output base name")->capture_default_str();

    // batch
    std::string b_requests;
    auto* batch = app.add_subcommand("batch", "synthesize a request file, one per line");
    add_global_options(batch, g);
    batch->add_option("requests", b_requests, "requests file")->required();

    // lint
    std::string l_library;
    auto* lint = app.add_subcommand("lint", "validate a template library");
    lint->add_option("library", l_library, "library directory")->required();

    // expand
    std::string e_library;
    std::vector<double> e_hues;
    std::vector<std::string> e_sizes;
    auto* expand = app.add_subcommand("expand", "expand a library by color and size variants");
    add_global_options(expand, g);
    expand->add_option("library", e_library, "library directory")->required();
    expand->add_option("--hue", e_hues, "hue shift in degrees, repeatable");
    expand->add_option("--size", e_sizes, "size variant WxH, repeatable");

    // simulate-log
    std::string sl_library, sl_out = "clicks.csv";
    int sl_templates = 0, sl_periods = 10;
    double sl_base = 0.02, sl_boost = 0.08;
    std::vector<std::string> sl_colors;
    auto* simlog = app.add_subcommand("simulate-log", "generate a synthetic click log");
    add_global_options(simlog, g);
    simlog->add_option("library", sl_library, "library directory")->required();
    simlog->add_option("--templates", sl_templates, "templates to cover (0 = all)");
    simlog->add_option("--periods", sl_periods, "bucketing periods")->capture_default_str();
    simlog->add_option("--base-ctr", sl_base, "baseline CTR")->capture_default_str();
    simlog->add_option("--boost-ctr", sl_boost, "boosted CTR")->capture_default_str();
    simlog->add_option("--boost-color", sl_colors, "primary colors that get the boost");
    simlog->add_option("--log", sl_out, "output CSV path")->capture_default_str();

    // train-rank
    std::string tr_library, tr_log, tr_periods, tr_texts, tr_out = "rank.model";
    auto* train_rank = app.add_subcommand("train-rank", "train the creative ranking model");
    add_global_options(train_rank, g);
    train_rank->add_option("library", tr_library, "library directory")->required();
    train_rank->add_option("--log", tr_log, "click log CSV")->required();
    train_rank->add_option("--periods", tr_periods, "training period range, e.g. 1-8");
    train_rank->add_option("--texts", tr_texts, "text corpus for the tf-idf vocabulary");
    train_rank->add_option("--model", tr_out, "output model path")->capture_default_str();

    // eval-rank
    std::string er_library, er_log, er_model, er_periods;
    auto* eval_rank = app.add_subcommand("eval-rank", "evaluate a rank model on held-out periods");
    add_global_options(eval_rank, g);
    eval_rank->add_option("library", er_library, "library directory")->required();
    eval_rank->add_option("--log", er_log, "click log CSV")->required();
    eval_rank->add_option("--model", er_model, "model path")->required();
    eval_rank->add_option("--periods", er_periods, "evaluation period range, e.g. 9-10");

    // train-textnet
    std::string tt_library, tt_out = "textnet.model";
    int tt_epochs = 300;
    auto* train_textnet = app.add_subcommand("train-textnet", "train the text layout model");
    add_global_options(train_textnet, g);
    train_textnet->add_option("library", tt_library, "library directory")->required();
    train_textnet->add_option("--epochs", tt_epochs, "training epochs")->capture_default_str();
    train_textnet->add_option("--model", tt_out, "output model path")->capture_default_str();

    // verify-fixtures
    std::string vf_dir = "fixtures";
    auto* verify = app.add_subcommand("verify-fixtures", "check fixture checksums and lint");
    verify->add_option("fixtures", vf_dir, "fixtures directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (synth->parsed())
        return cmd_synth(g, s_products, s_texts, s_size, s_department, s_style, s_name);
    if (batch->parsed()) return cmd_batch(g, b_requests);
    if (lint->parsed()) return cmd_lint(l_library);
    if (expand->parsed()) return cmd_expand(g, e_library, e_hues, e_sizes);
    if (simlog->parsed())
        return cmd_simulate_log(g, sl_library, sl_templates, sl_periods, sl_base, sl_boost,
                                sl_colors, sl_out);
    if (train_rank->parsed())
        return cmd_train_rank(g, tr_library, tr_log, tr_periods, tr_texts, tr_out);
    if (eval_rank->parsed()) return cmd_eval_rank(er_library, er_log, er_model, er_periods);
    if (train_textnet->parsed()) return cmd_train_textnet(g, tt_library, tt_epochs, tt_out);
    if (verify->parsed()) return cmd_verify_fixtures(vf_dir);
    return kExitConfig;
}
