#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "bannergen/click_data.hpp"
#include "bannergen/features.hpp"
#include "bannergen/gbdt.hpp"
#include "bannergen/metrics.hpp"
#include "bannergen/rank.hpp"
#include "bannergen/rng.hpp"
#include "bannergen/simulate.hpp"
#include "test_support.hpp"

using namespace bannergen;

namespace {

const Palette kPalette = Palette::default_palette();

/// O(n^2) reference AUC: every positive/negative pair, ties worth 0.5.
double auc_brute_force(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0;
    std::int64_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            ++pairs;
            if (scores[i] > scores[j])
                wins += 1.0;
            else if (scores[i] == scores[j])
                wins += 0.5;
        }
    }
    return wins / double(pairs);
}

}  // namespace

TEST(BucketLabels, WorkedExample) {
    // exposures mean 250 keeps (300,6) and (500,50); ctr mean .06 labels them 0/1
    std::vector<ClickRecord> recs = {
        {"a", 1, 100, 10}, {"b", 1, 300, 6}, {"c", 1, 500, 50}, {"d", 1, 100, 1}};
    const BucketResult out = bucket_labels(recs);
    ASSERT_EQ(out.samples.size(), 2u);
    EXPECT_EQ(out.samples[0].template_id, "b");
    EXPECT_EQ(out.samples[0].label, 0);
    EXPECT_EQ(out.samples[1].template_id, "c");
    EXPECT_EQ(out.samples[1].label, 1);
}

TEST(BucketLabels, AllIdenticalRecordsLabelZero) {
    std::vector<ClickRecord> recs(5, ClickRecord{"t", 1, 200, 10});
    for (const auto& s : bucket_labels(recs).samples) EXPECT_EQ(s.label, 0);
}

TEST(BucketLabels, SingleSurvivorLabelsZero) {
    std::vector<ClickRecord> recs = {{"a", 1, 1000, 100}, {"b", 1, 10, 1}, {"c", 1, 10, 0}};
    const BucketResult out = bucket_labels(recs);
    ASSERT_EQ(out.samples.size(), 1u);
    EXPECT_EQ(out.samples[0].label, 0);
}

TEST(BucketLabels, InvariantUnderUniformScaling) {
    Rng rng(5);
    std::vector<ClickRecord> recs;
    for (int p = 1; p <= 3; ++p)
        for (int i = 0; i < 12; ++i) {
            const std::int64_t exp = rng.next_int(50, 4000);
            recs.push_back({"t" + std::to_string(i), p, exp, rng.next_int(0, exp / 10)});
        }
    std::vector<ClickRecord> scaled = recs;
    for (auto& r : scaled) {
        r.exposures *= 7;
        r.clicks *= 7;
    }
    const auto a = bucket_labels(recs);
    const auto b = bucket_labels(scaled);
    ASSERT_EQ(a.samples.size(), b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        EXPECT_EQ(a.samples[i].template_id, b.samples[i].template_id);
        EXPECT_EQ(a.samples[i].label, b.samples[i].label);
    }
}

TEST(ClickLog, CsvRoundTrip) {
    std::vector<ClickRecord> recs = {{"a", 1, 100, 10}, {"b", 2, 300, 6}};
    std::ostringstream os;
    write_click_log(recs, os);
    EXPECT_EQ(os.str(), "template_id,period_id,exposures,clicks\na,1,100,10\nb,2,300,6\n");
    std::istringstream is(os.str());
    const auto back = read_click_log(is);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].template_id, "b");
    EXPECT_EQ(back[1].exposures, 300);
}

TEST(ClickLog, RejectsClicksAboveExposures) {
    std::istringstream is("template_id,period_id,exposures,clicks\na,1,10,20\n");
    EXPECT_THROW(read_click_log(is), ClickLogError);
}

TEST(Features, PromoFlagSet) {
    FeatureSpace space;
    space.vocab = {"sale"};
    space.idf = {1.0};
    const Template t = bgtest::make_template({});
    const FeatureVector fv =
        featurize(t, {"Huge discount this week"}, 0, 0.5, 0.5, space, kPalette);
    // layout: 3 ords, 1 tfidf, then promo flags
    EXPECT_DOUBLE_EQ(fv.values[4], 1.0);  // "discount"
    EXPECT_DOUBLE_EQ(fv.values[5], 0.0);  // "full discount"
    const FeatureVector fv2 =
        featurize(t, {"full discount storewide"}, 0, 0.5, 0.5, space, kPalette);
    EXPECT_DOUBLE_EQ(fv2.values[4], 1.0);
    EXPECT_DOUBLE_EQ(fv2.values[5], 1.0);
}

TEST(Features, OutOfVocabularyTermsDropped) {
    FeatureSpace space;
    space.vocab = {"sale"};
    space.idf = {2.0};
    const Template t = bgtest::make_template({});
    const FeatureVector a = featurize(t, {"weird unseen words"}, 0, 0, 0, space, kPalette);
    const FeatureVector b = featurize(t, {}, 0, 0, 0, space, kPalette);
    EXPECT_EQ(a.values[3], b.values[3]);  // tf-idf slot unchanged
}

TEST(Features, TfIdfFormula) {
    // corpus of 3 docs, term in 1 doc: idf = ln(4/2)+1; tf=2 -> 2*(ln2+1)
    FeatureSpace space;
    build_vocabulary(space, {{"sale", "now"}, {"deal"}, {"other"}}, 512);
    const auto idx = space.vocab_index("sale");
    ASSERT_TRUE(idx.has_value());
    EXPECT_NEAR(space.idf[std::size_t(*idx)], std::log((1.0 + 3.0) / (1.0 + 1.0)) + 1.0, 1e-12);
    const Template t = bgtest::make_template({});
    const FeatureVector fv = featurize(t, {"sale sale"}, 0, 0, 0, space, kPalette);
    EXPECT_NEAR(fv.values[3 + std::size_t(*idx)], 3.386294361119891, 1e-9);
}

TEST(Features, PureFunctionOfInputs) {
    FeatureSpace space;
    build_vocabulary(space, {{"sale"}, {"deal", "now"}}, 512);
    const Template t = bgtest::make_template({.bg_color = "blue"});
    const FeatureVector a = featurize(t, {"sale now"}, 3, 0.7, 0.4, space, kPalette);
    const FeatureVector b = featurize(t, {"sale now"}, 3, 0.7, 0.4, space, kPalette);
    EXPECT_EQ(a.values, b.values);
}

TEST(Features, ColorOneHotMatchesPrimary) {
    FeatureSpace space;
    const Template t = bgtest::make_template({.bg_color = "indigo"});
    const FeatureVector fv = featurize(t, {}, 0, 0, 0, space, kPalette);
    const std::size_t color_base = 3 + space.vocab.size() + space.promo_keywords.size();
    for (int i = 0; i < 14; ++i)
        EXPECT_DOUBLE_EQ(fv.values[color_base + std::size_t(i)],
                         i == kPalette.index_of("indigo") ? 1.0 : 0.0);
}

TEST(Gbdt, LinearlySeparableReachesPerfectTrainingAccuracy) {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 60; ++i) {
        rows.push_back({double(i)});
        labels.push_back(i < 30 ? 0 : 1);
    }
    GbdtHyper hyper;
    hyper.trees = 20;
    hyper.min_leaf = 1;
    const RankModel m = train_gbdt(rows, labels, hyper);
    int correct = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double p = sigmoid(gbdt_margin(m, rows[i]));
        correct += (p > 0.5 ? 1 : 0) == labels[i];
    }
    EXPECT_EQ(correct, 60);
}

TEST(Gbdt, TrainingLogLossMonotoneNonIncreasing) {
    Rng rng(17);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 200; ++i) {
        const double x = rng.next_double(-2, 2);
        const double y = rng.next_double(-2, 2);
        rows.push_back({x, y, rng.next_double()});
        labels.push_back(x + 0.5 * y + rng.next_double(-0.5, 0.5) > 0 ? 1 : 0);
    }
    GbdtHyper hyper;
    hyper.trees = 50;
    hyper.min_leaf = 5;
    const RankModel m = train_gbdt(rows, labels, hyper);
    ASSERT_EQ(m.train_logloss.size(), 50u);
    for (std::size_t i = 1; i < m.train_logloss.size(); ++i)
        EXPECT_LE(m.train_logloss[i], m.train_logloss[i - 1] + 1e-12) << "round " << i;
}

TEST(Gbdt, NoiseLabelsGiveChanceAuc) {
    Rng rng(23);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 600; ++i) {
        rows.push_back({rng.next_double(), rng.next_double()});
        labels.push_back(rng.next_bool(0.5) ? 1 : 0);
    }
    // held-out split
    std::vector<std::vector<double>> train_rows(rows.begin(), rows.begin() + 400);
    std::vector<int> train_labels(labels.begin(), labels.begin() + 400);
    GbdtHyper hyper;
    hyper.trees = 30;
    const RankModel m = train_gbdt(train_rows, train_labels, hyper);
    std::vector<double> scores;
    std::vector<int> held(labels.begin() + 400, labels.end());
    for (std::size_t i = 400; i < rows.size(); ++i)
        scores.push_back(sigmoid(gbdt_margin(m, rows[i])));
    const double a = auc(scores, held);
    EXPECT_GE(a, 0.40);
    EXPECT_LE(a, 0.60);
}

TEST(Gbdt, SingleClassThrows) {
    const std::vector<std::vector<double>> rows = {{1.0}, {2.0}};
    EXPECT_THROW(train_gbdt(rows, {1, 1}, {}), SingleClass);
    EXPECT_THROW(train_gbdt(rows, {0, 0}, {}), SingleClass);
}

TEST(Gbdt, EmptyEnsembleScoresHalfAtZeroBase) {
    RankModel m;
    m.base_score = 0.0;
    m.space.vocab.clear();
    FeatureVector fv;
    fv.values.assign(std::size_t(m.space.dim()), 0.0);
    EXPECT_DOUBLE_EQ(gbdt_score(m, fv), 0.5);
}

TEST(Gbdt, SigmoidMarginAlgebra) {
    // margin ln(3) -> p = 3/(1+3) = 0.75
    EXPECT_NEAR(sigmoid(std::log(3.0)), 0.75, 1e-12);
}

TEST(Gbdt, LayoutMismatchThrows) {
    RankModel m;
    m.base_score = 0.0;
    FeatureVector fv;
    fv.values.assign(std::size_t(m.space.dim()) + 3, 0.0);
    EXPECT_THROW(gbdt_score(m, fv), LayoutMismatch);
}

TEST(Gbdt, ScoreAlwaysInOpenUnitInterval) {
    Rng rng(31);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 100; ++i) {
        rows.push_back({rng.next_double(-5, 5)});
        labels.push_back(rows.back()[0] > 0 ? 1 : 0);
    }
    GbdtHyper hyper;
    hyper.trees = 40;
    hyper.min_leaf = 1;
    const RankModel m = train_gbdt(rows, labels, hyper);
    for (const auto& r : rows) {
        const double p = sigmoid(gbdt_margin(m, r));
        EXPECT_GT(p, 0.0);
        EXPECT_LT(p, 1.0);
    }
}

TEST(Gbdt, ArgsortInvariantUnderMonotoneMarginTransforms) {
    Rng rng(41);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 120; ++i) {
        rows.push_back({rng.next_double(), rng.next_double()});
        labels.push_back(rows.back()[0] + rows.back()[1] > 1.0 ? 1 : 0);
    }
    GbdtHyper hyper;
    hyper.trees = 15;
    hyper.min_leaf = 2;
    const RankModel m = train_gbdt(rows, labels, hyper);
    std::vector<double> margins;
    for (const auto& r : rows) margins.push_back(gbdt_margin(m, r));
    // keep margins pairwise separated: a float-implemented monotone map can
    // merge values one ulp apart, which is a tie, not an order change
    std::sort(margins.begin(), margins.end());
    margins.erase(std::unique(margins.begin(), margins.end(),
                              [](double a, double b) { return std::fabs(a - b) < 1e-9; }),
                  margins.end());
    // mix in a spread of synthetic margins
    for (int i = -20; i <= 20; ++i) margins.push_back(i * 0.37 + 0.001 * i * i);
    std::sort(margins.begin(), margins.end());
    margins.erase(std::unique(margins.begin(), margins.end(),
                              [](double a, double b) { return std::fabs(a - b) < 1e-9; }),
                  margins.end());
    Rng shuffle_rng(7);
    for (std::size_t i = margins.size(); i > 1; --i)
        std::swap(margins[i - 1], margins[std::size_t(shuffle_rng.next_int(0, std::int64_t(i) - 1))]);

    auto argsort = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
        return idx;
    };
    std::vector<double> transformed, affine, sigmoids;
    for (double x : margins) {
        transformed.push_back(2.0 * std::atan(x) + 7.0);  // monotone
        affine.push_back(3.0 * x - 100.0);
        sigmoids.push_back(sigmoid(x));
    }
    EXPECT_EQ(argsort(margins), argsort(transformed));
    EXPECT_EQ(argsort(margins), argsort(affine));
    EXPECT_EQ(argsort(margins), argsort(sigmoids));
}

TEST(Gbdt, ModelFileRoundTripsByteExactly) {
    Rng rng(53);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 80; ++i) {
        rows.push_back({rng.next_double(-3, 3), rng.next_double(-1, 1)});
        labels.push_back(rows.back()[0] > 0.2 ? 1 : 0);
    }
    GbdtHyper hyper;
    hyper.trees = 10;
    hyper.min_leaf = 2;
    RankModel m = train_gbdt(rows, labels, hyper);
    m.metadata = "periods=1..8 samples=80";
    build_vocabulary(m.space, {{"sale", "big"}, {"deal"}}, 512);

    model_io::Writer w1;
    write_rank_model(w1, m);
    auto r = model_io::Reader(w1.str());
    const RankModel back = read_rank_model(r);
    model_io::Writer w2;
    write_rank_model(w2, back);
    EXPECT_EQ(w1.str(), w2.str());
    // and predictions agree exactly
    for (const auto& row : rows) EXPECT_DOUBLE_EQ(gbdt_margin(m, row), gbdt_margin(back, row));
}

TEST(RankCandidates, SortsByScoreWithTieChain) {
    // cold start: no model -> pass-through flagged unranked
    TemplateLibrary lib;
    lib.palette = kPalette;
    lib.templates.push_back(bgtest::make_template({.id = "a"}));
    lib.templates.push_back(bgtest::make_template({.id = "b"}));
    std::vector<PrerankResult> pre = {{"b", 0.9, 0.5, 0.5, 0.5}, {"a", 0.8, 0.5, 0.5, 0.5}};
    const auto cold = rank_candidates(nullptr, pre, bgtest::make_request(), lib);
    ASSERT_EQ(cold.size(), 2u);
    EXPECT_TRUE(cold[0].unranked);
    EXPECT_EQ(cold[0].template_id, "b");  // prerank order preserved
    EXPECT_EQ(cold[1].template_id, "a");
}

TEST(Auc, PerfectSeparation) {
    EXPECT_DOUBLE_EQ(auc({0.1, 0.2, 0.8, 0.9}, {0, 0, 1, 1}), 1.0);
}

TEST(Auc, WorkedThreeSampleCase) {
    // scores (.9,.8,.3), labels (1,0,1): pairs (.9 vs .8) win, (.3 vs .8) loss
    EXPECT_DOUBLE_EQ(auc({0.9, 0.8, 0.3}, {1, 0, 1}), 0.5);
}

TEST(Auc, AllTiesGiveHalf) {
    EXPECT_DOUBLE_EQ(auc({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0}), 0.5);
}

TEST(Auc, SingleClassThrows) {
    EXPECT_THROW(auc({0.1, 0.2}, {1, 1}), SingleClass);
}

TEST(Auc, MatchesBruteForceUpTo200) {
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = int(rng.next_int(5, 200));
        std::vector<double> scores;
        std::vector<int> labels;
        bool pos = false, neg = false;
        for (int i = 0; i < n; ++i) {
            // quantized scores force plenty of ties
            scores.push_back(double(rng.next_int(0, 9)) / 10.0);
            labels.push_back(int(rng.next_int(0, 1)));
            (labels.back() ? pos : neg) = true;
        }
        if (!pos || !neg) {
            labels[0] = 1;
            labels[1] = 0;
        }
        EXPECT_NEAR(auc(scores, labels), auc_brute_force(scores, labels), 1e-12);
    }
}

TEST(Auc, InvariantUnderMonotoneTransforms) {
    Rng rng(67);
    std::vector<double> scores;
    std::vector<int> labels;
    for (int i = 0; i < 100; ++i) {
        scores.push_back(rng.next_double(-4, 4));
        labels.push_back(int(rng.next_int(0, 1)));
    }
    labels[0] = 1;
    labels[1] = 0;
    const double base = auc(scores, labels);
    std::vector<double> t1, t2;
    for (double s : scores) {
        t1.push_back(std::exp(s));
        t2.push_back(s * 3.0 - 100.0);
    }
    EXPECT_NEAR(auc(t1, labels), base, 1e-12);
    EXPECT_NEAR(auc(t2, labels), base, 1e-12);
}

TEST(Auc, FlippedLabelsComplementWithoutTies) {
    Rng rng(71);
    std::vector<double> scores;
    std::vector<int> labels;
    for (int i = 0; i < 80; ++i) {
        scores.push_back(rng.next_double());  // continuous, no ties
        labels.push_back(int(rng.next_int(0, 1)));
    }
    labels[0] = 1;
    labels[1] = 0;
    std::vector<int> flipped;
    for (int y : labels) flipped.push_back(1 - y);
    EXPECT_NEAR(auc(scores, labels) + auc(scores, flipped), 1.0, 1e-12);
}

TEST(SimulateLog, SeededAndReproducible) {
    TemplateLibrary lib;
    lib.palette = kPalette;
    for (int i = 0; i < 5; ++i)
        lib.templates.push_back(bgtest::make_template({.id = "t" + std::to_string(i)}));
    const PlantedSignal planted;
    const auto a = simulate_log(lib, 5, 3, planted, 99);
    const auto b = simulate_log(lib, 5, 3, planted, 99);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].template_id, b[i].template_id);
        EXPECT_EQ(a[i].exposures, b[i].exposures);
        EXPECT_EQ(a[i].clicks, b[i].clicks);
    }
    EXPECT_EQ(a.size(), 15u);
}

TEST(SimulateLog, ZeroPeriodsEmpty) {
    TemplateLibrary lib;
    lib.palette = kPalette;
    lib.templates.push_back(bgtest::make_template({}));
    EXPECT_TRUE(simulate_log(lib, 1, 0, {}, 1).empty());
}

TEST(SimulateLog, BoostedCtrConcentratesNearTarget) {
    TemplateLibrary lib;
    lib.palette = kPalette;
    for (int i = 0; i < 40; ++i) {
        bgtest::TemplateSpec spec;
        spec.id = "t" + std::to_string(i < 10 ? i : i + 100);
        spec.bg_color = i % 2 == 0 ? "red" : "blue";
        lib.templates.push_back(bgtest::make_template(spec));
    }
    std::sort(lib.templates.begin(), lib.templates.end(),
              [](const Template& a, const Template& b) { return a.id < b.id; });
    PlantedSignal planted;
    planted.boost_colors = {"red"};
    const auto log = simulate_log(lib, 40, 4, planted, 777);
    std::int64_t boosted_exp = 0, boosted_clk = 0, base_exp = 0, base_clk = 0;
    for (const ClickRecord& r : log) {
        const Template* t = lib.find(r.template_id);
        if (planted.boosted(*t)) {
            boosted_exp += r.exposures;
            boosted_clk += r.clicks;
        } else {
            base_exp += r.exposures;
            base_clk += r.clicks;
        }
    }
    ASSERT_GE(boosted_exp, 100000);  // enough impressions for concentration
    const double boosted_ctr = double(boosted_clk) / double(boosted_exp);
    const double base_ctr = double(base_clk) / double(base_exp);
    EXPECT_GE(boosted_ctr, 0.07);
    EXPECT_LE(boosted_ctr, 0.09);
    EXPECT_GE(base_ctr, 0.015);
    EXPECT_LE(base_ctr, 0.025);
}
