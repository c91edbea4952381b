#include <gtest/gtest.h>

#include <cmath>

#include "bannergen/recall.hpp"
#include "test_support.hpp"

using namespace bannergen;

namespace {

const RecallConfig kCfg;

/// Independent oracle for the text score: direct transcription of the
/// formula with explicit alphas, kept separate from the implementation.
double text_score_oracle(int req_lines, double req_avg_words, int tpl_lines,
                         double tpl_avg_capacity) {
    const double a1 = 2.2 * (20 - 4) + 1.0;          // 36.2
    const double a3 = a1 * (3 - 1) + 2.2 * (20 - 4); // 107.6
    const double loss1 = std::abs(req_lines - tpl_lines);
    const double loss2 = tpl_avg_capacity - req_avg_words;
    const double a2 = loss2 > 0 ? 2.0 : (loss2 < 0 ? -2.2 : 0.0);
    const double s = 1.0 - (a1 * loss1 + a2 * loss2) / a3;
    return std::clamp(s, 0.0, 1.0);
}

/// Template stub with given text lines / capacities / product slots.
Template scoring_template(int lines, double avg_capacity, int slots = 1) {
    bgtest::TemplateSpec spec;
    spec.text_lines = lines;
    spec.product_slots = slots;
    spec.capacities = {int(avg_capacity), int(avg_capacity), int(avg_capacity)};
    Template t = bgtest::make_template(spec);
    // force exact average capacity (capacities are ints in the builder)
    for (Layer& l : t.layers)
        if (is_text(l.kind)) l.capacity = int(avg_capacity);
    t.recompute_derived();
    return t;
}

std::vector<std::string> lines_with_avg_words(int n_lines, int words_per_line) {
    std::vector<std::string> out;
    for (int i = 0; i < n_lines; ++i) {
        std::string s;
        for (int w = 0; w < words_per_line; ++w) s += (w ? " w" : "w");
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST(RecallConfig, AlphasDerivedNotHardCoded) {
    EXPECT_NEAR(kCfg.alpha1(), 36.2, 1e-12);
    EXPECT_NEAR(kCfg.alpha3(), 107.6, 1e-12);
    // changing the word bounds moves the alphas consistently
    RecallConfig wide;
    wide.wordnummin = 2;
    wide.wordnummax = 30;
    EXPECT_NEAR(wide.alpha1(), 2.2 * 28 + 1, 1e-12);
    EXPECT_NEAR(wide.alpha3(), wide.alpha1() * 2 + 2.2 * 28, 1e-12);
    RecallConfig tall;
    tall.max_lines = 4;
    EXPECT_NEAR(tall.alpha3(), 36.2 * 3 + 2.2 * 16, 1e-12);
}

TEST(TextScore, WorkedExampleTwoLines) {
    // req 2 lines avg 6 words, template 2 lines avg capacity 9:
    // loss1=0, loss2=3, score = 1 - 6/107.6
    const Template t = scoring_template(2, 9);
    const double s = text_score(lines_with_avg_words(2, 6), t, kCfg);
    EXPECT_NEAR(s, 0.9442379182156134, 1e-9);
    EXPECT_NEAR(s, text_score_oracle(2, 6, 2, 9), 1e-12);
}

TEST(TextScore, ZeroLossesScoreOne) {
    const Template t = scoring_template(2, 6);
    EXPECT_DOUBLE_EQ(text_score(lines_with_avg_words(2, 6), t, kCfg), 1.0);
}

TEST(TextScore, WorkedExampleLineMismatch) {
    // req 1 line avg 10, template 3 lines avg 5:
    // loss1=2, loss2=-5, score = 1 - (72.4 + 11)/107.6
    const Template t = scoring_template(3, 5);
    const double s = text_score(lines_with_avg_words(1, 10), t, kCfg);
    EXPECT_NEAR(s, 0.22490706319702602, 1e-9);
    EXPECT_NEAR(s, text_score_oracle(1, 10, 3, 5), 1e-12);
}

TEST(TextScore, WorstCaseHitsZeroExactly) {
    // loss1=2, loss2=-16 exhausts the normalizer: 72.4 + 35.2 = 107.6
    const Template t = scoring_template(1, 4);
    const double s = text_score(lines_with_avg_words(3, 20), t, kCfg);
    EXPECT_DOUBLE_EQ(s, 0.0);
    const double raw = 1.0 - (36.2 * 2 + (-2.2) * (-16.0)) / 107.6;
    EXPECT_NEAR(raw, 0.0, 1e-12);
}

TEST(TextScore, TwentyHandComputedCases) {
    struct Case {
        int req_lines;
        double req_avg;
        int tpl_lines;
        double tpl_cap;
    };
    const Case cases[] = {
        {2, 6, 2, 9},  {1, 10, 3, 5},  {3, 20, 1, 4},  {2, 6, 2, 6},  {1, 4, 1, 20},
        {1, 20, 1, 4}, {2, 8, 3, 12},  {3, 5, 1, 18},  {1, 7, 2, 7},  {2, 10, 2, 4},
        {3, 4, 3, 20}, {1, 12, 1, 11}, {2, 5, 1, 5},   {3, 15, 2, 9}, {1, 6, 3, 16},
        {2, 18, 2, 20}, {3, 9, 3, 8},  {1, 16, 2, 16}, {2, 4, 3, 4},  {3, 11, 1, 13},
    };
    for (const Case& c : cases) {
        const Template t = scoring_template(c.tpl_lines, c.tpl_cap);
        const double got = text_score(lines_with_avg_words(c.req_lines, int(c.req_avg)), t, kCfg);
        const double want = text_score_oracle(c.req_lines, c.req_avg, c.tpl_lines, c.tpl_cap);
        EXPECT_NEAR(got, want, 1e-9) << "case " << c.req_lines << "/" << c.req_avg << " vs "
                                     << c.tpl_lines << "/" << c.tpl_cap;
    }
}

TEST(TextScore, ExhaustiveEnumerationStaysInUnitInterval) {
    // loss1 in {0,1,2} x loss2 in [-16,16] step 0.5
    for (int loss1 = 0; loss1 <= 2; ++loss1) {
        for (double loss2 = -16.0; loss2 <= 16.0; loss2 += 0.5) {
            const double a2 = loss2 > 0 ? 2.0 : (loss2 < 0 ? -2.2 : 0.0);
            const double raw = 1.0 - (36.2 * loss1 + a2 * loss2) / 107.6;
            const double clamped = std::clamp(raw, 0.0, 1.0);
            EXPECT_GE(clamped, 0.0);
            EXPECT_LE(clamped, 1.0);
            // raw value only leaves [0,1] where the clamp is documented
            EXPECT_GE(raw, -1e-12);
        }
    }
}

TEST(TextScore, PositiveLoss2BeatsNegativeAtEqualMagnitude) {
    // templates with a little more room score above equally tight ones
    for (int mag = 1; mag <= 16; ++mag) {
        for (int lines = 1; lines <= 3; ++lines) {
            const double pos = text_score_oracle(lines, 10, lines, 10 + mag);
            const double neg = text_score_oracle(lines, 10, lines, 10 - mag);
            EXPECT_GT(pos, neg) << "magnitude " << mag;
        }
    }
}

TEST(GoodsScore, SingleProductHalfAspect) {
    // 1 product ar 0.5 vs 1 slot ar 1.0 -> 1 * 0.5
    Template t = scoring_template(2, 8, 1);
    for (Layer& l : t.layers)
        if (l.kind == LayerKind::Product) l.bbox = Rect{100, 100, 200, 200};  // ar 1.0
    EXPECT_NEAR(goods_score(std::vector<double>{0.5}, t), 0.5, 1e-12);
}

TEST(GoodsScore, PerfectMatchIsOne) {
    Template t = scoring_template(2, 8, 2);
    std::vector<double> slot_aspects;
    for (const Layer* l : t.layers_of_kind(LayerKind::Product))
        slot_aspects.push_back(l->aspect());
    EXPECT_NEAR(goods_score(slot_aspects, t), 1.0, 1e-12);
}

TEST(GoodsScore, CountMismatchShrinksHyperbolically) {
    // 3 products vs 1 slot with matched-pair fit 0.8 -> (1/3) * 0.8
    Template t = scoring_template(2, 8, 1);
    for (Layer& l : t.layers)
        if (l.kind == LayerKind::Product) l.bbox = Rect{100, 100, 200, 200};  // ar 1.0
    // descending-order greedy pairs the largest product aspect with the slot
    const double s = goods_score(std::vector<double>{0.8, 0.5, 0.4}, t);
    EXPECT_NEAR(s, (1.0 / 3.0) * 0.8, 1e-12);
}

TEST(GoodsScore, ZeroSlotsThrows) {
    Template t = bgtest::make_template({.product_slots = 1});
    std::erase_if(t.layers, [](const Layer& l) { return l.kind == LayerKind::Product; });
    for (std::size_t i = 0; i < t.layers.size(); ++i) t.layers[i].z = int(i);
    t.recompute_derived();
    EXPECT_THROW(goods_score(std::vector<double>{1.0}, t), ZeroSlots);
}

TEST(Screen, AspectGateExcludesExtremeTargets) {
    TemplateLibrary lib;
    lib.palette = Palette::default_palette();
    bgtest::TemplateSpec spec;
    spec.width = 1200;
    spec.height = 200;  // 6:1 template
    lib.templates.push_back(bgtest::make_template(spec));
    const BannerRequest req = bgtest::make_request(1, 2, 800, 800);  // 1:1 target
    EXPECT_THROW(screen(lib, req), EmptyRecall);
}

TEST(Screen, ExactMatchSurvivesAlone) {
    TemplateLibrary lib;
    lib.palette = Palette::default_palette();
    bgtest::TemplateSpec a;
    a.id = "match";
    a.departments = {1};
    bgtest::TemplateSpec b;
    b.id = "other-dept";
    b.departments = {9};
    lib.templates.push_back(bgtest::make_template(a));
    lib.templates.push_back(bgtest::make_template(b));
    const auto out = screen(lib, bgtest::make_request());
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0]->id, "match");
}

TEST(Screen, NoStyleHintSkipsStyleFilter) {
    TemplateLibrary lib;
    lib.palette = Palette::default_palette();
    lib.templates.push_back(bgtest::make_template({}));
    BannerRequest req = bgtest::make_request();
    req.style_hint.clear();
    EXPECT_EQ(screen(lib, req).size(), 1u);
    req.style_hint = "nonexistent-style";
    EXPECT_THROW(screen(lib, req), EmptyRecall);
}

TEST(RecallTopk, WeightedOrderingAndTotals) {
    TemplateLibrary lib;
    lib.palette = Palette::default_palette();
    // two templates, identical slots; text capacities arranged so the text
    // scores differ while goods scores match
    bgtest::TemplateSpec a;
    a.id = "a";
    a.capacities = {9, 9, 9};
    bgtest::TemplateSpec b;
    b.id = "b";
    b.capacities = {14, 14, 14};
    lib.templates.push_back(bgtest::make_template(a));
    lib.templates.push_back(bgtest::make_template(b));

    BannerRequest req = bgtest::make_request();
    req.texts = {"w w w w w w", "w w w w w w"};  // 2 lines, 6 words each
    const auto out = recall_topk(lib, req, kCfg);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].template_id, "a");  // capacity 9 beats capacity 14 for 6-word lines
    for (const RecallResult& r : out) {
        EXPECT_NEAR(r.total_score, 0.6 * r.text_score + 0.4 * r.goods_score, 1e-12);
        EXPECT_GE(r.total_score, 0.0);
        EXPECT_LE(r.total_score, 1.0);
    }
    EXPECT_GE(out[0].total_score, out[1].total_score);
}

TEST(RecallTopk, TieBreaksByIdAscending) {
    TemplateLibrary lib;
    lib.palette = Palette::default_palette();
    bgtest::TemplateSpec a;
    a.id = "zeta";
    bgtest::TemplateSpec b;
    b.id = "alpha";
    lib.templates.push_back(bgtest::make_template(a));
    lib.templates.push_back(bgtest::make_template(b));
    const auto out = recall_topk(lib, bgtest::make_request(), kCfg);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_DOUBLE_EQ(out[0].total_score, out[1].total_score);
    EXPECT_EQ(out[0].template_id, "alpha");
}

TEST(RecallTopk, TopKOneKeepsBest) {
    TemplateLibrary lib;
    lib.palette = Palette::default_palette();
    for (int i = 0; i < 4; ++i) {
        bgtest::TemplateSpec spec;
        spec.id = "t" + std::to_string(i);
        spec.capacities = {6 + 3 * i, 6 + 3 * i, 6 + 3 * i};
        lib.templates.push_back(bgtest::make_template(spec));
    }
    RecallConfig cfg;
    cfg.top_k = 1;
    const auto out = recall_topk(lib, bgtest::make_request(), cfg);
    ASSERT_EQ(out.size(), 1u);
}

TEST(RecallTopk, DeterministicAcrossRuns) {
    TemplateLibrary lib;
    lib.palette = Palette::default_palette();
    for (int i = 0; i < 8; ++i) {
        bgtest::TemplateSpec spec;
        spec.id = "t" + std::to_string(i);
        spec.text_lines = 1 + i % 3;
        spec.capacities = {4 + i, 5 + i, 6 + i};
        lib.templates.push_back(bgtest::make_template(spec));
    }
    const auto a = recall_topk(lib, bgtest::make_request(), kCfg);
    const auto b = recall_topk(lib, bgtest::make_request(), kCfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].template_id, b[i].template_id);
        EXPECT_DOUBLE_EQ(a[i].total_score, b[i].total_score);
    }
}

TEST(RecallTopk, SortedPrefixProperty) {
    TemplateLibrary lib;
    lib.palette = Palette::default_palette();
    for (int i = 0; i < 10; ++i) {
        bgtest::TemplateSpec spec;
        spec.id = "t" + std::to_string(i);
        spec.text_lines = 1 + i % 3;
        spec.capacities = {4 + i, 4 + i, 4 + i};
        lib.templates.push_back(bgtest::make_template(spec));
    }
    RecallConfig small;
    small.top_k = 4;
    RecallConfig all;
    all.top_k = 100;
    const auto prefix = recall_topk(lib, bgtest::make_request(), small);
    const auto full = recall_topk(lib, bgtest::make_request(), all);
    ASSERT_EQ(prefix.size(), 4u);
    const double kth = prefix.back().total_score;
    for (std::size_t i = 4; i < full.size(); ++i) EXPECT_LE(full[i].total_score, kth + 1e-12);
}

TEST(RequestValidation, Bounds) {
    const BannerRequest ok = bgtest::make_request();
    EXPECT_TRUE(validate_request(ok, kCfg).empty());
    BannerRequest no_products = ok;
    no_products.products.clear();
    EXPECT_FALSE(validate_request(no_products, kCfg).empty());
    BannerRequest long_text = ok;
    long_text.texts = {lines_with_avg_words(1, 25)[0]};  // 25 words > wordnummax
    EXPECT_FALSE(validate_request(long_text, kCfg).empty());
}
