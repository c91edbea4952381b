#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bannergen/model_io.hpp"
#include "bannergen/recall.hpp"
#include "bannergen/template_model.hpp"
#include "bannergen/text_util.hpp"

namespace bannergen {

struct LayoutMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Everything needed to build identical feature vectors at training and
/// inference time: the tf-idf vocabulary with frozen idf weights, promo
/// keywords, ordinal dictionaries for ids, and segment sizes. Serialized
/// with the model.
struct FeatureSpace {
    std::vector<std::string> vocab;        // sorted unique terms
    std::vector<double> idf;               // parallel to vocab
    std::vector<std::string> promo_keywords = {"discount", "full discount"};
    std::vector<std::string> series_dict;  // sorted; ordinal = index + 1, 0 = unknown
    std::vector<std::string> id_dict;
    std::vector<int> department_dict;
    int color_count = 14;
    int extension_size = 0;  // reserved segment for an image-feature provider

    int dim() const {
        return 3 + int(vocab.size()) + int(promo_keywords.size()) + color_count + 3 + 2 +
               extension_size;
    }

    /// Human-readable layout descriptor, stored in the model file.
    std::string layout_descriptor() const {
        std::ostringstream os;
        os << "ords:3,tfidf:" << vocab.size() << ",promo:" << promo_keywords.size()
           << ",color:" << color_count << ",size:3,scores:2,ext:" << extension_size;
        return os.str();
    }

    static int ordinal(const std::vector<std::string>& dict, const std::string& key) {
        const auto it = std::lower_bound(dict.begin(), dict.end(), key);
        if (it != dict.end() && *it == key) return int(it - dict.begin()) + 1;
        return 0;
    }
    static int ordinal(const std::vector<int>& dict, int key) {
        const auto it = std::lower_bound(dict.begin(), dict.end(), key);
        if (it != dict.end() && *it == key) return int(it - dict.begin()) + 1;
        return 0;
    }

    std::optional<int> vocab_index(const std::string& term) const {
        const auto it = std::lower_bound(vocab.begin(), vocab.end(), term);
        if (it != vocab.end() && *it == term) return int(it - vocab.begin());
        return std::nullopt;
    }
};

/// Named dense vector; the layout is fixed by the FeatureSpace.
struct FeatureVector {
    std::vector<double> values;
};

/// Build the vocabulary from a corpus of documents (token lists): the top
/// max_terms terms by document frequency, idf = ln((1+N)/(1+df)) + 1.
inline void build_vocabulary(FeatureSpace& space,
                             const std::vector<std::vector<std::string>>& docs,
                             std::size_t max_terms = 512) {
    std::map<std::string, int> df;
    for (const auto& doc : docs) {
        std::map<std::string, bool> seen;
        for (const auto& term : doc)
            if (!seen[term]) {
                seen[term] = true;
                ++df[term];
            }
    }
    std::vector<std::pair<std::string, int>> terms(df.begin(), df.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (terms.size() > max_terms) terms.resize(max_terms);
    std::sort(terms.begin(), terms.end());  // layout order: alphabetical

    const double n = double(docs.size());
    space.vocab.clear();
    space.idf.clear();
    for (const auto& [term, count] : terms) {
        space.vocab.push_back(term);
        space.idf.push_back(std::log((1.0 + n) / (1.0 + count)) + 1.0);
    }
}

/// Build ordinal dictionaries from the training template set.
inline void build_dictionaries(FeatureSpace& space, const std::vector<const Template*>& tpls) {
    space.series_dict.clear();
    space.id_dict.clear();
    space.department_dict.clear();
    for (const Template* t : tpls) {
        space.series_dict.push_back(t->series_id);
        space.id_dict.push_back(t->id);
        for (int d : t->department_ids) space.department_dict.push_back(d);
    }
    auto dedup = [](auto& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedup(space.series_dict);
    dedup(space.id_dict);
    dedup(space.department_dict);
}

/// Dense feature vector for one (template, request) pair. Request texts and
/// stage scores may be absent at training time (click logs carry neither);
/// those segments stay zero and the tree learner simply never splits there.
inline FeatureVector featurize(const Template& t, const std::vector<std::string>& req_texts,
                               int department_id, double recall_score, double prerank_score,
                               const FeatureSpace& space, const Palette& palette) {
    FeatureVector fv;
    fv.values.assign(static_cast<std::size_t>(space.dim()), 0.0);
    std::size_t at = 0;

    fv.values[at++] = FeatureSpace::ordinal(space.series_dict, t.series_id);
    fv.values[at++] = FeatureSpace::ordinal(space.id_dict, t.id);
    fv.values[at++] = FeatureSpace::ordinal(space.department_dict, department_id);

    // tf-idf over the request copy; out-of-vocabulary terms contribute nothing
    std::map<std::string, int> tf;
    for (const std::string& text : req_texts)
        for (const std::string& tok : tokenize(text)) ++tf[tok];
    for (const auto& [term, count] : tf)
        if (auto idx = space.vocab_index(term))
            fv.values[at + std::size_t(*idx)] = double(count) * space.idf[std::size_t(*idx)];
    at += space.vocab.size();

    std::string joined;
    for (const std::string& text : req_texts) {
        joined += to_lower_ascii(text);
        joined += ' ';
    }
    for (const std::string& kw : space.promo_keywords)
        fv.values[at++] = joined.find(kw) != std::string::npos ? 1.0 : 0.0;

    const std::string primary = t.primary_color();
    const int color_idx = primary.empty() ? -1 : palette.index_of(primary);
    for (int i = 0; i < space.color_count; ++i) fv.values[at++] = i == color_idx ? 1.0 : 0.0;

    fv.values[at++] = double(t.width);
    fv.values[at++] = double(t.height);
    fv.values[at++] = t.height > 0 ? double(t.width) / double(t.height) : 0.0;

    fv.values[at++] = recall_score;
    fv.values[at++] = prerank_score;
    at += space.extension_size;
    if (at != fv.values.size()) throw LayoutMismatch("feature layout desynchronized");
    return fv;
}

inline void write_feature_space(model_io::Writer& w, const FeatureSpace& s) {
    w.fields("layout", s.layout_descriptor());
    w.fields("vocab", s.vocab.size());
    for (std::size_t i = 0; i < s.vocab.size(); ++i) w.fields(s.vocab[i], s.idf[i]);
    w.fields("promo", s.promo_keywords.size());
    for (const auto& kw : s.promo_keywords) w.line(kw);
    w.fields("series_dict", s.series_dict.size());
    for (const auto& v : s.series_dict) w.line(v);
    w.fields("id_dict", s.id_dict.size());
    for (const auto& v : s.id_dict) w.line(v);
    w.fields("department_dict", s.department_dict.size());
    for (int v : s.department_dict) w.fields(v);
    w.fields("color_count", s.color_count);
    w.fields("extension_size", s.extension_size);
}

inline FeatureSpace read_feature_space(model_io::Reader& r) {
    FeatureSpace s;
    const std::string layout = r.tagged("layout").at(0);
    const int nvocab = model_io::parse_int(r.tagged("vocab").at(0));
    for (int i = 0; i < nvocab; ++i) {
        const auto ts = r.tokens();
        if (ts.size() != 2) throw ModelIoError("bad vocab entry");
        s.vocab.push_back(ts[0]);
        s.idf.push_back(model_io::parse_double(ts[1]));
    }
    const int npromo = model_io::parse_int(r.tagged("promo").at(0));
    s.promo_keywords.clear();
    for (int i = 0; i < npromo; ++i) s.promo_keywords.push_back(r.line());
    const int nseries = model_io::parse_int(r.tagged("series_dict").at(0));
    for (int i = 0; i < nseries; ++i) s.series_dict.push_back(r.line());
    const int nid = model_io::parse_int(r.tagged("id_dict").at(0));
    for (int i = 0; i < nid; ++i) s.id_dict.push_back(r.line());
    const int ndept = model_io::parse_int(r.tagged("department_dict").at(0));
    for (int i = 0; i < ndept; ++i) s.department_dict.push_back(model_io::parse_int(r.line()));
    s.color_count = model_io::parse_int(r.tagged("color_count").at(0));
    s.extension_size = model_io::parse_int(r.tagged("extension_size").at(0));
    if (s.layout_descriptor() != layout)
        throw ModelIoError("feature layout mismatch: " + layout + " vs " +
                           s.layout_descriptor());
    return s;
}

}  // namespace bannergen
