#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bannergen {

struct ClickRecord {
    std::string template_id;
    int period_id = 0;
    std::int64_t exposures = 0;
    std::int64_t clicks = 0;

    double ctr() const { return exposures > 0 ? double(clicks) / double(exposures) : 0.0; }
};

struct ClickLogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void write_click_log(const std::vector<ClickRecord>& records, std::ostream& os) {
    os << "template_id,period_id,exposures,clicks\n";
    for (const ClickRecord& r : records)
        os << r.template_id << ',' << r.period_id << ',' << r.exposures << ',' << r.clicks
           << '\n';
}

inline void save_click_log(const std::vector<ClickRecord>& records, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ClickLogError("cannot write " + path);
    write_click_log(records, f);
}

inline std::vector<ClickRecord> read_click_log(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ClickLogError("empty click log");
    if (line != "template_id,period_id,exposures,clicks")
        throw ClickLogError("unexpected click log header: " + line);
    std::vector<ClickRecord> out;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        ClickRecord r;
        std::string period, exposures, clicks;
        const bool shape_ok = std::getline(ls, r.template_id, ',') &&
                              std::getline(ls, period, ',') &&
                              std::getline(ls, exposures, ',') && std::getline(ls, clicks);
        if (!shape_ok)
            throw ClickLogError("line " + std::to_string(lineno) + ": malformed record");
        try {
            r.period_id = std::stoi(period);
            r.exposures = std::stoll(exposures);
            r.clicks = std::stoll(clicks);
        } catch (const std::exception&) {
            throw ClickLogError("line " + std::to_string(lineno) + ": malformed number");
        }
        if (r.clicks > r.exposures || r.exposures < 0 || r.clicks < 0)
            throw ClickLogError("line " + std::to_string(lineno) +
                                ": clicks must be within [0, exposures]");
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<ClickRecord> load_click_log(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ClickLogError("cannot read " + path);
    return read_click_log(f);
}

struct LabeledSample {
    std::string template_id;
    int period_id = 0;
    int label = 0;  // 1 = above-average CTR among well-exposed records
};

struct BucketResult {
    std::vector<LabeledSample> samples;
    int skipped_periods = 0;  // periods with no record surviving the exposure filter
};

/// Per period: drop records below the period's mean exposure, then label the
/// survivors 1 when their CTR is strictly above the survivors' mean CTR.
inline BucketResult bucket_labels(const std::vector<ClickRecord>& records) {
    if (records.empty()) throw ClickLogError("bucket_labels on empty record list");
    std::map<int, std::vector<const ClickRecord*>> by_period;
    for (const ClickRecord& r : records) by_period[r.period_id].push_back(&r);

    BucketResult out;
    for (const auto& [period, recs] : by_period) {
        double exp_sum = 0;
        for (const ClickRecord* r : recs) exp_sum += double(r->exposures);
        const double exp_mean = exp_sum / double(recs.size());

        std::vector<const ClickRecord*> survivors;
        for (const ClickRecord* r : recs)
            if (double(r->exposures) >= exp_mean) survivors.push_back(r);
        if (survivors.empty()) {
            ++out.skipped_periods;
            continue;
        }
        double ctr_sum = 0;
        for (const ClickRecord* r : survivors) ctr_sum += r->ctr();
        const double ctr_mean = ctr_sum / double(survivors.size());
        for (const ClickRecord* r : survivors)
            out.samples.push_back({r->template_id, period, r->ctr() > ctr_mean ? 1 : 0});
    }
    return out;
}

}  // namespace bannergen
