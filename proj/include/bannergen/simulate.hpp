#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bannergen/click_data.hpp"
#include "bannergen/rng.hpp"
#include "bannergen/template_model.hpp"

namespace bannergen {

/// Synthetic click-log generator with a planted preference signal: templates
/// whose primary color falls in boost_colors click at boosted_ctr, the rest
/// at base_ctr.
struct PlantedSignal {
    double base_ctr = 0.02;
    double boosted_ctr = 0.08;
    std::set<std::string> boost_colors = {"red", "orange", "yellow"};

    bool boosted(const Template& t) const { return boost_colors.count(t.primary_color()) > 0; }
};

/// Per template-period: exposures uniform in [50, 5000], clicks binomial at
/// the planted CTR. Fully reproducible for a fixed seed.
inline std::vector<ClickRecord> simulate_log(const TemplateLibrary& library,
                                             std::size_t n_templates, int n_periods,
                                             const PlantedSignal& planted, std::uint64_t seed) {
    if (n_templates > library.templates.size())
        throw std::invalid_argument("n_templates exceeds library size");
    Rng rng(seed);
    std::vector<ClickRecord> log;
    for (std::size_t ti = 0; ti < n_templates; ++ti) {
        const Template& t = library.templates[ti];  // library is id-sorted
        const double ctr = planted.boosted(t) ? planted.boosted_ctr : planted.base_ctr;
        for (int p = 1; p <= n_periods; ++p) {
            ClickRecord r;
            r.template_id = t.id;
            r.period_id = p;
            r.exposures = rng.next_int(50, 5000);
            std::int64_t clicks = 0;
            for (std::int64_t e = 0; e < r.exposures; ++e)
                if (rng.next_double() < ctr) ++clicks;
            r.clicks = clicks;
            log.push_back(std::move(r));
        }
    }
    return log;
}

}  // namespace bannergen
