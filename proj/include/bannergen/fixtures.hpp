#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bannergen/png_io.hpp"
#include "bannergen/template_model.hpp"

namespace bannergen {

struct FixtureReport {
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
};

/// Checks the committed fixture tree against its pinned manifest: expected
/// counts, per-file CRC-32 checksums, and a lint pass over the valid
/// library. Run first in CI so later failures cannot be stale-data noise.
inline FixtureReport verify_fixtures(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    FixtureReport report;
    const fs::path manifest_path = root / "fixtures_manifest.json";
    std::ifstream f(manifest_path);
    if (!f) {
        report.mismatches.push_back("missing " + manifest_path.string());
        return report;
    }
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        report.mismatches.push_back(std::string("manifest unparseable: ") + e.what());
        return report;
    }

    for (const auto& [rel, expected] : manifest.at("crc32").items()) {
        const fs::path p = root / rel;
        if (!fs::exists(p)) {
            report.mismatches.push_back("missing file: " + rel);
            continue;
        }
        const std::uint32_t actual = file_crc32(p);
        if (actual != expected.get<std::uint32_t>())
            report.mismatches.push_back("checksum mismatch: " + rel);
    }

    try {
        const TemplateLibrary lib = load_library(root / "library");
        const auto expected = manifest.at("counts").at("templates").get<std::size_t>();
        if (lib.templates.size() != expected)
            report.mismatches.push_back("template count " + std::to_string(lib.templates.size()) +
                                        " != " + std::to_string(expected));
    } catch (const std::exception& e) {
        report.mismatches.push_back(std::string("library failed validation: ") + e.what());
    }
    return report;
}

}  // namespace bannergen
