// Loading helpers for the bundled corpus.
#pragma once

#include <algebroidkit/io.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace fixtures {

inline std::filesystem::path dir() { return std::filesystem::path(AK_CORPUS_DIR); }

inline algebroidkit::Json manifest() { return algebroidkit::load_json_file(dir() / "manifest.json"); }

inline algebroidkit::Algebroid algebroid(const std::string& name) {
    return algebroidkit::parse_algebroid(
        algebroidkit::load_json_file(dir() / "algebroids" / name));
}

inline algebroidkit::AlgebroidMorphism morphism(const std::string& name) {
    auto path = dir() / "morphisms" / name;
    return algebroidkit::parse_morphism(algebroidkit::load_json_file(path), path.parent_path());
}

inline algebroidkit::Derivation derivation(const std::string& name) {
    auto path = dir() / "derivations" / name;
    return algebroidkit::parse_derivation(algebroidkit::load_json_file(path), path.parent_path());
}

inline algebroidkit::AlgebroidAction action(const std::string& name) {
    auto path = dir() / "actions" / name;
    return algebroidkit::parse_action(algebroidkit::load_json_file(path), path.parent_path());
}

inline algebroidkit::SplitExtension extension(const std::string& name) {
    auto path = dir() / "extensions" / name;
    return algebroidkit::parse_extension(algebroidkit::load_json_file(path), path.parent_path());
}

inline algebroidkit::PoissonBivector bivector(const std::string& name) {
    return algebroidkit::parse_bivector(algebroidkit::load_json_file(dir() / "bivectors" / name));
}

inline algebroidkit::InfinitesimalGroupAction group_action(const std::string& name) {
    return algebroidkit::parse_group_action(
        algebroidkit::load_json_file(dir() / "group_actions" / name));
}

/// Manifest files of a kind filtered by expected verdict.
inline std::vector<std::string> names_of(const std::string& kind, bool expect_pass) {
    std::vector<std::string> out;
    const algebroidkit::Json m = manifest();
    for (const auto& e : m.at("entries")) {
        if (e.at("kind") != kind) continue;
        if ((e.at("expect") == "PASS") != expect_pass) continue;
        std::string file = e.at("file").get<std::string>();
        out.push_back(std::filesystem::path(file).filename().string());
    }
    return out;
}

inline std::vector<std::string> valid_algebroids() { return names_of("algebroid", true); }
inline std::vector<std::string> broken_algebroids() { return names_of("algebroid", false); }
inline std::vector<std::string> valid_actions() { return names_of("action", true); }
inline std::vector<std::string> broken_actions() { return names_of("action", false); }

} // namespace fixtures
