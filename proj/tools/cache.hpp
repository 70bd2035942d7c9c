#pragma once

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cullen::cli {

/// Bumped whenever a cached computation changes meaning.
inline constexpr const char* cache_version = "cullen-cache-1";

/// Content-addressed result store: one JSON file per (command, canonical
/// parameters, version). A disabled cache (no directory) simply computes.
class ResultCache {
public:
    explicit ResultCache(std::optional<std::filesystem::path> dir);

    bool enabled() const { return dir_.has_value(); }

    std::optional<nlohmann::json> load(const std::string& command, const nlohmann::json& params) const;
    void store(const std::string& command, const nlohmann::json& params, const nlohmann::json& result) const;

    /// Returns the cached result or computes and stores it. Every call is
    /// remembered so one entry can be spot-checked later.
    nlohmann::json get_or_compute(const std::string& command, const nlohmann::json& params,
                                  const std::function<nlohmann::json()>& compute);

    struct SpotCheck {
        std::string command;
        std::string params;
        bool hit = false;
        bool identical = true;
    };
    /// Recomputes one randomly chosen entry that was served from disk this
    /// run and compares it with the stored copy.
    std::optional<SpotCheck> spot_check();

    std::filesystem::path path_for(const std::string& command, const nlohmann::json& params) const;

private:
    struct Use {
        std::string command;
        nlohmann::json params;
        std::function<nlohmann::json()> compute;
        nlohmann::json result;
    };
    std::optional<std::filesystem::path> dir_;
    std::vector<Use> hits_;
};

/// --cache-dir wins, then $CACHE_DIR, else no caching.
std::optional<std::filesystem::path> resolve_cache_dir(const std::string& flag);

std::uint64_t fnv1a(const std::string& text);

}  // namespace cullen::cli
