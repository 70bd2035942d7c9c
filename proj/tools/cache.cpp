#include "cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace cullen::cli {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& text)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

std::string canonical_key(const std::string& command, const nlohmann::json& params)
{
    // nlohmann::json keeps object keys sorted, so dump() is canonical.
    return command + '\n' + params.dump() + '\n' + cache_version;
}

}  // namespace

ResultCache::ResultCache(std::optional<fs::path> dir) : dir_(std::move(dir))
{
    if (dir_)
        fs::create_directories(*dir_);
}

fs::path ResultCache::path_for(const std::string& command, const nlohmann::json& params) const
{
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_key(command, params))));
    return *dir_ / (command + '-' + hex + ".json");
}

std::optional<nlohmann::json> ResultCache::load(const std::string& command, const nlohmann::json& params) const
{
    if (!dir_)
        return std::nullopt;
    std::ifstream in(path_for(command, params));
    if (!in)
        return std::nullopt;
    try {
        auto entry = nlohmann::json::parse(in);
        if (entry.at("key").get<std::string>() != canonical_key(command, params))
            return std::nullopt;  // hash collision or stale layout
        return entry.at("result");
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // torn or hand-edited file: recompute
    }
}

void ResultCache::store(const std::string& command, const nlohmann::json& params, const nlohmann::json& result) const
{
    if (!dir_)
        return;
    const fs::path target = path_for(command, params);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << nlohmann::json{{"key", canonical_key(command, params)}, {"result", result}}.dump() << '\n';
    }
    fs::rename(tmp, target);
}

nlohmann::json ResultCache::get_or_compute(const std::string& command, const nlohmann::json& params,
                                           const std::function<nlohmann::json()>& compute)
{
    if (auto cached = load(command, params)) {
        hits_.push_back({command, params, compute, *cached});
        return *cached;
    }
    nlohmann::json result = compute();
    store(command, params, result);
    return result;
}

std::optional<ResultCache::SpotCheck> ResultCache::spot_check()
{
    if (hits_.empty())
        return std::nullopt;
    std::random_device rd;
    const Use& use = hits_[std::uniform_int_distribution<std::size_t>(0, hits_.size() - 1)(rd)];
    const nlohmann::json cold = use.compute();
    return SpotCheck{use.command, use.params.dump(), true, cold == use.result};
}

std::optional<fs::path> resolve_cache_dir(const std::string& flag)
{
    if (!flag.empty())
        return fs::path(flag);
    if (const char* env = std::getenv("CACHE_DIR"); env && *env)
        return fs::path(env);
    return std::nullopt;
}

}  // namespace cullen::cli
