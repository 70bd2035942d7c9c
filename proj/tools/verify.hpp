#pragma once

#include "cache.hpp"

#include "cullen/interval.hpp"

#include <json.hpp>

#include <string>

namespace cullen::cli {

enum class Profile { Quick, Full };

struct RunContext {
    unsigned jobs = 1;
    Precision precision = Precision::digits(50);
    ResultCache* cache = nullptr;
};

/// Runs every check of the profile and returns the report. Individual checks
/// that throw are recorded as mismatches; the run itself never aborts.
nlohmann::json run_verify(Profile profile, RunContext& ctx);

bool has_mismatch(const nlohmann::json& report);

/// Aligned plain-text rendering of a report.
std::string render_report(const nlohmann::json& report);

// Cached building blocks shared with the other subcommands.
nlohmann::json cached_ceiling(RunContext& ctx, std::uint64_t p, const std::string& t_prime, const std::string& N,
                              std::size_t min_length);
nlohmann::json cached_scan(RunContext& ctx, std::uint64_t p, const std::string& t, std::uint64_t lo, std::uint64_t hi,
                           std::optional<unsigned> v_cap, std::optional<std::uint64_t> threshold);
nlohmann::json cached_box(RunContext& ctx, unsigned a, unsigned b, unsigned c);
nlohmann::json cached_nu11(RunContext& ctx, std::uint64_t lo, std::uint64_t hi);

}  // namespace cullen::cli
