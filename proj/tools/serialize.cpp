#include "serialize.hpp"

namespace cullen::cli {

json u64_list(const std::vector<std::uint64_t>& xs)
{
    json out = json::array();
    for (auto x : xs)
        out.push_back(std::to_string(x));
    return out;
}

json big_list(const std::vector<BigInt>& xs)
{
    json out = json::array();
    for (const auto& x : xs)
        out.push_back(to_decimal(x));
    return out;
}

namespace {

std::vector<std::uint64_t> u64_vector(const json& j)
{
    std::vector<std::uint64_t> out;
    for (const auto& x : j)
        out.push_back(to_u64(parse_integer(x.get<std::string>())));
    return out;
}

}  // namespace

json to_json(const Solution& sol, const SmoothnessBasis& basis)
{
    json fac = json::object();
    for (std::size_t i = 0; i < basis.size(); ++i)
        fac[std::to_string(basis.primes()[i])] = std::to_string(sol.s_factorization.exponents[i]);
    json witness = nullptr;
    if (sol.witness) {
        witness = {
            {"range", {sol.witness->first + 1, sol.witness->last + 1}},
            {"matched", sol.witness->matched == ClosedFormPart::DoubleRootTerm ? "(an+c)alpha^n" : "b*beta^n"},
        };
    }
    return {
        {"n", std::to_string(sol.n)},
        {"m", u64_list(sol.ms)},
        {"s", to_decimal(sol.s)},
        {"sFactorization", fac},
        {"degenerate", sol.degenerate},
        {"witness", witness},
    };
}

json to_json(const CeilingResult& result)
{
    json bases = json::array();
    for (const auto& b : result.bases) {
        json entry = {
            {"n0", to_decimal(b.chain.n0)},
            {"J", b.J},
            {"nJ", to_decimal(b.chain.index_at(b.J))},
            {"nAtGlobalJ", to_decimal(b.chain.index_at(result.J))},
            {"chain", chain_to_json(b.chain)},
        };
        if (b.exact_root)
            entry["exactRoot"] = to_decimal(*b.exact_root);
        bases.push_back(entry);
    }
    return {
        {"N", to_decimal(result.N)},
        {"J", result.J},
        {"guarantee", "nu_p(n*2^n - t') <= J for 0 <= n <= N, exact roots excluded"},
        {"bases", bases},
    };
}

CeilingResult ceiling_from_json(const json& j)
{
    CeilingResult r;
    r.N = parse_integer(j.at("N").get<std::string>());
    r.J = j.at("J").get<std::size_t>();
    for (const auto& b : j.at("bases")) {
        BaseCeiling base;
        base.chain = chain_from_json(b.at("chain"));
        base.J = b.at("J").get<std::size_t>();
        if (b.contains("exactRoot"))
            base.exact_root = parse_integer(b.at("exactRoot").get<std::string>());
        r.bases.push_back(std::move(base));
    }
    return r;
}

json to_json(const ScanResult& result)
{
    return {
        {"max", result.max.to_string()},
        {"argmax", u64_list(result.argmax)},
        {"atLeastThreshold", u64_list(result.at_least)},
        {"zeros", u64_list(result.zeros)},
        {"escalated", u64_list(result.escalated)},
    };
}

ScanResult scan_from_json(const json& j)
{
    ScanResult r;
    r.max = Valuation(to_u64(parse_integer(j.at("max").get<std::string>())));
    r.argmax = u64_vector(j.at("argmax"));
    r.at_least = u64_vector(j.at("atLeastThreshold"));
    r.zeros = u64_vector(j.at("zeros"));
    r.escalated = u64_vector(j.at("escalated"));
    return r;
}

json to_json(const BoxMaximum& box)
{
    return {
        {"max", std::to_string(box.valuation)},
        {"witness", {box.witness[0], box.witness[1], box.witness[2]}},
    };
}

BoxMaximum box_from_json(const json& j)
{
    BoxMaximum b;
    b.valuation = to_u64(parse_integer(j.at("max").get<std::string>()));
    b.witness = j.at("witness").get<std::array<unsigned, 3>>();
    return b;
}

json to_json(const Nu11Result& result)
{
    return {{"list11", u64_list(result.list11)}, {"list13", u64_list(result.list13)}};
}

Nu11Result nu11_from_json(const json& j)
{
    return {u64_vector(j.at("list11")), u64_vector(j.at("list13"))};
}

}  // namespace cullen::cli
