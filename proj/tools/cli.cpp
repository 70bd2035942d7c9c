#include "cli.hpp"

#include "cache.hpp"
#include "serialize.hpp"
#include "verify.hpp"

#include "cullen/bounds.hpp"
#include "cullen/errors.hpp"
#include "cullen/lifting.hpp"
#include "cullen/parallel.hpp"
#include "cullen/recurrence.hpp"
#include "cullen/search.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace cullen::cli {

namespace {

enum Exit { Ok = 0, Mismatch = 1, BadInput = 2, Failure = 3 };

struct Globals {
    bool json = false;
    unsigned jobs = default_jobs();
    std::string cache_dir;
    unsigned precision = 50;
};

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, sep))
        out.push_back(item);
    return out;
}

std::int64_t to_i64(const std::string& s)
{
    const BigInt v = parse_integer(s);
    if (!v.fits_slong_p())
        throw InvalidArgument("'" + s + "' does not fit in 64 bits");
    return v.get_si();
}

std::uint64_t to_count(const std::string& s)
{
    const BigInt v = parse_integer(s);
    if (v < 0)
        throw InvalidArgument("'" + s + "' must be non-negative");
    return to_u64(v);
}

TernaryRecurrence parse_sequence(const std::string& name)
{
    if (name == "cullen")
        return cullen_sequence();
    if (name == "woodall")
        return woodall_sequence();
    if (name.rfind("custom:", 0) == 0) {
        const auto parts = split(name.substr(7), ',');
        if (parts.size() != 6)
            throw InvalidArgument("custom sequence needs r1,r2,r3,u0,u1,u2");
        std::array<std::int64_t, 6> v{};
        for (int i = 0; i < 6; ++i)
            v[i] = to_i64(parts[i]);
        return make_recurrence(v[0], v[1], v[2], v[3], v[4], v[5]);
    }
    throw InvalidArgument("unknown sequence '" + name + "' (cullen, woodall or custom:r1,r2,r3,u0,u1,u2)");
}

void emit(const Globals& g, const json& j, const std::string& text)
{
    if (g.json)
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text;
}

std::string interval_text(const Interval& x)
{
    return "[" + x.lower_string(12) + ", " + x.upper_string(12) + "]";
}

json interval_json(const Interval& x)
{
    return {{"lower", x.lower_string(20)}, {"upper", x.upper_string(20)}};
}

// lift

struct LiftArgs {
    std::uint64_t p = 3;
    std::string t_prime = "-1";
    std::string N = "1e66";
    std::optional<std::uint64_t> k;
    std::string resume;
    std::size_t length = 0;
};

int do_lift(const Globals& g, RunContext& ctx, const LiftArgs& a)
{
    const LiftTarget target(a.p, parse_integer(a.t_prime));
    if (a.k) {
        const auto sols = solutions_mod_prime_power(target, *a.k);
        std::ostringstream text;
        text << "solutions of n 2^n = " << a.t_prime << " mod " << a.p << "^" << *a.k << " (n mod " << a.p << "^"
             << *a.k << "*" << a.p - 1 << "):\n";
        for (const auto& s : sols)
            text << "  " << to_decimal(s) << '\n';
        emit(g, {{"p", std::to_string(a.p)}, {"tPrime", a.t_prime}, {"k", *a.k}, {"solutions", big_list(sols)}},
             text.str());
        return Ok;
    }

    json result;
    if (!a.resume.empty()) {
        std::ifstream in(a.resume);
        if (!in)
            throw InvalidArgument("cannot read " + a.resume);
        json previous;
        try {
            previous = json::parse(in);
        } catch (const json::exception& e) {
            throw InvalidArgument(a.resume + ": " + e.what());
        }
        CeilingOptions options;
        options.jobs = ctx.jobs;
        options.min_length = a.length;
        try {
            for (const auto& b : previous.at("bases"))
                options.resume.push_back(chain_from_json(b.at("chain")));
        } catch (const json::exception& e) {
            throw InvalidArgument(a.resume + ": " + e.what());
        }
        result = to_json(valuation_ceiling(target, parse_integer(a.N), options));
    } else {
        result = cached_ceiling(ctx, a.p, a.t_prime, a.N, a.length);
    }

    const auto r = ceiling_from_json(result);
    std::ostringstream text;
    text << "p = " << a.p << ", t' = " << a.t_prime << ", N = " << to_decimal(r.N) << '\n';
    text << "J = " << r.J << "  (nu_p(n 2^n - t') <= J for 0 <= n <= N)\n";
    for (const auto& b : r.bases) {
        text << "  n0 = " << to_decimal(b.chain.n0) << "  J_b = " << b.J;
        if (b.exact_root)
            text << "  exact root " << to_decimal(*b.exact_root);
        text << "\n    n_" << r.J << " = " << to_decimal(b.chain.index_at(r.J)) << '\n';
        if (a.length > r.J && b.chain.length() >= a.length)
            text << "    n_" << a.length << " = " << to_decimal(b.chain.index_at(a.length)) << '\n';
    }
    emit(g, result, text.str());
    return Ok;
}

// bounds

struct BoundsArgs {
    unsigned k = 2;
    std::uint64_t A = 1;
    std::uint64_t P = 7;
    std::string sequence = "cullen";
};

int do_bounds(const Globals& g, const BoundsArgs& a)
{
    const auto rec = parse_sequence(a.sequence);
    const auto prec = Precision::digits(g.precision);
    const auto gen = general_constants(a.k, a.A, rec, prec);
    const auto su = sunit_constants(gen, a.P);
    const Interval c3 = gen.c3(su.c5);

    json j = {
        {"sequence", a.sequence}, {"k", a.k}, {"A", a.A}, {"P", a.P}, {"Y", rec.Y()},
        {"c1", to_decimal(gen.c1)}, {"c2", interval_json(gen.c2)},
        {"n0", to_decimal(gen.n0)}, {"n1", to_decimal(gen.n1)}, {"c4", to_decimal(gen.c4)},
        {"c3AtC5", {{"value", interval_json(c3)}, {"use", "lower endpoint (c3 bounds P from below)"}}},
        {"c5", to_decimal(su.c5)}, {"c6", interval_json(su.c6)}, {"c7", interval_json(su.c7)},
        {"precisionDigits", g.precision},
    };
    std::ostringstream text;
    text << "sequence " << a.sequence << " (Y = " << rec.Y() << "), k = " << a.k << ", A = " << a.A
         << ", P = " << a.P << '\n'
         << "c1 = " << to_decimal(gen.c1) << '\n'
         << "c2 in " << interval_text(gen.c2) << "  (rounded up: " << gen.c2.upper_string(15) << ")\n"
         << "n0 = " << to_decimal(gen.n0) << '\n'
         << "n1 = " << to_decimal(gen.n1) << '\n'
         << "c4 = " << to_decimal(gen.c4) << '\n'
         << "c3(c5) in " << interval_text(c3) << "  (rounded down: " << c3.lower_string(15) << ")\n"
         << "c7 in " << interval_text(su.c7) << "  (rounded up)\n"
         << "c6 in " << interval_text(su.c6) << "  (rounded up)\n"
         << "c5 = " << to_decimal(su.c5) << '\n';
    emit(g, j, text.str());
    return Ok;
}

// search

struct SearchArgs {
    std::uint64_t n_max = 1000;
    std::uint64_t m1_max = 60;
    std::string basis = "2,3,5,7";
    bool no_prune = false;
};

int do_search(const Globals& g, const SearchArgs& a)
{
    std::vector<std::uint64_t> primes;
    for (const auto& s : split(a.basis, ','))
        primes.push_back(to_count(s));
    const SmoothnessBasis basis(primes);
    const auto sols = solve_cullen(a.n_max, a.m1_max, basis, {g.jobs, !a.no_prune});

    json list = json::array();
    std::ostringstream text;
    text << "n <= " << a.n_max << ", m1 <= " << a.m1_max << ", basis {" << a.basis << "}\n";
    for (const auto& s : sols) {
        list.push_back(to_json(s, basis));
        text << (s.degenerate ? "  degenerate  " : "  solution    ") << "C_" << s.n << " = ";
        for (auto m : s.ms)
            text << m << "! + ";
        text << to_decimal(s.s) << '\n';
    }
    emit(g, {{"nMax", std::to_string(a.n_max)}, {"m1Max", std::to_string(a.m1_max)}, {"solutions", list}},
         text.str());
    return Ok;
}

// scan

struct ScanArgs {
    std::uint64_t p = 3;
    std::string t = "0";
    std::uint64_t from = 1;
    std::uint64_t to = 236898;
    std::optional<std::uint64_t> threshold;
    std::optional<unsigned> vcap;
    bool nu11 = false;
    std::string box;
};

int do_scan(const Globals& g, RunContext& ctx, const ScanArgs& a)
{
    if (!a.box.empty()) {
        const auto parts = split(a.box, ',');
        if (parts.size() != 3)
            throw InvalidArgument("--box takes a,b,c");
        const auto r = box_from_json(cached_box(ctx, static_cast<unsigned>(to_count(parts[0])),
                                                static_cast<unsigned>(to_count(parts[1])),
                                                static_cast<unsigned>(to_count(parts[2]))));
        std::ostringstream text;
        text << "max nu_2(3^a 5^b 7^c - 1) over box (" << a.box << ") = " << r.valuation << " at (" << r.witness[0]
             << "," << r.witness[1] << "," << r.witness[2] << ")\n";
        emit(g, to_json(r), text.str());
        return Ok;
    }
    if (a.nu11) {
        const auto r = nu11_from_json(cached_nu11(ctx, a.from, a.to));
        std::ostringstream text;
        text << "nu_11 >= 4:";
        for (auto n : r.list11)
            text << ' ' << n;
        text << "\nnu_13 >= 3 among them:";
        for (auto n : r.list13)
            text << ' ' << n;
        text << '\n';
        emit(g, to_json(r), text.str());
        return Ok;
    }
    const auto r = scan_from_json(cached_scan(ctx, a.p, a.t, a.from, a.to, a.vcap, a.threshold));
    std::ostringstream text;
    text << "max nu_" << a.p << "(C_n - " << a.t << ") over " << a.from << " <= n <= " << a.to << ": "
         << r.max.to_string() << " at";
    for (auto n : r.argmax)
        text << ' ' << n;
    text << '\n';
    if (a.threshold) {
        text << "n with valuation >= " << *a.threshold << ':';
        for (auto n : r.at_least)
            text << ' ' << n;
        text << '\n';
    }
    if (!r.zeros.empty()) {
        text << "exact zeros:";
        for (auto n : r.zeros)
            text << ' ' << n;
        text << '\n';
    }
    emit(g, to_json(r), text.str());
    return Ok;
}

int do_woodall(const Globals& g, std::uint64_t n_max)
{
    const auto hits = woodall_check(n_max, g.jobs);
    json list = json::array();
    std::ostringstream text;
    text << "W_n = 1! + s, n <= " << n_max << ":\n";
    for (const auto& h : hits) {
        list.push_back({{"n", std::to_string(h.n)}, {"s", to_decimal(h.s)}});
        text << "  n = " << h.n << ", s = " << to_decimal(h.s) << '\n';
    }
    emit(g, {{"nMax", std::to_string(n_max)}, {"hits", list}}, text.str());
    return Ok;
}

int do_verify(const Globals& g, RunContext& ctx, const std::string& profile, const std::string& out)
{
    const json report = run_verify(profile == "full" ? Profile::Full : Profile::Quick, ctx);
    if (const auto spot = ctx.cache->spot_check())
        std::cerr << "cache spot check: " << spot->command << ' ' << spot->params << " -> "
                  << (spot->identical ? "identical" : "DIFFERENT") << '\n';
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f)
            throw InvalidArgument("cannot write " + out);
        f << report.dump(2) << '\n';
    }
    emit(g, report, render_report(report));
    return has_mismatch(report) ? Mismatch : Ok;
}

std::string markdown(const json& report)
{
    std::ostringstream out;
    out << "| # | check | status | expected | computed |\n|---|---|---|---|---|\n";
    auto show = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (const auto& r : report.at("checks"))
        out << "| " << r.at("criterion").get<int>() << " | " << r.at("id").get<std::string>() << " | "
            << r.at("status").get<std::string>() << " | " << show(r.at("expected")) << " | "
            << show(r.at("computed")) << " |\n";
    return out.str();
}

int do_report(const Globals& g, const std::string& input, const std::string& format)
{
    json report;
    try {
        if (input.empty() || input == "-") {
            report = json::parse(std::cin);
        } else {
            std::ifstream in(input);
            if (!in)
                throw InvalidArgument("cannot read " + input);
            report = json::parse(in);
        }
        if (g.json || format == "json")
            std::cout << report.dump(2) << '\n';
        else if (format == "markdown")
            std::cout << markdown(report);
        else
            std::cout << render_report(report);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed report: ") + e.what());
    }
    return has_mismatch(report) ? Mismatch : Ok;
}

}  // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Cullen numbers of the form m1! + m2! + s with s a {2,3,5,7}-unit"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--cache-dir", g.cache_dir, "result cache directory (else $CACHE_DIR, else none)");
    app.add_option("--precision", g.precision, "decimal digits for interval arithmetic")->check(CLI::Range(20u, 10000u));

    auto* lift = app.add_subcommand("lift", "valuation ceiling for n 2^n = t' by Hensel lifting");
    LiftArgs la;
    lift->add_option("--p", la.p, "odd prime")->required();
    lift->add_option("--t-prime", la.t_prime, "target t' (use --t-prime=-1 for negatives)");
    lift->add_option("--N", la.N, "index bound, e.g. 1e66");
    lift->add_option("--k", la.k, "list the solutions mod p^k (p-1) instead");
    lift->add_option("--resume", la.resume, "continue the chains of an earlier --json output");
    lift->add_option("--length", la.length, "extend every chain to at least this many steps");

    auto* bounds = app.add_subcommand("bounds", "explicit constants c1..c7, n0, n1");
    BoundsArgs ba;
    bounds->add_option("--k", ba.k, "number of factorials")->check(CLI::Range(1u, 64u));
    bounds->add_option("--A", ba.A, "bound on the factorial coefficients")->check(CLI::Range(1ull, 1ull << 62));
    bounds->add_option("--P", ba.P, "largest prime of the unit group");
    bounds->add_option("--sequence", ba.sequence, "cullen, woodall or custom:r1,r2,r3,u0,u1,u2");

    auto* search = app.add_subcommand("search", "all C_n = m1! + m2! + s in a range");
    SearchArgs sa;
    search->add_option("--n-max", sa.n_max);
    search->add_option("--m1-max", sa.m1_max);
    search->add_option("--basis", sa.basis, "comma-separated primes");
    search->add_flag("--no-prune", sa.no_prune, "skip the n versus m1 index inequality");

    auto* scan = app.add_subcommand("scan", "p-adic valuation scans");
    ScanArgs sc;
    scan->add_option("--p", sc.p);
    scan->add_option("--t", sc.t, "constant subtracted from C_n");
    scan->add_option("--from", sc.from);
    scan->add_option("--to", sc.to);
    scan->add_option("--threshold", sc.threshold, "also list n reaching this valuation");
    scan->add_option("--vcap", sc.vcap, "word-size valuation cap before escalation");
    scan->add_flag("--nu11", sc.nu11, "the nu_11 / nu_13 case over [from, to]");
    scan->add_option("--box", sc.box, "a,b,c: max nu_2(3^a 5^b 7^c - 1) over the box");

    auto* woodall = app.add_subcommand("woodall", "W_n = 1! + s with s a {2,3,5,7}-unit");
    std::uint64_t woodall_max = 10000;
    woodall->add_option("--n-max", woodall_max)->check(CLI::Range(1ull, 100000ull));

    auto* verify = app.add_subcommand("verify", "recompute every published value");
    std::string profile = "quick", out;
    verify->add_option("--profile", profile)->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--out", out, "also write the JSON report here");

    auto* report = app.add_subcommand("report", "render a saved verify report");
    std::string input, format = "text";
    report->add_option("--input", input, "report file, - for stdin");
    report->add_option("--format", format)->check(CLI::IsMember({"text", "markdown", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : BadInput;
    }

    try {
        ResultCache cache(resolve_cache_dir(g.cache_dir));
        RunContext ctx{g.jobs, Precision::digits(g.precision), &cache};
        if (*lift)
            return do_lift(g, ctx, la);
        if (*bounds)
            return do_bounds(g, ba);
        if (*search)
            return do_search(g, sa);
        if (*scan)
            return do_scan(g, ctx, sc);
        if (*woodall)
            return do_woodall(g, woodall_max);
        if (*verify)
            return do_verify(g, ctx, profile, out);
        return do_report(g, input, format);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadInput;
    } catch (const DegenerateRecurrence& e) {
        std::cerr << "degenerate recurrence: " << e.what() << '\n';
        return BadInput;
    } catch (const RatioUnit& e) {
        std::cerr << "root ratio is a unit: " << e.what() << '\n';
        return BadInput;
    } catch (const IndexTooSmall& e) {
        std::cerr << "error: " << e.what() << '\n';
        return BadInput;
    } catch (const PreconditionViolated& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return BadInput;
    } catch (const RangeTooLarge& e) {
        std::cerr << "range too large: " << e.what() << '\n';
        return BadInput;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return BadInput;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return Failure;
    }
}

}  // namespace cullen::cli
