#include "cullen/errors.hpp"
#include "cullen/lifting.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace cullen;

namespace {

std::vector<std::uint64_t> as_u64(const std::vector<BigInt>& xs)
{
    std::vector<std::uint64_t> out;
    for (const auto& x : xs)
        out.push_back(x.get_ui());
    return out;
}

// max nu_p(n 2^n - t') over 1 <= n <= N, skipping exact roots.
long scan_max(unsigned long p, long t_prime, unsigned long N)
{
    long best = 0;
    BigInt p2 = 2;
    for (unsigned long n = 1; n <= N; ++n, p2 *= 2) {
        const long v = oracle::valuation(BigInt(n) * p2 - t_prime, p);
        best = std::max(best, v);
    }
    return best;
}

}  // namespace

TEST_CASE("base residues for C_n = 0 mod p")
{
    CHECK(base_solutions(cullen_target(3, 0)) == std::vector<std::uint64_t>{1, 2});
    CHECK(base_solutions(cullen_target(5, 0)) == std::vector<std::uint64_t>{3, 4, 6, 17});
    CHECK(base_solutions(cullen_target(7, 0)) == std::vector<std::uint64_t>{5, 6, 10, 26, 27, 31});
    CHECK_THROWS_AS(LiftTarget(2, -1), InvalidArgument);
    CHECK_THROWS_AS(LiftTarget(9, -1), InvalidArgument);
}

TEST_CASE("one lift step for p = 3")
{
    const LiftTarget target(3, -1);
    // brute force over 0..17 for 9 | n 2^n + 1 with n = 1 mod 2
    std::vector<unsigned long> hits;
    for (unsigned long n = 0; n < 18; ++n)
        if (n % 6 == 1 && (BigInt(n) * oracle::power(2, n) + 1) % 9 == 0)
            hits.push_back(n);
    REQUIRE(hits.size() == 1);
    const auto chain = lift_step(start_chain(target, 1), target);
    CHECK(chain.nj == hits[0]);
    CHECK(chain.length() == 1);
    CHECK((chain.nj == 1 || chain.nj == 7 || chain.nj == 13));
}

TEST_CASE("chain soundness and monotonicity")
{
    for (std::uint64_t p : {3, 5, 7, 11, 13}) {
        for (long t : {-1L, 0L, 1L, 23L, -1000L}) {
            const LiftTarget target(p, t);
            for (auto n0 : base_solutions(target)) {
                LiftChain chain = start_chain(target, n0);
                for (int step = 0; step < 25; ++step) {
                    const LiftChain next = lift_step(chain, target);
                    REQUIRE(next.nj >= chain.nj);
                    REQUIRE(next.index_at(next.length()) == next.nj);
                    // independent check at modulus p^(j+1)
                    const BigInt modulus = oracle::power(static_cast<long>(p), next.length() + 1);
                    BigInt two;
                    mpz_powm(two.get_mpz_t(), BigInt(2).get_mpz_t(), next.nj.get_mpz_t(), modulus.get_mpz_t());
                    REQUIRE((next.nj * two - t) % modulus == 0);
                    chain = next;
                }
                // n_j < (p-1) p^(j+1)
                REQUIRE(chain.nj < BigInt(p - 1) * oracle::power(static_cast<long>(p), chain.length() + 1));
            }
        }
    }
}

TEST_CASE("exactly p - 1 solutions, lifted and brute-forced")
{
    std::mt19937_64 rng(31);
    for (std::uint64_t p : {3, 5, 7, 11}) {
        for (std::uint64_t k : {1, 2, 3}) {
            for (int i = 0; i < 25; ++i) {
                const long t = static_cast<long>(rng() % 2000001) - 1000000;
                const LiftTarget target(p, t);
                const auto lifted = solutions_mod_prime_power(target, k);
                REQUIRE(lifted.size() == p - 1);
                REQUIRE(lifted == brute_force_solutions(target, k));
            }
        }
    }
    CHECK(brute_force_solutions(LiftTarget(3, 5), 3).size() == 2);
    CHECK(brute_force_solutions(LiftTarget(7, 0), 2).size() == 6);
    CHECK(as_u64(brute_force_solutions(LiftTarget(5, -1), 1)) == std::vector<std::uint64_t>{3, 4, 6, 17});
    CHECK(as_u64(solutions_mod_prime_power(LiftTarget(5, -1), 1)) == std::vector<std::uint64_t>{3, 4, 6, 17});
    const auto two = solutions_mod_prime_power(LiftTarget(3, -1), 2);
    CHECK(two.size() == 2);
    for (const auto& n : two)
        CHECK(n < 18);
}

TEST_CASE("solver limits")
{
    CHECK_THROWS_AS(brute_force_solutions(LiftTarget(3, -1), 15), RangeTooLarge);
    CHECK_THROWS_AS(solutions_mod_prime_power(LiftTarget(3, -1), 30000), BudgetExceeded);
    CHECK_THROWS_AS(solutions_mod_prime_power(LiftTarget(3, -1), 0), InvalidArgument);
    CHECK_NOTHROW(solutions_mod_prime_power(LiftTarget(3, -1), 300));
}

TEST_CASE("ceiling at tiny N")
{
    const auto r = valuation_ceiling(LiftTarget(3, -1), 5);
    // n 2^n + 1 for n = 1..5: 3, 9, 25, 65, 161 -> max nu_3 = 2
    CHECK(scan_max(3, -1, 5) == 2);
    CHECK(r.J == 2);
}

TEST_CASE("ceiling bounds a direct scan")
{
    // Every index up to N has valuation <= J, and the bound is attained.
    constexpr unsigned long N = 100000;
    for (std::uint64_t p : {3, 5, 7}) {
        for (long t : {-1L, 1L, 23L}) {
            const auto r = valuation_ceiling(LiftTarget(p, t), N);
            const long observed = scan_max(p, t, N);
            CAPTURE(p);
            CAPTURE(t);
            CHECK(observed == static_cast<long>(r.J));
        }
    }
}

TEST_CASE("ceiling with an exact root")
{
    // t' = 0: n = 0 solves n 2^n = 0 exactly; every other n is bounded.
    constexpr unsigned long N = 100000;
    for (std::uint64_t p : {3, 5, 7}) {
        const auto r = valuation_ceiling(LiftTarget(p, 0), N);
        bool saw_root = false;
        for (const auto& b : r.bases)
            if (b.exact_root) {
                saw_root = true;
                CHECK(*b.exact_root == 0);
            }
        CHECK(saw_root);
        CHECK(scan_max(p, 0, N) <= static_cast<long>(r.J));
    }
    // t' = 24 = 3 * 2^3
    const auto r = valuation_ceiling(LiftTarget(5, 24), 50000);
    int roots = 0;
    for (const auto& b : r.bases)
        roots += b.exact_root.has_value();
    CHECK(roots == 1);
    long best = 0;
    BigInt p2 = 2;
    for (unsigned long n = 1; n <= 50000; ++n, p2 *= 2)
        if (n != 3)
            best = std::max(best, oracle::valuation(BigInt(n) * p2 - 24, 5));
    CHECK(best <= static_cast<long>(r.J));
}

TEST_CASE("lifted indices at N = 10^66")
{
    const BigInt N = parse_integer("1e66");
    const auto r3 = valuation_ceiling(cullen_target(3, 0), N);
    CHECK(r3.J == 138);
    CHECK(r3.indices_at(138) ==
          std::vector<BigInt>{BigInt("2757614145106930270081057081158539402776859635842902126805823275421"),
                              BigInt("3748965004946665018258752266935970257963103092086460066359587819606")});
    // base 2 has n_137 <= N, so its valuation reaches 138
    CHECK(r3.bases[1].chain.index_at(137) <= N);
    {
        const BigInt n = r3.bases[1].chain.index_at(137);
        const BigInt modulus = oracle::power(3, 138);
        BigInt two;
        mpz_powm(two.get_mpz_t(), BigInt(2).get_mpz_t(), n.get_mpz_t(), modulus.get_mpz_t());
        CHECK((n * two + 1) % modulus == 0);
    }

    const auto r5 = valuation_ceiling(cullen_target(5, 0), N);
    CHECK(r5.J == 93);
    CHECK(r5.indices_at(93) ==
          std::vector<BigInt>{BigInt("1244650605196477470301580667824245061531559793720522502019265072203"),
                              BigInt("1795694848152108430374603592113726096902379193508535956140707676264"),
                              BigInt("1358767469241923119082399935940451457976880852577230089606670816066"),
                              BigInt("1924318815520452781692680587531291126323690582766162635381273157717")});

    CeilingOptions options;
    options.min_length = 78;
    const auto r7 = valuation_ceiling(cullen_target(7, 0), N, options);
    CHECK(r7.J == 77);
    CHECK(r7.indices_at(78) ==
          std::vector<BigInt>{BigInt("23376667116957912273395168878053596583934978592913658754638298386469"),
                              BigInt("26944746689754581236007271009151875823474002652201195796068635289134"),
                              BigInt("24069582378334816208567848014057127858216459565384781083488608965992"),
                              BigInt("6004003289610317916795511974189307812131311913908480006270103623040"),
                              BigInt("9572082862406986879407614105287587051670335973196017047700440525705"),
                              BigInt("6696918550987221851968191110192839086412792886379602335120414202563")});
    for (const auto& b : r7.bases)
        CHECK(b.chain.index_at(77) > N);
}

TEST_CASE("resume continues a stored chain")
{
    const LiftTarget target = cullen_target(5, 0);
    const BigInt N = parse_integer("1e40");
    const auto cold = valuation_ceiling(target, N);

    CeilingOptions options;
    for (auto n0 : base_solutions(target)) {
        LiftChain chain = start_chain(target, n0);
        for (int i = 0; i < 20; ++i)
            chain = lift_step(chain, target);
        options.resume.push_back(chain_from_json(nlohmann::json::parse(chain_to_json(chain).dump())));
    }
    const auto warm = valuation_ceiling(target, N, options);
    CHECK(warm.J == cold.J);
    for (std::size_t i = 0; i < cold.bases.size(); ++i)
        CHECK(warm.bases[i].chain.nj == cold.bases[i].chain.nj);

    options.resume[0].nj += 1;
    CHECK_THROWS_AS(valuation_ceiling(target, N, options), InvalidArgument);
}
