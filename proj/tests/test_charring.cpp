#include "tiltchar/charring.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <random>

using namespace tiltchar;

namespace {

// test-local orbit expansion: close under the reflection formula directly,
// independent of the library's traversal
std::set<Weight> naive_orbit(const Weight& start, const RootSystemData& rs)
{
    std::set<Weight> seen{ start };
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& w : std::vector<Weight>(seen.begin(), seen.end())) {
            for (std::size_t i = 0; i < w.rank(); ++i) {
                Weight v = w;
                for (std::size_t k = 0; k < w.rank(); ++k)
                    v[k] -= w[i] * rs.cartan[k][i];
                if (seen.insert(v).second)
                    grew = true;
            }
        }
    }
    return seen;
}

Character random_character(const RootSystemPtr& rs, std::mt19937& gen, int orbits, Int maxc)
{
    std::uniform_int_distribution<Int> coord(0, maxc), mult(1, 3);
    WeightMap m;
    for (int i = 0; i < orbits; ++i) {
        Weight w(std::vector<Int>(rs->rank, 0));
        for (int k = 0; k < rs->rank; ++k)
            w[k] = coord(gen);
        m[w] = mult(gen);
    }
    return Character(rs, std::move(m));
}

} // namespace

TEST_CASE("character construction prunes zeros and rejects bad keys")
{
    auto a1 = build_root_system('A', 1);
    Character c(a1, { { Weight{ 2 }, 1 }, { Weight{ 0 }, 0 } });
    CHECK(c.support_size() == 1);
    CHECK(c.at(Weight{ 0 }) == 0);
    CHECK_THROWS_AS(Character(a1, { { Weight{ -1 }, 1 } }), error);
}

TEST_CASE("additive structure")
{
    auto a1 = build_root_system('A', 1);
    const Character e0 = Character::orbit(a1, Weight{ 0 });
    CHECK(char_add(e0, e0).at(Weight{ 0 }) == 2);

    const Character a = Character(a1, { { Weight{ 3 }, 2 }, { Weight{ 1 }, 1 } });
    CHECK(char_add(a, Character::zero(a1)) == a);
    CHECK(char_add(char_scale(-1, a), a) == Character::zero(a1));
    CHECK(char_sub(a, a).empty());
}

TEST_CASE("products expand orbits and convolve")
{
    auto a1 = build_root_system('A', 1);
    const Character l1 = Character::orbit(a1, Weight{ 1 }); // e(1)+e(-1)
    const Character sq = char_mul(l1, l1);
    CHECK(sq == Character(a1, { { Weight{ 2 }, 1 }, { Weight{ 0 }, 2 } }));

    // L(1) * L(1)^(1) = e3+e1+e-1+e-3
    const Character tw = char_mul(l1, frobenius_twist(l1, 2, 1));
    CHECK(tw == Character(a1, { { Weight{ 3 }, 1 }, { Weight{ 1 }, 1 } }));

    const Character a = Character(a1, { { Weight{ 4 }, 2 }, { Weight{ 2 }, 1 } });
    CHECK(char_mul(a, Character::orbit(a1, Weight{ 0 })) == a);

    CHECK_THROWS_AS(char_mul(a, Character::orbit(build_root_system('A', 2), Weight{ 0, 0 })),
                    error);
}

TEST_CASE("frobenius twist scales weights")
{
    auto a1 = build_root_system('A', 1);
    const Character c(a1, { { Weight{ 1 }, 1 } });
    CHECK(frobenius_twist(c, 2, 1) == Character(a1, { { Weight{ 2 }, 1 } }));
    CHECK(frobenius_twist(c, 5, 0) == c);
    const Character d(a1, { { Weight{ 1 }, 1 }, { Weight{ 0 }, 2 } });
    CHECK(frobenius_twist(d, 3, 2)
          == Character(a1, { { Weight{ 9 }, 1 }, { Weight{ 0 }, 2 } }));
}

TEST_CASE("highest weight extraction")
{
    auto a1 = build_root_system('A', 1);
    const Character c(a1, { { Weight{ 4 }, 1 }, { Weight{ 2 }, 1 }, { Weight{ 0 }, 1 } });
    CHECK(highest_weight(c) == Weight{ 4 });

    auto a2 = build_root_system('A', 2);
    const Character d(a2, { { Weight{ 1, 1 }, 1 }, { Weight{ 0, 0 }, 2 } });
    CHECK(highest_weight(d) == Weight{ 1, 1 });

    // [2] and [1] are incomparable in rank 1 (parity)
    const Character e(a1, { { Weight{ 2 }, 1 }, { Weight{ 1 }, 1 } });
    CHECK_THROWS_AS(highest_weight(e), error);
    CHECK_THROWS_AS(highest_weight(Character::zero(a1)), error);
}

TEST_CASE("dimension counts orbit points")
{
    auto a1 = build_root_system('A', 1);
    CHECK(dim(Character::orbit(a1, Weight{ 7 })) == 2);
    CHECK(dim(Character::orbit(a1, Weight{ 0 })) == 1);
    // weights of nabla(4): e4+e2+e0+e-2+e-4
    CHECK(dim(Character(a1, { { Weight{ 4 }, 1 }, { Weight{ 2 }, 1 }, { Weight{ 0 }, 1 } }))
          == 5);

    auto a2 = build_root_system('A', 2);
    CHECK(dim(Character(a2, { { Weight{ 1, 1 }, 1 }, { Weight{ 0, 0 }, 2 } })) == 8);
}

TEST_CASE("ring axioms on random characters")
{
    std::mt19937 gen(20240102);
    for (const std::string label : { "A1", "A2", "B2" }) {
        auto rs = build_root_system(label);
        for (int trial = 0; trial < 12; ++trial) {
            const Character a = random_character(rs, gen, 2, 3);
            const Character b = random_character(rs, gen, 2, 3);
            const Character c = random_character(rs, gen, 1, 2);
            CHECK(char_mul(a, b) == char_mul(b, a));
            CHECK(char_mul(char_mul(a, b), c) == char_mul(a, char_mul(b, c)));
            CHECK(char_mul(a, char_add(b, c))
                  == char_add(char_mul(a, b), char_mul(a, c)));
            CHECK(dim(char_mul(a, b)) == dim(a) * dim(b));
            CHECK(dim(frobenius_twist(a, 3, 1)) == dim(a));
            CHECK(frobenius_twist(char_mul(a, b), 2, 1)
                  == char_mul(frobenius_twist(a, 2, 1), frobenius_twist(b, 2, 1)));
        }
    }
}

TEST_CASE("product agrees with a naive convolution")
{
    std::mt19937 gen(5150);
    for (const std::string label : { "A1", "A2", "G2" }) {
        auto rs = build_root_system(label);
        for (int trial = 0; trial < 6; ++trial) {
            const Character a = random_character(rs, gen, 2, 2);
            const Character b = random_character(rs, gen, 2, 2);
            std::map<Weight, Int> fa, fb, prod;
            for (const auto& [w, m] : a.mults())
                for (const auto& v : naive_orbit(w, *rs))
                    fa[v] = m;
            for (const auto& [w, m] : b.mults())
                for (const auto& v : naive_orbit(w, *rs))
                    fb[v] = m;
            for (const auto& [x, mx] : fa)
                for (const auto& [y, my] : fb)
                    prod[x + y] += mx * my;
            const Character got = char_mul(a, b);
            for (const auto& [w, m] : prod)
                if (w.dominant())
                    CHECK(got.at(w) == m);
            for (const auto& [w, m] : got.mults())
                CHECK(prod[w] == m);
        }
    }
}

TEST_CASE("full expansion is symmetric under the orbit")
{
    auto a1 = build_root_system('A', 1);
    const auto full
        = full_weight_multiplicities(Character(a1, { { Weight{ 3 }, 2 }, { Weight{ 1 }, 1 } }));
    CHECK(full.size() == 4);
    CHECK(full.at(Weight{ -3 }) == 2);
    CHECK(full.at(Weight{ -1 }) == 1);
}

TEST_CASE("overflow is detected, not wrapped")
{
    auto a1 = build_root_system('A', 1);
    const Int big = std::numeric_limits<Int>::max() / 2 + 1;
    const Character huge(a1, { { Weight{ 1 }, big } });
    CHECK_THROWS_AS(char_scale(3, huge), overflow_error);
    CHECK_THROWS_AS(char_mul(huge, huge), overflow_error);
    CHECK_THROWS_AS(dim(huge), overflow_error);
}
