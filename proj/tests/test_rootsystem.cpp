#include "tiltchar/rootsystem.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace tiltchar;

TEST_CASE("irreducible data: Cartan matrices, rho, Coxeter numbers")
{
    auto a1 = build_root_system('A', 1);
    CHECK(a1->cartan == detail::IntMatrix{ { 2 } });
    CHECK(a1->rho == Weight{ 1 });
    CHECK(a1->coxeter_number == 2);
    REQUIRE(a1->positive_roots.size() == 1);
    CHECK(a1->positive_roots[0] == Weight{ 2 });

    auto a2 = build_root_system('A', 2);
    CHECK(a2->coxeter_number == 3);
    CHECK(a2->positive_roots.size() == 3);
    CHECK(a2->rho == Weight{ 1, 1 });

    auto g2 = build_root_system('G', 2);
    CHECK(g2->coxeter_number == 6);
    CHECK(g2->positive_roots.size() == 6);

    // positive root count = rank * h / 2 for each irreducible type
    const std::vector<std::pair<std::string, std::pair<Int, std::size_t>>> table = {
        { "A3", { 4, 6 } },   { "B2", { 4, 4 } },  { "B3", { 6, 9 } },
        { "C3", { 6, 9 } },   { "D4", { 6, 12 } }, { "E6", { 12, 36 } },
        { "E7", { 18, 63 } }, { "E8", { 30, 120 } }, { "F4", { 12, 24 } },
        { "G2", { 6, 6 } },
    };
    for (const auto& [label, expect] : table) {
        auto rs = build_root_system(label);
        INFO(label);
        CHECK(rs->coxeter_number == expect.first);
        CHECK(rs->positive_roots.size() == expect.second);
        CHECK(rs->positive_roots.size() * 2
              == static_cast<std::size_t>(rs->rank) * expect.first);
        CHECK(rs->rho.coords == std::vector<Int>(rs->rank, 1));
    }
}

TEST_CASE("invalid type/rank combinations are rejected")
{
    CHECK_THROWS_AS(build_root_system('B', 1), error);
    CHECK_THROWS_AS(build_root_system('D', 3), error);
    CHECK_THROWS_AS(build_root_system('E', 9), error);
    CHECK_THROWS_AS(build_root_system('F', 3), error);
    CHECK_THROWS_AS(build_root_system('G', 3), error);
    CHECK_THROWS_AS(build_root_system('H', 2), error);
    CHECK_THROWS_AS(build_root_system("A2y B3"), error);
    CHECK_THROWS_AS(build_root_system(""), error);
}

TEST_CASE("product systems concatenate factors")
{
    auto rs = build_root_system("A1xA2");
    CHECK(rs->rank == 3);
    CHECK(rs->label == "A1xA2");
    CHECK(rs->positive_roots.size() == 4);
    CHECK(rs->coxeter_number == 3);
    CHECK(rs->rho == Weight{ 1, 1, 1 });
    // per-factor alpha0 pairing, aggregated as the maximum
    CHECK(pairing_alpha0(Weight{ 5, 1, 1 }, *rs) == 5);
    CHECK(pairing_alpha0(Weight{ 1, 1, 1 }, *rs) == 2);
}

TEST_CASE("pairing against the highest short coroot")
{
    auto a1 = build_root_system('A', 1);
    CHECK(pairing_alpha0(Weight{ 7 }, *a1) == 7);

    auto a2 = build_root_system('A', 2);
    CHECK(pairing_alpha0(Weight{ 1, 1 }, *a2) == 2);
    CHECK(pairing_alpha0(a2->rho, *a2) == a2->coxeter_number - 1);

    // <rho, alpha_0^vee> = h - 1 in every type
    for (const std::string label : { "A4", "B3", "C4", "D5", "E6", "F4", "G2" }) {
        auto rs = build_root_system(label);
        INFO(label);
        CHECK(pairing_alpha0(rs->rho, *rs) == rs->coxeter_number - 1);
    }
}

TEST_CASE("make_dominant: representatives, parity, singularity")
{
    auto a1 = build_root_system('A', 1);
    auto r = make_dominant(Weight{ -3 }, *a1);
    CHECK(r.weight == Weight{ 3 });
    CHECK(r.sign == -1);
    CHECK_FALSE(r.singular);

    r = make_dominant(Weight{ 0 }, *a1);
    CHECK(r.weight == Weight{ 0 });
    CHECK(r.singular);

    auto a2 = build_root_system('A', 2);
    r = make_dominant(Weight{ -1, 2 }, *a2);
    CHECK(r.weight == Weight{ 1, 1 });
    CHECK(r.sign == -1);
    CHECK_FALSE(r.singular);
}

TEST_CASE("dual weights")
{
    auto a1 = build_root_system('A', 1);
    CHECK(dual_weight(Weight{ 5 }, *a1) == Weight{ 5 });

    auto a2 = build_root_system('A', 2);
    CHECK(dual_weight(Weight{ 2, 0 }, *a2) == Weight{ 0, 2 });

    auto b2 = build_root_system('B', 2);
    CHECK(dual_weight(Weight{ 3, 4 }, *b2) == Weight{ 3, 4 });

    CHECK_THROWS_AS(dual_weight(Weight{ -1, 0 }, *a2), error);

    // involution on random dominant weights, across several types
    std::mt19937 gen(20240817);
    for (const std::string label : { "A3", "D4", "E6", "G2" }) {
        auto rs = build_root_system(label);
        std::uniform_int_distribution<Int> coord(0, 6);
        for (int trial = 0; trial < 50; ++trial) {
            Weight w(std::vector<Int>(rs->rank, 0));
            for (int i = 0; i < rs->rank; ++i)
                w[i] = coord(gen);
            CHECK(dual_weight(dual_weight(w, *rs), *rs) == w);
        }
    }
}

TEST_CASE("dominance order")
{
    auto a1 = build_root_system('A', 1);
    CHECK(dominance_leq(Weight{ 2 }, Weight{ 4 }, *a1));
    CHECK_FALSE(dominance_leq(Weight{ 1 }, Weight{ 4 }, *a1)); // parity obstruction

    auto a2 = build_root_system('A', 2);
    CHECK(dominance_leq(Weight{ 0, 0 }, Weight{ 1, 1 }, *a2)); // difference alpha1+alpha2
    CHECK(dominance_leq(Weight{ 1, 1 }, Weight{ 1, 1 }, *a2));

    // antisymmetry on random pairs
    std::mt19937 gen(7);
    std::uniform_int_distribution<Int> coord(0, 5);
    auto b2 = build_root_system('B', 2);
    for (int trial = 0; trial < 200; ++trial) {
        Weight u{ coord(gen), coord(gen) }, v{ coord(gen), coord(gen) };
        if (dominance_leq(u, v, *b2) && dominance_leq(v, u, *b2))
            CHECK(u == v);
    }
}

namespace {

// test-local dominance via the hand-inverted Cartan matrices of A1 and A2,
// independent of the library's linear algebra
bool leq_a1(const Weight& a, const Weight& b)
{
    const Int d = b[0] - a[0];
    return d >= 0 && d % 2 == 0;
}

bool leq_a2(const Weight& a, const Weight& b)
{
    const Int d1 = b[0] - a[0], d2 = b[1] - a[1];
    const Int c1 = 2 * d1 + d2, c2 = d1 + 2 * d2;
    return c1 >= 0 && c2 >= 0 && c1 % 3 == 0 && c2 % 3 == 0;
}

} // namespace

TEST_CASE("dominant weights below a weight")
{
    auto a1 = build_root_system('A', 1);
    CHECK(dominant_weights_below(Weight{ 4 }, *a1)
          == std::vector<Weight>{ Weight{ 4 }, Weight{ 2 }, Weight{ 0 } });
    CHECK(dominant_weights_below(Weight{ 5 }, *a1)
          == std::vector<Weight>{ Weight{ 5 }, Weight{ 3 }, Weight{ 1 } });

    auto a2 = build_root_system('A', 2);
    CHECK(dominant_weights_below(Weight{ 1, 1 }, *a2)
          == std::vector<Weight>{ Weight{ 1, 1 }, Weight{ 0, 0 } });

    SECTION("completeness against a brute-force scan, rank <= 2")
    {
        for (Int m = 0; m <= 6; ++m) {
            const auto below = dominant_weights_below(Weight{ m }, *a1);
            std::vector<Weight> expect;
            for (Int s = 0; s <= 12; ++s)
                if (leq_a1(Weight{ s }, Weight{ m }))
                    expect.push_back(Weight{ s });
            CHECK(below.size() == expect.size());
            for (const auto& w : expect)
                CHECK(std::count(below.begin(), below.end(), w) == 1);
        }
        for (Int x = 0; x <= 6; ++x)
            for (Int y = 0; y <= 6; ++y) {
                const Weight la{ x, y };
                const auto below = dominant_weights_below(la, *a2);
                std::size_t count = 0;
                for (Int s = 0; s <= 20; ++s)
                    for (Int t = 0; t <= 20; ++t) {
                        const Weight w{ s, t };
                        if (leq_a2(w, la)) {
                            ++count;
                            CHECK(std::count(below.begin(), below.end(), w) == 1);
                        }
                    }
                CHECK(below.size() == count);
            }
    }

    SECTION("everything returned is dominant and below")
    {
        auto g2 = build_root_system('G', 2);
        for (const auto& w : dominant_weights_below(Weight{ 2, 1 }, *g2)) {
            CHECK(w.dominant());
            CHECK(dominance_leq(w, Weight{ 2, 1 }, *g2));
        }
    }

    SECTION("order is graded by height of the difference")
    {
        auto b2 = build_root_system('B', 2);
        const Weight la{ 2, 2 };
        const auto below = dominant_weights_below(la, *b2);
        CHECK(below.front() == la);
        CHECK(std::set<Weight>(below.begin(), below.end()).size() == below.size());
    }
}

TEST_CASE("restricted digit decomposition")
{
    CHECK(decompose_pr(Weight{ 7 }, 3, 1) == std::pair{ Weight{ 1 }, Weight{ 2 } });
    CHECK(decompose_pr(Weight{ 5 }, 2, 2) == std::pair{ Weight{ 1 }, Weight{ 1 } });
    CHECK(decompose_pr(Weight{ 1, 0 }, 2, 1) == std::pair{ Weight{ 1, 0 }, Weight{ 0, 0 } });

    // round trip on random digits
    std::mt19937 gen(99);
    auto b2 = build_root_system('B', 2);
    for (const Int p : { 2, 3, 5 })
        for (int r = 1; r <= 3; ++r) {
            const Int q = checked_pow(p, r);
            std::uniform_int_distribution<Int> lo(0, q - 1), hi(0, 4);
            for (int trial = 0; trial < 40; ++trial) {
                const Weight la0{ lo(gen), lo(gen) }, la1{ hi(gen), hi(gen) };
                const auto [b0, b1] = decompose_pr(la0 + q * la1, p, r);
                CHECK(b0 == la0);
                CHECK(b1 == la1);
            }
        }
}

TEST_CASE("scaled invariant form")
{
    // A2: (rho, rho) = 2 in the short-root normalization, scale 3
    auto a2 = build_root_system('A', 2);
    CHECK(form_pairing(a2->rho, a2->rho, *a2) == 2 * a2->form_scale);
    // G2 has determinant 1, so the form is unscaled; (rho,rho) = 14... check
    // against <rho, alpha^vee> sums instead: (la,mu) symmetric
    auto g2 = build_root_system('G', 2);
    CHECK(form_pairing(Weight{ 1, 0 }, Weight{ 0, 1 }, *g2)
          == form_pairing(Weight{ 0, 1 }, Weight{ 1, 0 }, *g2));
}
