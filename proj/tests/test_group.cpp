#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "test_groups.hpp"

#include "convchar/group.hpp"

using namespace convchar;

namespace {

GroupElement el(std::vector<int> c) { return GroupElement{std::move(c)}; }

bool near(complex a, complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_SUITE("group") {

TEST_CASE("parse and spec") {
    const auto g = FiniteAbelianGroup::parse("4x3");
    CHECK(g.factors() == std::vector<int>{4, 3});
    CHECK(g.order() == 12);
    CHECK(g.spec() == "4x3");
    CHECK(FiniteAbelianGroup::parse("7").order() == 7);
    CHECK(FiniteAbelianGroup::parse("1").order() == 1);
    CHECK(FiniteAbelianGroup({}).spec() == "1");
    for (const char* bad : {"", "x", "4x", "0", "4x-1", "a", "4 x3", "4x3x"}) {
        CHECK_THROWS_AS(FiniteAbelianGroup::parse(bad), std::invalid_argument);
    }
    CHECK_THROWS_AS(FiniteAbelianGroup({3, 0}), std::invalid_argument);
}

TEST_CASE("element enumeration is lexicographic, first factor most significant") {
    const FiniteAbelianGroup g({2, 3});
    CHECK(g.element(0) == el({0, 0}));
    CHECK(g.element(1) == el({0, 1}));
    CHECK(g.element(3) == el({1, 0}));
    CHECK(g.element(5) == el({1, 2}));
    for (std::size_t i = 0; i < g.order(); ++i) CHECK(g.index_of(g.element(i)) == i);
    CHECK_THROWS(g.element(6));
}

TEST_CASE("add") {
    const FiniteAbelianGroup z4({4});
    CHECK(add(z4, el({3}), el({2})) == el({1}));
    const FiniteAbelianGroup z2z3({2, 3});
    CHECK(add(z2z3, el({1, 2}), el({1, 2})) == el({0, 1}));
    for (const auto& g : testing::groups_up_to(24)) {
        for (std::size_t i = 0; i < g.order(); ++i) CHECK(add(g, g.element(i), g.zero()) == g.element(i));
    }
    CHECK_THROWS_AS(add(z2z3, el({1}), el({1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(add(z2z3, el({2, 0}), el({1, 2})), std::invalid_argument);
}

TEST_CASE("neg") {
    CHECK(neg(FiniteAbelianGroup({5}), el({2})) == el({3}));
    CHECK(neg(FiniteAbelianGroup({2}), el({1})) == el({1}));
    for (const auto& g : testing::groups_up_to(24)) {
        for (std::size_t i = 0; i < g.order(); ++i) {
            CHECK(neg(g, neg(g, g.element(i))) == g.element(i));
            CHECK(g.neg_index(i) == oracle::neg(g.factors(), i));
        }
    }
}

TEST_CASE("index-level law agrees with the coordinate oracle") {
    for (const auto& g : testing::groups_up_to(24)) {
        for (std::size_t a = 0; a < g.order(); ++a)
            for (std::size_t b = 0; b < g.order(); ++b) {
                REQUIRE(g.add_index(a, b) == oracle::add(g.factors(), a, b));
                REQUIRE(g.index_of(g.add(g.element(a), g.element(b))) == g.add_index(a, b));
            }
    }
}

TEST_CASE("char_eval") {
    const FiniteAbelianGroup z2({2}), z4({4});
    CHECK(near(char_eval(z2, DualCharacter{{1}}, el({1})), -1.0));
    CHECK(near(char_eval(z4, DualCharacter{{1}}, el({1})), complex(0, 1)));
    for (const auto& g : testing::groups_up_to(24)) {
        for (const auto& d : enumerate_duals(g)) {
            CHECK(char_eval(g, d, g.zero()) == complex(1.0, 0.0));
        }
    }
}

TEST_CASE("character invariants: unit modulus and multiplicativity") {
    for (const auto& g : testing::groups_up_to(24)) {
        for (std::size_t d = 0; d < g.order(); ++d)
            for (std::size_t x = 0; x < g.order(); ++x) {
                REQUIRE(std::abs(std::abs(g.character(d, x)) - 1.0) <= 1e-12);
                for (std::size_t y = 0; y < g.order(); ++y) {
                    REQUIRE(near(g.character(d, g.add_index(x, y)), g.character(d, x) * g.character(d, y)));
                }
            }
    }
}

TEST_CASE("enumerate_duals") {
    const auto z2 = enumerate_duals(FiniteAbelianGroup({2}));
    REQUIRE(z2.size() == 2);
    CHECK(z2[0] == DualCharacter{{0}});
    CHECK(z2[1] == DualCharacter{{1}});
    CHECK(enumerate_duals(FiniteAbelianGroup({2, 2})).size() == 4);

    // Z_6: full character table, rows pairwise distinct.
    const FiniteAbelianGroup z6({6});
    const auto duals = enumerate_duals(z6);
    REQUIRE(duals.size() == 6);
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = a + 1; b < 6; ++b) {
            double diff = 0.0;
            for (std::size_t x = 0; x < 6; ++x)
                diff = std::max(diff, std::abs(char_eval(z6, duals[a], z6.element(x)) -
                                               char_eval(z6, duals[b], z6.element(x))));
            CHECK(diff > 0.5);
        }
}

TEST_CASE("character tables are injective and orthogonal up to order 64") {
    for (const auto& g : testing::groups_up_to(64)) {
        const std::size_t n = g.order();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                complex inner{};
                double diff = 0.0;
                for (std::size_t x = 0; x < n; ++x) {
                    inner += g.character(a, x) * std::conj(g.character(b, x));
                    diff = std::max(diff, std::abs(g.character(a, x) - g.character(b, x)));
                }
                const double expected = a == b ? static_cast<double>(n) : 0.0;
                REQUIRE(std::abs(inner - expected) <= 1e-9);
                if (a != b) REQUIRE(diff > 0.0);
            }
    }
}

TEST_CASE("characters match the defining formula") {
    for (const auto& g : testing::groups_up_to(24)) {
        for (std::size_t d = 0; d < g.order(); ++d)
            for (std::size_t x = 0; x < g.order(); ++x)
                REQUIRE(near(g.character(d, x), oracle::character(g.factors(), d, x)));
    }
}

TEST_CASE("enumerate_cosine_class counts") {
    // Orbits of negation, by brute force: Z_4 {0},{1,3},{2}; Z_2 {0},{1}; Z_5 {0},{1,4},{2,3}.
    const auto z4 = enumerate_cosine_class(FiniteAbelianGroup({4}));
    REQUIRE(z4.size() == 3);
    CHECK(z4[0].representative == DualCharacter{{0}});
    CHECK(z4[1].representative == DualCharacter{{1}});
    CHECK(z4[1].partner == DualCharacter{{3}});
    CHECK(z4[2].representative == DualCharacter{{2}});
    CHECK(z4[2].partner == DualCharacter{{2}});
    CHECK(enumerate_cosine_class(FiniteAbelianGroup({2})).size() == 2);
    CHECK(enumerate_cosine_class(FiniteAbelianGroup({5})).size() == 3);
    for (int n = 1; n <= 15; n += 2) {
        CHECK(enumerate_cosine_class(FiniteAbelianGroup({n})).size() == static_cast<std::size_t>((n + 1) / 2));
    }
}

TEST_CASE("cosine class elements compare by orbit") {
    const FiniteAbelianGroup g({5});
    const CosineClassElement a{DualCharacter{{1}}, DualCharacter{{4}}};
    const CosineClassElement b{DualCharacter{{1}}, DualCharacter{{4}}};
    const CosineClassElement c{DualCharacter{{2}}, DualCharacter{{3}}};
    CHECK(a == b);
    CHECK_FALSE(a == c);
    const auto all = enumerate_cosine_class(g);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < all.size(); ++j) CHECK((all[i] == all[j]) == (i == j));
}

TEST_CASE("cosine functions are real, bounded and solve d'Alembert (exhaustive up to order 32)") {
    for (const auto& g : testing::groups_up_to(32)) {
        for (const auto& c : enumerate_cosine_class(g)) {
            std::vector<double> t(g.order());
            for (std::size_t x = 0; x < g.order(); ++x) {
                t[x] = cosine_eval(g, c, g.element(x));
                const complex via_chars =
                    0.5 * (char_eval(g, c.representative, g.element(x)) + char_eval(g, c.partner, g.element(x)));
                REQUIRE(std::abs(via_chars.imag()) <= 1e-12);
                REQUIRE(std::abs(via_chars.real() - t[x]) <= 1e-12);
                REQUIRE(std::abs(t[x]) <= 1.0 + 1e-15);
            }
            for (std::size_t x = 0; x < g.order(); ++x)
                for (std::size_t y = 0; y < g.order(); ++y)
                    REQUIRE(std::abs(t[x] * t[y] - 0.5 * (t[g.add_index(x, y)] + t[g.sub_index(x, y)])) <= 1e-12);
        }
    }
}

TEST_CASE("cosine class is complete: every (chi + chi o neg)/2 appears exactly once (order <= 16)") {
    for (const auto& g : testing::groups_up_to(16)) {
        const auto tables = oracle::cosine_tables(g.factors());
        const auto cls = enumerate_cosine_class(g);
        REQUIRE(tables.size() == cls.size());
        for (const auto& table : tables) {
            int hits = 0;
            for (const auto& c : cls) {
                double d = 0.0;
                for (std::size_t x = 0; x < g.order(); ++x)
                    d = std::max(d, std::abs(table[x] - cosine_eval(g, c, g.element(x))));
                if (d <= 1e-9) ++hits;
            }
            CHECK(hits == 1);
        }
    }
}

}  // TEST_SUITE
