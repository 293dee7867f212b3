#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rsc/cohomology.hpp"
#include "rsc/complex.hpp"
#include "rsc/error.hpp"

using namespace rsc;

namespace {

Complex path() { return Complex::from_generators(4, 2, {Simplex{1, 2}, Simplex{2, 3}, Simplex{3, 4}}); }

std::vector<std::vector<int>> as_vectors(const std::vector<Simplex>& v) {
    std::vector<std::vector<int>> out;
    for (const auto& s : v) out.push_back(s.to_vector());
    return out;
}

}  // namespace

TEST_CASE("simplex basics") {
    Simplex s{3, 1, 2};
    CHECK(s.to_vector() == std::vector<int>{1, 2, 3});
    CHECK(s.dim() == 2);
    CHECK(s.contains(2));
    CHECK(!s.contains(4));
    CHECK(s.face(0) == Simplex{2, 3});
    CHECK(s.face(2) == Simplex{1, 2});
    CHECK(s.with(5) == Simplex{1, 2, 3, 5});
    CHECK(s.without(1) == Simplex{2, 3});
    CHECK(Simplex{1, 3}.is_subset_of(s));
    CHECK(set_union(Simplex{1, 4}, Simplex{2, 4}) == Simplex{1, 2, 4});
    CHECK(set_difference(s, Simplex{2}) == Simplex{1, 3});
    CHECK(s.str() == "{1,2,3}");
    CHECK_THROWS_AS(Simplex({1, 1}), Error);
    CHECK_THROWS_AS(Simplex({0, 1}), Error);
    CHECK_THROWS_AS(Simplex({1, 2, 3, 4, 5, 6, 7, 8, 9}), Error);

    std::vector<std::vector<int>> faces;
    for_each_subset(Simplex{1, 2, 3, 4}, 2, [&](const Simplex& f) { faces.push_back(f.to_vector()); });
    CHECK(faces == oracle::subsets(4, 2));
}

TEST_CASE("downward closure") {
    SUBCASE("single triangle") {
        const Complex c = downward_closure({3, 2, {Simplex{1, 2, 3}}});
        CHECK(oracle::simplex_set(c) == std::set<std::vector<int>>{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}});
    }
    SUBCASE("the path") {
        const Complex c = path();
        CHECK(oracle::simplex_set(c) == std::set<std::vector<int>>{{1}, {2}, {3}, {4}, {1, 2}, {2, 3}, {3, 4}});
        CHECK(c.top_dim() == 1);
    }
    SUBCASE("no generators") {
        const Complex c = downward_closure({5, 2, {}});
        CHECK(c.total_count() == 5);
        CHECK(c.count(1) == 0);
    }
    SUBCASE("invalid input") {
        CHECK_THROWS_AS(downward_closure({3, 2, {Simplex{1, 4}}}), Error);
        CHECK_THROWS_AS(downward_closure({4, 1, {Simplex{1, 2, 3}}}), Error);
    }
}

TEST_CASE("closure matches the subset oracle on random generators") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + trial % 6, d = 1 + trial % 3;
        std::vector<std::vector<int>> gens;
        std::vector<Simplex> sgens;
        std::uniform_int_distribution<int> size(2, d + 1);
        for (int g = 0; g < 5; ++g) {
            std::vector<int> all(n);
            std::iota(all.begin(), all.end(), 1);
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<int> s(all.begin(), all.begin() + std::min(n, size(rng)));
            std::sort(s.begin(), s.end());
            gens.push_back(s);
            sgens.emplace_back(s);
        }
        const Complex c = Complex::from_generators(n, d, sgens);
        CHECK(oracle::simplex_set(c) == oracle::closure(n, gens));

        // Closed under taking faces.
        for (int i = 1; i <= d; ++i)
            for (const auto& s : c.simplices(i))
                for (int f = 0; f < s.size(); ++f) CHECK(c.contains(s.face(f)));
        // Closing again changes nothing.
        CHECK(Complex::from_generators(n, d, c.facets()) == c);
    }
}

TEST_CASE("add_simplex") {
    const Complex g = path();
    const Complex g1 = g.add_simplex(Simplex{1, 3, 4});
    CHECK(oracle::simplex_set(g1) ==
          std::set<std::vector<int>>{{1}, {2}, {3}, {4}, {1, 2}, {2, 3}, {3, 4}, {1, 3}, {1, 4}, {1, 3, 4}});
    CHECK(g1.add_simplex(Simplex{3, 4}) == g1);
    CHECK(g.contains(Simplex{1, 2}));
    CHECK(!g.contains(Simplex{1, 3}));  // the original is untouched

    const Complex s = Complex(4, 2).add_simplex(Simplex{1, 2});
    CHECK(s.total_count() == 5);
    CHECK(s.contains(Simplex{1, 2}));
    CHECK_THROWS_AS(Complex(4, 1).add_simplex(Simplex{1, 2, 3}), Error);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        const Complex c = oracle::random_complex(rng, 6, 2, 0.3);
        const Simplex b{1 + t % 4, 5, 6};
        const Complex cb = c.add_simplex(b);
        const auto before = oracle::simplex_set(c), after = oracle::simplex_set(cb);
        CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
        CHECK((cb == c) == c.contains(b));
    }
}

TEST_CASE("shells") {
    const Complex g1 = path().add_simplex(Simplex{1, 3, 4});
    CHECK(is_shell(g1, Simplex{1, 2, 3}, 1));
    CHECK(!is_shell(path(), Simplex{1, 2, 3}, 1));
    const Complex k4 = Complex::from_generators(4, 1, all_subsets(4, 2));
    for (const auto& a : all_subsets(4, 3)) CHECK(is_shell(k4, a, 1));

    CHECK(shells_containing(path(), Simplex{2, 3}).empty());
    CHECK(shells_containing(g1, Simplex{1, 3}) == std::vector<int>{2, 4});
    const Complex k6 = Complex::from_generators(6, 1, all_subsets(6, 2));
    CHECK(shells_containing(k6, Simplex{2, 5}) == std::vector<int>{1, 3, 4, 6});
}

TEST_CASE("connected components") {
    CHECK(connected_components(Complex(4, 2)).size() == 4);
    CHECK(connected_components(path()).size() == 1);
    const Complex c = Complex::from_generators(5, 1, {Simplex{1, 2}, Simplex{3, 4}});
    CHECK(connected_components(c) == std::vector<std::vector<int>>{{1, 2}, {3, 4}, {5}});

    // Component count equals n minus the F_2 rank of delta^0.
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        const Complex r = oracle::random_complex(rng, 4 + t % 5, 2, 0.25);
        const auto rank = oracle::rank_mod(oracle::coboundary(r, 0), 2);
        CHECK(connected_components(r).size() == static_cast<std::size_t>(r.n()) - rank);
    }
}

TEST_CASE("skeleton") {
    const Complex tet = Complex::from_generators(4, 3, {Simplex{1, 2, 3, 4}});
    const Complex k4 = tet.skeleton(1);
    CHECK(k4.count(1) == 6);
    CHECK(k4.count(2) == 0);
    CHECK(k4.d() == 1);
    CHECK(tet.skeleton(0).total_count() == 4);
    CHECK(oracle::simplex_set(path().skeleton(1)) == oracle::simplex_set(path()));
}

TEST_CASE("facets and coface degrees") {
    const Complex g1 = path().add_simplex(Simplex{1, 3, 4});
    CHECK(as_vectors(g1.facets()) == std::vector<std::vector<int>>{{1, 2}, {2, 3}, {1, 3, 4}});
    const auto deg = g1.coface_degrees(1);
    const auto& edges = g1.simplices(1);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        int expect = 0;
        for (const auto& t : g1.simplices(2)) expect += edges[i].is_subset_of(t);
        CHECK(deg[i] == expect);
    }
}
