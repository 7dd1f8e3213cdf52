#include <doctest.h>

#include <map>

#include "fusionq/rootsys.hpp"

using namespace fusionq;

namespace {

using Dense = std::vector<Rational>;

Dense dense(const RootSystem& rs, const LieVec& v) {
    Dense d(rs.dim(), Rational(0));
    for (const auto& [e, c] : v) d[e] += c;
    return d;
}

Dense bracket_dense(const RootSystem& rs, const Dense& a, int b) {
    Dense out(rs.dim(), Rational(0));
    for (int e = 0; e < rs.dim(); ++e) {
        if (a[e] == 0) continue;
        for (const auto& [f, c] : rs.bracket(e, b)) out[f] += a[e] * c;
    }
    return out;
}

// Independent count of positive roots from the classification.
int expected_roots(const std::string& label) {
    static const std::map<std::string, int> table{{"A1", 1}, {"A2", 3}, {"A3", 6}, {"B2", 4},
                                                  {"B3", 9}, {"C2", 4}, {"C3", 9}, {"A1xA1", 2},
                                                  {"A1xA2", 4}, {"A1xB2", 5}, {"A1xA1xA1", 3}};
    return table.at(label);
}

}  // namespace

TEST_CASE("supported types have the classified root counts and Cartan shape") {
    for (const char* label : {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "A1xA1", "A1xA2", "A1xB2", "A1xA1xA1"}) {
        CAPTURE(label);
        const auto rs = RootSystem::build(label);
        CHECK(rs.num_positive_roots() == expected_roots(label));
        for (int i = 0; i < rs.rank(); ++i) {
            CHECK(rs.cartan()[i][i] == 2);
            for (int j = 0; j < rs.rank(); ++j)
                if (i != j) CHECK((rs.cartan()[i][j] <= 0 && rs.cartan()[i][j] >= -3));
        }
    }
    CHECK(RootSystem::build("A1").cartan() == std::vector<std::vector<int>>{{2}});
    CHECK(RootSystem::build("A1xA1").cartan() == std::vector<std::vector<int>>{{2, 0}, {0, 2}});
}

TEST_CASE("A2 roots and B2 closure") {
    const auto a2 = RootSystem::build("A2");
    std::vector<RootVec> want{{{1, 0}}, {{0, 1}}, {{1, 1}}};
    CHECK(a2.positive_roots() == want);
    const auto b2 = RootSystem::build("B2");
    // alpha1 long, alpha2 short: roots a1, a2, a1+a2, a1+2a2
    std::vector<RootVec> wantb{{{1, 0}}, {{0, 1}}, {{1, 1}}, {{1, 2}}};
    CHECK(b2.positive_roots() == wantb);
    CHECK(b2.cartan() == std::vector<std::vector<int>>{{2, -1}, {-2, 2}});
}

TEST_CASE("unsupported labels are rejected") {
    CHECK_THROWS_AS(RootSystem::build("G2"), std::invalid_argument);
    CHECK_THROWS_AS(RootSystem::build("A4"), std::invalid_argument);
    CHECK_THROWS_AS(RootSystem::build("A2xA2"), std::invalid_argument);
    CHECK_THROWS_AS(RootSystem::build("Q1"), std::invalid_argument);
}

TEST_CASE("structure constants are antisymmetric and satisfy Jacobi") {
    for (const char* label : {"A1", "A2", "B2", "C2", "A3", "B3", "C3", "A1xA2"}) {
        CAPTURE(label);
        const auto rs = RootSystem::build(label);
        const int n = rs.dim();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Dense ab = dense(rs, rs.bracket(a, b));
                Dense ba = dense(rs, rs.bracket(b, a));
                for (int e = 0; e < n; ++e) REQUIRE(ab[e] == -ba[e]);
            }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    Dense unit_a(n, Rational(0)), unit_b(n, Rational(0)), unit_c(n, Rational(0));
                    unit_a[a] = 1; unit_b[b] = 1; unit_c[c] = 1;
                    // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
                    Dense s1 = bracket_dense(rs, dense(rs, rs.bracket(a, b)), c);
                    Dense s2 = bracket_dense(rs, dense(rs, rs.bracket(b, c)), a);
                    Dense s3 = bracket_dense(rs, dense(rs, rs.bracket(c, a)), b);
                    for (int e = 0; e < n; ++e) REQUIRE(s1[e] + s2[e] + s3[e] == 0);
                }
    }
}

TEST_CASE("Chevalley normalization: [X_b, Y_b] is the coroot and H acts by the Cartan matrix") {
    for (const char* label : {"A2", "B2", "C3", "B3"}) {
        CAPTURE(label);
        const auto rs = RootSystem::build(label);
        for (int k = 0; k < rs.num_positive_roots(); ++k) {
            LieVec want;
            for (int i = 0; i < rs.rank(); ++i)
                if (rs.coroot(k)[i] != 0) want.emplace_back(rs.h_index(i), rs.coroot(k)[i]);
            CHECK(rs.bracket(rs.x_index(k), rs.y_index(k)) == want);
            const auto w = rs.root_to_weight(rs.positive_roots()[k]);
            for (int i = 0; i < rs.rank(); ++i) {
                LieVec hx;
                if (w[i] != 0) hx.emplace_back(rs.x_index(k), w[i]);
                CHECK(rs.bracket(rs.h_index(i), rs.x_index(k)) == hx);
            }
        }
    }
}

TEST_CASE("coroot pairing") {
    const auto a1 = RootSystem::build("A1");
    CHECK(a1.pair(Weight<Rational>{{Rational(3)}}, 0) == 3);
    CHECK(a1.pair(Weight<RatFunc>{{RatFunc::variable(0)}}, 0) == RatFunc::variable(0));
    const auto a2 = RootSystem::build("A2");
    CHECK(a2.pair(a2.rho(), RootVec{{1, 1}}) == 2);
    CHECK_THROWS(a2.pair(a2.rho(), RootVec{{2, 1}}));
    // <rho, alpha^vee> = 1 on simple roots; for B2 the short-root coroot
    // a1+2a2 has coroot a1^v + a2^v.
    const auto b2 = RootSystem::build("B2");
    for (int i = 0; i < 2; ++i) CHECK(b2.pair(b2.rho(), b2.root_index(b2.simple_root(i))) == 1);
    CHECK(b2.pair(b2.rho(), RootVec{{1, 1}}) == 3);
    CHECK(b2.pair(b2.rho(), RootVec{{1, 2}}) == 2);
}

TEST_CASE("genericity report") {
    const auto a1 = RootSystem::build("A1");
    CHECK(a1.genericity_report(Weight<Rational>{{Rational(1, 2)}}).empty());
    CHECK(a1.genericity_report(Weight<Rational>{{Rational(1)}}) == std::vector<int>{0});
    const auto a2 = RootSystem::build("A2");
    CHECK(a2.genericity_report(Weight<Rational>{{Rational(0), Rational(1, 3)}}) == std::vector<int>{0});
}

TEST_CASE("basis names round-trip") {
    const auto rs = RootSystem::build("A2");
    for (int b = 0; b < rs.dim(); ++b) CHECK(rs.parse_basis_name(rs.basis_name(b)) == b);
    CHECK(rs.basis_name(rs.y_index(2)) == "Y[1,1]");
    CHECK(rs.basis_name(rs.h_index(1)) == "H[2]");
    CHECK(RootSystem::build("A1").basis_name(0) == "Y[1]");
}
