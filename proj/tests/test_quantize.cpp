#include <doctest.h>

#include "fusionq/quantize.hpp"
#include "oracles.hpp"

using namespace fusionq;

namespace {

Weight<Rational> wq(std::initializer_list<Rational> c) { return Weight<Rational>{std::vector<Rational>(c)}; }

struct Ctx {
    std::shared_ptr<const UEA> uea;
    std::shared_ptr<const Shapovalov> sh;
    std::shared_ptr<const FunctionAlgebra> fa;
    explicit Ctx(const char* label)
        : uea(oracle::make_uea(label)),
          sh(std::make_shared<const Shapovalov>(uea)),
          fa(std::make_shared<const FunctionAlgebra>(uea)) {}
    Quantizer at(const Weight<Rational>& l0, int cutoff) const { return Quantizer(sh, fa, l0, cutoff); }
};

// sl2 basis indices: Y = 0, H = 1, X = 2.
FElem<Rational> closed_form(const Ctx& c, const Weight<Rational>& lam, int a, int b) {
    const RootSystem& rs = c.uea->roots();
    const Rational l = lam.coords[0];
    const auto& fa = *c.fa;
    FElem<Rational> out = fa.product(fa.orbit_function(a, lam), fa.orbit_function(b, lam)).scaled(Rational(1 - 1 / l));
    std::vector<Rational> br(rs.dim(), Rational(0));
    for (const auto& [e, k] : rs.bracket(a, b)) br[e] += Rational(k);
    out += fa.orbit_function(br, lam).scaled(Rational(1, 2));
    out += fa.one<Rational>().scaled(Rational(l / 2 * rs.trace_form(a, b)));
    return out;
}

PBWElem<Rational> casimir(const UEA& u) {
    return u.parse<Rational>("1/2 * H[1]^2 + 1 * H[1] + 2 * Y[1] * X[1]");
}

}  // namespace

TEST_CASE("unit and closed form of the sl2 star product") {
    Ctx c("A1");
    for (const Rational l : {Rational(5, 2), Rational(2), Rational(7, 3)}) {
        const auto lam = wq({l});
        const auto q = c.at(lam, 4);
        for (int a = 0; a < 3; ++a) {
            const auto fa = c.fa->orbit_function(a, lam);
            CHECK(c.fa->equals(q.star(fa, c.fa->one<Rational>()), fa));
            CHECK(c.fa->equals(q.star(c.fa->one<Rational>(), fa), fa));
            for (int b = 0; b < 3; ++b) {
                const auto p = q.star(fa, c.fa->orbit_function(b, lam));
                CHECK(c.fa->equals(p, closed_form(c, lam, a, b)));
                CHECK(c.fa->in_weight_zero(p));
            }
        }
    }
}

TEST_CASE("commutator of orbit functions is the Lie bracket") {
    Ctx c("A1");
    const auto lam = wq({Rational(11, 4)});
    const auto q = c.at(lam, 3);
    const RootSystem& rs = c.uea->roots();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const auto fa = c.fa->orbit_function(a, lam), fb = c.fa->orbit_function(b, lam);
            std::vector<Rational> br(3, Rational(0));
            for (const auto& [e, k] : rs.bracket(a, b)) br[e] += Rational(k);
            CHECK(c.fa->equals(q.star(fa, fb) - q.star(fb, fa), c.fa->orbit_function(br, lam)));
        }
}

TEST_CASE("the two star-product paths agree and the product is associative") {
    for (const char* label : {"A1", "A2"}) {
        Ctx c(label);
        const int dim = c.uea->dim();
        const auto lam = std::string(label) == "A1" ? wq({1}) : wq({Rational(1, 3), Rational(2, 5)});
        const auto q = c.at(lam, 3);
        std::vector<FElem<Rational>> fs;
        for (int a = 0; a < dim; a += (std::string(label) == "A1" ? 1 : 3)) fs.push_back(c.fa->orbit_function(a, lam));
        for (const auto& f : fs)
            for (const auto& g : fs) CHECK(c.fa->equals(q.star(f, g), q.star_via_fusion(f, g)));
        if (std::string(label) == "A1")
            for (const auto& f : fs)
                for (const auto& g : fs)
                    for (const auto& h : fs) CHECK(c.fa->equals(q.star(q.star(f, g), h), q.star(f, q.star(g, h))));
    }
}

TEST_CASE("Theta inverse assembles singular vectors and reads back") {
    Ctx c("A1");
    for (const auto& lam : {wq({1}), wq({Rational(3, 2)}), wq({2})}) {
        const auto q = c.at(lam, 4);
        for (int a = 0; a < 3; ++a) {
            const auto f = c.fa->orbit_function(a, lam);
            const auto phi = q.theta_inverse(f);
            CHECK(c.fa->equals(Quantizer::theta(phi), f));
            CHECK(is_singular_vector(q.module(), *c.fa, phi.image));
            if (lam.coords[0] == 1)
                for (const auto& [v, h] : phi.image) CHECK(v.begin()->first.height() <= 1);
        }
        const auto one = q.theta_inverse(c.fa->one<Rational>());
        CHECK(one.image.size() == 1);
    }
    // functions outside F[0]^{K + K~} at lambda0 = 1 are rejected
    const auto q1 = c.at(wq({1}), 4);
    const auto quad = c.fa->tensor(c.fa->coadjoint(), c.fa->coadjoint());
    const auto y2 = c.uea->monomial<Rational>(c.uea->generator_mono(0, 2));
    int rejected = 0;
    for (const auto& u : c.fa->weight_zero_units(quad))
        if (!c.fa->is_zero(c.fa->left(y2, u))) {
            CHECK_THROWS_AS(q1.theta_inverse(u), std::invalid_argument);
            CHECK_THROWS_AS(q1.star(u, c.fa->one<Rational>()), std::invalid_argument);
            ++rejected;
        }
    CHECK(rejected > 0);
}

TEST_CASE("sl3 Theta inverse on an orbit function") {
    Ctx c("A2");
    const auto lam = wq({Rational(1, 3), Rational(1, 2)});
    const auto q = c.at(lam, 3);
    for (int a : {0, 3, 4, 7}) {
        const auto f = c.fa->orbit_function(a, lam);
        const auto phi = q.theta_inverse(f);
        CHECK(is_singular_vector(q.module(), *c.fa, phi.image));
        CHECK(c.fa->equals(Quantizer::theta(phi), f));
    }
}

TEST_CASE("composition of intertwiners realizes the star product") {
    Ctx c("A1");
    const auto lam = wq({2});
    const auto q = c.at(lam, 4);
    std::vector<FElem<Rational>> fs;
    for (int a = 0; a < 3; ++a) fs.push_back(c.fa->orbit_function(a, lam));
    fs.push_back(q.star(fs[0], fs[2]));
    for (const auto& f : fs)
        for (const auto& g : fs) {
            const auto a = q.theta_inverse(f), b = q.theta_inverse(g);
            const auto ab = q.compose(a, b);
            CHECK(c.fa->equals(Quantizer::theta(ab), q.star(f, g)));
            CHECK(q.equal(ab, q.theta_inverse(q.star(f, g))));
            CHECK(q.to_endo(ab).matrix == q.to_endo(a).matrix * q.to_endo(b).matrix);
        }
}

TEST_CASE("Phi on V(1): identity, injectivity and Mat(2)") {
    Ctx c("A1");
    const auto lam = wq({1});
    const auto q = c.at(lam, 3);
    CHECK(q.to_endo(q.theta_inverse(c.fa->one<Rational>())).matrix == Matrix<Rational>::identity(2));
    std::vector<std::vector<Rational>> images;
    std::vector<FElem<Rational>> fs{c.fa->one<Rational>()};
    for (int a = 0; a < 3; ++a) fs.push_back(c.fa->orbit_function(a, lam));
    for (const auto& f : fs) {
        const auto m = q.to_endo(q.theta_inverse(f)).matrix;
        images.push_back({m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
    }
    CHECK(span_dim(images, 4) == 4);
    CHECK(c.fa->span_dim(fs) == 4);
    CHECK_THROWS_AS(c.at(wq({Rational(1, 2)}), 3).to_endo(c.at(wq({Rational(1, 2)}), 3).theta_inverse(c.fa->one<Rational>())),
                    std::domain_error);
}

TEST_CASE("Phi Psi is the action map") {
    Ctx c("A1");
    for (int n = 1; n <= 2; ++n) {
        const auto q = c.at(wq({n}), n + 2);
        const auto& mod = q.module();
        std::vector<PBWElem<Rational>> as{c.uea->one<Rational>(), casimir(*c.uea)};
        for (int b = 0; b < 3; ++b) as.push_back(c.uea->generator<Rational>(b));
        as.push_back(c.uea->parse<Rational>("1 * Y[1] * H[1] + 3 * X[1]^2"));
        for (const auto& a : as) {
            const auto phi = q.psi(a);
            CHECK(is_singular_vector(mod, *c.fa, phi.image));
            CHECK(q.to_endo(phi).matrix == mod.action_matrix(a));
        }
        const auto cas = q.to_endo(q.psi(casimir(*c.uea))).matrix;
        CHECK(cas == Matrix<Rational>::identity(n + 1).scaled(Rational(Rational(n * (n + 2)) / 2)));
        // Psi is multiplicative for the intertwiner product
        const auto a = c.uea->generator<Rational>(0), b = c.uea->generator<Rational>(2);
        CHECK(q.equal(q.psi(c.uea->multiply(a, b)), q.compose(q.psi(a), q.psi(b))));
    }
    const auto q1 = c.at(wq({1}), 3);
    const auto h = q1.to_endo(q1.psi(c.uea->generator<Rational>(1))).matrix;
    Matrix<Rational> diag(2, 2);
    diag(0, 0) = 1;
    diag(1, 1) = -1;
    CHECK(h == diag);
}

TEST_CASE("Kostant rank") {
    Ctx a1("A1");
    for (int n = 1; n <= 3; ++n) {
        const auto r = kostant_rank(a1.sh, wq({n}));
        CHECK(r.rank == std::size_t((n + 1) * (n + 1)));
        CHECK(r.surjective());
        CHECK(r.saturated);
    }
    Ctx a2("A2");
    const auto r = kostant_rank(a2.sh, wq({1, 0}));
    CHECK(r.rank == 9);
    CHECK(r.surjective());
    CHECK_THROWS_AS(kostant_rank(a1.sh, wq({Rational(1, 2)})), std::domain_error);
}

TEST_CASE("star algebra of orbit functions degenerates to a matrix algebra") {
    Ctx c("A1");
    for (int n = 1; n <= 2; ++n) {
        const auto lam = wq({n});
        const auto q = c.at(lam, n + 2);
        std::vector<FElem<Rational>> gens;
        for (int a = 0; a < 3; ++a) gens.push_back(c.fa->orbit_function(a, lam));
        const auto rep = q.generated_dimension(gens);
        CHECK(rep.saturated);
        CHECK(rep.dim == std::size_t((n + 1) * (n + 1)));
    }
}

TEST_CASE("star product along a line converges") {
    Ctx c("A1");
    for (int n = 1; n <= 2; ++n) {
        const auto lam = wq({n});
        const auto q = c.at(lam, n + 2);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                const auto r = q.star_limit(wq({1}), c.fa->orbit_function(a, lam), c.fa->orbit_function(b, lam));
                CHECK(r.regular);
                CHECK(r.equal);
            }
    }
}
