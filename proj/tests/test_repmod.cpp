#include <doctest.h>

#include "fusionq/repmod.hpp"
#include "oracles.hpp"

using namespace fusionq;

namespace {

Weight<Rational> wq(std::initializer_list<Rational> c) { return Weight<Rational>{std::vector<Rational>(c)}; }
std::shared_ptr<const Shapovalov> shap(const char* label) { return std::make_shared<const Shapovalov>(oracle::make_uea(label)); }
const RatFunc t = RatFunc::variable(0);

template <class S>
S form_value(const HWModule<S>& mod, const ModVec<S>& u, const ModVec<S>& v) {
    S total(0);
    for (const auto& [beta, cu] : u) {
        auto it = v.find(beta);
        if (it == v.end()) continue;
        const auto& f = mod.space(beta).form;
        for (std::size_t i = 0; i < cu.size(); ++i)
            for (std::size_t j = 0; j < cu.size(); ++j) total += cu[i] * f(i, j) * it->second[j];
    }
    return total;
}

template <class S>
bool same(const ModVec<S>& a, const ModVec<S>& b) {
    std::map<RootVec, std::vector<S>> d = a;
    for (const auto& [beta, c] : b) {
        auto& v = d[beta];
        v.resize(c.size(), S(0));
        for (std::size_t i = 0; i < c.size(); ++i) v[i] -= c[i];
    }
    for (const auto& [beta, v] : d)
        for (const auto& x : v)
            if (!is_zero(x)) return false;
    return true;
}

}  // namespace

TEST_CASE("sl2 Verma module action") {
    auto sh = shap("A1");
    const auto m = HWModule<RatFunc>::verma(sh, Weight<RatFunc>{{t}}, 5);
    const UEA& u = m.uea();
    const auto X = u.generator<RatFunc>(2), H = u.generator<RatFunc>(1);
    CHECK(m.act(X, m.highest()).empty());
    const auto hy = m.act(H, m.basis_vector(RootVec{{1}}, 0));
    CHECK(hy.at(RootVec{{1}})[0] == t - RatFunc(2));
    for (int k = 1; k <= 4; ++k) {
        // oracle: normal-order X Y^k with the naive rewriter, keep the Y^(k-1) H term
        oracle::Word w{2};
        w.insert(w.end(), k, 0);
        const auto normal = oracle::word(u, w);
        PBWMono target = u.generator_mono(0, k - 1);
        target[1] = 1;
        const Rational lin = normal.coefficient(target);
        const Rational cst = normal.coefficient(u.generator_mono(0, k - 1));
        const RatFunc want = RatFunc(lin) * t + RatFunc(cst);
        CHECK(want == RatFunc(k) * (t - RatFunc(k - 1)));
        const auto got = m.act(X, m.basis_vector(RootVec{{k}}, 0));
        CHECK(got.at(RootVec{{k - 1}})[0] == want);
    }
}

TEST_CASE("irreducible quotients") {
    auto sh = shap("A1");
    const auto v1 = HWModule<Rational>::irreducible(sh, wq({Rational(1)}), 4);
    CHECK(v1.dims_by_height() == std::vector<std::size_t>{1, 1, 0, 0, 0});
    CHECK(v1.total_dim() == 2);
    CHECK(v1.finite_dimensional());
    const auto gen = HWModule<Rational>::irreducible(sh, wq({Rational(1, 2)}), 4);
    CHECK(gen.dims_by_height() == std::vector<std::size_t>{1, 1, 1, 1, 1});
    CHECK_FALSE(gen.finite_dimensional());

    auto sl3 = shap("A2");
    for (const std::vector<int>& hw : {std::vector<int>{1, 0}, {0, 1}, {1, 1}, {2, 0}}) {
        Weight<Rational> lam;
        for (int c : hw) lam.coords.emplace_back(c);
        const auto v = HWModule<Rational>::irreducible(sl3, lam, 5);
        CHECK(v.finite_dimensional());
        CHECK(Rational(long(v.total_dim())) == oracle::weyl_dimension(sl3->roots(), hw));
    }
}

TEST_CASE("contravariant form") {
    auto sh = shap("A1");
    const auto v1 = HWModule<Rational>::irreducible(sh, wq({Rational(1)}), 3);
    const auto forms = contravariant_form(v1);
    CHECK(forms.at(RootVec{{1}}) == Matrix<Rational>::identity(1));
    CHECK(forms.at(RootVec{{2}}).rows() == 0);
    const auto vt = HWModule<RatFunc>::irreducible(sh, Weight<RatFunc>{{t}}, 3);
    CHECK(contravariant_form(vt).at(RootVec{{2}})(0, 0) == RatFunc(2) * t * (t - RatFunc(1)));
    CHECK_THROWS(contravariant_form(HWModule<Rational>::verma(sh, wq({Rational(1)}), 2)));

    // S(x u, v) = S(u, omega(x) v) for lowering generators x
    auto sl3 = shap("A2");
    const auto v = HWModule<Rational>::irreducible(sl3, wq({Rational(1), Rational(2, 3)}), 4);
    const UEA& u = v.uea();
    const RootSystem& rs = sl3->roots();
    for (int k = 0; k < rs.num_positive_roots(); ++k) {
        const auto y = u.generator<Rational>(rs.y_index(k));
        const auto x = u.omega(y);
        for (const auto& beta : v.betas()) {
            const RootVec up = beta + rs.positive_roots()[k];
            if (up.height() > 4) continue;
            for (std::size_t a = 0; a < v.dim(beta); ++a)
                for (std::size_t b = 0; b < v.dim(up); ++b) {
                    const auto ua = v.basis_vector(beta, a), vb = v.basis_vector(up, b);
                    CHECK(form_value(v, v.act(y, ua), vb) == form_value(v, ua, v.act(x, vb)));
                }
        }
    }
}

TEST_CASE("generator actions satisfy the bracket relations") {
    auto sl3 = shap("A2");
    const auto v = HWModule<Rational>::irreducible(sl3, wq({Rational(1), Rational(1)}), 5);
    const UEA& u = v.uea();
    const RootSystem& rs = sl3->roots();
    for (int a = 0; a < rs.dim(); ++a)
        for (int b = 0; b < rs.dim(); ++b) {
            PBWElem<Rational> br;
            for (const auto& [e, c] : rs.bracket(a, b)) br.add_term(u.generator_mono(e), Rational(c));
            const auto ma = v.action_matrix(u.generator<Rational>(a)), mb = v.action_matrix(u.generator<Rational>(b));
            CHECK(ma * mb - mb * ma == v.action_matrix(br));
        }
    // the exported Rep carries the same matrices
    FunctionAlgebra fa(sl3->uea_ptr());
    const RepPtr rep = fa.register_rep(v.to_rep());
    CHECK(rep->name == "V(1,1)");
    CHECK(rep->dim == 8);
    const auto mx = v.action_matrix(u.generator<Rational>(rs.x_index(0)));
    for (int j = 0; j < rep->dim; ++j)
        for (int i = 0; i < rep->dim; ++i) {
            auto it = rep->gens[rs.x_index(0)][j].find(i);
            CHECK((it == rep->gens[rs.x_index(0)][j].end() ? Rational(0) : it->second) == mx(i, j));
        }
}

TEST_CASE("singular vector test") {
    auto sh = shap("A1");
    FunctionAlgebra fa(sh->uea_ptr());
    const auto v = HWModule<Rational>::irreducible(sh, wq({Rational(1, 2)}), 3);
    ModFunTensor<Rational> hw{{v.highest(), fa.one<Rational>()}};
    CHECK(is_singular_vector(v, fa, hw));
    ModFunTensor<Rational> low{{v.basis_vector(RootVec{{1}}, 0), fa.one<Rational>()}};
    CHECK_FALSE(is_singular_vector(v, fa, low));
}
