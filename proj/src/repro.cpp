#include "fusionq/repro.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "fusionq/fusion.hpp"
#include "fusionq/quantize.hpp"
#include "oracles.hpp"

namespace fusionq {

std::shared_ptr<const Algebra> Algebra::get(const std::string& label) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<const Algebra>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(label);
    if (it != cache.end()) return it->second;
    auto a = std::make_shared<Algebra>();
    a->uea = std::make_shared<const UEA>(std::make_shared<const RootSystem>(RootSystem::build(label)));
    a->sh = std::make_shared<const Shapovalov>(a->uea);
    a->fa = std::make_shared<const FunctionAlgebra>(a->uea);
    cache.emplace(label, a);
    return a;
}

namespace {

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(item);
    if (!text.empty() && text.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

Weight<Rational> parse_weight(const std::string& text, int rank) {
    const auto parts = split_commas(text);
    if (int(parts.size()) != rank)
        throw std::invalid_argument("weight '" + text + "' needs " + std::to_string(rank) + " comma-separated coordinates");
    Weight<Rational> w;
    for (const auto& p : parts) w.coords.push_back(parse_rational(p));
    return w;
}

namespace repro {
namespace {

using json = nlohmann::json;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string ratio(std::size_t good, std::size_t total) { return std::to_string(good) + "/" + std::to_string(total); }

struct Counter {
    std::size_t good = 0, total = 0;
    void add(bool ok) {
        ++total;
        good += ok ? 1 : 0;
    }
    bool all() const { return good == total; }
    std::string str() const { return ratio(good, total); }
    std::string all_str() const { return ratio(total, total); }
};

Weight<Rational> weight_param(const Algebra& a, const json& v) {
    return parse_weight(v.get<std::string>(), a.uea->roots().rank());
}

std::vector<FElem<Rational>> orbit_functions(const Algebra& a, const Weight<Rational>& l0) {
    std::vector<FElem<Rational>> fs;
    for (int b = 0; b < a.uea->dim(); ++b) fs.push_back(a.fa->orbit_function(b, l0));
    return fs;
}

// Matrix units spanning the part of F[0] carried by triv, coad, ..., coad^{(x) degree}.
std::vector<FElem<Rational>> zero_units(const Algebra& a, int degree) {
    std::vector<FElem<Rational>> out = a.fa->weight_zero_units(a.fa->trivial());
    RepPtr rep = a.fa->trivial();
    for (int d = 1; d <= degree; ++d) {
        rep = d == 1 ? a.fa->coadjoint() : a.fa->tensor(rep, a.fa->coadjoint());
        const auto units = a.fa->weight_zero_units(rep);
        out.insert(out.end(), units.begin(), units.end());
    }
    return out;
}

// --- sl(2) closed forms, written from the 2x2 matrices H = diag(1,-1),
// X = E12, Y = E21. Index order Y, H, X.

constexpr int kY = 0, kH = 1, kX = 2;

void require_sl2(const Algebra& a) {
    if (a.uea->roots().label() != "A1") throw std::invalid_argument("this experiment is written for A1");
}

Rational sl2_trace(int a, int b) {
    if (a == kH && b == kH) return 2;
    if ((a == kX && b == kY) || (a == kY && b == kX)) return 1;
    return 0;
}

std::vector<Rational> sl2_bracket(int a, int b) {
    std::vector<Rational> v(3, Rational(0));
    auto set = [&](int k, int c) { v[k] = c; };
    if (a == kH && b == kX) set(kX, 2);
    if (a == kX && b == kH) set(kX, -2);
    if (a == kH && b == kY) set(kY, -2);
    if (a == kY && b == kH) set(kY, 2);
    if (a == kX && b == kY) set(kH, 1);
    if (a == kY && b == kX) set(kH, -1);
    return v;
}

// Generators on V(n) in the basis v_k = Y^k v_0: H v_k = (n-2k) v_k,
// Y v_k = v_{k+1}, X v_k = k(n-k+1) v_{k-1}.
Matrix<Rational> sl2_irrep(int basis, int n) {
    Matrix<Rational> m(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
        if (basis == kH) m(k, k) = n - 2 * k;
        if (basis == kY && k < n) m(k + 1, k) = 1;
        if (basis == kX && k > 0) m(k - 1, k) = k * (n - k + 1);
    }
    return m;
}

// --- experiments

Outcome star_formula(const json& p) {
    const auto a = Algebra::get(p.at("algebra").get<std::string>());
    require_sl2(*a);
    const auto& fa = *a->fa;
    const char* names[] = {"Y", "H", "X"};
    Outcome out;
    for (const auto& ls : p.at("lambdas")) {
        const Rational l = parse_rational(ls.get<std::string>());
        const Weight<Rational> lam{{l}};
        const Quantizer q(a->sh, a->fa, lam, p.value("cutoff", 4));
        Counter pairs;
        std::string mismatches;
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                FElem<Rational> expected =
                    fa.product(fa.orbit_function(x, lam), fa.orbit_function(y, lam)).scaled(Rational(1 - 1 / l));
                expected += fa.orbit_function(sl2_bracket(x, y), lam).scaled(Rational(1, 2));
                expected += fa.one<Rational>().scaled(Rational(l / 2 * sl2_trace(x, y)));
                const bool ok = fa.equals(q.star(fa.orbit_function(x, lam), fa.orbit_function(y, lam)), expected);
                pairs.add(ok);
                if (!ok) mismatches += std::string(mismatches.empty() ? "" : " ") + "(" + names[x] + "," + names[y] + ")";
            }
        out.checks.push_back({"lambda = " + l.get_str() + ": pairs equal to (1-1/l) f_a f_b + f_[a,b]/2 + (l/2) Tr(ab)",
                              pairs.str() + (mismatches.empty() ? "" : " mismatched:" + mismatches), pairs.all_str(),
                              pairs.all()});
    }
    return out;
}

Outcome matrix_algebra(const json& p) {
    const auto a = Algebra::get(p.at("algebra").get<std::string>());
    require_sl2(*a);
    Outcome out;
    for (const int n : p.at("levels")) {
        const Weight<Rational> lam{{Rational(n)}};
        const Quantizer q(a->sh, a->fa, lam, n + 2);
        const auto rep = q.generated_dimension(orbit_functions(*a, lam));
        std::string trail;
        for (auto d : rep.dims) trail += (trail.empty() ? "" : ",") + std::to_string(d);
        const std::size_t want = std::size_t((n + 1) * (n + 1));
        out.checks.push_back({"lambda0 = " + std::to_string(n) + ": dimension of the star algebra of {f_x}",
                              std::to_string(rep.dim) + " (spans " + trail + ", saturated " + yes_no(rep.saturated) + ")",
                              std::to_string(want) + " = dim Mat(" + std::to_string(n + 1) + ")",
                              rep.saturated && rep.dim == want});
    }
    return out;
}

Outcome limit(const json& p) {
    const auto a = Algebra::get(p.at("algebra").get<std::string>());
    const int cutoff = p.value("cutoff", 4);
    Outcome out;
    for (const auto& ls : p.at("lambda0s")) {
        const auto l0 = weight_param(*a, ls);
        const auto nu = weight_param(*a, p.at("direction"));
        auto fs = orbit_functions(*a, l0);
        fs.insert(fs.begin(), a->fa->one<Rational>());
        const Quantizer q(a->sh, a->fa, l0, cutoff);
        Counter pairing, star;
        std::string first_error;
        for (const auto& f : fs)
            for (const auto& g : fs) {
                try {
                    pairing.add(limit_pairing(*a->fa, *a->sh, l0, nu, f, g, cutoff).equal);
                } catch (const std::exception& e) {
                    pairing.add(false);
                    if (first_error.empty()) first_error = e.what();
                }
                const auto r = q.star_limit(nu, f, g);
                star.add(r.regular && r.equal);
            }
        const std::string tag = "lambda0 = " + l0.to_string() + ", nu = " + nu.to_string();
        out.checks.push_back({tag + ": J(lambda0 + t nu) pairing has no pole and tends to J_red",
                              pairing.str() + (first_error.empty() ? "" : " (" + first_error + ")"), pairing.all_str(),
                              pairing.all()});
        out.checks.push_back({tag + ": star product along the line is regular with value the lambda0 product",
                              star.str(), star.all_str(), star.all()});
    }
    return out;
}

Outcome laurent(const json& p) {
    const int h = p.at("max_height");
    Outcome out;
    for (const auto& c : p.at("cases")) {
        const auto a = Algebra::get(c.at("algebra").get<std::string>());
        const auto l0 = weight_param(*a, c.at("lambda0"));
        const auto nu = weight_param(*a, c.at("direction"));
        const auto k = a->sh->kernel(l0, h);
        Counter lemma_c, lemma_d;
        int higher = 0;
        for (const auto& lb : laurent_blocks(*a->sh, l0, nu, h, 0)) {
            if (lb.pole_order > 1) ++higher;
            if (lb.pole_order != 1) continue;
            lemma_c.add(check_lemma_C_image(lb, k) == LemmaStatus::Holds);
            lemma_d.add(check_lemma_D0A0(lb, k) == LemmaStatus::Holds);
        }
        out.checks.push_back(
            {c.at("algebra").get<std::string>() + " lambda0 = " + l0.to_string() + ", heights <= " + std::to_string(h) +
                 ": Image C in K and D0 A0 = id mod K on pole-order-1 blocks",
             "C " + lemma_c.str() + ", D0A0 " + lemma_d.str() + ", blocks with higher poles " + std::to_string(higher),
             "all of at least one block", lemma_c.total > 0 && lemma_c.all() && lemma_d.all()});
    }
    return out;
}

// Generators of K_lambda0 from the simple walls where lambda0 is integral and
// dominant; the remaining coordinates must be generic.
std::vector<PBWElem<Rational>> wall_generators(const Algebra& a, const Weight<Rational>& l0) {
    std::vector<int> delta;
    for (int i = 0; i < int(l0.rank()); ++i)
        if (is_integer(l0.coords[i]) && l0.coords[i] >= 0) delta.push_back(i);
    return delta.empty() ? std::vector<PBWElem<Rational>>{} : a.sh->kernel_generators_integral(l0, delta);
}

Outcome theta(const json& p) {
    Outcome out;
    for (const auto& c : p.at("cases")) {
        const auto a = Algebra::get(c.at("algebra").get<std::string>());
        const auto& fa = *a->fa;
        const auto l0 = weight_param(*a, c.at("lambda0"));
        const Quantizer q(a->sh, a->fa, l0, c.value("cutoff", 4));
        const auto lower = wall_generators(*a, l0);
        auto fs = orbit_functions(*a, l0);
        for (auto& u : zero_units(*a, c.value("tensor_degree", 1))) fs.push_back(std::move(u));
        Counter readback, singular, rejected;
        for (const auto& f : fs) {
            bool admissible = fa.in_weight_zero(f);
            for (const auto& y : lower)
                admissible = admissible && fa.is_zero(fa.left(y, f)) && fa.is_zero(fa.left(a->uea->theta(y), f));
            if (!admissible) {
                bool threw = false;
                try {
                    (void)q.theta_inverse(f);
                } catch (const std::invalid_argument&) {
                    threw = true;
                }
                rejected.add(threw);
                continue;
            }
            const auto phi = q.theta_inverse(f);
            readback.add(fa.equals(Quantizer::theta(phi), f));
            singular.add(is_singular_vector(q.module(), fa, phi.image));
        }
        out.checks.push_back({c.at("algebra").get<std::string>() + " lambda0 = " + l0.to_string() +
                                  ": Theta(Theta^-1 f) = f, singular vector check, rejection of non-invariant f",
                              "readback " + readback.str() + ", singular " + singular.str() + ", rejected " + rejected.str(),
                              "readback " + readback.all_str() + ", singular " + singular.all_str() + ", rejected " +
                                  rejected.all_str(),
                              readback.total > 0 && readback.all() && singular.all() && rejected.all()});
    }
    return out;
}

Outcome symmetric_space(const json& p) {
    Outcome out;
    const int degree = p.value("tensor_degree", 2);
    for (const auto& c : p.at("cases")) {
        const auto a = Algebra::get(c.at("algebra").get<std::string>());
        const auto& fa = *a->fa;
        const auto l0 = weight_param(*a, c.at("lambda0"));
        const auto units = zero_units(*a, degree);
        int h = 1;
        for (const auto& u : units) h = std::max({h, fa.lower_spread(u), fa.upper_spread(u)});
        const auto lower = a->sh->kernel_elements(a->sh->kernel(l0, h));
        const auto upper = a->sh->kernel_elements(a->sh->upper_kernel(l0, h));
        auto both = lower;
        both.insert(both.end(), upper.begin(), upper.end());
        std::vector<FElem<Rational>> fk, fkk;
        for (const auto& v : fa.invariant_combinations(units, lower)) fk.push_back(FunctionAlgebra::combine(units, v));
        for (const auto& v : fa.invariant_combinations(units, both)) fkk.push_back(FunctionAlgebra::combine(units, v));
        Counter into_k, into_kk;
        for (const auto& f : fkk) into_k.add(fa.is_invariant(f, lower));
        for (const auto& f : fk) into_kk.add(fa.is_invariant(f, upper));
        const std::size_t dk = fa.span_dim(fk), dkk = fa.span_dim(fkk);
        out.checks.push_back({c.at("algebra").get<std::string>() + " lambda0 = " + l0.to_string() + " on " +
                                  std::to_string(units.size()) + " spanning units: F[0]^{K+K~} = F[0]^K",
                              "dims " + std::to_string(dkk) + " and " + std::to_string(dk) + ", K+K~ in K " + into_k.str() +
                                  ", K in K+K~ " + into_kk.str(),
                              "equal dims, both inclusions", dk == dkk && into_k.all() && into_kk.all() && dk > 0});
    }
    return out;
}

std::vector<int> integral_coords(const Weight<Rational>& w) {
    std::vector<int> v;
    for (const auto& c : w.coords) {
        if (!is_integer(c) || c < 0) throw std::invalid_argument("weight " + w.to_string() + " is not dominant integral");
        v.push_back(int(c.get_num().get_si()));
    }
    return v;
}

Outcome kostant(const json& p) {
    Outcome out;
    for (const auto& c : p.at("cases")) {
        const auto a = Algebra::get(c.at("algebra").get<std::string>());
        const auto l0 = weight_param(*a, c.at("lambda0"));
        const Rational dim = oracle::weyl_dimension(a->uea->roots(), integral_coords(l0));
        const Rational want = dim * dim;
        const auto r = kostant_rank(a->sh, l0);
        out.checks.push_back({c.at("algebra").get<std::string>() + " lambda0 = " + l0.to_string() +
                                  ": rank of the U(g) action span",
                              std::to_string(r.rank) + " at degree " + std::to_string(r.degree) + " (saturated " +
                                  yes_no(r.saturated) + ")",
                              want.get_str() + " = (Weyl dimension)^2", r.saturated && Rational(long(r.rank)) == want});
    }
    return out;
}

// (X^k Y^k)_0 at lambda = t through the naive rewriter.
RatFunc sl2_pairing(const UEA& u, int k) {
    oracle::Word w(k, kX);
    w.insert(w.end(), k, kY);
    const RatFunc t = RatFunc::variable(0);
    RatFunc total(0);
    const auto normal = oracle::word(u, w);
    for (const auto& [m, c] : normal.terms()) {
        if (m[kY] != 0 || m[kX] != 0) continue;
        RatFunc pw(1);
        for (int i = 0; i < m[kH]; ++i) pw *= t;
        total += RatFunc(c) * pw;
    }
    return total;
}

Outcome shapovalov(const json& p) {
    Outcome out;
    {
        const auto a = Algebra::get("A1");
        const RatFunc t = RatFunc::variable(0);
        const Weight<RatFunc> lam{{t}};
        for (int k = 1; k <= p.value("determinant_max_k", 4); ++k) {
            const auto b = a->sh->block(RootVec{{k}}, lam, k);
            RatFunc closed(1);
            for (int j = 0; j < k; ++j) closed *= RatFunc(j + 1) * (t - RatFunc(j));
            const RatFunc det = determinant(b.matrix);
            const bool ok = det == closed && b.matrix(0, 0) == sl2_pairing(*a->uea, k);
            out.checks.push_back({"A1 det S^" + std::to_string(k) + "(t), also against the brute-force pairing",
                                  factored_string(det), factored_string(closed), ok});
        }
    }
    for (const auto& c : p.at("symmetry")) {
        const auto a = Algebra::get(c.at("algebra").get<std::string>());
        Weight<RatFunc> lam;
        for (const auto& s : split_commas(c.at("lambda"))) lam.coords.push_back(parse_ratfunc(s));
        if (int(lam.rank()) != a->uea->roots().rank()) throw std::invalid_argument("symmetry case: rank mismatch");
        Counter sym;
        const int h = c.at("max_height");
        for (const auto& beta : a->uea->roots().q_plus_up_to(h)) {
            const auto m = a->sh->block(beta, lam, h).matrix;
            bool ok = true;
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < i; ++j) ok = ok && m(i, j) == m(j, i);
            sym.add(ok);
        }
        out.checks.push_back({c.at("algebra").get<std::string>() + " lambda = (" + c.at("lambda").get<std::string>() +
                                  "): symmetric blocks up to height " + std::to_string(h),
                              sym.str(), sym.all_str(), sym.all()});
    }
    for (const auto& c : p.at("complement")) {
        const auto a = Algebra::get(c.at("algebra").get<std::string>());
        const auto l0 = weight_param(*a, c.at("lambda0"));
        const int h = c.at("max_height");
        const auto k = a->sh->kernel(l0, h);
        Counter comp;
        long quotient = 1;
        for (const auto& beta : a->uea->roots().q_plus_up_to(h)) {
            const auto b = a->sh->block(beta, l0, h);
            comp.add(k.dim(beta) + rank(b.matrix) == b.basis.size());
            quotient += long(b.basis.size() - k.dim(beta));
        }
        std::string computed = "dim K + rank = size on " + comp.str() + " blocks";
        std::string expected = "on " + comp.all_str() + " blocks";
        bool ok = comp.all();
        bool integral = true;
        for (const auto& x : l0.coords) integral = integral && is_integer(x) && x >= 0;
        if (integral) {
            const Rational weyl = oracle::weyl_dimension(a->uea->roots(), integral_coords(l0));
            computed += ", dim V = " + std::to_string(quotient);
            expected += ", dim V = " + weyl.get_str() + " (Weyl)";
            ok = ok && Rational(quotient) == weyl;
        }
        out.checks.push_back({c.at("algebra").get<std::string>() + " lambda0 = " + l0.to_string() +
                                  ": kernel and rank are complementary up to height " + std::to_string(h),
                              computed, expected, ok});
    }
    return out;
}

Outcome hopf(const json& p) {
    const auto a = Algebra::get(p.at("algebra").get<std::string>());
    require_sl2(*a);
    const auto& fa = *a->fa;
    const UEA& u = *a->uea;
    Outcome out;
    for (const int n : p.at("levels")) {
        const Weight<Rational> lam{{Rational(n)}};
        const Quantizer q(a->sh, a->fa, lam, n + 2);
        auto fs = orbit_functions(*a, lam);
        fs.insert(fs.begin(), fa.one<Rational>());
        const std::size_t base = fs.size();
        for (std::size_t i = 1; i < base; ++i) fs.push_back(q.star(fs[i], fs[base - i]));
        std::vector<Intertwiner> phis;
        for (const auto& f : fs) phis.push_back(q.theta_inverse(f));
        Counter hom;
        for (const auto& x : phis)
            for (const auto& y : phis)
                hom.add(q.to_endo(q.compose(x, y)).matrix == q.to_endo(x).matrix * q.to_endo(y).matrix);
        std::vector<std::vector<Rational>> images;
        for (const auto& phi : phis) {
            const auto m = q.to_endo(phi).matrix;
            std::vector<Rational> flat;
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
            images.push_back(std::move(flat));
        }
        const std::size_t span_f = fa.span_dim(fs), span_phi = span_dim(images, std::size_t((n + 1) * (n + 1)));
        const std::string tag = "V(" + std::to_string(n) + ")";
        out.checks.push_back({tag + ": Phi(a * b) = Phi(a) Phi(b) on " + std::to_string(phis.size()) + " intertwiners",
                              hom.str(), hom.all_str(), hom.all()});
        out.checks.push_back({tag + ": Phi injective on the span of the test set",
                              "rank of Phi images " + std::to_string(span_phi),
                              std::to_string(span_f) + " = dimension of the function span", span_phi == span_f});

        const Matrix<Rational> Y = sl2_irrep(kY, n), H = sl2_irrep(kH, n), X = sl2_irrep(kX, n);
        const auto id = Matrix<Rational>::identity(n + 1);
        const std::vector<std::pair<std::string, Matrix<Rational>>> cases{
            {"1", id},
            {"1 * Y[1]", Y},
            {"1 * H[1]", H},
            {"1 * X[1]", X},
            {"1/2 * H[1]^2 + 1 * H[1] + 2 * Y[1] * X[1]", id.scaled(Rational(Rational(n * (n + 2)) / 2))},
            {"1 * Y[1] * H[1] + 3 * X[1]^2", Y * H + (X * X).scaled(Rational(3))},
        };
        Counter action;
        for (const auto& [text, want] : cases) {
            const auto phi = q.psi(u.parse<Rational>(text));
            action.add(is_singular_vector(q.module(), fa, phi.image) && q.to_endo(phi).matrix == want);
        }
        out.checks.push_back({tag + ": Phi Psi(a) equals the action of a (1, Y, H, X, Casimir, Y H + 3 X^2)",
                              action.str(), action.all_str(), action.all()});
    }
    return out;
}

Outcome kernel_sums(const json& p) {
    const auto a = Algebra::get(p.at("algebra").get<std::string>());
    const auto l0 = weight_param(*a, p.at("lambda0"));
    std::vector<Weight<Rational>> parts, primes;
    for (const auto& w : p.at("parts")) parts.push_back(weight_param(*a, w));
    for (const auto& w : p.at("primes")) primes.push_back(weight_param(*a, w));
    const auto report = a->sh->kernel_sum_check(l0, parts, primes, p.at("max_height"));
    Outcome out;
    bool composite = false;
    for (const auto& row : report.rows) {
        composite = composite || row.dim_prime > 0;
        out.checks.push_back({"beta = (" + row.beta.to_string() + "): K_lambda0 = sum of K_lambda_i, K_lambda' inside",
                              "dims K0 " + std::to_string(row.dim_k0) + ", sum " + std::to_string(row.dim_sum) +
                                  ", joint " + std::to_string(row.dim_joint) + ", K' " + std::to_string(row.dim_prime) +
                                  " inside " + yes_no(row.prime_included),
                              "K0 = sum = joint, K' inside", row.equal() && row.prime_included});
    }
    out.checks.push_back({"the composite-root kernel K_lambda' is nonzero somewhere", yes_no(composite), "yes", composite});
    return out;
}

const std::map<std::string, std::function<Outcome(const json&)>>& kinds() {
    static const std::map<std::string, std::function<Outcome(const json&)>> table{
        {"star-formula", star_formula}, {"matrix-algebra", matrix_algebra},
        {"limit", limit},               {"laurent", laurent},
        {"theta", theta},               {"symmetric-space", symmetric_space},
        {"kostant", kostant},           {"shapovalov", shapovalov},
        {"hopf", hopf},                 {"kernel-sums", kernel_sums},
    };
    return table;
}

}  // namespace

std::vector<Experiment> parse_manifest(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("manifest: ") + e.what());
    }
    std::vector<Experiment> out;
    try {
        for (const auto& e : doc.at("experiments")) {
            Experiment x;
            x.name = e.at("name");
            x.title = e.at("title");
            x.kind = e.at("kind");
            x.criterion = e.value("criterion", 0);
            x.time_limit_s = e.value("time_limit_s", 0.0);
            x.params = e.value("params", json::object());
            if (!kinds().count(x.kind)) throw std::invalid_argument("manifest: unknown kind '" + x.kind + "'");
            out.push_back(std::move(x));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("manifest: ") + e.what());
    }
    return out;
}

const std::vector<Experiment>& manifest() {
    static const std::vector<Experiment> all = parse_manifest(builtin_manifest());
    return all;
}

const Experiment& find(const std::vector<Experiment>& all, const std::string& name) {
    for (const auto& e : all)
        if (e.name == name) return e;
    throw std::out_of_range("unknown experiment '" + name + "'");
}

Outcome run(const Experiment& e) {
    try {
        return kinds().at(e.kind)(e.params);
    } catch (const std::exception& ex) {
        Outcome out;
        out.error = ex.what();
        return out;
    }
}

}  // namespace repro
}  // namespace fusionq
