#include "fusionq/shapovalov.hpp"

#include <stdexcept>

namespace fusionq {

const std::vector<std::vector<PBWElem<Rational>>>& Shapovalov::symbolic_entries(const RootVec& beta) const {
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(beta); it != cache_.end()) return it->second;
    }
    const auto basis = uea_->lowering_basis(beta);
    const std::size_t n = basis.size();
    std::vector<std::vector<PBWElem<Rational>>> entries(n, std::vector<PBWElem<Rational>>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto wi = uea_->omega(uea_->monomial<Rational>(basis[i]));
        for (std::size_t j = i; j < n; ++j) {
            entries[i][j] = uea_->project_zero(uea_->multiply(wi, uea_->monomial<Rational>(basis[j])));
            entries[j][i] = entries[i][j];
        }
    }
    std::lock_guard lock(mutex_);
    return cache_.emplace(beta, std::move(entries)).first->second;
}

std::vector<std::vector<Rational>> span_basis(const std::vector<std::vector<Rational>>& vectors, std::size_t n) {
    Matrix<Rational> m(vectors.size(), n);
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = vectors[i][j];
    const auto e = rref(m);
    std::vector<std::vector<Rational>> out;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) out.push_back(e.reduced.row(r));
    return out;
}

KernelSpace Shapovalov::kernel(const Weight<Rational>& lambda0, int cutoff) const {
    KernelSpace k;
    k.lambda0 = lambda0;
    k.cutoff = cutoff;
    for (const auto& beta : roots().q_plus_up_to(cutoff)) {
        auto b = block(beta, lambda0, cutoff);
        k.blocks[beta] = nullspace(b.matrix);
        k.bases[beta] = std::move(b.basis);
    }
    return k;
}

KernelSpace Shapovalov::upper_kernel(const Weight<Rational>& lambda0, int cutoff) const {
    KernelSpace k = kernel(lambda0, cutoff);
    k.side = KernelSide::Upper;
    return k;
}

PBWElem<Rational> Shapovalov::kernel_element(const KernelSpace& k, const RootVec& beta, std::size_t index) const {
    const auto& basis = k.bases.at(beta);
    const auto& v = k.blocks.at(beta).at(index);
    PBWElem<Rational> e;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (k.side == KernelSide::Lower) {
            e.add_term(basis[i], v[i]);
        } else {
            const auto [x, sign] = uea_->theta_lowering(basis[i]);
            e.add_term(x, v[i] * sign);
        }
    }
    return e;
}

std::vector<PBWElem<Rational>> Shapovalov::kernel_elements(const KernelSpace& k) const {
    std::vector<PBWElem<Rational>> out;
    for (const auto& beta : roots().q_plus_up_to(k.cutoff))
        for (std::size_t i = 0; i < k.dim(beta); ++i) out.push_back(kernel_element(k, beta, i));
    return out;
}

std::vector<PBWElem<Rational>> Shapovalov::kernel_generators_integral(const Weight<Rational>& lambda0,
                                                                      const std::vector<int>& delta) const {
    const RootSystem& rs = roots();
    std::vector<bool> in_delta(rs.rank(), false);
    for (int i : delta) {
        if (i < 0 || i >= rs.rank()) throw std::invalid_argument("simple root index out of range");
        const Rational& n = lambda0.coords[i];
        if (!is_integer(n) || sgn(n) < 0)
            throw std::invalid_argument("lambda0 is not a non-negative integer on simple root " + std::to_string(i + 1));
        in_delta[i] = true;
    }
    for (int k : rs.genericity_report(lambda0)) {
        const auto& root = rs.positive_roots()[k];
        for (int i = 0; i < rs.rank(); ++i)
            if (root.coords[i] != 0 && !in_delta[i])
                throw std::invalid_argument("lambda0 is not generic on root " + root.to_string() + " outside span(delta)");
    }
    std::vector<PBWElem<Rational>> gens;
    for (int i : delta) {
        const int power = int(lambda0.coords[i].get_num().get_si()) + 1;
        gens.push_back(uea_->monomial<Rational>(uea_->generator_mono(rs.y_index(rs.root_index(rs.simple_root(i))), power)));
    }
    return gens;
}

std::vector<Rational> Shapovalov::coordinates(const PBWElem<Rational>& y, const RootVec& beta) const {
    const auto basis = uea_->lowering_basis(beta);
    std::vector<Rational> c(basis.size(), Rational(0));
    for (const auto& [m, v] : y.terms()) {
        std::size_t i = 0;
        while (i < basis.size() && basis[i] != m) ++i;
        if (i == basis.size()) throw std::invalid_argument("element does not lie in U(n-)[-beta]");
        c[i] = v;
    }
    return c;
}

std::vector<std::vector<Rational>> Shapovalov::ideal_piece(const std::vector<PBWElem<Rational>>& gens,
                                                          const RootVec& beta) const {
    std::vector<std::vector<Rational>> vecs;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        const RootVec wg = uea_->weight(g.terms().begin()->first).scaled(-1);
        const RootVec rest = beta - wg;
        if (!rest.is_nonnegative()) continue;
        if (rest.height() == 0) {
            vecs.push_back(coordinates(g, beta));
            continue;
        }
        for (const auto& m : uea_->lowering_basis(rest))
            vecs.push_back(coordinates(uea_->multiply(uea_->monomial<Rational>(m), g), beta));
    }
    return span_basis(vecs, uea_->lowering_basis(beta).size());
}

KernelSumReport Shapovalov::kernel_sum_check(const Weight<Rational>& lambda0, const std::vector<Weight<Rational>>& parts,
                                             const std::vector<Weight<Rational>>& primes, int cutoff) const {
    const KernelSpace k0 = kernel(lambda0, cutoff);
    std::vector<KernelSpace> ks, kp;
    for (const auto& w : parts) ks.push_back(kernel(w, cutoff));
    for (const auto& w : primes) kp.push_back(kernel(w, cutoff));
    KernelSumReport report;
    for (const auto& beta : roots().q_plus_up_to(cutoff)) {
        const std::size_t n = k0.bases.at(beta).size();
        KernelSumRow row;
        row.beta = beta;
        row.dim_k0 = k0.dim(beta);
        std::vector<std::vector<Rational>> sum;
        for (const auto& k : ks)
            for (const auto& v : k.blocks.at(beta)) sum.push_back(v);
        row.dim_sum = span_basis(sum, n).size();
        auto joint = sum;
        for (const auto& v : k0.blocks.at(beta)) joint.push_back(v);
        row.dim_joint = span_basis(joint, n).size();
        for (const auto& k : kp) {
            row.dim_prime += k.dim(beta);
            auto with = sum;
            for (const auto& v : k.blocks.at(beta)) with.push_back(v);
            if (span_basis(with, n).size() != row.dim_sum) row.prime_included = false;
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace fusionq
