#include "fusionq/funalg.hpp"

#include <set>
#include <stdexcept>

namespace fusionq {

namespace {

void axpy(SparseVec& out, const SparseVec& v, const Rational& c) {
    for (const auto& [i, x] : v) {
        auto [it, inserted] = out.try_emplace(i, c * x);
        if (!inserted) {
            it->second += c * x;
            if (is_zero(it->second)) out.erase(it);
        }
    }
}

}  // namespace

SparseVec Rep::apply(const PBWMono& m, const SparseVec& v) const {
    SparseVec cur = v;
    for (int b = int(m.size()) - 1; b >= 0; --b)
        for (int k = 0; k < m[b]; ++k) {
            SparseVec next;
            for (const auto& [j, x] : cur) axpy(next, gens[b][j], x);
            cur = std::move(next);
            if (cur.empty()) return cur;
        }
    return cur;
}

SparseVec Rep::apply_covector(const PBWMono& m, const SparseVec& v) const {
    SparseVec cur = v;
    for (int b = 0; b < int(m.size()); ++b)
        for (int k = 0; k < m[b]; ++k) {
            // (v^T rho(e_b))_j = sum_i v_i rho(e_b)_ij
            SparseVec next;
            for (int j = 0; j < dim; ++j) {
                Rational s = 0;
                for (const auto& [i, x] : gens[b][j]) {
                    auto it = cur.find(i);
                    if (it != cur.end()) s += it->second * x;
                }
                if (!is_zero(s)) next.emplace(j, s);
            }
            cur = std::move(next);
            if (cur.empty()) return cur;
        }
    return cur;
}

FunctionAlgebra::FunctionAlgebra(std::shared_ptr<const UEA> uea) : uea_(std::move(uea)) {
    const RootSystem& rs = uea_->roots();
    const int n = rs.dim();

    Rep triv;
    triv.name = "triv";
    triv.dim = 1;
    triv.weights = {std::vector<int>(rs.rank(), 0)};
    triv.gens.assign(n, std::vector<SparseVec>(1));
    trivial_ = register_rep(std::move(triv));

    Rep coad;
    coad.name = "coad";
    coad.dim = n;
    for (int b = 0; b < n; ++b) coad.weights.push_back(rs.root_to_weight(rs.basis_weight(b).scaled(-1)));
    coad.gens.assign(n, std::vector<SparseVec>(n));
    // rho(a) e_b^* = -sum_e (coefficient of e_b in [a, e_e]) e_e^*
    for (int a = 0; a < n; ++a)
        for (int e = 0; e < n; ++e)
            for (const auto& [b, c] : rs.bracket(a, e)) coad.gens[a][b][e] = Rational(-c);
    coadjoint_ = register_rep(std::move(coad));
}

RepPtr FunctionAlgebra::register_rep(Rep rep) const {
    std::lock_guard lock(mutex_);
    auto it = registry_.find(rep.name);
    if (it != registry_.end()) return it->second;
    auto ptr = std::make_shared<const Rep>(std::move(rep));
    registry_.emplace(ptr->name, ptr);
    return ptr;
}

RepPtr FunctionAlgebra::tensor(const RepPtr& a, const RepPtr& b) const {
    const std::string name = a->name + "x" + b->name;
    {
        std::lock_guard lock(mutex_);
        if (auto it = registry_.find(name); it != registry_.end()) return it->second;
    }
    Rep t;
    t.name = name;
    t.dim = a->dim * b->dim;
    const int rank = roots().rank();
    for (int i = 0; i < a->dim; ++i)
        for (int k = 0; k < b->dim; ++k) {
            std::vector<int> w(rank);
            for (int r = 0; r < rank; ++r) w[r] = a->weights[i][r] + b->weights[k][r];
            t.weights.push_back(std::move(w));
        }
    const int n = roots().dim();
    t.gens.assign(n, std::vector<SparseVec>(t.dim));
    for (int g = 0; g < n; ++g)
        for (int i = 0; i < a->dim; ++i)
            for (int k = 0; k < b->dim; ++k) {
                SparseVec& col = t.gens[g][i * b->dim + k];
                for (const auto& [i2, x] : a->gens[g][i]) col[i2 * b->dim + k] += x;
                for (const auto& [k2, x] : b->gens[g][k]) col[i * b->dim + k2] += x;
                for (auto it = col.begin(); it != col.end();) it = fusionq::is_zero(it->second) ? col.erase(it) : std::next(it);
            }
    return register_rep(std::move(t));
}

RepPtr FunctionAlgebra::rep_by_name(const std::string& name) const {
    {
        std::lock_guard lock(mutex_);
        if (auto it = registry_.find(name); it != registry_.end()) return it->second;
    }
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : name) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == 'x' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 2) throw std::invalid_argument("unknown representation '" + name + "'");
    RepPtr r = rep_by_name(parts[0]);
    for (std::size_t k = 1; k < parts.size(); ++k) r = tensor(r, rep_by_name(parts[k]));
    return r;
}

FElem<Rational> FunctionAlgebra::orbit_function(const std::vector<Rational>& x, const Weight<Rational>& lambda) const {
    const RootSystem& rs = roots();
    if (int(x.size()) != rs.dim()) throw std::invalid_argument("orbit_function: wrong coordinate count");
    FElem<Rational> f;
    for (int i = 0; i < rs.dim(); ++i) {
        if (fusionq::is_zero(x[i])) continue;
        for (int h = 0; h < rs.rank(); ++h) f.add(coadjoint_, i, rs.h_index(h), x[i] * lambda.coords[h]);
    }
    return f;
}

FElem<Rational> FunctionAlgebra::orbit_function(int basis, const Weight<Rational>& lambda) const {
    std::vector<Rational> x(roots().dim(), Rational(0));
    x.at(basis) = 1;
    return orbit_function(x, lambda);
}

const std::vector<std::pair<RootVec, std::vector<int>>>& FunctionAlgebra::reachable(const Rep& rep,
                                                                                   const std::vector<int>& mu,
                                                                                   int sign) const {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(rep.name, mu, sign);
    if (auto it = reach_cache_.find(key); it != reach_cache_.end()) return it->second;
    std::vector<std::pair<RootVec, std::vector<int>>> out;
    std::set<std::vector<int>> seen;
    for (const auto& w : rep.weights) {
        if (!seen.insert(w).second) continue;
        std::vector<int> d(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) d[i] = sign * (w[i] - mu[i]);
        const auto r = roots().weight_to_root(d);
        RootVec gamma{std::vector<int>(r.size())};
        bool ok = true;
        for (std::size_t i = 0; i < r.size() && ok; ++i) {
            ok = is_integer(r[i]) && sgn(r[i]) >= 0;
            if (ok) gamma.coords[i] = int(r[i].get_num().get_si());
        }
        if (ok) out.emplace_back(gamma, w);
    }
    return reach_cache_.emplace(std::move(key), std::move(out)).first->second;
}

const std::vector<std::pair<ProfileKey, SparseVec>>& FunctionAlgebra::column_probes(const Rep& rep, int j) const {
    const auto key = std::make_pair(rep.name, j);
    {
        std::lock_guard lock(mutex_);
        if (auto it = probe_cache_.find(key); it != probe_cache_.end()) return it->second;
    }
    std::vector<std::pair<ProfileKey, SparseVec>> probes;
    for (const auto& [gamma, nu] : reachable(rep, rep.weights[j], +1))
        for (const auto& xm : monomials_of(gamma, true)) {
            const SparseVec v = rep.apply(xm, {{j, Rational(1)}});
            if (v.empty()) continue;
            for (const auto& [delta, bottom] : reachable(rep, nu, -1))
                for (const auto& ym : monomials_of(delta, false)) {
                    SparseVec w = rep.apply(ym, v);
                    if (!w.empty()) probes.emplace_back(ProfileKey{nu, xm, ym}, std::move(w));
                }
        }
    std::lock_guard lock(mutex_);
    return probe_cache_.emplace(key, std::move(probes)).first->second;
}

const std::vector<PBWMono>& FunctionAlgebra::monomials_of(const RootVec& gamma, bool raising) const {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(gamma, raising);
    if (auto it = mono_cache_.find(key); it != mono_cache_.end()) return it->second;
    std::vector<PBWMono> out;
    if (gamma.height() == 0) {
        out.push_back(uea_->unit_mono());
    } else {
        for (const auto& y : uea_->lowering_basis(gamma)) out.push_back(raising ? uea_->theta_lowering(y).first : y);
    }
    return mono_cache_.emplace(std::move(key), std::move(out)).first->second;
}

}  // namespace fusionq

namespace fusionq {

std::vector<FElem<Rational>> FunctionAlgebra::weight_zero_units(const RepPtr& rep) const {
    std::vector<FElem<Rational>> out;
    const std::vector<int> zero(roots().rank(), 0);
    for (int j = 0; j < rep->dim; ++j) {
        if (rep->weights[j] != zero) continue;
        for (int i = 0; i < rep->dim; ++i) {
            FElem<Rational> f;
            f.add(rep, i, j, Rational(1));
            out.push_back(std::move(f));
        }
    }
    return out;
}

}  // namespace fusionq
