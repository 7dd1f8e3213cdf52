#include "fusionq/rootsys.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fusionq {

RootVec RootVec::operator+(const RootVec& o) const {
    RootVec r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
    return r;
}

RootVec RootVec::operator-(const RootVec& o) const {
    RootVec r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
    return r;
}

RootVec RootVec::scaled(int k) const {
    RootVec r = *this;
    for (auto& c : r.coords) c *= k;
    return r;
}

std::string RootVec::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
    return s;
}

bool root_order_less(const RootVec& a, const RootVec& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.coords > b.coords;
}

namespace {

using QMat = Matrix<Rational>;

QMat unit(std::size_t n, std::size_t i, std::size_t j) {
    QMat m(n, n);
    m(i, j) = 1;
    return m;
}

QMat commutator(const QMat& a, const QMat& b) { return a * b - b * a; }

struct SimpleComponent {
    std::size_t size = 0;
    std::vector<QMat> x;  // simple root vectors
};

SimpleComponent classical(char series, int n) {
    SimpleComponent c;
    if (series == 'A') {
        if (n < 1 || n > 3) throw std::invalid_argument("unsupported rank for type A");
        c.size = std::size_t(n) + 1;
        for (int i = 0; i < n; ++i) c.x.push_back(unit(c.size, i, i + 1));
        return c;
    }
    if (series == 'B' || series == 'C') {
        if (n < 2 || n > 3) throw std::invalid_argument(std::string("unsupported rank for type ") + series);
        c.size = series == 'B' ? std::size_t(2 * n + 1) : std::size_t(2 * n);
        const std::size_t N = c.size;
        auto mirror = [N](std::size_t k) { return N - 1 - k; };
        for (int i = 0; i + 1 < n; ++i)
            c.x.push_back(unit(N, i, i + 1) - unit(N, mirror(i + 1), mirror(i)));
        if (series == 'B') c.x.push_back(unit(N, n - 1, n) - unit(N, n, n + 1));
        else c.x.push_back(unit(N, n - 1, n));
        return c;
    }
    throw std::invalid_argument(std::string("unsupported series '") + series + "'");
}

// Coefficient c with a == c * b; a and b must be proportional, b nonzero.
Rational proportionality(const QMat& a, const QMat& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (!is_zero(b(i, j))) {
                Rational c = a(i, j) / b(i, j);
                if (a != b.scaled(c)) throw std::logic_error("matrices are not proportional");
                return c;
            }
    throw std::logic_error("proportionality to zero matrix");
}

// Solve target = sum c_k basis[k] exactly; throws if impossible.
std::vector<Rational> decompose(const std::vector<QMat>& basis, const QMat& target) {
    const std::size_t n = target.rows() * target.cols();
    QMat aug(n, basis.size() + 1);
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t e = 0; e < n; ++e) aug(e, k) = basis[k](e / target.cols(), e % target.cols());
    for (std::size_t e = 0; e < n; ++e) aug(e, basis.size()) = target(e / target.cols(), e % target.cols());
    const auto ech = rref(aug);
    std::vector<Rational> c(basis.size(), Rational(0));
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        if (ech.pivots[r] == basis.size()) throw std::logic_error("bracket leaves the span of the basis");
        c[ech.pivots[r]] = ech.reduced(r, basis.size());
    }
    return c;
}

std::vector<std::string> split_label(const std::string& label) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : label) {
        if (ch == 'x') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

RootSystem RootSystem::build(const std::string& label) {
    RootSystem rs;
    rs.label_ = label;
    std::vector<SimpleComponent> comps;
    for (const auto& part : split_label(label)) {
        if (part.size() != 2 || part[1] < '1' || part[1] > '9')
            throw std::invalid_argument("unsupported algebra label '" + label + "'");
        comps.push_back(classical(part[0], part[1] - '0'));
    }
    std::size_t N = 0;
    int r = 0;
    for (const auto& c : comps) {
        N += c.size;
        r += int(c.x.size());
    }
    if (r > 3) throw std::invalid_argument("algebra '" + label + "' exceeds rank 3");
    rs.rank_ = r;

    // Embed block-diagonally.
    std::vector<QMat> X, Y, H;
    std::size_t offset = 0;
    for (const auto& c : comps) {
        for (const auto& m : c.x) {
            QMat big(N, N);
            for (std::size_t i = 0; i < c.size; ++i)
                for (std::size_t j = 0; j < c.size; ++j) big(offset + i, offset + j) = m(i, j);
            X.push_back(big);
        }
        offset += c.size;
    }
    for (int i = 0; i < r; ++i) {
        QMat y = X[i].transpose();
        QMat h = commutator(X[i], y);
        const Rational k = proportionality(commutator(h, X[i]), X[i]);
        const Rational s = Rational(2) / k;
        H.push_back(h.scaled(s));
        Y.push_back(y.scaled(s));
    }
    rs.cartan_.assign(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const Rational a = proportionality(commutator(H[i], X[j]), X[j]);
            if (!is_integer(a)) throw std::logic_error("non-integral Cartan entry");
            rs.cartan_[i][j] = int(a.get_num().get_si());
        }

    // Root set by closure under simple brackets.
    std::map<RootVec, QMat> found;
    std::vector<RootVec> frontier;
    for (int i = 0; i < r; ++i) {
        RootVec s{std::vector<int>(r, 0)};
        s.coords[i] = 1;
        found.emplace(s, X[i]);
        frontier.push_back(s);
    }
    while (!frontier.empty()) {
        std::vector<RootVec> next;
        for (const auto& b : frontier)
            for (int i = 0; i < r; ++i) {
                QMat m = commutator(X[i], found.at(b));
                if (m.is_zero()) continue;
                RootVec s{std::vector<int>(r, 0)};
                s.coords[i] = 1;
                RootVec nb = b + s;
                if (found.emplace(nb, m).second) next.push_back(nb);
            }
        frontier = std::move(next);
    }
    for (const auto& [root, m] : found) rs.positive_roots_.push_back(root);
    std::sort(rs.positive_roots_.begin(), rs.positive_roots_.end(), root_order_less);
    const int m = int(rs.positive_roots_.size());

    // Symmetrizer: d_i A_ij = d_j A_ji, (alpha_i, alpha_i) = 2 d_i, min d = 1 per component.
    std::vector<Rational> d(r, Rational(0));
    for (int s = 0; s < r; ++s) {
        if (d[s] != 0) continue;
        std::vector<int> comp{s};
        d[s] = 1;
        for (std::size_t q = 0; q < comp.size(); ++q) {
            const int i = comp[q];
            for (int j = 0; j < r; ++j)
                if (d[j] == 0 && rs.cartan_[i][j] != 0) {
                    d[j] = d[i] * rs.cartan_[i][j] / rs.cartan_[j][i];
                    comp.push_back(j);
                }
        }
        Rational mn = d[s];
        for (int i : comp) mn = std::min(mn, d[i]);
        for (int i : comp) d[i] /= mn;
    }
    auto inner = [&](const RootVec& a, const RootVec& b) {
        Rational s = 0;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) s += a.coords[i] * b.coords[j] * d[i] * rs.cartan_[i][j];
        return s;
    };
    for (const auto& root : rs.positive_roots_) {
        const Rational nn = inner(root, root);
        rs.norms_.push_back(nn.get_num().get_si());
        std::vector<int> cor(r);
        for (int i = 0; i < r; ++i) {
            Rational c = root.coords[i] * 2 * d[i] / nn;
            if (!is_integer(c)) throw std::logic_error("non-integral coroot");
            cor[i] = int(c.get_num().get_si());
        }
        rs.coroots_.push_back(cor);
    }

    // Chevalley basis with the extraspecial sign convention.
    std::vector<QMat> Xr(m), Yr(m);
    for (int k = 0; k < m; ++k) {
        const RootVec& xi = rs.positive_roots_[k];
        if (xi.height() == 1) {
            int i = 0;
            while (xi.coords[i] == 0) ++i;
            Xr[k] = X[i];
            Yr[k] = Y[i];
            continue;
        }
        int i = 0;
        RootVec beta;
        for (; i < r; ++i) {
            if (xi.coords[i] == 0) continue;
            beta = xi - rs.simple_root(i);
            if (rs.is_positive_root(beta)) break;
        }
        int p = 0;
        while (rs.is_positive_root(beta - rs.simple_root(i).scaled(p + 1))) ++p;
        const int bk = rs.root_index(beta);
        Xr[k] = commutator(X[i], Xr[bk]).scaled(Rational(1, p + 1));
        Yr[k] = commutator(Yr[bk], Y[i]).scaled(Rational(1, p + 1));
        QMat hk(N, N);
        for (int j = 0; j < r; ++j) hk = hk + H[j].scaled(Rational(rs.coroots_[k][j]));
        if (commutator(Xr[k], Yr[k]) != hk) throw std::logic_error("Chevalley normalization failed for " + xi.to_string());
    }

    const int n = rs.dim();
    rs.defining_.resize(n);
    for (int k = 0; k < m; ++k) {
        rs.defining_[rs.y_index(k)] = Yr[k];
        rs.defining_[rs.x_index(k)] = Xr[k];
    }
    for (int i = 0; i < r; ++i) rs.defining_[rs.h_index(i)] = H[i];

    rs.brackets_.assign(std::size_t(n) * n, {});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const QMat br = commutator(rs.defining_[a], rs.defining_[b]);
            if (br.is_zero()) continue;
            const auto c = decompose(rs.defining_, br);
            LieVec v;
            for (int e = 0; e < n; ++e) {
                if (is_zero(c[e])) continue;
                if (!is_integer(c[e])) throw std::logic_error("non-integral structure constant");
                v.emplace_back(e, c[e].get_num().get_si());
            }
            rs.brackets_[std::size_t(a) * n + b] = std::move(v);
        }

    QMat A(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) A(i, j) = rs.cartan_[i][j];
    rs.cartan_inverse_ = inverse(A);
    return rs;
}

int RootSystem::root_index(const RootVec& root) const {
    if (root.coords.size() != std::size_t(rank_)) return -1;
    auto it = std::lower_bound(positive_roots_.begin(), positive_roots_.end(), root, root_order_less);
    if (it == positive_roots_.end() || *it != root) return -1;
    return int(it - positive_roots_.begin());
}

RootVec RootSystem::simple_root(int i) const {
    RootVec s{std::vector<int>(rank_, 0)};
    s.coords[i] = 1;
    return s;
}

GenKind RootSystem::kind(int basis) const {
    if (basis < num_positive_roots()) return GenKind::Y;
    if (basis < num_positive_roots() + rank_) return GenKind::H;
    return GenKind::X;
}

int RootSystem::sub_index(int basis) const {
    switch (kind(basis)) {
        case GenKind::Y: return basis;
        case GenKind::H: return basis - num_positive_roots();
        default: return basis - num_positive_roots() - rank_;
    }
}

RootVec RootSystem::basis_weight(int basis) const {
    switch (kind(basis)) {
        case GenKind::Y: return positive_roots_[basis].scaled(-1);
        case GenKind::H: return RootVec{std::vector<int>(rank_, 0)};
        default: return positive_roots_[sub_index(basis)];
    }
}

std::string RootSystem::basis_name(int basis) const {
    switch (kind(basis)) {
        case GenKind::Y: return "Y[" + positive_roots_[basis].to_string() + "]";
        case GenKind::H: return "H[" + std::to_string(sub_index(basis) + 1) + "]";
        default: return "X[" + positive_roots_[sub_index(basis)].to_string() + "]";
    }
}

int RootSystem::parse_basis_name(std::string_view name) const {
    for (int b = 0; b < dim(); ++b)
        if (basis_name(b) == name) return b;
    return -1;
}

Rational RootSystem::trace_form(int a, int b) const {
    const QMat p = defining_[a] * defining_[b];
    Rational t = 0;
    for (std::size_t i = 0; i < p.rows(); ++i) t += p(i, i);
    return t;
}

std::vector<int> RootSystem::root_to_weight(const RootVec& root) const {
    std::vector<int> w(rank_, 0);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) w[i] += cartan_[i][j] * root.coords[j];
    return w;
}

std::vector<Rational> RootSystem::weight_to_root(const std::vector<int>& w) const {
    std::vector<Rational> out(rank_, Rational(0));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) out[i] += cartan_inverse_(i, j) * w[j];
    return out;
}

Weight<Rational> RootSystem::rho() const { return Weight<Rational>{std::vector<Rational>(rank_, Rational(1))}; }

std::vector<int> RootSystem::genericity_report(const Weight<Rational>& lambda) const {
    std::vector<int> out;
    const Weight<Rational> shifted = lambda + rho();
    for (int k = 0; k < num_positive_roots(); ++k) {
        const Rational v = pair(shifted, k);
        if (is_integer(v) && sgn(v) > 0) out.push_back(k);
    }
    return out;
}

std::vector<RootVec> RootSystem::q_plus_up_to(int max_height) const {
    std::vector<RootVec> out;
    std::vector<int> cur(rank_, 0);
    // enumerate all nonnegative vectors with sum <= max_height
    auto rec = [&](auto&& self, int i, int remaining) -> void {
        if (i == rank_) {
            RootVec v{cur};
            if (v.height() >= 1) out.push_back(v);
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            cur[i] = c;
            self(self, i + 1, remaining - c);
        }
        cur[i] = 0;
    };
    rec(rec, 0, max_height);
    std::sort(out.begin(), out.end(), root_order_less);
    return out;
}

std::string RootSystem::to_json() const {
    nlohmann::ordered_json j;
    j["algebra"] = label_;
    j["rank"] = rank_;
    j["cartan"] = cartan_;
    nlohmann::ordered_json roots = nlohmann::ordered_json::array();
    for (int k = 0; k < num_positive_roots(); ++k)
        roots.push_back({{"root", positive_roots_[k].coords}, {"coroot", coroots_[k]}, {"norm", norms_[k]}});
    j["positive_roots"] = roots;
    j["rho"] = std::vector<int>(rank_, 1);
    nlohmann::ordered_json sc = nlohmann::ordered_json::array();
    for (int a = 0; a < dim(); ++a)
        for (int b = a + 1; b < dim(); ++b) {
            const auto& v = bracket(a, b);
            if (v.empty()) continue;
            nlohmann::ordered_json terms = nlohmann::ordered_json::array();
            for (const auto& [e, c] : v) terms.push_back({basis_name(e), c});
            sc.push_back({{"a", basis_name(a)}, {"b", basis_name(b)}, {"bracket", terms}});
        }
    j["brackets"] = sc;
    return j.dump(2);
}

}  // namespace fusionq
