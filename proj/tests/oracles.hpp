#pragma once

// Independent reference computations used only by tests.

#include <map>
#include <memory>
#include <vector>

#include "fusionq/uea.hpp"

namespace oracle {

using fusionq::Rational;
using Word = std::vector<int>;

/// Rewrites words by adjacent transpositions until sorted, using only the
/// bracket table (no caching, no PBW engine).
inline std::map<Word, Rational> naive_normal_order(const fusionq::RootSystem& rs, std::map<Word, Rational> todo) {
    std::map<Word, Rational> done;
    while (!todo.empty()) {
        auto node = todo.extract(todo.begin());
        const Word w = node.key();
        const Rational c = node.mapped();
        if (c == 0) continue;
        std::size_t i = 0;
        while (i + 1 < w.size() && w[i] <= w[i + 1]) ++i;
        if (i + 1 >= w.size()) {
            done[w] += c;
            continue;
        }
        Word swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        todo[swapped] += c;
        for (const auto& [e, k] : rs.bracket(w[i], w[i + 1])) {
            Word shorter(w.begin(), w.begin() + i);
            shorter.push_back(e);
            shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
            todo[shorter] += c * k;
        }
    }
    for (auto it = done.begin(); it != done.end();) it = it->second == 0 ? done.erase(it) : std::next(it);
    return done;
}

inline fusionq::PBWElem<Rational> word(const fusionq::UEA& u, const Word& w) {
    fusionq::PBWElem<Rational> r;
    for (const auto& [sorted, c] : naive_normal_order(u.roots(), {{w, Rational(1)}})) {
        fusionq::PBWMono m = u.unit_mono();
        for (int g : sorted) ++m[g];
        r.add_term(m, c);
    }
    return r;
}

/// Weyl dimension formula prod <lambda+rho, b^v> / <rho, b^v>.
inline Rational weyl_dimension(const fusionq::RootSystem& rs, const std::vector<int>& lambda) {
    Rational d = 1;
    for (int k = 0; k < rs.num_positive_roots(); ++k) {
        long num = 0, den = 0;
        for (int i = 0; i < rs.rank(); ++i) {
            num += long(rs.coroot(k)[i]) * (lambda[i] + 1);
            den += rs.coroot(k)[i];
        }
        Rational q(num, den);
        q.canonicalize();
        d *= q;
    }
    return d;
}

inline std::shared_ptr<const fusionq::UEA> make_uea(const char* label) {
    return std::make_shared<const fusionq::UEA>(
        std::make_shared<const fusionq::RootSystem>(fusionq::RootSystem::build(label)));
}

}  // namespace oracle
