// fusionq: command-line front end for Shapovalov forms, fusion elements and
// star products. Exit codes: 0 ok, 1 check failed or computation error,
// 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fusionq/fusion.hpp"
#include "fusionq/quantize.hpp"
#include "fusionq/repro.hpp"

using namespace fusionq;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string algebra = "A1";
    int cutoff = 4;
    std::string field = "auto";
    std::string lambda, lambda0, direction = "1", beta;
    std::string f, g, u = "1";
    bool json = false, dims = false, table = false, upper = false, via_fusion = false;
    bool list = false, all = false;
    int max_degree = 16;
    std::string experiment, manifest;
};

int default_cutoff() {
    const char* env = std::getenv("FUSIONQ_CUTOFF");
    if (!env || !*env) return 4;
    try {
        std::size_t used = 0;
        const int c = std::stoi(env, &used);
        if (used == std::string(env).size() && c >= 1) return c;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("FUSIONQ_CUTOFF must be a positive integer, got '") + env + "'");
}

std::shared_ptr<const Algebra> algebra(const RunConfig& cfg) {
    try {
        return Algebra::get(cfg.algebra);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Weight<Rational> rational_weight(const Algebra& a, const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string(flag) + " is required");
    try {
        return parse_weight(text, a.uea->roots().rank());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

Weight<RatFunc> symbolic_weight(const Algebra& a, const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string(flag) + " is required");
    Weight<RatFunc> w;
    std::stringstream in(text);
    std::string item;
    try {
        while (std::getline(in, item, ',')) w.coords.push_back(parse_ratfunc(item));
    } catch (const std::exception& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
    if (int(w.rank()) != a.uea->roots().rank())
        throw UsageError(std::string(flag) + ": expected " + std::to_string(a.uea->roots().rank()) + " coordinates");
    return w;
}

// Rational unless --field says otherwise or some coordinate is symbolic.
bool use_rational(const RunConfig& cfg, const Algebra& a, const std::string& text) {
    if (cfg.field == "rational") return true;
    if (cfg.field == "function") return false;
    try {
        parse_weight(text, a.uea->roots().rank());
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

RootVec parse_beta(const Algebra& a, const std::string& text) {
    if (text.empty()) throw UsageError("--beta is required");
    RootVec beta;
    std::stringstream in(text);
    std::string item;
    try {
        while (std::getline(in, item, ',')) beta.coords.push_back(std::stoi(item));
    } catch (const std::exception&) {
        throw UsageError("--beta: expected comma-separated integers, got '" + text + "'");
    }
    if (int(beta.coords.size()) != a.uea->roots().rank() || !beta.is_nonnegative() || beta.height() == 0)
        throw UsageError("--beta: '" + text + "' is not a nonzero element of Q+ for " + a.uea->roots().label());
    return beta;
}


std::string orbit_name(const RootSystem& rs, int basis) {
    std::string name = rs.basis_name(basis);
    if (rs.rank() == 1) name = name.substr(0, name.find('['));
    return "f" + name;
}

// "1", an orbit function "f<basis name>" (for A1 also fH, fX, fY) at lambda0,
// or an explicit "c * c[rep; i, j] + ..." expression.
FElem<Rational> parse_function(const Algebra& a, const std::string& spec, const std::string& lambda0, const char* flag) {
    if (spec.empty()) throw UsageError(std::string(flag) + " is required");
    const RootSystem& rs = a.uea->roots();
    if (spec == "1") return a.fa->one<Rational>();
    if (spec.find("c[") != std::string::npos) {
        try {
            return a.fa->parse<Rational>(spec);
        } catch (const std::exception& e) {
            throw UsageError(std::string(flag) + ": " + e.what());
        }
    }
    if (spec.size() > 1 && spec[0] == 'f') {
        std::string name = spec.substr(1);
        if (rs.rank() == 1 && name.find('[') == std::string::npos) name += "[1]";
        const int basis = rs.parse_basis_name(name);
        if (basis < 0) throw UsageError(std::string(flag) + ": unknown basis element '" + spec.substr(1) + "'");
        return a.fa->orbit_function(basis, rational_weight(a, lambda0, "--lambda0"));
    }
    throw UsageError(std::string(flag) + ": expected 1, f<basis name> or a c[rep; i, j] expression, got '" + spec + "'");
}

std::string scalar_text(const Rational& x) { return x.get_str(); }
std::string scalar_text(const RatFunc& x) { return x.to_string(); }
std::string det_text(const Rational& x) { return x.get_str(); }
std::string det_text(const RatFunc& x) { return factored_string(x); }

template <class S>
json matrix_json(const Matrix<S>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_text(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json monos_json(const UEA& u, const std::vector<PBWMono>& ms) {
    json out = json::array();
    for (const auto& m : ms) out.push_back(u.mono_to_string(m));
    return out;
}

std::string ftensor_text(const FunctionAlgebra& fa, const FTensor<Rational>& t) {
    if (t.terms.empty()) return "0";
    std::string out;
    for (const auto& [c, f, g] : t.terms)
        out += (out.empty() ? "" : " + ") + c.get_str() + " * (" + fa.to_string(f) + ") (x) (" + fa.to_string(g) + ")";
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// --- subcommands

int cmd_roots(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    const RootSystem& rs = a->uea->roots();
    if (cfg.json) {
        emit(json::parse(rs.to_json()));
        return kOk;
    }
    std::cout << "algebra " << rs.label() << ", rank " << rs.rank() << ", dimension " << rs.dim() << "\n";
    std::cout << "cartan matrix:\n";
    for (const auto& row : rs.cartan()) {
        std::cout << " ";
        for (int c : row) std::cout << " " << c;
        std::cout << "\n";
    }
    std::cout << "positive roots (simple-root coordinates):\n";
    for (int k = 0; k < rs.num_positive_roots(); ++k)
        std::cout << "  (" << rs.positive_roots()[k].to_string() << ")  " << rs.basis_name(rs.y_index(k)) << "  "
                  << rs.basis_name(rs.x_index(k)) << "\n";
    return kOk;
}

template <class S>
int shapovalov_at(const RunConfig& cfg, const Algebra& a, const RootVec& beta, const Weight<S>& lambda) {
    const auto b = a.sh->block(beta, lambda, beta.height());
    const S det = determinant(b.matrix);
    const auto kernel = nullspace(b.matrix);
    json j;
    j["algebra"] = cfg.algebra;
    j["lambda"] = cfg.lambda;
    j["beta"] = beta.coords;
    j["basis"] = monos_json(*a.uea, b.basis);
    j["matrix"] = matrix_json(b.matrix);
    j["det"] = det_text(det);
    j["kernel"] = json::array();
    for (const auto& v : kernel) {
        json row = json::array();
        for (const auto& x : v) row.push_back(scalar_text(x));
        j["kernel"].push_back(row);
    }
    if (cfg.json) {
        emit(j);
        return kOk;
    }
    std::cout << "beta = (" << beta.to_string() << "), lambda = (" << cfg.lambda << ")\n";
    std::cout << "basis:";
    for (const auto& m : j["basis"]) std::cout << " " << m.get<std::string>();
    std::cout << "\nmatrix:\n";
    for (const auto& row : j["matrix"]) {
        std::cout << " ";
        for (const auto& x : row) std::cout << " [" << x.get<std::string>() << "]";
        std::cout << "\n";
    }
    std::cout << "det = " << j["det"].get<std::string>() << "\n";
    std::cout << "kernel dimension " << kernel.size() << "\n";
    for (const auto& row : j["kernel"]) {
        std::cout << " ";
        for (const auto& x : row) std::cout << " " << x.get<std::string>();
        std::cout << "\n";
    }
    return kOk;
}

int cmd_shapovalov(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    const RootVec beta = parse_beta(*a, cfg.beta);
    if (use_rational(cfg, *a, cfg.lambda)) return shapovalov_at(cfg, *a, beta, rational_weight(*a, cfg.lambda, "--lambda"));
    return shapovalov_at(cfg, *a, beta, symbolic_weight(*a, cfg.lambda, "--lambda"));
}

int cmd_kernel(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    const auto l0 = rational_weight(*a, cfg.lambda0, "--lambda0");
    const KernelSpace k = cfg.upper ? a->sh->upper_kernel(l0, cfg.cutoff) : a->sh->kernel(l0, cfg.cutoff);
    json j;
    j["algebra"] = cfg.algebra;
    j["lambda0"] = cfg.lambda0;
    j["cutoff"] = cfg.cutoff;
    j["side"] = cfg.upper ? "upper" : "lower";
    j["blocks"] = json::array();
    for (const auto& beta : a->uea->roots().q_plus_up_to(cfg.cutoff)) {
        json elems = json::array();
        for (std::size_t i = 0; i < k.dim(beta); ++i) elems.push_back(a->uea->to_string(a->sh->kernel_element(k, beta, i)));
        j["blocks"].push_back({{"beta", beta.coords}, {"dim", k.dim(beta)}, {"elements", elems}});
    }
    if (cfg.json) {
        emit(j);
        return kOk;
    }
    std::cout << (cfg.upper ? "K~" : "K") << " at lambda0 = (" << cfg.lambda0 << "), heights <= " << cfg.cutoff << "\n";
    for (const auto& b : j["blocks"]) {
        std::cout << "  beta (" << RootVec{b["beta"].get<std::vector<int>>()}.to_string() << "): dim "
                  << b["dim"].get<std::size_t>() << "\n";
        for (const auto& e : b["elements"]) std::cout << "    " << e.get<std::string>() << "\n";
    }
    return kOk;
}

template <class S>
int module_at(const RunConfig& cfg, const Algebra& a, const Weight<S>& lambda) {
    const auto mod = HWModule<S>::irreducible(a.sh, lambda, cfg.cutoff);
    json j;
    j["algebra"] = cfg.algebra;
    j["lambda"] = cfg.lambda;
    j["cutoff"] = cfg.cutoff;
    j["finite_dimensional"] = mod.finite_dimensional();
    j["total_dim"] = mod.total_dim();
    j["dims_by_height"] = mod.dims_by_height();
    j["weight_spaces"] = json::array();
    for (const auto& beta : mod.betas()) {
        const auto& sp = mod.space(beta);
        std::vector<PBWMono> kept;
        for (auto k : sp.kept) kept.push_back(sp.full_basis[k]);
        j["weight_spaces"].push_back({{"beta", beta.coords}, {"dim", sp.dim()}, {"basis", monos_json(*a.uea, kept)}});
    }
    if (cfg.json) {
        emit(j);
        return kOk;
    }
    std::cout << "V(" << cfg.lambda << "): " << (mod.finite_dimensional() ? "finite-dimensional" : "not finite within the cutoff")
              << ", dimension " << mod.total_dim() << " up to height " << cfg.cutoff << "\n";
    if (cfg.dims) {
        const auto by_height = mod.dims_by_height();
        for (std::size_t h = 0; h < by_height.size(); ++h) std::cout << "  height " << h << ": " << by_height[h] << "\n";
        for (const auto& w : j["weight_spaces"]) {
            std::cout << "  beta (" << RootVec{w["beta"].get<std::vector<int>>()}.to_string() << "): "
                      << w["dim"].get<std::size_t>();
            for (const auto& m : w["basis"]) std::cout << " " << m.get<std::string>();
            std::cout << "\n";
        }
    }
    return kOk;
}

int cmd_module(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    if (use_rational(cfg, *a, cfg.lambda)) return module_at(cfg, *a, rational_weight(*a, cfg.lambda, "--lambda"));
    return module_at(cfg, *a, symbolic_weight(*a, cfg.lambda, "--lambda"));
}

template <class S>
int print_fusion(const RunConfig& cfg, const Algebra& a, const FusionElem<S>& j, const std::string& weight) {
    const std::string text = tensor_to_string(*a.uea, expand(*a.uea, j));
    if (!cfg.json) {
        std::cout << text << "\n";
        return kOk;
    }
    json out;
    out["algebra"] = cfg.algebra;
    out[j.reduced ? "lambda0" : "lambda"] = weight;
    out["cutoff"] = cfg.cutoff;
    out["reduced"] = j.reduced;
    out["element"] = text;
    out["blocks"] = json::array();
    for (const auto& b : j.blocks)
        out["blocks"].push_back({{"beta", b.beta.coords}, {"basis", monos_json(*a.uea, b.basis)}, {"coeffs", matrix_json(b.coeffs)}});
    emit(out);
    return kOk;
}

int cmd_fusion(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    if (use_rational(cfg, *a, cfg.lambda))
        return print_fusion(cfg, *a, fusion_element(*a->sh, rational_weight(*a, cfg.lambda, "--lambda"), cfg.cutoff), cfg.lambda);
    return print_fusion(cfg, *a, fusion_element(*a->sh, symbolic_weight(*a, cfg.lambda, "--lambda"), cfg.cutoff), cfg.lambda);
}

int cmd_jred(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    const auto l0 = rational_weight(*a, cfg.lambda0, "--lambda0");
    return print_fusion(cfg, *a, reduced_fusion_element(*a->sh, l0, cfg.cutoff), cfg.lambda0);
}

int cmd_limit(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    const auto l0 = rational_weight(*a, cfg.lambda0, "--lambda0");
    const auto nu = rational_weight(*a, cfg.direction, "--dir");
    const auto f = parse_function(*a, cfg.f, cfg.lambda0, "--f");
    const auto g = parse_function(*a, cfg.g, cfg.lambda0, "--g");
    const auto r = limit_pairing(*a->fa, *a->sh, l0, nu, f, g, cfg.cutoff);
    json j;
    j["algebra"] = cfg.algebra;
    j["lambda0"] = cfg.lambda0;
    j["direction"] = cfg.direction;
    j["f"] = cfg.f;
    j["g"] = cfg.g;
    j["cutoff"] = r.cutoff;
    j["limit"] = ftensor_text(*a->fa, r.limit);
    j["reduced"] = ftensor_text(*a->fa, r.reduced);
    j["limit_product"] = a->fa->to_string(multiply_out(*a->fa, r.limit));
    j["reduced_product"] = a->fa->to_string(multiply_out(*a->fa, r.reduced));
    j["equal"] = r.equal;
    if (cfg.json) {
        emit(j);
    } else {
        std::cout << "limit t -> 0 of J(lambda0 + t nu)(f (x) g): " << j["limit"].get<std::string>() << "\n";
        std::cout << "J_red(lambda0)(f (x) g): " << j["reduced"].get<std::string>() << "\n";
        std::cout << "equal: " << (r.equal ? "yes" : "no") << "\n";
    }
    return r.equal ? kOk : kCheckFailed;
}

int cmd_star(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    const auto l0 = rational_weight(*a, cfg.lambda0, "--lambda0");
    const Quantizer q(a->sh, a->fa, l0, cfg.cutoff);
    auto product = [&](const FElem<Rational>& f, const FElem<Rational>& g) {
        return cfg.via_fusion ? q.star_via_fusion(f, g) : q.star(f, g);
    };
    if (cfg.table) {
        std::vector<std::string> names{"1"};
        for (int b = 0; b < a->uea->dim(); ++b) names.push_back(orbit_name(a->uea->roots(), b));
        std::vector<FElem<Rational>> gens;
        for (const auto& n : names) gens.push_back(parse_function(*a, n, cfg.lambda0, "--table"));
        json table = json::array();
        for (const auto& f : gens) {
            json row = json::array();
            for (const auto& g : gens) row.push_back(a->fa->to_string(product(f, g)));
            table.push_back(row);
        }
        if (cfg.json) {
            emit({{"algebra", cfg.algebra}, {"lambda0", cfg.lambda0}, {"generators", names}, {"table", table}});
        } else {
            for (std::size_t i = 0; i < names.size(); ++i)
                for (std::size_t k = 0; k < names.size(); ++k)
                    std::cout << names[i] << " * " << names[k] << " = " << table[i][k].get<std::string>() << "\n";
        }
        return kOk;
    }
    const auto f = parse_function(*a, cfg.f, cfg.lambda0, "--f");
    const auto g = parse_function(*a, cfg.g, cfg.lambda0, "--g");
    const std::string result = a->fa->to_string(product(f, g));
    if (cfg.json)
        emit({{"algebra", cfg.algebra}, {"lambda0", cfg.lambda0}, {"f", cfg.f}, {"g", cfg.g}, {"result", result}});
    else
        std::cout << result << "\n";
    return kOk;
}

int cmd_feval(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    const auto f = parse_function(*a, cfg.f, cfg.lambda0, "--f");
    PBWElem<Rational> u;
    try {
        u = a->uea->parse<Rational>(cfg.u);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--u: ") + e.what());
    }
    const Rational value = a->fa->evaluate(f, u);
    if (cfg.json)
        emit({{"algebra", cfg.algebra}, {"f", cfg.f}, {"u", cfg.u}, {"value", value.get_str()}});
    else
        std::cout << value.get_str() << "\n";
    return kOk;
}

int cmd_fmember(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    const auto l0 = rational_weight(*a, cfg.lambda0, "--lambda0");
    const auto f = parse_function(*a, cfg.f, cfg.lambda0, "--f");
    const bool zero = a->fa->in_weight_zero(f);
    const bool lower = zero && is_kernel_invariant(*a->fa, *a->sh, l0, f, Side::Left);
    const bool upper = zero && is_kernel_invariant(*a->fa, *a->sh, l0, f, Side::Right);
    const bool member = zero && lower && upper;
    if (cfg.json) {
        emit({{"algebra", cfg.algebra},
              {"lambda0", cfg.lambda0},
              {"f", cfg.f},
              {"weight_zero", zero},
              {"k_invariant", lower},
              {"k_tilde_invariant", upper},
              {"member", member}});
    } else {
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        std::cout << "in F[0]: " << yn(zero) << "\nK-invariant: " << yn(lower) << "\nK~-invariant: " << yn(upper)
                  << "\nin F[0]^{K+K~}: " << yn(member) << "\n";
    }
    return member ? kOk : kCheckFailed;
}

int cmd_kostant(const RunConfig& cfg) {
    const auto a = algebra(cfg);
    const auto l0 = rational_weight(*a, cfg.lambda0, "--lambda0");
    const auto r = kostant_rank(a->sh, l0, cfg.max_degree);
    if (cfg.json) {
        emit({{"algebra", cfg.algebra},
              {"lambda0", cfg.lambda0},
              {"rank", r.rank},
              {"dim_end", r.dim_end},
              {"degree", r.degree},
              {"rank_by_degree", r.rank_by_degree},
              {"saturated", r.saturated},
              {"surjective", r.surjective()}});
    } else {
        std::cout << "rank " << r.rank << " of dim End V = " << r.dim_end << " (degree " << r.degree << ", "
                  << (r.saturated ? "saturated" : "not saturated") << ")\nranks by degree:";
        for (auto x : r.rank_by_degree) std::cout << " " << x;
        std::cout << "\n" << (r.surjective() ? "surjective" : "not surjective") << "\n";
    }
    return r.surjective() ? kOk : kCheckFailed;
}

int cmd_repro(const RunConfig& cfg) {
    std::vector<repro::Experiment> owned;
    if (!cfg.manifest.empty()) {
        std::ifstream in(cfg.manifest);
        if (!in) throw UsageError("cannot read manifest '" + cfg.manifest + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            owned = repro::parse_manifest(buf.str());
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    const auto& all = cfg.manifest.empty() ? repro::manifest() : owned;
    if (cfg.list) {
        for (const auto& e : all)
            std::cout << e.name << "  criterion " << e.criterion << "  " << e.title << "\n";
        return kOk;
    }
    std::vector<const repro::Experiment*> chosen;
    if (cfg.all) {
        for (const auto& e : all) chosen.push_back(&e);
    } else {
        if (cfg.experiment.empty()) throw UsageError("repro needs an experiment name, --all or --list");
        try {
            chosen.push_back(&repro::find(all, cfg.experiment));
        } catch (const std::out_of_range& e) {
            throw UsageError(e.what());
        }
    }
    bool pass = true;
    json results = json::array();
    for (const auto* e : chosen) {
        const auto outcome = repro::run(*e);
        pass = pass && outcome.pass();
        json checks = json::array();
        for (const auto& c : outcome.checks)
            checks.push_back({{"label", c.label}, {"computed", c.computed}, {"expected", c.expected}, {"pass", c.pass}});
        results.push_back({{"name", e->name},
                           {"criterion", e->criterion},
                           {"title", e->title},
                           {"pass", outcome.pass()},
                           {"error", outcome.error},
                           {"checks", checks}});
        if (cfg.json) continue;
        std::cout << (outcome.pass() ? "PASS " : "FAIL ") << e->name << ": " << e->title << "\n";
        if (!outcome.error.empty()) std::cout << "  error: " << outcome.error << "\n";
        for (const auto& c : outcome.checks)
            std::cout << (c.pass ? "  ok   " : "  FAIL ") << c.label << "\n         computed " << c.computed
                      << "; expected " << c.expected << "\n";
    }
    if (cfg.json) emit({{"pass", pass}, {"experiments", results}});
    return pass ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Exact Shapovalov forms, fusion elements and star products"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--algebra", cfg.algebra, "Root system label: A1, A2, A3, B2, B3, C2, C3 or products like A1xA1");
        sub->add_option("--cutoff", cfg.cutoff, "Height cutoff (default $FUSIONQ_CUTOFF or 4)")->check(CLI::PositiveNumber);
        sub->add_flag("--json", cfg.json, "Emit JSON");
    };
    auto lambda0 = [&](CLI::App* sub) {
        sub->add_option("--lambda0", cfg.lambda0, "Weight as comma-separated fractions, e.g. 0,1/3");
    };
    auto field = [&](CLI::App* sub) {
        sub->add_option("--lambda", cfg.lambda, "Weight coordinates: fractions or expressions in t, L1, L2, L3");
        sub->add_option("--field", cfg.field, "Scalar field for --lambda")
            ->check(CLI::IsMember({"auto", "rational", "function"}));
    };

    auto* roots = app.add_subcommand("roots", "Root system data");
    common(roots);
    auto* shap = app.add_subcommand("shapovalov", "Shapovalov block, determinant and kernel");
    common(shap);
    field(shap);
    shap->add_option("--beta", cfg.beta, "Element of Q+ in simple-root coordinates, e.g. 3 or 1,1");
    auto* kern = app.add_subcommand("kernel", "Graded kernel K_lambda0 up to the cutoff");
    common(kern);
    lambda0(kern);
    kern->add_flag("--upper", cfg.upper, "Print K~ = theta(K) instead");
    auto* mod = app.add_subcommand("module", "Irreducible highest weight module V(lambda)");
    common(mod);
    field(mod);
    mod->add_flag("--dims", cfg.dims, "List weight space dimensions");
    auto* fus = app.add_subcommand("fusion", "Fusion element J(lambda)");
    common(fus);
    field(fus);
    auto* jred = app.add_subcommand("jred", "Reduced fusion element J_red(lambda0)");
    common(jred);
    lambda0(jred);
    auto* lim = app.add_subcommand("limit", "Limit of the J pairing along lambda0 + t nu");
    common(lim);
    lambda0(lim);
    lim->add_option("--dir", cfg.direction, "Direction nu (default 1 in every coordinate for rank 1)");
    lim->add_option("--f", cfg.f, "Function: 1, f<basis>, or c[rep; i, j] expression");
    lim->add_option("--g", cfg.g, "Function: 1, f<basis>, or c[rep; i, j] expression");
    auto* star = app.add_subcommand("star", "Star product at lambda0");
    common(star);
    lambda0(star);
    star->add_option("--f", cfg.f, "Left factor");
    star->add_option("--g", cfg.g, "Right factor");
    star->add_flag("--table", cfg.table, "Multiplication table of 1 and the orbit functions");
    star->add_flag("--via-fusion", cfg.via_fusion, "Compute through the materialized J_red");
    auto* fev = app.add_subcommand("feval", "Evaluate a function on an element of U(g)");
    common(fev);
    lambda0(fev);
    fev->add_option("--f", cfg.f, "Function");
    fev->add_option("--u", cfg.u, "PBW element, e.g. \"1 * Y[1] * X[1]\"");
    auto* fmem = app.add_subcommand("fmember", "Membership in F[0]^{K+K~} at lambda0");
    common(fmem);
    lambda0(fmem);
    fmem->add_option("--f", cfg.f, "Function");
    auto* kos = app.add_subcommand("kostant", "Rank of U(g) acting on End V(lambda0)");
    common(kos);
    lambda0(kos);
    kos->add_option("--max-degree", cfg.max_degree, "Largest PBW degree examined")->check(CLI::PositiveNumber);
    auto* rep = app.add_subcommand("repro", "Run a named acceptance experiment");
    rep->add_option("name", cfg.experiment, "Experiment name");
    rep->add_flag("--list", cfg.list, "List experiments");
    rep->add_flag("--all", cfg.all, "Run every experiment");
    rep->add_flag("--json", cfg.json, "Emit JSON");
    rep->add_option("--manifest", cfg.manifest, "Read experiments from this manifest instead of the built-in one");

    try {
        cfg.cutoff = default_cutoff();
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "fusionq: " << e.what() << "\n";
        return kUsage;
    }

    const std::vector<std::pair<CLI::App*, int (*)(const RunConfig&)>> dispatch{
        {roots, cmd_roots}, {shap, cmd_shapovalov}, {kern, cmd_kernel}, {mod, cmd_module},
        {fus, cmd_fusion},   {jred, cmd_jred},       {lim, cmd_limit},   {star, cmd_star},
        {fev, cmd_feval},    {fmem, cmd_fmember},    {kos, cmd_kostant}, {rep, cmd_repro},
    };
    try {
        for (const auto& [sub, fn] : dispatch)
            if (sub->parsed()) return fn(cfg);
    } catch (const UsageError& e) {
        std::cerr << "fusionq: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "fusionq: error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kUsage;
}
