#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusionq/funalg.hpp"
#include "fusionq/shapovalov.hpp"

namespace fusionq {

/// UEA, Shapovalov engine and function algebra for one root system, shared
/// so that their caches are reused across computations.
struct Algebra {
    std::shared_ptr<const UEA> uea;
    std::shared_ptr<const Shapovalov> sh;
    std::shared_ptr<const FunctionAlgebra> fa;

    /// Cached per label; throws std::invalid_argument for unknown labels.
    static std::shared_ptr<const Algebra> get(const std::string& label);
};

/// Parses "a,b,..." of exact fractions into a weight of the given rank.
Weight<Rational> parse_weight(const std::string& text, int rank);

namespace repro {

struct Check {
    std::string label;
    std::string computed;
    std::string expected;
    bool pass = false;
};

struct Experiment {
    std::string name;
    std::string title;
    std::string kind;
    int criterion = 0;           // 0: not an acceptance criterion on its own
    double time_limit_s = 0;     // 0: none
    nlohmann::json params;
};

struct Outcome {
    std::vector<Check> checks;
    std::string error;           // set when the computation threw
    bool pass() const {
        if (!error.empty() || checks.empty()) return false;
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// The manifest compiled into the library.
const char* builtin_manifest();
/// Parses a manifest document; throws std::invalid_argument on malformed input.
std::vector<Experiment> parse_manifest(const std::string& text);
const std::vector<Experiment>& manifest();
/// Throws std::out_of_range for an unknown name.
const Experiment& find(const std::vector<Experiment>& all, const std::string& name);

/// Runs one experiment. Exceptions from the library are captured in
/// Outcome::error.
Outcome run(const Experiment& e);

}  // namespace repro
}  // namespace fusionq
