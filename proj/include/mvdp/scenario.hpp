#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvdp/conley.hpp"

namespace mvdp {

/// A parsed transition-matrix scenario: two Morse decompositions with their
/// connection matrices, the continuation constraints, and an optional theta
/// bracket the certificates refer to.
struct Scenario {
    std::string name;
    MorseDecomposition before;
    MorseDecomposition after;
    GradedZ2Map delta_before;
    GradedZ2Map delta_after;
    std::vector<TransitionConstraint> constraints;
    std::optional<std::pair<double, double>> theta_bracket;
};

class ScenarioParseError : public std::runtime_error {
public:
    ScenarioParseError(int line, const std::string& what)
        : std::runtime_error("scenario line " + std::to_string(line) + ": " + what),
          line(line) {}
    int line;
};

/// Parses the line-oriented scenario format with sections [elements],
/// [order], [index], [labels], [delta], [constraints], [bracket]; each data
/// line inside the first five sections starts with the scope `before` or
/// `after`.
Scenario parse_scenario(const std::string& text);

struct ScenarioResult {
    ValidationReport before_report;
    ValidationReport after_report;
    TransitionSolution transition;
    std::vector<Certificate> certificates;
};

ScenarioResult run_scenario(const Scenario& s);

/// Built-in scenarios, keyed by preset name.
const std::map<std::string, std::string>& scenario_presets();

} // namespace mvdp
