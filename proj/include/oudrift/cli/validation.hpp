#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "oudrift/montecarlo.hpp"

namespace oudrift::cli {

struct ValidationCase
{
    std::string name;
    McConfig config;
    double formula_value;
};

struct ValidationResult
{
    std::string name;
    std::string estimator;
    std::size_t n;
    FormulaComparison comparison;
};

/// Formula-vs-simulation matrix: each estimator against its closed form or
/// exact recursion.
std::vector<ValidationCase> validation_matrix(std::size_t replications, std::uint64_t seed);

std::vector<ValidationResult> run_validation(const std::vector<ValidationCase>& cases);

/// JSON report with one entry per case and an overall "pass" flag.
std::string validation_report_json(const std::vector<ValidationResult>& results);

}  // namespace oudrift::cli
