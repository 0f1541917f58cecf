#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "oudrift/mse_theory.hpp"

namespace oudrift::cli {

/// Shortest-safe decimal for doubles: 17 significant digits.
std::string format_real(double value);

/// Columns N, then one column per curve (header = curve label). All curves
/// must share the same N sequence.
std::string curves_to_csv(std::span<const MseCurve> curves);
void write_curves_csv(const std::filesystem::path& path, std::span<const MseCurve> curves);

struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Writes text to a file, throwing OutputError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace oudrift::cli
