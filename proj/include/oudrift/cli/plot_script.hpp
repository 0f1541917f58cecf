#pragma once

#include <filesystem>
#include <span>
#include <string>

namespace oudrift::cli {

enum class PlotStyle { linear, log_x, log_y, log_log };

PlotStyle parse_plot_style(const std::string& name);

/// Gnuplot script drawing every CSV as one panel of a multiplot, one line
/// per non-N column. Throws std::invalid_argument on an empty list and
/// std::runtime_error when a CSV is missing.
std::string plot_script(std::span<const std::filesystem::path> csvs, PlotStyle style,
                        const std::filesystem::path& image);

/// Writes plot_script(...) to `script` and renders into `image` when run.
void emit_plot_script(std::span<const std::filesystem::path> csvs, PlotStyle style,
                      const std::filesystem::path& script, const std::filesystem::path& image);

}  // namespace oudrift::cli
