#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "debias/experiments.hpp"

namespace debias {

/// %.17g, with "nan"/"inf" spelled out.
std::string format_double(double value);

void write_bias_csv(std::ostream& os, const BiasStudyResult& result);
void write_bias_grid_csv(std::ostream& os, const BiasStudyResult& result);
void write_curves_csv(std::ostream& os, const ErrorCurveResult& result);
void write_trials_csv(std::ostream& os, std::span<const TrialRecord> trials);

/// Mean approximations with +/- one standard deviation bands.
void write_bias_svg(std::ostream& os, const BiasStudyResult& result);
/// Median lines with 10%-90% bands on a log scale.
void write_curves_svg(std::ostream& os, const ErrorCurveResult& result);

/// Writes `contents` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace debias
