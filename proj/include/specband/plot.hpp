#pragma once

#include <filesystem>
#include <string>

#include "specband/cwt.hpp"

namespace specband {

/// Coherence heatmap as SVG text: time on x, log2 scale on y (small scales
/// at the top), r2 colormap, hatched cone of influence, significance
/// outline, and phase arrows on at most 32 x 32 positions. Output depends
/// only on the result.
std::string render_coherence_svg(const CoherenceResult& result, const std::string& title = {});

/// Writes render_coherence_svg atomically; IoError when the path is unwritable.
void emit_plot(const CoherenceResult& result, const std::filesystem::path& path, const std::string& title = {});

}  // namespace specband
