#pragma once

#include <string>

#include "gclink/cli/projection.hpp"

namespace gclink::cli {

struct SvgOptions {
  double size = 800.0;          ///< width and height of the canvas
  double gap_fraction = 0.012;  ///< under-strand gap length relative to the view diagonal
  double stroke_width = 2.5;
  std::string title;
};

/// SVG 1.1 drawing of a scene: the dotted w-axis, then one path element per
/// component with gaps where it passes under another. Output depends only on
/// the scene and the options.
std::string render_svg(const ProjectionScene& scene, const SvgOptions& options = {});

}  // namespace gclink::cli
