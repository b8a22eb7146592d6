#pragma once

#include "osd/density.h"
#include "osd/geometry.h"
#include "osd/layers.h"

#include <filesystem>
#include <string>
#include <vector>

namespace osd {

/// {"vertices": [[x, y], ...]}, counterclockwise open ring. Throws InputError
/// naming the offending field.
PolygonDomain domain_from_json(const std::string& text);
PolygonDomain read_domain(const std::filesystem::path& path);
std::string domain_to_json(const PolygonDomain& domain);

/// {"scale": {"factor": s, "offset": [dx, dy]}, "squares": [{"level", "ix", "iy"}, ...]}
std::string decomposition_to_json(const WhitneyDecomposition& w, const Normalization& scale);
/// Squares of a decomposition file, in file order.
std::vector<DyadicSquare> squares_from_json(const std::string& text);

/// {"n", "core", "pieces": [{"i", "tilde", "expanded_bbox", "anchor"}], "chains": [{"i", "j", "squares"}]}
std::string layers_to_json(const LayerDecomposition& layers);

/// One <rect> per square.
std::string decomposition_svg(const WhitneyDecomposition& w);
/// Core and pieces in distinct fills, anchors outlined.
std::string layers_svg(const LayerDecomposition& layers);

inline constexpr const char* kCsvHeader =
    "n,modular_error,luxemburg_error,sup_gradk_un,num_squares,num_pieces,max_chain_len";
std::string rows_to_csv(const std::vector<ConvergenceRow>& rows);

std::string read_text(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace osd
