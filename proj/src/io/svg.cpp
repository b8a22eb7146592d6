#include "osd/io.h"

#include <array>
#include <sstream>

namespace osd {

namespace {

constexpr double kCanvas = 800.0;

// y grows downward in SVG; flip so the plot reads like the plane.
void rect(std::ostringstream& os, const Box& b, const char* fill, const char* stroke,
          double stroke_width) {
  os << "<rect x=\"" << b.x0 * kCanvas << "\" y=\"" << (1.0 - b.y1) * kCanvas << "\" width=\""
     << (b.x1 - b.x0) * kCanvas << "\" height=\"" << (b.y1 - b.y0) * kCanvas << "\" fill=\""
     << fill << "\" stroke=\"" << stroke << "\" stroke-width=\"" << stroke_width << "\"/>\n";
}

void open(std::ostringstream& os, const PolygonDomain& d) {
  os.precision(9);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
     << kCanvas << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas << "\">\n";
  os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (Point p : d.vertices()) os << p.x * kCanvas << "," << (1.0 - p.y) * kCanvas << " ";
  os << "\"/>\n";
}

}  // namespace

std::string decomposition_svg(const WhitneyDecomposition& w) {
  std::ostringstream os;
  open(os, w.domain());
  for (const DyadicSquare& q : w.squares()) rect(os, q.box(), "#dde6f0", "#34495e", 0.3);
  os << "</svg>\n";
  return os.str();
}

std::string layers_svg(const LayerDecomposition& layers) {
  static constexpr std::array<const char*, 6> kPalette = {"#f4a261", "#2a9d8f", "#e9c46a",
                                                          "#8ab17d", "#e76f51", "#9c89b8"};
  const WhitneyDecomposition& w = layers.whitney();
  std::ostringstream os;
  open(os, w.domain());
  for (std::size_t s = 0; s < w.size(); ++s) {
    const int g = layers.owner(s);
    const char* fill = g == 0 ? "#b0c4de" : kPalette[(g - 1) % kPalette.size()];
    rect(os, w.square(s).box(), fill, "#555555", 0.2);
  }
  for (const BoundaryPiece& p : layers.pieces()) rect(os, w.square(p.anchor).box(), "none", "#c0392b", 1.5);
  os << "</svg>\n";
  return os.str();
}

}  // namespace osd
