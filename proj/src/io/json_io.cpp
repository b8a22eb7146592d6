#include "osd/errors.h"
#include "osd/io.h"

#include <json.hpp>

namespace osd {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

json square_ref(const DyadicSquare& q) {
  return {{"level", q.level}, {"ix", q.ix}, {"iy", q.iy}};
}

json square_list(const WhitneyDecomposition& w, const std::vector<std::size_t>& ids) {
  json out = json::array();
  for (std::size_t s : ids) out.push_back(square_ref(w.square(s)));
  return out;
}

json box_json(const Box& b) { return json::array({b.x0, b.y0, b.x1, b.y1}); }

}  // namespace

PolygonDomain domain_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object()) throw InputError("domain file must hold a JSON object");
  if (!doc.contains("vertices")) throw InputError("missing field 'vertices'");
  const json& vs = doc["vertices"];
  if (!vs.is_array()) throw InputError("field 'vertices' must be an array");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const json& v = vs[i];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw InputError("field 'vertices[" + std::to_string(i) + "]' must be [x, y] numbers");
    }
    pts.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  return PolygonDomain(std::move(pts));
}

PolygonDomain read_domain(const std::filesystem::path& path) {
  return domain_from_json(read_text(path));
}

std::string domain_to_json(const PolygonDomain& domain) {
  json vs = json::array();
  for (Point p : domain.vertices()) vs.push_back({p.x, p.y});
  return json{{"vertices", vs}}.dump() + "\n";
}

std::string decomposition_to_json(const WhitneyDecomposition& w, const Normalization& scale) {
  json squares = json::array();
  for (const DyadicSquare& q : w.squares()) squares.push_back(square_ref(q));
  json doc;
  doc["scale"] = {{"factor", scale.factor}, {"offset", {scale.offset.x, scale.offset.y}}};
  doc["squares"] = std::move(squares);
  return doc.dump() + "\n";
}

std::vector<DyadicSquare> squares_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.is_object() || !doc.contains("squares") || !doc["squares"].is_array()) {
    throw InputError("missing array field 'squares'");
  }
  std::vector<DyadicSquare> out;
  for (const json& s : doc["squares"]) {
    if (!s.is_object() || !s.contains("level") || !s.contains("ix") || !s.contains("iy")) {
      throw InputError("square entries need 'level', 'ix' and 'iy'");
    }
    out.push_back({s["level"].get<int>(), s["ix"].get<std::int64_t>(), s["iy"].get<std::int64_t>()});
  }
  return out;
}

std::string layers_to_json(const LayerDecomposition& layers) {
  const WhitneyDecomposition& w = layers.whitney();
  json doc;
  doc["n"] = layers.n();
  doc["core"] = square_list(w, layers.core().squares);
  json pieces = json::array();
  for (const BoundaryPiece& p : layers.pieces()) {
    pieces.push_back({{"i", p.i},
                      {"tilde", square_list(w, p.tilde)},
                      {"expanded_bbox", box_json(layers.expanded_bbox(p.i))},
                      {"anchor", square_ref(w.square(p.anchor))}});
  }
  doc["pieces"] = std::move(pieces);
  json chains = json::array();
  for (const AnchorChain& c : layers.chains()) {
    chains.push_back({{"i", c.i}, {"j", c.j}, {"squares", square_list(w, c.squares)}});
  }
  doc["chains"] = std::move(chains);
  return doc.dump() + "\n";
}

}  // namespace osd
