// Command-line front end: decompose, layers, converge, verify.

#include "osd/density.h"
#include "osd/errors.h"
#include "osd/fields.h"
#include "osd/io.h"
#include "osd/layers.h"
#include "osd/orlicz.h"
#include "osd/verify.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct Options {
  std::string domain;
  std::string psi = "power:p=1.5";
  std::string field;
  int k = 1;
  std::string n_range;
  int lmax = 10;
  int quad = 8;
  std::string out = ".";
  std::uint64_t seed = 1;
  std::string svg;
  std::vector<std::string> suites;
  std::size_t max_chain = 0;
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw osd::InputError("--n expects A..B, got '" + text + "'");
  }
}

std::filesystem::path out_file(const Options& o, const std::string& name) {
  std::filesystem::create_directories(o.out);
  return std::filesystem::path(o.out) / name;
}

osd::PolygonDomain load_domain(const Options& o) {
  if (o.domain.empty()) throw osd::InputError("--domain is required");
  return osd::read_domain(o.domain);
}

int cmd_decompose(const Options& o) {
  const auto [domain, scale] = osd::normalize(load_domain(o));
  const osd::WhitneyDecomposition w = osd::whitney_decompose(domain, {o.lmax});
  const osd::WhitneyReport r = osd::check_whitney(w);
  osd::write_atomic(out_file(o, "decomposition.json"), osd::decomposition_to_json(w, scale));
  if (!o.svg.empty()) osd::write_atomic(o.svg, osd::decomposition_svg(w));
  std::printf("squares: %zu\n", r.num_squares);
  std::printf("scale factor: %.17g offset: (%.17g, %.17g)\n", scale.factor, scale.offset.x,
              scale.offset.y);
  std::printf("W2 violations: %zu (dist/side in [%.6g, %.6g])\n", r.w2_violations,
              r.min_dist_over_side, r.max_dist_over_side);
  std::printf("overlapping pairs: %zu\n", r.overlapping_pairs);
  std::printf("max touching ratio: %g\n", r.max_touching_ratio);
  std::printf("adjacency symmetric: %s\n", r.adjacency_symmetric ? "yes" : "no");
  std::printf("covered area: %.12g of %.12g (deficit %.4f%%)\n", r.covered_area, r.domain_area,
              100.0 * r.deficit_fraction());
  std::printf("invariants: %s\n", r.ok() ? "ok" : "VIOLATED");
  return r.ok() ? 0 : 2;
}

int cmd_layers(const Options& o) {
  const auto [domain, scale] = osd::normalize(load_domain(o));
  const osd::WhitneyDecomposition w = osd::whitney_decompose(domain, {o.lmax});
  const auto [first, last] = parse_range(o.n_range.empty() ? "4" : o.n_range);
  osd::LayerOptions lo;
  if (o.max_chain) lo.max_chain = o.max_chain;
  int code = 0;
  for (int n = first; n <= last; ++n) {
    const osd::LayerDecomposition layers = osd::build_layers(w, n, lo);
    osd::write_atomic(out_file(o, "layers_n" + std::to_string(n) + ".json"), osd::layers_to_json(layers));
    if (!o.svg.empty() && first == last) osd::write_atomic(o.svg, osd::layers_svg(layers));
    const bool bounded = layers.max_chain_length() <= layers.chain_bound();
    std::printf("n=%d core squares: %zu pieces: %zu max chain: %zu (bound %zu)%s\n", n,
                layers.core().squares.size(), layers.num_pieces(), layers.max_chain_length(),
                layers.chain_bound(), bounded ? "" : " EXCEEDED");
    if (!bounded) code = 2;
  }
  return code;
}

int cmd_converge(const Options& o) {
  if (o.field.empty()) throw osd::InputError("--field is required");
  if (o.n_range.empty()) throw osd::InputError("--n is required");
  const auto [first, last] = parse_range(o.n_range);
  if (first > last || first < 2 || last > o.lmax - 2) {
    throw osd::PreconditionError("--n " + o.n_range + " must lie in [2, lmax - 2] = [2, " +
                                 std::to_string(o.lmax - 2) + "]");
  }
  const osd::FunctionField u = osd::parse_field(o.field);
  const osd::YoungFunction psi = osd::parse_young(o.psi);
  const osd::PolygonDomain domain = load_domain(o);
  osd::StudyConfig cfg;
  cfg.lmax = o.lmax;
  cfg.quad_order = o.quad;
  if (o.max_chain) cfg.layers.max_chain = o.max_chain;
  const auto rows = osd::convergence_study(u, domain, psi, o.k, first, last, cfg);
  osd::write_atomic(out_file(o, "convergence.csv"), osd::rows_to_csv(rows));

  std::printf("field %s, psi %s, k=%d, quadrature order %d, lmax %d\n", u.descriptor().c_str(),
              psi.descriptor().c_str(), o.k, o.quad, o.lmax);
  std::printf("uncovered sliver area: %.6g\n", rows.empty() ? 0.0 : rows.front().sliver_area);
  std::fputs(osd::kCsvHeader, stdout);
  std::fputs("\n", stdout);
  bool failed = false;
  for (const auto& r : rows) {
    std::printf("%d,%.6g,%.6g,%.6g,%zu,%zu,%zu\n", r.n, r.modular_error, r.luxemburg_error,
                r.sup_gradk_un, r.num_squares, r.num_pieces, r.max_chain_len);
    if (!r.ok) {
      std::printf("  n=%d failed: %s\n", r.n, r.failure.c_str());
      failed = true;
    }
  }
  return failed ? 3 : 0;
}

int cmd_verify(const Options& o, bool lmax_given) {
  osd::VerifyConfig cfg;
  if (!o.domain.empty()) cfg.domain = load_domain(o);
  if (lmax_given) cfg.lmax = o.lmax;
  cfg.quad_order = o.quad;
  cfg.seed = o.seed;
  if (o.max_chain) cfg.max_chain = o.max_chain;
  if (!o.n_range.empty()) cfg.n = parse_range(o.n_range).first;
  const auto& names = osd::suite_names();
  std::vector<std::string> chosen = o.suites.empty() ? names : o.suites;
  int mask = 0;
  for (const std::string& name : chosen) {
    const osd::SuiteResult r = osd::run_suite(name, cfg);
    std::printf("%-10s %s  %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL", r.summary.c_str());
    if (!r.passed) {
      const auto pos = std::find(names.begin(), names.end(), name) - names.begin();
      mask |= 1 << pos;
    }
  }
  std::printf("failed mask: %d\n", mask);
  return mask;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitney decompositions, boundary layers and Orlicz-Sobolev approximation studies"};
  app.set_config("--config", "", "TOML config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--domain", o.domain, "Domain JSON file");
  app.add_option("--psi", o.psi, "Young function: power:p=P, plog:p=P, llogl")->capture_default_str();
  app.add_option("--field", o.field, "poly:coeffs=..., trig:freq=F, rpow:bx=..,by=..,sigma=..");
  app.add_option("--k", o.k, "Derivative order")->capture_default_str()->check(CLI::Range(1, 6));
  app.add_option("--n", o.n_range, "Scale range A..B");
  auto* lmax_opt = app.add_option("--lmax", o.lmax, "Whitney depth")->capture_default_str()->check(CLI::Range(1, 30));
  app.add_option("--quad", o.quad, "Gauss nodes per axis")->capture_default_str()->check(CLI::Range(1, 64));
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for the property suites")->capture_default_str();
  app.add_option("--svg", o.svg, "SVG output path");
  app.add_option("--suite", o.suites, "Suite to run (repeatable)");
  app.add_option("--max-chain", o.max_chain, "Chain length bound");

  auto* decompose = app.add_subcommand("decompose", "Whitney decomposition of a domain");
  auto* layers = app.add_subcommand("layers", "Core, boundary pieces and anchor chains");
  auto* converge = app.add_subcommand("converge", "Convergence table of the approximants");
  auto* verify = app.add_subcommand("verify", "Property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*decompose) return cmd_decompose(o);
    if (*layers) return cmd_layers(o);
    if (*converge) return cmd_converge(o);
    if (*verify) return cmd_verify(o, lmax_opt->count() > 0);
  } catch (const osd::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
