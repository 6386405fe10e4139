// Command-line front end for the finite Markov correlation-inequality
// workbench. Exit codes: 0 = all checks passed, 1 = a violation or failed
// check, 2 = bad input.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blv/bl.hpp"
#include "blv/entropy.hpp"
#include "blv/io.hpp"
#include "blv/liegeo.hpp"
#include "blv/model.hpp"
#include "blv/quotient.hpp"
#include "blv/verify.hpp"
#include "blv/zoo.hpp"

using nlohmann::json;

namespace {

struct Source {
  blv::Model model;
  std::vector<blv::FactorMap> maps;
  std::string description;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  for (const auto& tok : split(s, ',')) {
    if (tok.empty()) throw std::invalid_argument(std::string(what) + ": empty entry in list");
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": '" + tok + "' is not an integer");
    }
  }
  return out;
}

std::vector<blv::Rational> parse_rational_list(const std::string& s) {
  std::vector<blv::Rational> out;
  for (const auto& tok : split(s, ',')) out.push_back(blv::parse_rational(tok));
  return out;
}

// 1-based user positions -> sorted 0-based.
std::vector<int> to_positions(const std::string& s, const char* what) {
  std::vector<int> out = parse_int_list(s, what);
  for (int& v : out) --v;
  return out;
}

// Map specs for the permutation walk:
//   coords | restrict:1,2|3,4 | image:1,2 | counts:2,2@2
// Segments separated by ';'.
void add_symmetric_maps(const blv::SymmetricGroup& sg, const std::string& spec,
                        std::vector<blv::FactorMap>& maps) {
  for (const auto& segment : split(spec, ';')) {
    if (segment.empty()) continue;
    if (segment == "coords") {
      for (auto& m : sg.coordinate_maps()) maps.push_back(std::move(m));
      continue;
    }
    auto colon = segment.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("bad map spec '" + segment + "'");
    std::string kind = segment.substr(0, colon);
    std::string rest = segment.substr(colon + 1);
    if (kind == "counts") {
      auto at = rest.find('@');
      if (at == std::string::npos)
        throw std::invalid_argument("counts spec needs sizes@K, got '" + rest + "'");
      auto sizes = parse_int_list(rest.substr(0, at), "counts sizes");
      int K = std::stoi(rest.substr(at + 1));
      maps.push_back(sg.hypergeometric_map(sizes, K));
      continue;
    }
    for (const auto& set : split(rest, '|')) {
      auto pos = to_positions(set, kind.c_str());
      if (kind == "restrict")
        maps.push_back(sg.restriction_map(pos));
      else if (kind == "image")
        maps.push_back(sg.image_map(pos));
      else
        throw std::invalid_argument("unknown map kind '" + kind + "'");
    }
  }
}

Source load_source(const std::string& source, const std::string& maps_spec, int n, int k,
                   const std::string& gens, const std::string& mods) {
  Source out;
  if (source.rfind("zoo:", 0) != 0) {
    blv::ModelDocument doc = blv::load_model_document(source);
    out.model = std::move(doc.model);
    out.maps = std::move(doc.maps);
    out.description = source;
    if (!maps_spec.empty()) {
      // Filter document maps by name.
      std::vector<blv::FactorMap> chosen;
      for (const auto& name : split(maps_spec, ',')) {
        bool found = false;
        for (auto& m : out.maps)
          if (m.name == name) {
            chosen.push_back(m);
            found = true;
            break;
          }
        if (!found) throw std::invalid_argument("document has no map named '" + name + "'");
      }
      out.maps = std::move(chosen);
    }
    return out;
  }

  std::string which = source.substr(4);
  if (which == "symmetric-group") {
    if (n < 2) throw std::invalid_argument("zoo:symmetric-group needs --n");
    blv::SymmetricGroup sg(n);
    out.model = sg.model();
    add_symmetric_maps(sg, maps_spec.empty() ? "coords" : maps_spec, out.maps);
    out.description = "transposition walk on " + std::to_string(n) + " symbols";
  } else if (which == "slice") {
    if (n < 2 || k < 1) throw std::invalid_argument("zoo:slice needs --n and --k");
    blv::Slice slice(n, k);
    out.model = slice.model();
    if (!maps_spec.empty() && maps_spec != "coords")
      throw std::invalid_argument("zoo:slice supports --maps coords only");
    for (auto& m : slice.coordinate_maps()) out.maps.push_back(std::move(m));
    out.description = "slice walk on " + std::to_string(n) + " choose " + std::to_string(k);
  } else if (which == "hypercube") {
    if (n < 1) throw std::invalid_argument("zoo:hypercube needs --n");
    blv::Product cube = blv::hypercube(n);
    out.model = cube.model();
    if (maps_spec.empty() || maps_spec == "coords") {
      for (int j = 0; j < n; ++j) {
        int coord[1] = {j};
        out.maps.push_back(cube.projection_map(coord));
      }
    } else {
      for (const auto& segment : split(maps_spec, ';')) {
        if (segment.rfind("proj:", 0) != 0)
          throw std::invalid_argument("zoo:hypercube maps are 'coords' or 'proj:...' segments");
        for (const auto& set : split(segment.substr(5), '|'))
          out.maps.push_back(cube.projection_map(to_positions(set, "proj")));
      }
    }
    out.description = "lazy walk on the " + std::to_string(n) + "-cube";
  } else if (which == "cyclic") {
    if (n < 1) throw std::invalid_argument("zoo:cyclic needs --n");
    std::vector<int> generators =
        gens.empty() ? std::vector<int>{1, n - 1} : parse_int_list(gens, "--gens");
    for (int& g : generators) g = ((g % n) + n) % n;
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    blv::Cayley group(blv::cyclic_group_table(n), generators);
    out.model = group.model();
    if (!mods.empty()) {
      for (int m : parse_int_list(mods, "--mods")) {
        if (m < 1) throw std::invalid_argument("--mods entries must be positive");
        std::vector<int> labeling(n);
        for (int x = 0; x < n; ++x) labeling[x] = x % m;
        out.maps.push_back(group.hom_map("mod" + std::to_string(m), labeling));
      }
    }
    out.description = "walk on the cyclic group of order " + std::to_string(n);
  } else {
    throw std::invalid_argument("unknown zoo model '" + which + "'");
  }
  return out;
}

blv::ExponentVector resolve_exponents(const Source& src, const std::string& c_spec) {
  if (src.maps.empty()) throw std::invalid_argument("no factor maps selected");
  if (c_spec.empty() || c_spec == "optimize") {
    auto sys = blv::edge_active_sets(src.model, src.maps);
    std::vector<blv::Rational> weights(src.maps.size(), blv::Rational(1));
    return blv::optimize_exponents(sys, weights).c;
  }
  auto values = parse_rational_list(c_spec);
  if (values.size() == 1 && src.maps.size() > 1)
    values.assign(src.maps.size(), values[0]);
  return blv::ExponentVector(std::move(values));
}

void write_report(const std::string& path, const json& report) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << report.dump(2) << "\n";
}

json family_json(const blv::TestFamily& fam) {
  json arr = json::array();
  for (const auto& f : fam.f) arr.push_back(f);
  return arr;
}

json exponents_json(const blv::ExponentVector& c) {
  json arr = json::array();
  for (int i = 0; i < c.size(); ++i) arr.push_back(blv::to_string(c[i]));
  return arr;
}

int run_check_commute(const Source& src, const std::string& out_path) {
  json report;
  report["model"] = src.description;
  json maps = json::array();
  bool all_commute = true;
  for (const auto& map : src.maps) {
    auto rep = blv::check_commutation(src.model, map);
    json entry;
    entry["name"] = map.name;
    entry["commutes"] = rep.commutes;
    entry["n_blocks"] = map.n_blocks;
    if (!rep.commutes) {
      all_commute = false;
      entry["witness"] = {{"x", rep.x},
                          {"y", rep.y},
                          {"block", rep.block},
                          {"p_x", blv::to_string(rep.p_x)},
                          {"p_y", blv::to_string(rep.p_y)}};
    }
    std::cout << (rep.commutes ? "[ok]   " : "[FAIL] ") << map.name << " (" << map.n_blocks
              << " blocks)";
    if (!rep.commutes)
      std::cout << "  states " << src.model.label(rep.x) << " vs " << src.model.label(rep.y)
                << " disagree on block " << rep.block << " (" << blv::to_string(rep.p_x) << " vs "
                << blv::to_string(rep.p_y) << ")";
    std::cout << "\n";
    maps.push_back(std::move(entry));
  }
  report["maps"] = std::move(maps);
  report["all_commute"] = all_commute;
  write_report(out_path, report);
  return all_commute ? 0 : 1;
}

int run_check_bl(const Source& src, const std::string& c_spec, const std::string& out_path) {
  auto sys = blv::edge_active_sets(src.model, src.maps);
  auto c = resolve_exponents(src, c_spec);
  auto verdict = blv::check_edge_criterion(sys, c);

  json report;
  report["model"] = src.description;
  report["n_edges"] = sys.edges.size();
  report["n_distinct_active_sets"] = sys.distinct_sets.size();
  report["exponents"] = exponents_json(c);
  report["pass"] = verdict.pass;
  report["max_sum"] = blv::to_string(verdict.max_sum);
  if (verdict.witness_x >= 0) {
    json names = json::array();
    for (int i = 0; i < sys.n_maps; ++i)
      if (verdict.witness_mask >> i & 1) names.push_back(src.maps[i].name);
    report["worst_edge"] = {{"x", verdict.witness_x},
                            {"y", verdict.witness_y},
                            {"active_maps", std::move(names)}};
  }

  std::cout << (verdict.pass ? "[ok]   " : "[FAIL] ") << "edge criterion: max active-set sum = "
            << blv::to_string(verdict.max_sum) << " over " << sys.distinct_sets.size()
            << " distinct active sets (" << sys.edges.size() << " edges)\n";
  if (verdict.witness_x >= 0)
    std::cout << "       worst edge: " << src.model.label(verdict.witness_x) << " -- "
              << src.model.label(verdict.witness_y) << "\n";
  write_report(out_path, report);
  return verdict.pass ? 0 : 1;
}

int run_optimize(const Source& src, const std::string& weights_spec,
                 const std::string& out_path) {
  auto sys = blv::edge_active_sets(src.model, src.maps);
  std::vector<blv::Rational> weights(src.maps.size(), blv::Rational(1));
  if (!weights_spec.empty()) {
    weights = parse_rational_list(weights_spec);
    if (weights.size() != src.maps.size())
      throw std::invalid_argument("need one weight per map");
  }
  auto result = blv::optimize_exponents(sys, weights);

  json report;
  report["model"] = src.description;
  report["weights"] = [&] {
    json arr = json::array();
    for (const auto& w : weights) arr.push_back(blv::to_string(w));
    return arr;
  }();
  report["exponents"] = exponents_json(result.c);
  report["objective"] = blv::to_string(result.objective);

  std::cout << "optimal exponents (objective " << blv::to_string(result.objective) << "):\n";
  for (std::size_t i = 0; i < src.maps.size(); ++i)
    std::cout << "  c[" << src.maps[i].name << "] = " << blv::to_string(result.c[static_cast<int>(i)])
              << "\n";
  write_report(out_path, report);
  return 0;
}

int run_verify(const Source& src, const std::string& c_spec, int trials, int restarts,
               std::uint64_t seed, double tolerance, const std::string& out_path) {
  auto c = resolve_exponents(src, c_spec);
  auto rep = blv::random_trial_suite(src.model, src.maps, c, trials, seed, tolerance);

  json report;
  report["model"] = src.description;
  report["exponents"] = exponents_json(c);
  report["trials"] = rep.trials;
  report["seed"] = rep.seed;
  report["min_global_gap"] = rep.min_global_gap;
  report["min_local_gap"] = rep.min_local_gap;
  report["max_monotonicity_defect"] = rep.max_monotonicity_defect;
  report["n_violations"] = rep.n_violations;
  report["worst_family"] = family_json(rep.worst_family);

  bool violated = rep.n_violations > 0;
  if (restarts > 0) {
    auto search = blv::adversarial_search(src.model, src.maps, c, restarts, seed);
    report["adversarial_gap"] = search.gap;
    report["adversarial_family"] = family_json(search.family);
    report["adversarial_restart"] = search.restart;
    if (search.gap < -tolerance) violated = true;
    std::cout << "adversarial search: min gap " << search.gap << " (restart " << search.restart
              << ")\n";
  }

  std::cout << (violated ? "[FAIL] " : "[ok]   ") << trials << " trials: min global gap "
            << rep.min_global_gap << ", min local gap " << rep.min_local_gap
            << ", max monotonicity defect " << rep.max_monotonicity_defect << ", "
            << rep.n_violations << " violation(s)\n";
  write_report(out_path, report);
  return violated ? 1 : 0;
}

int run_entropy(const Source& src, const std::string& c_spec, int trials, int restarts,
                std::uint64_t seed, double tolerance, double t_max,
                const std::string& out_path) {
  auto c = resolve_exponents(src, c_spec);
  auto rep = blv::superadditivity_consistency(src.model, src.maps, c, trials, restarts, seed,
                                              tolerance);

  json report;
  report["model"] = src.description;
  report["exponents"] = exponents_json(c);
  report["trials"] = trials;
  report["seed"] = seed;
  report["criterion_pass"] = rep.criterion_pass;
  report["product_min_gap"] = rep.product_min_gap;
  report["entropy_min_gap"] = rep.entropy_min_gap;
  report["consistent"] = rep.consistent;

  // Fisher side on random densities (quotients require commuting maps).
  bool fisher_ok = true;
  try {
    double fisher_min = std::numeric_limits<double>::infinity();
    double dual_min = std::numeric_limits<double>::infinity();
    for (int tr = 0; tr < trials; ++tr) {
      blv::Rng rng = blv::Rng::for_trial(seed ^ 0x66aa77bb11cc22ddULL, tr);
      std::vector<double> raw(src.model.size());
      for (double& v : raw) v = std::exp(rng.normal());
      auto f = blv::make_density(src.model, raw);
      fisher_min = std::min(fisher_min, blv::fisher_gap(src.model, src.maps, c, f));
      if (src.model.reversible()) {
        std::vector<double> h(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) h[i] = std::log(f[i]);
        dual_min = std::min(dual_min, blv::dual_fisher_gap(src.model, f, h));
      }
    }
    report["fisher_min_gap"] = fisher_min;
    if (src.model.reversible()) report["dual_fisher_min_slack"] = dual_min;
    if (rep.criterion_pass && fisher_min < -tolerance) fisher_ok = false;
  } catch (const std::exception& e) {
    report["fisher_note"] = e.what();
  }

  if (src.model.reversible() && src.model.ergodic()) {
    blv::Rng rng = blv::Rng::for_trial(seed ^ 0x1122334455667788ULL, 0);
    std::vector<double> raw(src.model.size());
    for (double& v : raw) v = std::exp(rng.normal());
    auto f = blv::make_density(src.model, raw);
    double residual = blv::debruijn_residual(src.model, f, t_max);
    report["entropy_production_residual"] = residual;
    std::cout << "entropy production residual over [0, " << t_max << "]: " << residual << "\n";
  }

  bool ok = rep.consistent && fisher_ok;
  std::cout << (ok ? "[ok]   " : "[FAIL] ") << "criterion "
            << (rep.criterion_pass ? "holds" : "fails") << "; product min gap "
            << rep.product_min_gap << "; entropy min gap " << rep.entropy_min_gap
            << (rep.consistent ? "; sides agree" : "; sides DISAGREE") << "\n";
  write_report(out_path, report);
  return ok ? 0 : 1;
}

int run_geo(int n, int k, const std::string& kind_name, const std::string& c_spec,
            const std::string& sphere_polys, double tolerance, const std::string& out_path) {
  json report;

  if (!sphere_polys.empty()) {
    std::vector<blv::Poly> polys;
    for (const auto& segment : split(sphere_polys, ';')) {
      blv::Poly p;
      for (const auto& tok : split(segment, ',')) p.push_back(std::stod(tok));
      polys.push_back(std::move(p));
    }
    std::vector<blv::Rational> c(polys.size(), blv::frac(1, 2));
    if (!c_spec.empty()) c = parse_rational_list(c_spec);
    double gap = blv::sphere_quadrature_gap(n, polys, c);
    report["sphere_n"] = n;
    report["gap"] = gap;
    bool ok = gap >= -tolerance;
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << "sphere coordinate inequality gap = " << gap
              << "\n";
    write_report(out_path, report);
    return ok ? 0 : 1;
  }

  if (n < 2 || k < 1 || k > n - 1)
    throw std::invalid_argument("geo needs --n and --k with 1 <= k <= n-1");
  blv::SubspaceKind kind;
  if (kind_name == "pointwise")
    kind = blv::SubspaceKind::pointwise;
  else if (kind_name == "setwise")
    kind = blv::SubspaceKind::setwise;
  else
    throw std::invalid_argument("--kind must be pointwise or setwise");

  std::vector<blv::Subspace> subspaces;
  std::vector<int> coords(k);
  for (int i = 0; i < k; ++i) coords[i] = i;
  for (;;) {
    subspaces.push_back(blv::Subspace::coordinate(n, coords, kind));
    int i = k - 1;
    while (i >= 0 && coords[i] == n - k + i) --i;
    if (i < 0) break;
    ++coords[i];
    for (int j = i + 1; j < k; ++j) coords[j] = coords[j - 1] + 1;
  }

  auto formulas = blv::exponent_formulas(n, k);
  long long pair_count = kind == blv::SubspaceKind::pointwise ? formulas.p : formulas.q;

  std::vector<double> ones(subspaces.size(), 1.0);
  blv::Matrix lift = blv::lie_lift_operator(n, subspaces, ones);
  auto eig = blv::jacobi_eigensolve(lift);
  double spread = std::max(std::fabs(eig.values.front() - pair_count),
                           std::fabs(eig.values.back() - pair_count));

  std::vector<double> c(subspaces.size(), 1.0 / static_cast<double>(pair_count));
  if (!c_spec.empty()) {
    auto cr = parse_rational_list(c_spec);
    if (cr.size() == 1) cr.assign(subspaces.size(), cr[0]);
    if (cr.size() != subspaces.size())
      throw std::invalid_argument("need one coefficient per subspace");
    for (std::size_t i = 0; i < cr.size(); ++i) c[i] = blv::to_double(cr[i]);
  }
  auto check = blv::lie_lift_check(n, subspaces, c, tolerance);

  report["n"] = n;
  report["k"] = k;
  report["kind"] = kind_name;
  report["n_subspaces"] = subspaces.size();
  report["pair_count"] = pair_count;
  report["unit_lift_spectral_spread"] = spread;
  report["vector_lambda_min"] = check.vector_lambda_min;
  report["algebra_lambda_max"] = check.algebra_lambda_max;
  report["pass"] = check.pass;

  bool ok = check.pass && spread <= 1e-10;
  std::cout << (ok ? "[ok]   " : "[FAIL] ") << "all " << k << "-subsets of " << n << " ("
            << kind_name << "): unit lift spectrum " << eig.values.front() << ".."
            << eig.values.back() << " (expected " << pair_count << "), vector lambda_min "
            << check.vector_lambda_min << ", algebra lambda_max " << check.algebra_lambda_max
            << "\n";
  write_report(out_path, report);
  return ok ? 0 : 1;
}

int run_zoo_build(const Source& src, const std::string& out_path) {
  std::string text = blv::serialize_model_document(src.model, src.maps);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
    out << text;
    std::cout << "wrote " << src.model.size() << " states, " << src.maps.size() << " maps to "
              << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation-inequality workbench for finite Markov semigroups"};
  app.require_subcommand(1);

  std::string source, maps_spec, c_spec, weights_spec, gens, mods, out_path, kind_name =
      "pointwise", sphere_polys;
  int n = 0, k = 0, trials = 200, restarts = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-10, t_max = 4.0;

  auto add_source = [&](CLI::App* cmd) {
    cmd->add_option("source", source,
                    "model document path or zoo spec (zoo:symmetric-group, zoo:slice, "
                    "zoo:hypercube, zoo:cyclic)")
        ->required();
    cmd->add_option("--maps", maps_spec, "map selection / zoo map spec");
    cmd->add_option("--n", n, "zoo size parameter");
    cmd->add_option("--k", k, "zoo subset-size parameter");
    cmd->add_option("--gens", gens, "zoo:cyclic generators, comma separated");
    cmd->add_option("--mods", mods, "zoo:cyclic quotient moduli, comma separated");
    cmd->add_option("-o,--output", out_path, "write a JSON report here");
  };

  auto* commute = app.add_subcommand("check-commute", "check kernel/map commutation");
  add_source(commute);

  auto* checkbl = app.add_subcommand("check-bl", "exact edge criterion for given exponents");
  add_source(checkbl);
  checkbl->add_option("--c", c_spec, "exponents, e.g. '1/2,1/2,1/2' (or 'optimize')");

  auto* optimize = app.add_subcommand("optimize", "maximize weighted exponents under the criterion");
  add_source(optimize);
  optimize->add_option("--weights", weights_spec, "objective weights, default all 1");

  auto* verify = app.add_subcommand("verify", "randomized inequality verification");
  add_source(verify);
  verify->add_option("--c", c_spec, "exponents (or 'optimize')");
  verify->add_option("--trials", trials, "number of random families")->capture_default_str();
  verify->add_option("--restarts", restarts, "adversarial search restarts (0 = off)")
      ->capture_default_str();
  verify->add_option("--seed", seed, "RNG seed")->capture_default_str();
  verify->add_option("--tolerance", tolerance, "violation tolerance")->capture_default_str();

  auto* entropy = app.add_subcommand("entropy", "entropy/Fisher superadditivity checks");
  add_source(entropy);
  entropy->add_option("--c", c_spec, "exponents (or 'optimize')");
  entropy->add_option("--trials", trials, "random densities per side")->capture_default_str();
  entropy->add_option("--restarts", restarts, "adversarial restarts when the criterion fails")
      ->capture_default_str();
  entropy->add_option("--seed", seed, "RNG seed")->capture_default_str();
  entropy->add_option("--tolerance", tolerance, "violation tolerance")->capture_default_str();
  entropy->add_option("--tmax", t_max, "entropy production horizon")->capture_default_str();

  auto* geo = app.add_subcommand("geo", "psd decompositions on R^n / so(n), sphere checks");
  geo->add_option("--n", n, "ambient dimension")->required();
  geo->add_option("--k", k, "subset size for the all-k-subsets family");
  geo->add_option("--kind", kind_name, "pointwise or setwise")->capture_default_str();
  geo->add_option("--c", c_spec, "coefficients (default 1/pair-count each)");
  geo->add_option("--sphere", sphere_polys,
                  "run the sphere check instead: polynomials 'a0,a1,..;b0,b1,..[;..]'");
  geo->add_option("--tolerance", tolerance, "acceptance tolerance")->capture_default_str();
  geo->add_option("-o,--output", out_path, "write a JSON report here");

  auto* zoo = app.add_subcommand("zoo", "zoo utilities");
  auto* zoo_build = zoo->add_subcommand("build", "materialize a zoo model as a JSON document");
  add_source(zoo_build);

  CLI11_PARSE(app, argc, argv);

  try {
    if (commute->parsed())
      return run_check_commute(load_source(source, maps_spec, n, k, gens, mods), out_path);
    if (checkbl->parsed())
      return run_check_bl(load_source(source, maps_spec, n, k, gens, mods), c_spec, out_path);
    if (optimize->parsed())
      return run_optimize(load_source(source, maps_spec, n, k, gens, mods), weights_spec,
                          out_path);
    if (verify->parsed())
      return run_verify(load_source(source, maps_spec, n, k, gens, mods), c_spec, trials,
                        restarts, seed, tolerance, out_path);
    if (entropy->parsed())
      return run_entropy(load_source(source, maps_spec, n, k, gens, mods), c_spec, trials,
                         restarts == 0 ? 10 : restarts, seed, tolerance, t_max, out_path);
    if (geo->parsed())
      return run_geo(n, k, kind_name, c_spec, sphere_polys, tolerance, out_path);
    if (zoo->parsed() && zoo_build->parsed())
      return run_zoo_build(load_source(source, maps_spec, n, k, gens, mods), out_path);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
