// tvgeom: construction, search, counting, subdivision, packing, and sphere
// solver experiments over exact-arithmetic polytopes, as reproducible seeded
// runs with JSON/CSV artifacts.
//
// Exit codes: 0 success, 1 usage or input error, 2 theorem-implied check
// failed (CI treats 2 as a build failure). Runtimes go to the console only,
// never into artifacts, so identical invocations produce byte-identical
// files.

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "tvg/complex.hpp"
#include "tvg/engine.hpp"
#include "tvg/experiment.hpp"
#include "tvg/io.hpp"
#include "tvg/packing.hpp"
#include "tvg/stiefel.hpp"

namespace {

using nlohmann::json;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void print_done(const std::string& what, const Stopwatch& watch) {
  std::cout << what << " (" << watch.ms() << " ms)\n";
}

tvg::Polytope build_family(const std::string& family, int m, int n) {
  if (family == "simplex") return tvg::make_simplex(m);
  if (family == "cross") return tvg::make_cross(m);
  if (family == "cube") return tvg::make_cube(m);
  if (family == "cyclic") {
    if (n <= 0) throw std::invalid_argument("cyclic family requires --n");
    return tvg::make_cyclic(m, n);
  }
  throw std::invalid_argument("unknown family '" + family + "'");
}

int cmd_make(const std::string& family, int m, int n, const std::string& out) {
  Stopwatch watch;
  const tvg::Polytope p = build_family(family, m, n);
  tvg::validate_polytope(p);
  tvg::write_json_file(out, tvg::polytope_to_json(p));
  std::ostringstream os;
  os << "make: " << family << " dim " << p.dim << ", " << p.vertex_count()
     << " vertices, " << p.facets.size() << " facets -> " << out;
  print_done(os.str(), watch);
  return 0;
}

int cmd_search(const std::string& polytope_path, const std::string& map_path,
               std::uint64_t map_seed, bool have_map_seed, int r, int forbid,
               bool have_forbid, bool all, const std::string& out) {
  Stopwatch watch;
  const tvg::Polytope p = tvg::polytope_from_json(tvg::read_json_file(polytope_path));

  tvg::LinearMap f;
  json map_config;
  if (!map_path.empty()) {
    f = tvg::linear_map_from_json(tvg::read_json_file(map_path));
    map_config = json{{"map", map_path}};
  } else if (have_map_seed) {
    const auto gen = tvg::seeded_rational_map(1, static_cast<int>(p.ambient_dim()),
                                              map_seed, 1000, &p.vertices);
    f = gen.map;
    map_config = json{{"map_seed", map_seed}, {"map_reseeds", gen.reseeds}};
  } else {
    throw std::invalid_argument("search: provide --map or --map-seed");
  }

  tvg::SearchParams params;
  params.r = r;
  params.d = f.output_dim();
  if (have_forbid) params.forbidden_vertex = forbid;

  const tvg::SearchResult res = tvg::polytope_tverberg_search(
      p, f, params, all ? tvg::SearchMode::all : tvg::SearchMode::first);

  bool all_valid = true;
  json witnesses = json::array();
  for (const auto& w : res.witnesses) {
    if (!tvg::validate_witness(p, f, w, params.forbidden_vertex))
      all_valid = false;
    witnesses.push_back(tvg::witness_to_json(w));
  }

  json config{{"command", "search"}, {"polytope", polytope_path},
              {"r", r},              {"d", params.d},
              {"all", all},          {"map_config", map_config}};
  if (have_forbid) config["forbid"] = forbid;
  json report{{"config", config},
              {"map", tvg::linear_map_to_json(f)},
              {"witness_count", witnesses.size()},
              {"witnesses", witnesses},
              {"diagnostic", res.diagnostic},
              {"witnesses_valid", all_valid}};
  if (!out.empty()) tvg::write_json_file(out, report);

  std::ostringstream os;
  os << "search: " << res.witnesses.size() << " witness set(s)";
  if (!res.diagnostic.empty()) os << " [" << res.diagnostic << "]";
  print_done(os.str(), watch);

  if (!all_valid) return 2;
  // dim >= (d+1)(r-1) with a linear map and no forbidden vertex guarantees a
  // witness; an empty result there contradicts the theorem
  if (res.witnesses.empty() && !have_forbid &&
      p.dim >= (params.d + 1) * (r - 1))
    return 2;
  return 0;
}

int cmd_count_cross(int m, int d, int r, std::uint64_t seed, int trials,
                    int forbid, bool have_forbid, const std::string& out_csv,
                    const std::string& report_path) {
  Stopwatch watch;
  const tvg::Polytope cross = tvg::make_cross(m);
  std::ostringstream csv;
  csv << "trial,forbidden,count,bound,threshold,pass\n";
  long long min_count = -1;
  bool all_pass = true;
  tvg::Warnings hypothesis_warnings;
  json trial_rows = json::array();

  for (int t = 0; t < trials; ++t) {
    const auto gen = tvg::seeded_rational_map(
        d, m, tvg::stream_seed(seed, "trial", static_cast<std::uint64_t>(t)),
        1000, &cross.vertices);
    std::vector<int> forbidden_list;
    if (have_forbid)
      forbidden_list.push_back(forbid);
    else
      for (int v = 0; v < 2 * m; ++v) forbidden_list.push_back(v);
    for (int fb : forbidden_list) {
      const tvg::CrossCountResult res = tvg::count_cross_witnesses(m, d, r, gen.map, fb);
      if (t == 0 && fb == forbidden_list.front()) hypothesis_warnings = res.warnings;
      csv << t << ',' << fb << ',' << res.count << ',' << tvg::to_string(res.bound)
          << ',' << res.threshold << ',' << (res.pass ? 1 : 0) << "\n";
      trial_rows.push_back(json{{"trial", t},
                                {"forbidden", fb},
                                {"count", res.count},
                                {"pass", res.pass},
                                {"map_reseeds", gen.reseeds}});
      if (min_count < 0 || res.count < min_count) min_count = res.count;
      all_pass = all_pass && res.pass;
    }
  }
  if (!out_csv.empty()) tvg::write_text_file(out_csv, csv.str());
  if (!report_path.empty()) {
    json report{{"config", json{{"command", "count-cross"},
                                {"m", m},
                                {"d", d},
                                {"r", r},
                                {"seed", seed},
                                {"trials", trials}}},
                {"bound", tvg::to_string(tvg::cross_bound(m, r))},
                {"min_count", min_count},
                {"all_pass", all_pass},
                {"warnings", hypothesis_warnings},
                {"trials", trial_rows}};
    if (have_forbid) report["config"]["forbid"] = forbid;
    tvg::write_json_file(report_path, report);
  }
  std::ostringstream os;
  os << "count-cross: min count " << min_count << ", threshold "
     << tvg::ceil_rational(tvg::cross_bound(m, r)) << ", "
     << (all_pass ? "all pass" : "FAILURES");
  print_done(os.str(), watch);
  return (!all_pass && hypothesis_warnings.empty()) ? 2 : 0;
}

int cmd_neighborly(int m, int n, int d, int r, std::uint64_t seed, int trials,
                   const std::string& report_path) {
  Stopwatch watch;
  const tvg::Polytope p = tvg::make_cyclic(m, n);
  bool all_ok = true;
  json rows = json::array();
  for (int t = 0; t < trials; ++t) {
    const auto gen = tvg::seeded_rational_map(
        d, m, tvg::stream_seed(seed, "trial", static_cast<std::uint64_t>(t)),
        1000, &p.vertices);
    const tvg::TverbergWitness w = tvg::neighborly_construct(p, gen.map, r);
    const auto valid = tvg::validate_witness(p, gen.map, w);
    bool small_faces = true;
    for (const auto& face : w.faces)
      small_faces = small_faces && static_cast<int>(face.vertex_indices.size()) <= d + 1;
    all_ok = all_ok && valid.ok && small_faces;
    rows.push_back(json{{"trial", t},
                        {"witness", tvg::witness_to_json(w)},
                        {"valid", valid.ok},
                        {"faces_within_caratheodory_bound", small_faces},
                        {"map_reseeds", gen.reseeds}});
  }
  if (!report_path.empty()) {
    tvg::write_json_file(report_path,
                         json{{"config", json{{"command", "neighborly"},
                                              {"m", m},
                                              {"n", n},
                                              {"d", d},
                                              {"r", r},
                                              {"seed", seed},
                                              {"trials", trials}}},
                              {"all_valid", all_ok},
                              {"trials", rows}});
  }
  std::ostringstream os;
  os << "neighborly: " << trials << " trial(s), "
     << (all_ok ? "all witnesses valid" : "FAILURES");
  print_done(os.str(), watch);
  return all_ok ? 0 : 2;
}

int cmd_d1(const std::string& polytope_path, const std::string& values_path,
           std::uint64_t seed, int trials, bool have_seed, int r,
           const std::string& report_path) {
  Stopwatch watch;
  const tvg::Polytope p = tvg::polytope_from_json(tvg::read_json_file(polytope_path));
  const tvg::SkeletonGraph g = tvg::skeleton(p);
  bool all_ok = true;
  json rows = json::array();

  auto run_one = [&](const std::vector<tvg::Rational>& values, int trial) {
    const tvg::D1Witness w = tvg::triangle_free_d1(p, values, r);
    const auto valid = tvg::validate_d1_witness(g, values, r, w);
    all_ok = all_ok && valid.ok;
    json edges = json::array();
    for (const auto& [u, v] : w.edges) edges.push_back(json::array({u, v}));
    rows.push_back(json{{"trial", trial},
                        {"edges", edges},
                        {"final_vertex", w.final_vertex},
                        {"common_value", tvg::to_string(w.common_value)},
                        {"valid", valid.ok}});
  };

  if (!values_path.empty()) {
    run_one(tvg::rationals_from_json(tvg::read_json_file(values_path)), 0);
  } else if (have_seed) {
    for (int t = 0; t < trials; ++t) {
      tvg::Rng rng = tvg::stream_rng(seed, "values", static_cast<std::uint64_t>(t));
      std::vector<tvg::Rational> values;
      for (Eigen::Index i = 0; i < p.vertex_count(); ++i)
        values.emplace_back(rng.uniform_int(-1000, 1000), rng.uniform_int(1, 1000));
      run_one(values, t);
    }
  } else {
    throw std::invalid_argument("d1: provide --values or --seed");
  }

  if (!report_path.empty()) {
    json config{{"command", "d1"}, {"polytope", polytope_path}, {"r", r}};
    if (!values_path.empty()) config["values"] = values_path;
    if (have_seed) {
      config["seed"] = seed;
      config["trials"] = trials;
    }
    tvg::write_json_file(report_path,
                         json{{"config", config}, {"all_valid", all_ok}, {"trials", rows}});
  }
  std::ostringstream os;
  os << "d1: " << rows.size() << " run(s), "
     << (all_ok ? "all witnesses valid" : "FAILURES");
  print_done(os.str(), watch);
  return all_ok ? 0 : 2;
}

int cmd_subdivide(const std::string& in_path, int k, const std::string& csv_path,
                  const std::string& out_path) {
  Stopwatch watch;
  const tvg::Polytope p = tvg::polytope_from_json(tvg::read_json_file(in_path));
  const auto rows = tvg::subdivision_decay_report(p, k);
  bool all_shrank = true;
  std::ostringstream csv;
  csv << "k,diameter,ratio,shrank,within_paper_factor\n";
  for (const auto& row : rows) {
    csv << row.k << ',' << json(row.diameter).dump() << ',';
    if (row.k > 0) csv << json(row.ratio).dump();
    csv << ',' << (row.shrank ? 1 : 0) << ',' << (row.within_paper_factor ? 1 : 0)
        << "\n";
    if (row.k > 0) all_shrank = all_shrank && row.shrank;
  }
  if (!csv_path.empty()) tvg::write_text_file(csv_path, csv.str());
  if (!out_path.empty())
    tvg::write_json_file(out_path, tvg::complex_to_json(tvg::subdivide_k(p, k)));
  std::ostringstream os;
  os << "subdivide: k=" << k << ", final diameter " << rows.back().diameter << ", "
     << (all_shrank ? "every subdivision shrank" : "RATIO >= 1 SEEN");
  print_done(os.str(), watch);
  return all_shrank ? 0 : 2;
}

int cmd_packing(int m, double lambda, std::uint64_t seed, int pool,
                const std::string& out_path, const std::string& report_path,
                bool dual) {
  Stopwatch watch;
  const tvg::PackingSpec x = tvg::greedy_lambda_packing(m, lambda, seed, pool);
  const tvg::VoronoiCheck check = tvg::voronoi_diameter_check(x);
  if (!out_path.empty()) tvg::write_json_file(out_path, tvg::packing_to_json(x));
  json report{{"config", json{{"command", "packing"},
                              {"m", m},
                              {"lambda", lambda},
                              {"seed", seed},
                              {"pool", pool}}},
              {"accepted_points", x.points.rows()},
              {"max_cell_diameter", check.max_cell_diameter},
              {"two_lambda", 2.0 * lambda},
              {"slack", check.slack},
              {"pass", check.pass}};
  if (dual && m == 3) {
    const tvg::PackingPolytope dual_poly = tvg::packing_polytope(x);
    const auto diams = tvg::cell_diameters(dual_poly);
    report["dual_vertex_count"] = dual_poly.vertices.rows();
    report["dual_max_cell_diameter"] = *std::max_element(diams.begin(), diams.end());
  }
  if (!report_path.empty()) tvg::write_json_file(report_path, report);
  std::ostringstream os;
  os << "packing: " << x.points.rows() << " points, max cell diameter "
     << check.max_cell_diameter << " vs 2*lambda+slack "
     << (2.0 * lambda + check.slack) << ", " << (check.pass ? "pass" : "FAIL");
  print_done(os.str(), watch);
  return check.pass ? 0 : 2;
}

int cmd_bu(const std::string& map_path, const std::string& gen, std::uint64_t gen_seed,
           int m, int d, int p, std::uint64_t seed, double tol, int restarts,
           const std::string& out_path) {
  Stopwatch watch;
  std::optional<tvg::SmoothMap> f;
  json map_config;
  if (!map_path.empty()) {
    f = tvg::SmoothMap::from_json(tvg::read_json_file(map_path));
    map_config = json{{"map", map_path}};
  } else if (gen == "trig") {
    f = tvg::SmoothMap::random_trig(gen_seed, m + 1, d);
    map_config = json{{"gen", gen}, {"gen_seed", gen_seed}};
  } else if (gen == "odd") {
    if (d != 1) throw std::invalid_argument("bu: odd generator supports d = 1");
    f = tvg::SmoothMap::random_odd_plus_constant(gen_seed, m + 1);
    map_config = json{{"gen", gen}, {"gen_seed", gen_seed}};
  } else {
    throw std::invalid_argument("bu: provide --f or --gen trig|odd");
  }

  std::vector<std::string> warnings;
  const auto result = tvg::solve_bu(*f, m, d, p, seed, tol, restarts, &warnings);

  json report{{"config", json{{"command", "bu"},
                              {"m", m},
                              {"d", d},
                              {"p", p},
                              {"seed", seed},
                              {"tol", tol},
                              {"restarts", restarts},
                              {"map_config", map_config}}},
              {"map", f->to_json()},
              {"warnings", warnings},
              {"found", result.has_value()}};
  if (result) {
    json pts = json::array(), vals = json::array();
    for (const auto& pt : result->points) {
      json row = json::array();
      for (Eigen::Index i = 0; i < pt.size(); ++i) row.push_back(pt(i));
      pts.push_back(row);
    }
    for (const auto& v : result->values) {
      json row = json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i));
      vals.push_back(row);
    }
    report["orbit"] = json{{"points", pts},
                           {"values", vals},
                           {"residual", result->residual},
                           {"restarts_used", result->restarts_used}};
  }
  if (!out_path.empty()) tvg::write_json_file(out_path, report);

  std::ostringstream os;
  os << "bu: "
     << (result ? "residual " + std::to_string(result->residual) + " after " +
                      std::to_string(result->restarts_used) + " restart(s)"
                : "no certificate found");
  for (const auto& w : warnings) os << " [warn: " << w << "]";
  print_done(os.str(), watch);

  if (!warnings.empty()) return 0;  // outside the theorem: report-only probe
  return result ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Tverberg-type searches on polytopes, subdivision and "
               "packing experiments, and the rotation-orbit sphere solver"};
  app.require_subcommand(1);

  // make
  std::string family = "simplex", out_path;
  int m = 3, n = 0;
  auto* make = app.add_subcommand("make", "construct a polytope family");
  make->add_option("--family", family, "simplex|cross|cube|cyclic")->required();
  make->add_option("--m,--dim", m, "dimension")->required();
  make->add_option("--n", n, "vertex count (cyclic)");
  make->add_option("--out", out_path, "polytope JSON path")->required();

  // search
  std::string polytope_path, map_path, report_path;
  std::uint64_t map_seed = 0;
  int r = 3, forbid = 0;
  bool all_mode = false;
  auto* search = app.add_subcommand("search", "face-overlap Tverberg search");
  search->add_option("--polytope", polytope_path)->required();
  search->add_option("--map", map_path, "linear map JSON");
  auto* opt_map_seed = search->add_option("--map-seed", map_seed,
                                          "generate the map from this seed");
  auto* opt_forbid = search->add_option("--forbid", forbid, "forbidden vertex index");
  search->add_flag("--all", all_mode, "list all canonical witness sets");
  search->add_option("--r", r)->required();
  search->add_option("--out", report_path, "report JSON path");

  // count-cross
  std::uint64_t seed = 0;
  int trials = 1, cc_m = 3, cc_d = 1, cc_r = 3, cc_forbid = 0;
  std::string csv_path;
  auto* count = app.add_subcommand("count-cross", "cross-polytope witness counting");
  count->add_option("--m", cc_m)->required();
  count->add_option("--d", cc_d)->required();
  count->add_option("--r", cc_r)->required();
  count->add_option("--seed", seed)->required();
  count->add_option("--trials", trials)->required();
  auto* opt_cc_forbid =
      count->add_option("--forbid", cc_forbid, "fix one forbidden vertex");
  count->add_option("--out", csv_path, "CSV path");
  count->add_option("--report", report_path, "report JSON path");

  // neighborly
  int nb_m = 4, nb_n = 7, nb_d = 1, nb_r = 3;
  auto* neighborly =
      app.add_subcommand("neighborly", "constructive witness on cyclic polytopes");
  neighborly->add_option("--m", nb_m)->required();
  neighborly->add_option("--n", nb_n)->required();
  neighborly->add_option("--d", nb_d)->required();
  neighborly->add_option("--r", nb_r)->required();
  neighborly->add_option("--seed", seed);
  neighborly->add_option("--trials", trials);
  neighborly->add_option("--report", report_path, "report JSON path");

  // d1
  std::string values_path;
  auto* d1 = app.add_subcommand("d1", "triangle-free skeleton construction, d = 1");
  d1->add_option("--polytope", polytope_path)->required();
  d1->add_option("--values", values_path, "vertex values JSON");
  auto* opt_d1_seed = d1->add_option("--seed", seed, "seeded random values");
  d1->add_option("--trials", trials);
  d1->add_option("--r", r)->required();
  d1->add_option("--report", report_path, "report JSON path");

  // subdivide
  int k = 1;
  std::string in_path, complex_out;
  auto* subdivide = app.add_subcommand("subdivide", "barycentric subdivision decay");
  subdivide->add_option("--in", in_path)->required();
  subdivide->add_option("--k", k)->required();
  subdivide->add_option("--report", csv_path, "decay CSV path");
  subdivide->add_option("--out", complex_out, "complex JSON path");

  // packing
  double lambda = 0.26;
  int pool = 20000;
  bool dual = false;
  auto* packing = app.add_subcommand("packing", "greedy sphere packing + Voronoi check");
  packing->add_option("--m", m)->required();
  packing->add_option("--lambda", lambda)->required();
  packing->add_option("--seed", seed)->required();
  packing->add_option("--pool", pool)->required();
  packing->add_flag("--dual", dual, "also enumerate the dual polytope (m = 3)");
  packing->add_option("--out", out_path, "packing JSON path");
  packing->add_option("--report", report_path, "report JSON path");

  // bu
  std::string f_path, gen;
  std::uint64_t gen_seed = 0;
  int bu_m = 2, bu_d = 1, bu_p = 2, restarts = 50;
  double tol = 1e-8;
  auto* bu = app.add_subcommand("bu", "rotation-orbit equal-values solver");
  bu->add_option("--f", f_path, "smooth map JSON");
  bu->add_option("--gen", gen, "generate a map: trig|odd");
  bu->add_option("--gen-seed", gen_seed, "seed for --gen");
  bu->add_option("--m", bu_m)->required();
  bu->add_option("--d", bu_d)->required();
  bu->add_option("--p", bu_p)->required();
  bu->add_option("--seed", seed)->required();
  bu->add_option("--tol", tol);
  bu->add_option("--restarts", restarts);
  bu->add_option("--out", out_path, "orbit report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message and usage hint
    return 1;
  }

  try {
    if (make->parsed()) return cmd_make(family, m, n, out_path);
    if (search->parsed())
      return cmd_search(polytope_path, map_path, map_seed, opt_map_seed->count() > 0,
                        r, forbid, opt_forbid->count() > 0, all_mode, report_path);
    if (count->parsed())
      return cmd_count_cross(cc_m, cc_d, cc_r, seed, trials, cc_forbid,
                             opt_cc_forbid->count() > 0, csv_path, report_path);
    if (neighborly->parsed())
      return cmd_neighborly(nb_m, nb_n, nb_d, nb_r, seed, trials, report_path);
    if (d1->parsed())
      return cmd_d1(polytope_path, values_path, seed, trials,
                    opt_d1_seed->count() > 0, r, report_path);
    if (subdivide->parsed()) return cmd_subdivide(in_path, k, csv_path, complex_out);
    if (packing->parsed())
      return cmd_packing(m, lambda, seed, pool, out_path, report_path, dual);
    if (bu->parsed())
      return cmd_bu(f_path, gen, gen_seed, bu_m, bu_d, bu_p, seed, tol, restarts,
                    out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
