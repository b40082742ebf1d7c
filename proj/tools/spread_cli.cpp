// Command-line front end.  Every subcommand prints one machine-parseable
// document (JSON, or CSV for grid data) with a schema_version marker, to
// stdout or --out.  Exit codes: 0 verified/success, 1 a verification came
// back negative or an internal cross-check failed, 2 usage or input errors.
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spreadlab/cubic.hpp"
#include "spreadlab/feasibility.hpp"
#include "spreadlab/graphs.hpp"
#include "spreadlab/graphs_bipartite.hpp"
#include "spreadlab/interval.hpp"
#include "spreadlab/spectra.hpp"
#include "spreadlab/stepgraphon.hpp"
#include "spreadlab/util.hpp"

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// all documents land here: --out writes via a temp file + rename so a crash
// mid-write never leaves a truncated report behind
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  const std::string tmp = out_path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << text;
    if (!f.flush()) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), out_path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " into place");
}

void emit_json(const std::string& out_path, const ojson& doc) {
  emit(out_path, doc.dump(2) + "\n");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

// numeric flags accept fractions ("2/3"), hence string options + parse_number
double num(const std::string& s) { return spreadlab::parse_number(s); }

spreadlab::GridSpec parse_grid(const std::string& s) {
  const std::vector<std::string> parts = split(s, ',');
  if (parts.size() != 4)
    throw std::invalid_argument("--grid wants four comma-separated counts");
  spreadlab::GridSpec g;
  int* slot[4] = {&g.g_mu, &g.g_nu, &g.g_ai, &g.g_aj};
  for (int i = 0; i < 4; ++i) {
    const double v = num(parts[i]);
    if (v < 1 || v != static_cast<int>(v))
      throw std::invalid_argument("grid counts must be positive integers");
    *slot[i] = static_cast<int>(v);
  }
  return g;
}

ojson box_to_json(const spreadlab::SearchBox& b) {
  return ojson::parse(spreadlab::to_json(b));
}

spreadlab::SearchBox box_from_json(const ojson& j) {
  const auto iv = [&](const char* key) {
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 2)
      throw std::invalid_argument(std::string(key) + " must be [lo, hi]");
    return spreadlab::Interval::make(a[0].get<double>(), a[1].get<double>());
  };
  spreadlab::SearchBox b;
  b.a_i = iv("a_i");
  b.a_j = iv("a_j");
  b.mu = iv("mu");
  b.nu = iv("nu");
  b.depth = j.value("depth", 0);
  b.split_dim = j.value("split_dim", 0);
  return b;
}

std::vector<spreadlab::SearchBox> load_boxes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read " + path);
  ojson doc = ojson::parse(f, nullptr, true);
  if (!doc.is_array()) throw std::invalid_argument(path + ": expected a JSON list");
  std::vector<spreadlab::SearchBox> boxes;
  boxes.reserve(doc.size());
  for (const auto& j : doc) boxes.push_back(box_from_json(j));
  return boxes;
}

void save_boxes(const std::string& path, const std::vector<spreadlab::SearchBox>& boxes) {
  ojson doc = ojson::array();
  for (const auto& b : boxes) doc.push_back(box_to_json(b));
  emit(path, doc.dump() + "\n");
}

const char* status_name(spreadlab::EliminationReport::Status s) {
  using St = spreadlab::EliminationReport::Status;
  switch (s) {
    case St::eliminated: return "eliminated";
    case St::depth_exhausted: return "depth_exhausted";
    case St::survived: return "survived";
  }
  return "?";
}

ojson report_to_json(const spreadlab::EliminationReport& r, bool deterministic) {
  ojson j;
  j["name"] = r.case_name;
  j["status"] = status_name(r.status);
  j["boxes_processed"] = r.boxes_processed;
  j["max_depth_reached"] = r.max_depth_reached;
  j["refutations"] = ojson::object();
  for (const auto& [tag, n] : r.refutations) j["refutations"][tag] = n;
  j["survivors"] = ojson::array();
  for (const auto& b : r.surviving_boxes) j["survivors"].push_back(box_to_json(b));
  if (!deterministic) j["wall_time_sec"] = r.wall_time_sec;
  return j;
}

// checkpoint file names for `verify all`: one per case, pipes dropped
std::string case_digits(const std::string& name) {
  std::string d;
  for (char ch : name)
    if (ch != '|') d += ch;
  return d;
}

// --------------------------------------------------------------------------
// spread graph / join / bipartite

int cmd_spread_graph(int n, const std::string& edges, const std::string& out) {
  int max_vertex = -1;
  std::vector<std::pair<int, int>> pairs;
  if (!edges.empty()) {
    for (const std::string& tok : split(edges, ',')) {
      const auto dash = tok.find('-');
      if (dash == std::string::npos)
        throw std::invalid_argument("edge '" + tok + "' is not of the form u-v");
      const int u = std::stoi(tok.substr(0, dash));
      const int v = std::stoi(tok.substr(dash + 1));
      pairs.emplace_back(u, v);
      max_vertex = std::max({max_vertex, u, v});
    }
  }
  if (n == 0) n = max_vertex + 1;
  spreadlab::Graph g(n);
  for (const auto& [u, v] : pairs) g.add_edge(u, v);

  const spreadlab::SpectralPair p = spreadlab::extreme_eigs(g.adjacency_matrix());
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = g.n;
  j["m"] = g.edge_count();
  j["lambda_max"] = p.lambda_max;
  j["lambda_min"] = p.lambda_min;
  j["spread"] = p.spread;
  j["graphon_spread"] = spreadlab::graphon_spread_of_graph(g.adjacency_matrix());
  emit_json(out, j);
  return 0;
}

int cmd_spread_join(int n1, int n2, int n3, bool structure, const std::string& out) {
  const spreadlab::Graph g = spreadlab::build_join({n1, n2, n3});
  const spreadlab::SpectralPair p = spreadlab::extreme_eigs(g.adjacency_matrix());
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["n1"] = n1;
  j["n2"] = n2;
  j["n3"] = n3;
  j["n"] = g.n;
  j["m"] = g.edge_count();
  j["spread"] = p.spread;
  if (structure) {
    const spreadlab::StructureReport r = spreadlab::check_lemma21(g);
    ojson s;
    s["adjacent_violations"] = r.adjacent_violations;
    s["nonadjacent_violations"] = r.nonadjacent_violations;
    s["indeterminate"] = r.indeterminate;
    s["join_confirmed"] = r.join_confirmed;
    s["p_side_threshold"] = r.p_side_threshold;
    s["n_side_threshold"] = r.n_side_threshold;
    s["p_size"] = r.p_size;
    s["n_size"] = r.n_size;
    j["structure"] = s;
  }
  emit_json(out, j);
  return 0;
}

int cmd_spread_bipartite(int p, int q, long m, const std::string& out) {
  const spreadlab::BipartiteSpec spec{p, q, m};
  const double s = spreadlab::near_bipartite_spread(spec);
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["p"] = p;
  j["q"] = q;
  j["m"] = m;
  j["removed"] = static_cast<long>(p) * q - m;
  j["spread"] = s;
  emit_json(out, j);
  return 0;
}

// --------------------------------------------------------------------------
// brute

// report the best graph in G(n; n1, n2, n3) join form when one matches its
// spread, size and degree sequence; enumeration order prefers large cliques
std::string join_form_label(const spreadlab::Graph& best, double spread) {
  const int n = best.n;
  const std::vector<int> deg = best.degree_sequence();
  for (int n1 = n; n1 >= 0; --n1)
    for (int n2 = 0; n1 + n2 <= n; ++n2) {
      const int n3 = n - n1 - n2;
      const spreadlab::Graph g = spreadlab::build_join({n1, n2, n3});
      if (g.edge_count() != best.edge_count()) continue;
      if (g.degree_sequence() != deg) continue;
      const double s = spreadlab::extreme_eigs(g.adjacency_matrix()).spread;
      if (std::abs(s - spread) > 1e-9) continue;
      char buf[64];
      std::snprintf(buf, sizeof buf, "G(%d;%d,%d,%d)", n, n1, n2, n3);
      return buf;
    }
  return {};
}

int cmd_brute(int n, const std::string& mode, int jobs, const std::string& out) {
  spreadlab::BruteMode m;
  if (mode == "full") {
    m = spreadlab::BruteMode::full;
  } else if (mode == "threshold_join") {
    m = spreadlab::BruteMode::threshold_join;
  } else {
    throw std::invalid_argument("--mode must be full or threshold_join");
  }
  const spreadlab::BruteResult r = spreadlab::brute_force_max_spread(n, m, jobs);

  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = n;
  j["mode"] = mode;
  j["best_spread"] = r.spread;
  j["best_graph_edges"] = ojson::array();
  for (const auto& [u, v] : r.best.edges())
    j["best_graph_edges"].push_back(ojson::array({u, v}));
  j["co_maximizers"] = r.co_maximizers;
  j["candidates"] = r.candidates;
  const std::string label = join_form_label(r.best, r.spread);
  if (label.empty())
    j["join_form"] = nullptr;
  else
    j["join_form"] = label;
  emit_json(out, j);
  return 0;
}

// --------------------------------------------------------------------------
// stepgraphon

int cmd_step_spread(const std::string& alpha, const std::string& out) {
  const std::vector<std::string> parts = split(alpha, ',');
  if (parts.size() != spreadlab::kNumBlocks)
    throw std::invalid_argument("--alpha wants exactly 7 comma-separated weights");
  std::array<double, spreadlab::kNumBlocks> w{};
  for (int i = 0; i < spreadlab::kNumBlocks; ++i) w[i] = num(parts[i]);
  const double s = spreadlab::spread_of_weights(spreadlab::WeightVector(w));
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["alpha"] = w;
  j["spread"] = s;
  emit_json(out, j);
  return 0;
}

int cmd_contour(const std::string& plot, const std::string& step, int jobs,
                const std::string& out) {
  spreadlab::ContourPlot p;
  if (plot == "A" || plot == "a") {
    p = spreadlab::ContourPlot::A;
  } else if (plot == "B" || plot == "b") {
    p = spreadlab::ContourPlot::B;
  } else {
    throw std::invalid_argument("--plot must be A or B");
  }
  const std::string csv = spreadlab::contour_grid(p, num(step), jobs);
  emit(out, "# schema_version=" + std::to_string(kSchemaVersion) + "\n" + csv);
  return 0;
}

// --------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string case_name;  // empty = all
  int depth = 26;
  std::string grid = "20,20,10,10";
  int jobs = 0;  // auto
  std::string out;
  std::string checkpoint;
  double checkpoint_period = 60.0;
  std::string resume;
  bool deterministic = false;
};

spreadlab::EliminationReport run_one(const spreadlab::CaseSpec& cs,
                                     const VerifyArgs& a,
                                     const std::string& checkpoint_path,
                                     const std::vector<spreadlab::SearchBox>* seeds) {
  spreadlab::EliminateOptions opt;
  opt.grid = parse_grid(a.grid);
  opt.jobs = a.jobs;
  opt.seeds = seeds;
  opt.checkpoint_period_sec = a.checkpoint_period;
  if (!checkpoint_path.empty())
    opt.checkpoint = [&checkpoint_path](const std::vector<spreadlab::SearchBox>& frontier) {
      save_boxes(checkpoint_path, frontier);
    };
  return spreadlab::eliminate_case(cs, a.depth, opt);
}

int cmd_verify(const VerifyArgs& a) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["mode"] = a.case_name.empty() ? "all" : "case";
  j["depth"] = a.depth;
  {
    const spreadlab::GridSpec g = parse_grid(a.grid);  // validate before the run
    j["grid"] = ojson::array({g.g_mu, g.g_nu, g.g_ai, g.g_aj});
  }
  j["jobs"] = a.jobs;

  if (!a.case_name.empty()) {
    const spreadlab::CaseSpec& cs = spreadlab::find_case(a.case_name);
    std::vector<spreadlab::SearchBox> seeds;
    if (!a.resume.empty()) seeds = load_boxes(a.resume);
    const spreadlab::EliminationReport r =
        run_one(cs, a, a.checkpoint, a.resume.empty() ? nullptr : &seeds);
    j["report"] = report_to_json(r, a.deterministic);
    emit_json(a.out, j);
    return r.status == spreadlab::EliminationReport::Status::eliminated ? 0 : 1;
  }

  if (!a.resume.empty())
    throw std::invalid_argument("--resume applies to `verify case`, not `verify all`");
  std::vector<spreadlab::EliminationReport> reports;
  j["cases"] = ojson::array();
  for (const spreadlab::CaseSpec& cs : spreadlab::case_table()) {
    spreadlab::log_info("verify: case " + cs.name);
    const std::string ckpt =
        a.checkpoint.empty() ? std::string()
                             : a.checkpoint + "." + case_digits(cs.name) + ".json";
    reports.push_back(run_one(cs, a, ckpt, nullptr));
    j["cases"].push_back(report_to_json(reports.back(), a.deterministic));
  }
  const bool expected = spreadlab::survivors_are_expected(reports);
  j["survivors_expected"] = expected;
  emit_json(a.out, j);
  return expected ? 0 : 1;
}

// --------------------------------------------------------------------------
// cubic

int cmd_cubic_scan(const std::string& grid, const std::string& threshold,
                   const std::string& out) {
  const double g = num(grid);
  const double thr = threshold.empty() ? 0.0 : num(threshold);
  const std::vector<spreadlab::CriticalCell> cells =
      spreadlab::scan_critical_points(g, thr);
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["grid"] = g;
  j["threshold"] = thr == 0.0 ? 12.0 * g : thr;
  j["flagged_cells"] = cells.size();
  j["cells"] = ojson::array();
  for (const auto& c : cells) {
    ojson cj;
    cj["e1"] = c.e1;
    cj["e2"] = c.e2;
    cj["spread"] = c.s;
    cj["grad"] = c.grad;
    j["cells"].push_back(cj);
  }
  emit_json(out, j);
  return cells.empty() ? 0 : 1;
}

int cmd_cubic_optimize(const std::string& z_str, const std::string& out) {
  const double z = num(z_str);
  const spreadlab::EpsilonPoint e = spreadlab::maximize_perturbed_spread(z);
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["z"] = z;
  j["e1"] = e.e1;
  j["e2"] = e.e2;
  j["spread"] = spreadlab::family_spread(e, spreadlab::CubicFamily::kPerturbed);
  emit_json(out, j);
  return 0;
}

// --------------------------------------------------------------------------
// bipartite

int cmd_bip_gap(int n, const std::string& eps, const std::string& out) {
  const spreadlab::GapRecord r = spreadlab::plus_edge_gap(n, num(eps));
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = r.n;
  j["m"] = r.m;
  j["s_upper"] = r.s_upper;
  j["s_lower"] = r.s_lower;
  j["s_b"] = r.s_b;
  j["relative_gap"] = r.relative_gap;
  j["best_p"] = r.best_p;
  j["best_q"] = r.best_q;
  emit_json(out, j);
  return 0;
}

int cmd_bip_sweep(int n, const std::string& out) {
  if (n < 2) throw std::invalid_argument("--n must be at least 2");
  std::ostringstream csv;
  csv << "# schema_version=" << kSchemaVersion << "\n";
  csv << "m,p,q,removed,spread,ceiling,rel_shortfall\n";
  const long m_max = static_cast<long>(n) * n / 4;
  for (long m = 1; m <= m_max; ++m) {
    const spreadlab::BestBipartite b = spreadlab::best_bipartite(n, m);
    const double ceiling = 2.0 * std::sqrt(static_cast<double>(m));
    char line[160];
    std::snprintf(line, sizeof line, "%ld,%d,%d,%ld,%.12g,%.12g,%.6e\n", m, b.p,
                  b.q, static_cast<long>(b.p) * b.q - m, b.spread, ceiling,
                  (ceiling - b.spread) / ceiling);
    csv << line;
  }
  emit(out, csv.str());
  return 0;
}

int cmd_bip_seq(int n, const std::string& out) {
  if (n < 1) throw std::invalid_argument("--n must be positive");
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = n;
  j["gaps"] = ojson::array();
  for (int k = 1; k <= n; ++k) {  // per-n rows up to the requested size
    ojson row;
    row["n"] = k;
    row["gap"] = spreadlab::longest_missing_product_run(k);
    row["bound"] = static_cast<int>(
        std::ceil(std::sqrt(2.0 * k - 1.0) - 1.0 - 1e-12));
    j["gaps"].push_back(row);
  }
  emit_json(out, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spread computations for graphs and the seven-block stepgraphon family"};
  app.require_subcommand(1);

  // ---- spread ----
  CLI::App* sp = app.add_subcommand("spread", "spread of a single graph");
  sp->require_subcommand(1);
  CLI::App* sp_graph = sp->add_subcommand("graph", "explicit edge list");
  int sg_n = 0;
  std::string sg_edges, sg_out;
  sp_graph->add_option("--n", sg_n, "vertex count (default: 1 + max index)");
  sp_graph->add_option("--edges", sg_edges, "comma list of u-v pairs");
  sp_graph->add_option("--out", sg_out, "output path (default stdout)");

  CLI::App* sp_join = sp->add_subcommand("join", "(K_n1 + I_n2) joined to I_n3");
  int sj_n1 = 0, sj_n2 = 0, sj_n3 = 0;
  bool sj_structure = false;
  std::string sj_out;
  sp_join->add_option("--n1", sj_n1, "clique size")->required();
  sp_join->add_option("--n2", sj_n2, "independent size, clique side");
  sp_join->add_option("--n3", sj_n3, "independent size, joined to everything")->required();
  sp_join->add_flag("--structure", sj_structure, "include the eigenvector sign report");
  sp_join->add_option("--out", sj_out, "output path (default stdout)");

  CLI::App* sp_bip = sp->add_subcommand("bipartite", "K_{p,q} minus a star, m edges");
  int sb_p = 0, sb_q = 0;
  long sb_m = 0;
  std::string sb_out;
  sp_bip->add_option("--p", sb_p, "larger side")->required();
  sp_bip->add_option("--q", sb_q, "smaller side")->required();
  sp_bip->add_option("--m", sb_m, "edge count")->required();
  sp_bip->add_option("--out", sb_out, "output path (default stdout)");

  // ---- brute ----
  CLI::App* brute = app.add_subcommand("brute", "exhaustive spread maximizer search");
  int br_n = 0, br_jobs = 0;
  std::string br_mode = "full", br_out;
  brute->add_option("--n", br_n, "vertex count")->required();
  brute->add_option("--mode", br_mode, "full (n<=7) or threshold_join (n<=24)");
  brute->add_option("--jobs", br_jobs, "worker threads, 0 = auto");
  brute->add_option("--out", br_out, "output path (default stdout)");

  // ---- stepgraphon ----
  CLI::App* st = app.add_subcommand("stepgraphon", "seven-block stepgraphon family");
  st->require_subcommand(1);
  CLI::App* st_spread = st->add_subcommand("spread", "spread at given block weights");
  std::string ss_alpha, ss_out;
  st_spread->add_option("--alpha", ss_alpha, "7 weights, fractions ok (2/3,0,...)")
      ->required();
  st_spread->add_option("--out", ss_out, "output path (default stdout)");

  CLI::App* st_contour = st->add_subcommand("contour", "CSV grid for the weight-space plots");
  std::string sc_plot, sc_step = "1/20", sc_out;
  int sc_jobs = 1;
  st_contour->add_option("--plot", sc_plot, "A or B")->required();
  st_contour->add_option("--step", sc_step, "grid step in [1/200, 1/20]");
  st_contour->add_option("--jobs", sc_jobs, "worker threads");
  st_contour->add_option("--out", sc_out, "output path (default stdout)");

  // ---- verify ----
  CLI::App* ver = app.add_subcommand("verify", "interval elimination of support cases");
  ver->require_subcommand(1);
  VerifyArgs va;
  CLI::App* ver_case = ver->add_subcommand("case", "one support case; exit 0 iff eliminated");
  ver_case->add_option("name", va.case_name, "case name, e.g. 1|24|7 or 1247")->required();
  CLI::App* ver_all = ver->add_subcommand(
      "all", "all 17 cases; exit 0 iff exactly {1|7, 4|57} remain");
  for (CLI::App* v : {ver_case, ver_all}) {
    v->add_option("--depth", va.depth, "bisection depth cap (default 26)");
    v->add_option("--grid", va.grid, "mu,nu,a_i,a_j seed cells per unit (default 20,20,10,10)");
    v->add_option("--jobs", va.jobs, "worker threads, 0 = auto");
    v->add_option("--out", va.out, "report path (default stdout)");
    v->add_option("--checkpoint", va.checkpoint,
                  "frontier snapshot path (case: the file; all: a prefix)");
    v->add_option("--checkpoint-period", va.checkpoint_period,
                  "seconds between snapshots (default 60)");
    v->add_flag("--deterministic", va.deterministic,
                "omit wall-clock fields for byte-identical reruns");
  }
  ver_case->add_option("--resume", va.resume, "continue from a frontier snapshot");

  // ---- cubic ----
  CLI::App* cu = app.add_subcommand("cubic", "three-block trigonometric family");
  cu->require_subcommand(1);
  CLI::App* cu_scan = cu->add_subcommand(
      "scan", "flag low-gradient interior cells; exit 0 iff none flagged");
  std::string cs_grid = "1/200", cs_threshold, cs_out;
  cu_scan->add_option("--grid", cs_grid, "lattice pitch in [1/10000, 1/100]");
  cu_scan->add_option("--threshold", cs_threshold, "|grad| cutoff (default 12*grid)");
  cu_scan->add_option("--out", cs_out, "output path (default stdout)");
  CLI::App* cu_opt = cu->add_subcommand("optimize", "maximize the z-perturbed spread");
  std::string co_z = "1e-3", co_out;
  cu_opt->add_option("--z", co_z, "loop perturbation, |z| <= 0.01");
  cu_opt->add_option("--out", co_out, "output path (default stdout)");

  // ---- bipartite ----
  CLI::App* bi = app.add_subcommand("bipartite", "near-complete bipartite spreads");
  bi->require_subcommand(1);
  CLI::App* bi_gap = bi->add_subcommand("gap", "plus-edge vs best-bipartite separation");
  int bg_n = 0;
  std::string bg_eps = "0.5", bg_out;
  bi_gap->add_option("--n", bg_n, "vertex count (even)")->required();
  bi_gap->add_option("--eps", bg_eps, "edge-density slack (default 0.5)");
  bi_gap->add_option("--out", bg_out, "output path (default stdout)");
  CLI::App* bi_sweep = bi->add_subcommand("sweep", "per-m best bipartite spread CSV");
  int bs_n = 0;
  std::string bs_out;
  bi_sweep->add_option("--n", bs_n, "vertex count")->required();
  bi_sweep->add_option("--out", bs_out, "output path (default stdout)");
  CLI::App* bi_seq = bi->add_subcommand("seq", "longest missing product run per n");
  int bq_n = 0;
  std::string bq_out;
  bi_seq->add_option("--n", bq_n, "largest n")->required();
  bi_seq->add_option("--out", bq_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are exit 2, help is success
  }

  try {
    if (sp_graph->parsed()) return cmd_spread_graph(sg_n, sg_edges, sg_out);
    if (sp_join->parsed()) return cmd_spread_join(sj_n1, sj_n2, sj_n3, sj_structure, sj_out);
    if (sp_bip->parsed()) return cmd_spread_bipartite(sb_p, sb_q, sb_m, sb_out);
    if (brute->parsed()) return cmd_brute(br_n, br_mode, br_jobs, br_out);
    if (st_spread->parsed()) return cmd_step_spread(ss_alpha, ss_out);
    if (st_contour->parsed()) return cmd_contour(sc_plot, sc_step, sc_jobs, sc_out);
    if (ver_case->parsed() || ver_all->parsed()) {
      if (ver_all->parsed()) va.case_name.clear();
      return cmd_verify(va);
    }
    if (cu_scan->parsed()) return cmd_cubic_scan(cs_grid, cs_threshold, cs_out);
    if (cu_opt->parsed()) return cmd_cubic_optimize(co_z, co_out);
    if (bi_gap->parsed()) return cmd_bip_gap(bg_n, bg_eps, bg_out);
    if (bi_sweep->parsed()) return cmd_bip_sweep(bs_n, bs_out);
    if (bi_seq->parsed()) return cmd_bip_seq(bq_n, bq_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no command\n";
  return 2;
}
