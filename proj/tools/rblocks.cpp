// rblocks: enumerate graphs, compute and certify their charpolys, solve
// realization systems and search for elliptic points. JSON reports go to
// --out (or stdout with --json); summaries go to stdout.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "rb/acceptance.hpp"
#include "rb/blocks.hpp"
#include "rb/certify.hpp"
#include "rb/geometry.hpp"
#include "rb/spectral.hpp"
#include "rb/sweep.hpp"

#ifndef RB_FIXTURE_DIR
#define RB_FIXTURE_DIR "fixtures"
#endif

using namespace rb;
using rbio::Json;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct Output {
  std::string path;
  bool json = false;

  // Single writer for the machine report.
  void write(const Json& report) const {
    const std::string text = report.dump(2) + "\n";
    if (!path.empty()) {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error(path + ": cannot write");
      out << text;
    }
    if (json) std::cout << text;
  }
  void say(const std::string& line) const {
    if (!json) std::cout << line << "\n";
  }
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "Write the JSON report to this file");
  cmd->add_flag("--json", out.json, "Print the JSON report instead of the summary");
}

// --- commands -------------------------------------------------------------------

int cmd_enumerate(int m, int max_vertices, int bound, const Output& out) {
  const auto graphs = enumerate_graphs(m, max_vertices, bound);
  Json list = Json::array();
  for (const auto& g : graphs) {
    list.push_back(rbio::graph_json(g));
    out.say(format_graph_line(g));
  }
  out.write({{"m", m}, {"max_vertices", max_vertices}, {"bound", bound}, {"count", graphs.size()}, {"graphs", list}});
  out.say("# " + std::to_string(graphs.size()) + " graphs");
  return kOk;
}

int cmd_charpoly(const std::string& file, bool with_matrix, const Output& out) {
  Json list = Json::array();
  for (const auto& g : rbio::load_graphs(file)) {
    const BlockMatrix mat = build_matrix(g);
    const MultiPoly chi = charpoly_block(g);
    Json item{{"vertices", rbio::vertices_json(g)}, {"charpoly", chi.str()}};
    if (with_matrix) item["matrix"] = rbio::matrix_json(mat);
    list.push_back(item);
    out.say(chi.str());
  }
  out.write({{"graphs", list}});
  return kOk;
}

int cmd_certify(const std::string& file, const std::vector<uint32_t>& primes, int attempts, const Output& out) {
  CertifyOptions opts;
  if (!primes.empty()) opts.primes = primes;
  opts.attempts = attempts;
  Json list = Json::array();
  int bad = 0;
  for (const auto& g : rbio::load_graphs(file)) {
    const MultiPoly chi = charpoly_block(g);
    const Certificate c = certify_irreducible(chi, opts);
    // Non-degenerate allowable blocks are expected to be irreducible.
    const bool expected = !rank_and_degeneracy(g).degenerate && is_allowable(g);
    const bool verified = verify_certificate(chi, c);
    const bool failed = !verified || (expected && c.verdict == Verdict::Reducible);
    bad += failed;
    Json item = rbio::certificate_json(c);
    Json head{{"vertices", rbio::vertices_json(g)}, {"charpoly", chi.str()}, {"expected_irreducible", expected},
              {"verified", verified}};
    head.update(item);
    list.push_back(head);
    out.say(format_graph_line(g) + "  " + to_string(c.verdict) + (failed ? "  FAILED" : ""));
  }
  out.write({{"certificates", list}, {"failures", bad}});
  return bad ? kFailed : kOk;
}

std::vector<ColoredGraph> family_from(const std::string& file, int m, int max_vertices, int bound) {
  if (!file.empty()) return rbio::load_graphs(file);
  std::vector<ColoredGraph> out;
  for (const auto& g : enumerate_graphs(m, max_vertices, bound))
    if (!rank_and_degeneracy(g).degenerate && is_allowable(g)) out.push_back(g);
  return out;
}

int cmd_separate(const std::vector<ColoredGraph>& graphs, const Output& out) {
  std::vector<FamilyMember> fam;
  for (const auto& g : graphs) fam.push_back({g, charpoly_block(g)});
  const auto collisions = separation_check(fam);
  Json list = Json::array();
  for (const auto& c : collisions) {
    list.push_back({{"first", rbio::vertices_json(fam[c.first].graph)},
                    {"second", rbio::vertices_json(fam[c.second].graph)},
                    {"charpoly", fam[c.first].chi.str()}});
    out.say("collision: " + format_graph_line(fam[c.first].graph) + " and " + format_graph_line(fam[c.second].graph));
  }
  out.write({{"graphs", fam.size()}, {"collisions", list}});
  out.say(std::to_string(fam.size()) + " graphs, " + std::to_string(collisions.size()) + " collisions");
  return collisions.empty() ? kOk : kFailed;
}

int cmd_realize(const std::string& graph_file, const std::string& sites_file, int random_n, uint64_t seed, int samples,
                const Output& out) {
  const auto graphs = rbio::load_graphs(graph_file);
  std::mt19937_64 rng(seed);
  Json list = Json::array();
  int bad = 0;
  for (const auto& g : graphs) {
    const TangentialSites s = sites_file.empty() ? random_sites(g.m(), random_n, 20, rng) : rbio::load_sites(sites_file);
    const RealizationVerdict v = solve_realization(build_system(g, s), samples);
    // Degenerate-resonant graphs must not realize outside S. Resonance is
    // defined for connected graphs only.
    Json cls = nullptr;
    bool failed = false;
    if (g.connected()) {
      const ResonanceClass c = is_resonant(g);
      cls = to_string(c);
      failed = c == ResonanceClass::DegenerateResonant && v.cls == RealizationClass::GenericSolutions;
    }
    bad += failed;
    Json sites = Json::array();
    for (const auto& x : s.vectors) sites.push_back(x);
    Json item{{"vertices", rbio::vertices_json(g)}, {"class", cls}, {"sites", sites}};
    item.update(rbio::verdict_json(v));
    list.push_back(item);
    out.say(format_graph_line(g) + "  " + to_string(v.cls) + (failed ? "  FAILED" : ""));
  }
  out.write({{"realizations", list}, {"failures", bad}});
  return bad ? kFailed : kOk;
}

int cmd_spectrum(const std::string& file, int grid, double tol, int threads, const Output& out) {
  const auto graphs = rbio::load_graphs(file);
  if (graphs.empty()) throw rbio::InputError(file, 0, 0, "empty family");
  const int m = graphs[0].m();
  for (const auto& g : graphs)
    if (g.m() != m) throw rbio::InputError(file, 0, 0, "graphs of different m");
  EllipticOptions opts;
  opts.samples = grid;
  opts.margin = tol;
  opts.threads = threads;
  const EllipticReport r = search_elliptic(graphs, m, opts);
  out.write(rbio::elliptic_json(r));
  std::string point;
  for (double x : r.point) point += (point.empty() ? "" : ", ") + std::to_string(x);
  out.say(std::string(r.found ? "found" : "not found") + ": margin " + std::to_string(r.margin) + " at (" + point +
          "), " + std::to_string(r.n_good) + " of " + std::to_string(r.n_samples) + " samples good");
  return r.found ? kOk : kFailed;
}

// Fixture expectations listed in expect.json next to the fixture files.
int check_fixtures(const std::string& dir, Json& report) {
  const Json manifest = Json::parse(rbio::read_file(dir + "/expect.json"));
  int bad = 0;
  Json list = Json::array();
  for (const auto& e : manifest) {
    const std::string what = e.at("check").get<std::string>();
    std::string got;
    std::string want = e.at("expect").get<std::string>();
    if (what == "charpoly") {
      got = charpoly_block(rbio::load_graphs(dir + "/" + e.at("graph").get<std::string>()).at(0)).str();
    } else if (what == "certify") {
      got = to_string(certify_irreducible(charpoly_block(rbio::load_graphs(dir + "/" + e.at("graph").get<std::string>()).at(0))).verdict);
    } else if (what == "realize") {
      const auto g = rbio::load_graphs(dir + "/" + e.at("graph").get<std::string>()).at(0);
      got = to_string(solve_realization(build_system(g, rbio::load_sites(dir + "/" + e.at("sites").get<std::string>()))).cls);
    } else if (what == "spectrum") {
      const auto gs = rbio::load_graphs(dir + "/" + e.at("family").get<std::string>());
      got = search_elliptic(gs, gs.at(0).m()).found ? "found" : "not found";
    } else if (what == "enumerate") {
      const auto graphs = enumerate_graphs(e.at("m").get<int>(), e.at("max_vertices").get<int>(), e.at("bound").get<int>());
      const auto target = canonical_form(rbio::load_graphs(dir + "/" + e.at("contains").get<std::string>()).at(0));
      bool found = false;
      for (const auto& g : graphs) found = found || canonical_form(g) == target;
      got = std::to_string(graphs.size()) + (found ? " including " : " without ") + e.at("contains").get<std::string>();
    } else {
      throw std::runtime_error("expect.json: unknown check '" + what + "'");
    }
    const bool ok = got == want;
    bad += !ok;
    list.push_back({{"check", what}, {"expect", want}, {"got", got}, {"pass", ok}});
  }
  report["fixtures"] = list;
  return bad;
}

int cmd_verify_all(const std::string& fixtures, bool quick, int threads, const Output& out) {
  Json report;
  const int fixture_failures = check_fixtures(fixtures, report);
  for (const auto& f : report["fixtures"])
    out.say(std::string(f["pass"].get<bool>() ? "PASS" : "FAIL") + " fixture " + f["check"].get<std::string>() + ": " +
            f["got"].get<std::string>());

  AcceptanceOptions opts;
  opts.threads = threads;
  if (quick) opts.sweep_m = 3;
  const AcceptanceReport r = run_acceptance(opts);
  out.say(r.sweep_summary);
  Json criteria = Json::array();
  for (const auto& c : r.criteria) {
    out.say(c.line());
    criteria.push_back({{"id", c.id}, {"pass", c.pass}, {"known_unattainable", c.known_unattainable}, {"detail", c.detail}});
  }
  report["criteria"] = criteria;
  report["sweep_m"] = opts.sweep_m;
  report["unexpected_failures"] = r.unexpected() + fixture_failures;
  out.write(report);
  out.say(r.unexpected() + fixture_failures ? "FAILED" : "OK");
  return r.unexpected() + fixture_failures ? kFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blocks of the normal-form operator: graphs, charpolys, certificates, realizations, spectra"};
  app.require_subcommand(1);
  Output out;

  int m = 2, max_vertices = 4, bound = 3;
  auto* enumerate = app.add_subcommand("enumerate", "List connected graphs through 0 up to the tau quotient");
  enumerate->add_option("--m", m, "Number of tangential sites")->check(CLI::Range(1, 10));
  enumerate->add_option("--max-vertices", max_vertices)->check(CLI::PositiveNumber);
  enumerate->add_option("--bound", bound, "Coordinate bound")->check(CLI::PositiveNumber);
  add_output(enumerate, out);

  std::string graph_file;
  bool with_matrix = false;
  auto* charpoly = app.add_subcommand("charpoly", "Characteristic polynomial of each graph in a file");
  charpoly->add_option("--graph", graph_file)->required()->check(CLI::ExistingFile);
  charpoly->add_flag("--matrix", with_matrix, "Include the matrix in the report");
  add_output(charpoly, out);

  std::vector<uint32_t> primes;
  int attempts = 64;
  auto* certify = app.add_subcommand("certify", "Irreducibility certificates");
  certify->add_option("--graph", graph_file)->required()->check(CLI::ExistingFile);
  certify->add_option("--primes", primes, "Primes for the degree patterns");
  certify->add_option("--attempts", attempts, "Specializations to try")->check(CLI::PositiveNumber);
  add_output(certify, out);

  std::string family_file;
  auto* separate = app.add_subcommand("separate", "Pairwise distinct charpolys across a family");
  separate->add_option("--family", family_file, "Graph file; default: non-degenerate allowable enumerated graphs")
      ->check(CLI::ExistingFile);
  separate->add_option("--m", m)->check(CLI::Range(1, 10));
  separate->add_option("--max-vertices", max_vertices)->check(CLI::PositiveNumber);
  separate->add_option("--bound", bound)->check(CLI::PositiveNumber);
  add_output(separate, out);

  std::string sites_file;
  int random_n = 4, samples = 64;
  uint64_t seed = 1;
  auto* realize = app.add_subcommand("realize", "Solve the realization system of each graph");
  realize->add_option("--graph", graph_file)->required()->check(CLI::ExistingFile);
  auto* sites_opt = realize->add_option("--sites", sites_file, "JSON list of integer vectors")->check(CLI::ExistingFile);
  realize->add_option("--random-sites", random_n, "Dimension n of random sites when --sites is absent")
      ->check(CLI::PositiveNumber)
      ->excludes(sites_opt);
  realize->add_option("--seed", seed);
  realize->add_option("--samples", samples, "Random probe directions on the solution sphere")->check(CLI::NonNegativeNumber);
  add_output(realize, out);

  int grid = 4096, threads = 0;
  double tol = 1e-6;
  auto* spectrum = app.add_subcommand("spectrum", "Search the simplex for a real simple spectrum of every block");
  spectrum->add_option("--family", family_file)->required()->check(CLI::ExistingFile);
  spectrum->add_option("--grid", grid, "Number of simplex samples")->check(CLI::PositiveNumber);
  spectrum->add_option("--tol", tol, "Required margin")->check(CLI::PositiveNumber);
  spectrum->add_option("--threads", threads, "0: RB_THREADS or OpenMP default, 1: serial");
  add_output(spectrum, out);

  std::string fixtures = RB_FIXTURE_DIR;
  bool quick = false;
  auto* verify = app.add_subcommand("verify-all", "Shipped fixtures and the acceptance criteria");
  verify->add_option("--fixtures", fixtures)->check(CLI::ExistingDirectory);
  verify->add_flag("--quick", quick, "Sweep m <= 3 instead of m <= 4");
  verify->add_option("--threads", threads);
  add_output(verify, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(m, max_vertices, bound, out);
    if (*charpoly) return cmd_charpoly(graph_file, with_matrix, out);
    if (*certify) return cmd_certify(graph_file, primes, attempts, out);
    if (*separate) return cmd_separate(family_from(family_file, m, max_vertices, bound), out);
    if (*realize) return cmd_realize(graph_file, sites_file, random_n, seed, samples, out);
    if (*spectrum) return cmd_spectrum(family_file, grid, tol, threads, out);
    if (*verify) return cmd_verify_all(fixtures, quick, threads, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
