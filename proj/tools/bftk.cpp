// bftk: measures, certificates and verification campaigns for Boolean
// functions given as truth tables, families, read-once formulas or graph
// properties.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bftk/adversary.hpp"
#include "bftk/approx.hpp"
#include "bftk/campaign.hpp"
#include "bftk/formula.hpp"
#include "bftk/fspec.hpp"
#include "bftk/graph_property.hpp"
#include "bftk/polynomial.hpp"
#include "bftk/relations.hpp"
#include "bftk/spectral.hpp"

namespace {

using nlohmann::ordered_json;

struct GlobalOptions {
  std::string format = "json";
  std::string out;
  int jobs = 1;
  double tolerance = 0.0;  // 0: per-relation defaults
};

void write_output(const GlobalOptions& g, const std::string& payload) {
  if (g.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + g.out);
  file << payload;
}

void write_file(const std::string& path, const std::string& payload) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  file << payload;
}

std::vector<std::string> split_commas(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

ordered_json witness_json(const bftk::ApproxDegreeResult& res) {
  ordered_json j;
  j["n"] = res.witness.n;
  j["convention"] = res.convention == bftk::Convention::kUnitInterval
                        ? "unit-interval"
                        : "signed";
  j["epsilon"] = res.epsilon;
  j["coeffs"] = ordered_json::array();
  for (auto [mask, value] : res.witness.terms) {
    ordered_json term;
    term["vars"] = ordered_json::array();
    for (int i = 0; i < res.witness.n; ++i)
      if (mask & (1u << i)) term["vars"].push_back(i + 1);
    term["value"] = value;
    j["coeffs"].push_back(term);
  }
  return j;
}

std::string csv_int_matrix(const Eigen::MatrixXi& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += std::to_string(m(r, c));
    }
    out += "\n";
  }
  return out;
}

int cmd_measure(const GlobalOptions& g, const std::string& fn,
                const std::string& measures, const std::string& emit_graph,
                const std::string& emit_witness, const std::string& emit_r) {
  bftk::TruthTable f = bftk::load_function_spec(fn);
  auto rec = bftk::measure_function(f, fn, split_commas(measures));
  if (!emit_graph.empty()) {
    auto graph = bftk::sensitivity_graph(f);
    std::string lines;
    for (auto [x, y] : graph.edges)
      lines += std::to_string(x) + " " + std::to_string(y) + "\n";
    write_file(emit_graph, lines);
  }
  if (!emit_witness.empty()) {
    if (f.arity() > bftk::kApproxDegreeMaxArity)
      throw std::invalid_argument("witness emission needs arity <= 5");
    auto res = bftk::approx_degree(f, 1.0 / 3.0);
    write_file(emit_witness, witness_json(res).dump(2) + "\n");
  }
  if (!emit_r.empty()) {
    // R = H diag(g) H for g = 1 - 2f, written as float CSV.
    if (f.arity() > 10)
      throw std::invalid_argument("R emission needs arity <= 10");
    bftk::MultilinearPolynomial gpoly;
    gpoly.n = f.arity();
    auto coeffs = bftk::mobius_coefficients(f);
    gpoly.terms.emplace_back(0, 1.0 - 2.0 * double(coeffs[0]));
    for (uint64_t mask = 1; mask < coeffs.size(); ++mask)
      if (coeffs[mask] != 0)
        gpoly.terms.emplace_back(uint32_t(mask), -2.0 * double(coeffs[mask]));
    Eigen::MatrixXd r = bftk::r_tilde(gpoly);
    std::string out;
    char buf[64];
    for (Eigen::Index row = 0; row < r.rows(); ++row) {
      for (Eigen::Index col = 0; col < r.cols(); ++col) {
        snprintf(buf, sizeof buf, "%.17g", r(row, col));
        if (col) out += ",";
        out += buf;
      }
      out += "\n";
    }
    write_file(emit_r, out);
  }
  write_output(g, g.format == "csv"
                      ? bftk::record_csv_header() + bftk::record_csv(rec)
                      : bftk::record_json(rec));
  return 0;
}

int cmd_chain(const GlobalOptions& g, const std::string& fn, double epsilon) {
  bftk::TruthTable f = bftk::load_function_spec(fn);
  auto rep = bftk::certificate_chain(f, epsilon);
  ordered_json j;
  j["f"] = fn;
  j["epsilon"] = rep.epsilon;
  j["adeg_signed"] = rep.degree;
  j["lambda"] = rep.lambda;
  j["bq_norm"] = rep.bq_norm;
  j["gamma2"] = rep.gamma2_value;
  j["links"] = ordered_json::array();
  for (const auto& l : rep.links) {
    ordered_json jl;
    jl["name"] = l.name;
    jl["lhs"] = l.lhs;
    jl["rhs"] = l.rhs;
    jl["ok"] = l.ok;
    j["links"].push_back(jl);
  }
  j["ok"] = rep.ok;
  write_output(g, j.dump(2) + "\n");
  return rep.ok ? 0 : 1;
}

int cmd_verify(const GlobalOptions& g, int n, bool exhaustive, int64_t random,
               uint64_t seed, const std::string& relations) {
  auto requested = split_commas(relations);
  bftk::CampaignOptions opt;
  opt.n = n;
  opt.exhaustive = exhaustive;
  opt.count = exhaustive ? 0 : uint64_t(random);
  opt.seed = seed;
  opt.relations = bftk::resolve_relation_ids(requested);
  opt.jobs = g.jobs;
  opt.tolerance = g.tolerance;
  // "all" keeps only the relations applicable at this arity; explicitly
  // named relations beyond their cap stay hard errors.
  opt.skip_capped =
      std::find(requested.begin(), requested.end(), "all") != requested.end();
  auto start = std::chrono::steady_clock::now();
  bftk::CampaignReport rep = bftk::run_campaign(opt);
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  // Timing stays on stderr so reports are byte-identical across runs.
  std::cerr << "campaign finished in " << elapsed << " ms\n";
  write_output(g, g.format == "csv" ? bftk::report_csv(rep)
                                    : bftk::report_json(rep));
  return rep.ok ? 0 : 1;
}

int cmd_gamma2(const GlobalOptions& g, int n, int d,
               const std::string& emit_matrix) {
  auto cert = bftk::build_gamma2_certificate(n, d);
  if (!emit_matrix.empty()) write_file(emit_matrix, csv_int_matrix(cert.product()));
  ordered_json j;
  j["n"] = cert.n;
  j["d"] = cert.d;
  j["value"] = cert.value();
  auto matrix_json = [](const Eigen::MatrixXi& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(row);
    }
    return rows;
  };
  j["S"] = matrix_json(cert.s);
  j["T"] = matrix_json(cert.t);
  write_output(g, j.dump(2) + "\n");
  return 0;
}

int cmd_huang(const GlobalOptions& g, int n, const std::string& emit_matrix) {
  bftk::SigningMatrix b(n);  // construction validates B^2 = n I
  Eigen::MatrixXd dense = b.dense();
  double trace = dense.trace();
  if (!emit_matrix.empty()) {
    Eigen::MatrixXi as_int = dense.cast<int>();
    write_file(emit_matrix, csv_int_matrix(as_int));
  }
  ordered_json j;
  j["n"] = n;
  j["square_is_n_times_identity"] = true;
  j["trace"] = trace;
  write_output(g, j.dump(2) + "\n");
  return trace == 0.0 ? 0 : 1;
}

int cmd_huang_witness(const GlobalOptions& g, const std::string& fn) {
  bftk::TruthTable f = bftk::load_function_spec(fn);
  int deg = bftk::degree(f);
  if (deg == 0)
    throw std::invalid_argument("constant functions have no witness");
  bftk::TruthTable sub =
      deg == f.arity() ? f : bftk::restrict_to_full_degree_subcube(f);
  auto w = bftk::huang_witness(sub);
  double target = std::sqrt(double(sub.arity()));
  ordered_json j;
  j["f"] = fn;
  j["deg"] = deg;
  j["subcube_arity"] = sub.arity();
  j["v0_size"] = w.v0_size;
  j["v1_size"] = w.v1_size;
  j["vanishes_on_v1"] = w.vanishes_on_v1;
  j["exact_path"] = w.exact_path;
  j["ratio"] = w.ratio;
  j["sqrt_n"] = target;
  bool ok = w.ratio >= target - 1e-8;
  j["ok"] = ok;
  write_output(g, j.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_compose(const GlobalOptions& g, const std::string& f_spec,
                const std::string& g_spec) {
  bftk::TruthTable f = bftk::load_function_spec(f_spec);
  bftk::TruthTable gg = bftk::load_function_spec(g_spec);
  bftk::TruthTable h = bftk::compose(f, gg);
  ordered_json j;
  j["f"] = f_spec;
  j["g"] = g_spec;
  j["fog"] = h.to_spec();
  j["arity"] = h.arity();
  if (h.arity() <= 16) {
    double lf = bftk::spectral_sensitivity(f).lambda;
    double lg = bftk::spectral_sensitivity(gg).lambda;
    double lh = bftk::spectral_sensitivity(h).lambda;
    j["lambda_f"] = lf;
    j["lambda_g"] = lg;
    j["lambda_fog"] = lh;
    j["lambda_product_gap"] = std::fabs(lh - lf * lg);
  }
  write_output(g, j.dump(2) + "\n");
  return 0;
}

int cmd_parse(const GlobalOptions& g, const std::string& text) {
  auto ast = bftk::parse_formula(text);
  auto norm = bftk::normalize(ast);
  ordered_json j;
  j["formula"] = text;
  j["normalized"] = bftk::print_formula(norm);
  j["n"] = ast.leaf_count();
  if (ast.leaf_count() <= 16) j["table"] = bftk::formula_to_table(ast).to_spec();
  write_output(g, j.dump(2) + "\n");
  return 0;
}

int cmd_graphprop(const GlobalOptions& g, const std::string& property,
                  int vertices) {
  auto p = bftk::make_graph_property(property, vertices);
  auto rep = bftk::graph_property_report(p);
  if (g.format == "csv") {
    std::string out =
        "property,vertices,edge_vars,invariant,monotone,nontrivial,deg,deg2,"
        "lambda,s,bs,C,D,q_lower_proxy\n";
    out += p.name + "," + std::to_string(p.vertices) + "," +
           std::to_string(rep.edge_variables) + "," +
           std::to_string(rep.flags.invariant) + "," +
           std::to_string(rep.flags.monotone) + "," +
           std::to_string(rep.flags.nontrivial) + "," +
           std::to_string(rep.deg) + "," + std::to_string(rep.deg2) + "," +
           std::to_string(rep.lambda) + "," + std::to_string(rep.s) + "," +
           (rep.bs ? std::to_string(*rep.bs) : "") + "," +
           (rep.c ? std::to_string(*rep.c) : "") + "," +
           (rep.d ? std::to_string(*rep.d) : "") + "," +
           std::to_string(rep.q_lower_proxy) + "\n";
    write_output(g, out);
    return 0;
  }
  ordered_json j;
  j["property"] = p.name;
  j["vertices"] = p.vertices;
  j["edge_vars"] = rep.edge_variables;
  j["invariant"] = rep.flags.invariant;
  j["monotone"] = rep.flags.monotone;
  j["nontrivial"] = rep.flags.nontrivial;
  j["deg"] = rep.deg;
  j["deg2"] = rep.deg2;
  j["lambda"] = rep.lambda;
  j["s"] = rep.s;
  if (rep.bs) j["bs"] = *rep.bs;
  if (rep.c) j["C"] = *rep.c;
  if (rep.d) j["D"] = *rep.d;
  j["q_lower_proxy"] = rep.q_lower_proxy;
  write_output(g, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean function complexity toolkit"};
  app.require_subcommand(0, 1);

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "Write the report to a file");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 256));
  app.add_option("--tolerance", g.tolerance,
                 "Override the per-relation comparison tolerance");
  bool list_relations = false;
  app.add_flag("--list-relations", list_relations,
               "Print relation ids and citations");

  auto* measure = app.add_subcommand("measure", "Compute measures of one function");
  std::string fn, measures = "s,deg,deg2,lambda";
  std::string emit_graph, emit_witness, emit_r;
  measure->add_option("--fn", fn, "Function spec")->required();
  measure->add_option("--measures", measures, "Comma-separated measure ids");
  measure->add_option("--emit-graph", emit_graph,
                      "Write the sensitivity graph edge list");
  measure->add_option("--emit-witness", emit_witness,
                      "Write the adeg_{1/3} witness polynomial as JSON");
  measure->add_option("--emit-r", emit_r,
                      "Write R = H diag(1-2f) H as float CSV");

  auto* chain = app.add_subcommand("chain", "Certificate chain for one function");
  std::string ch_fn;
  double ch_eps = 1.0 / 3.0;
  chain->add_option("--fn", ch_fn, "Function spec")->required();
  chain->add_option("--epsilon", ch_eps, "Approximation parameter in [0, 1/2)");

  auto* verify = app.add_subcommand("verify", "Run a verification campaign");
  int v_n = 2;
  bool v_exhaustive = false;
  int64_t v_random = -1;
  uint64_t v_seed = 0;
  std::string v_relations = "all";
  verify->add_option("--n", v_n, "Arity")->required();
  verify->add_flag("--exhaustive", v_exhaustive, "All 2^(2^n) functions");
  verify->add_option("--random", v_random, "Number of random functions");
  verify->add_option("--seed", v_seed, "Campaign seed");
  verify->add_option("--relations", v_relations,
                     "Comma-separated relation ids or 'all'");

  auto* gamma2 = app.add_subcommand("gamma2", "Banded gamma_2 certificate");
  int g_n = 12, g_d = 3;
  std::string g_emit;
  gamma2->add_option("--n", g_n, "Band matrix size parameter")->required();
  gamma2->add_option("--d", g_d, "Band width")->required();
  gamma2->add_option("--emit-matrix", g_emit, "Write M = S^T T as integer CSV");

  auto* huang = app.add_subcommand("huang", "Signing matrix checks");
  int h_n = 4;
  std::string h_emit;
  huang->add_option("--n", h_n, "Arity")->required();
  huang->add_option("--emit-matrix", h_emit, "Write B_n as integer CSV");

  auto* hw = app.add_subcommand("huang-witness",
                                "Eigenvector witness for one function");
  std::string hw_fn;
  hw->add_option("--fn", hw_fn, "Function spec")->required();

  auto* comp = app.add_subcommand("compose", "Block composition of two functions");
  std::string c_f, c_g;
  comp->add_option("--f", c_f, "Outer function spec")->required();
  comp->add_option("--g", c_g, "Inner function spec")->required();

  auto* parse = app.add_subcommand("parse", "Parse a read-once formula");
  std::string p_formula, p_file;
  parse->add_option("--formula", p_formula, "Formula text");
  parse->add_option("--formula-file", p_file, "Read the formula from a file");

  auto* gp = app.add_subcommand("graphprop", "Graph property report");
  std::string gp_name;
  int gp_vertices = 4;
  gp->add_option("--property", gp_name, "Property name")->required();
  gp->add_option("--vertices", gp_vertices, "Vertex count")->required();

  // Global options may follow the subcommand on the command line.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_relations) {
      for (const auto& r : bftk::relation_registry())
        std::cout << r.id << ": " << r.citation << "\n";
      return 0;
    }
    if (measure->parsed())
      return cmd_measure(g, fn, measures, emit_graph, emit_witness, emit_r);
    if (chain->parsed()) return cmd_chain(g, ch_fn, ch_eps);
    if (verify->parsed()) {
      if (v_exhaustive == (v_random >= 0))
        throw std::invalid_argument(
            "choose exactly one of --exhaustive and --random COUNT");
      return cmd_verify(g, v_n, v_exhaustive, v_random, v_seed, v_relations);
    }
    if (gamma2->parsed()) return cmd_gamma2(g, g_n, g_d, g_emit);
    if (huang->parsed()) return cmd_huang(g, h_n, h_emit);
    if (hw->parsed()) return cmd_huang_witness(g, hw_fn);
    if (comp->parsed()) return cmd_compose(g, c_f, c_g);
    if (parse->parsed()) {
      if (p_formula.empty() == p_file.empty())
        throw std::invalid_argument(
            "provide exactly one of --formula and --formula-file");
      if (!p_file.empty()) {
        std::ifstream in(p_file);
        if (!in) throw std::runtime_error("cannot open " + p_file);
        std::stringstream ss;
        ss << in.rdbuf();
        p_formula = ss.str();
        while (!p_formula.empty() &&
               (p_formula.back() == '\n' || p_formula.back() == '\r'))
          p_formula.pop_back();
      }
      return cmd_parse(g, p_formula);
    }
    if (gp->parsed()) return cmd_graphprop(g, gp_name, gp_vertices);
    std::cerr << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
