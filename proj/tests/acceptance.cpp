// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Usage: acceptance <path-to-bftk-cli>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "bftk/adversary.hpp"
#include "bftk/approx.hpp"
#include "bftk/campaign.hpp"
#include "bftk/formula.hpp"
#include "bftk/graph_property.hpp"
#include "bftk/measures.hpp"
#include "bftk/polynomial.hpp"
#include "bftk/relations.hpp"
#include "bftk/rng.hpp"
#include "bftk/spectral.hpp"
#include "bftk/truth_table.hpp"

using bftk::TruthTable;

namespace {

constexpr int kJobs = 8;
int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion,
         detail.c_str());
  fflush(stdout);
  if (!ok) ++g_failures;
}

// Splits [0, total) into kJobs chunks; work(i) must be pure per index.
template <class Work>
void parallel_for(uint64_t total, Work&& work) {
  std::vector<std::thread> workers;
  uint64_t chunk = (total + kJobs - 1) / kJobs;
  for (int j = 0; j < kJobs; ++j) {
    uint64_t begin = uint64_t(j) * chunk;
    uint64_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&work, begin, end]() {
      for (uint64_t i = begin; i < end; ++i) work(i);
    });
  }
  for (auto& t : workers) t.join();
}

TruthTable fam(const char* name, std::vector<int> params) {
  return bftk::from_family(name, params);
}

// 1. Exhaustive inequality sweep at n <= 4.
void criterion_1() {
  const std::vector<std::string> ids = {
      "huang",       "s-le-lambda2", "lambda-le-deg",
      "lambda-s-product", "avg-sensitivity",  "deg-s0s1",
      "midrijanis",  "bs-ge-s",      "deg2-le-deg"};
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  uint64_t functions = 0;
  for (int n = 1; n <= 4 && ok; ++n) {
    auto rep = bftk::verify_exhaustive(n, ids, kJobs);
    ok = rep.ok;
    functions += rep.functions;
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  std::ostringstream msg;
  msg << "exhaustive n<=4 inequality sweep over " << functions
      << " functions, 9 relations, " << secs << " s";
  report(1, ok && secs <= 300.0, msg.str());
}

// 2. lambda(OR_n) = sqrt(n), lambda(PARITY_n) = n for n in {2..10}.
void criterion_2() {
  double worst = 0;
  for (int n = 2; n <= 10; ++n) {
    double a = bftk::spectral_sensitivity(fam("or", {n})).lambda;
    double b = bftk::spectral_sensitivity(fam("parity", {n})).lambda;
    worst = std::max(worst, std::fabs(a - std::sqrt(double(n))));
    worst = std::max(worst, std::fabs(b - double(n)));
  }
  std::ostringstream msg;
  msg << "lambda(OR_n)=sqrt(n), lambda(PARITY_n)=n for n in 2..10, worst gap "
      << worst;
  report(2, worst < 1e-8, msg.str());
}

// 3. B_n^2 = n I exactly and trace 0 for n in {1..12}.
void criterion_3() {
  bool ok = true;
  for (int n = 1; n <= 12 && ok; ++n) {
    try {
      bftk::SigningMatrix b(n);  // validates the square identity exactly
      for (uint64_t x = 0; x < b.dim() && ok; ++x)
        ok = b.entry(uint32_t(x), uint32_t(x)) == 0;
    } catch (const std::exception&) {
      ok = false;
    }
  }
  // Direct dense integer check at small n as a second route.
  for (int n = 1; n <= 6 && ok; ++n) {
    bftk::SigningMatrix b(n);
    Eigen::MatrixXd dense = b.dense();
    ok = ((dense * dense) -
          double(n) * Eigen::MatrixXd::Identity(b.dim(), b.dim()))
             .cwiseAbs()
             .maxCoeff() == 0.0 &&
         dense.trace() == 0.0;
  }
  report(3, ok, "B_n^2 = n*I exactly and trace(B_n) = 0 for n in 1..12");
}

// 4. Eigenvector witness for every full-degree function.
void criterion_4() {
  std::atomic<bool> ok{true};
  std::atomic<uint64_t> tested{0};
  for (int n = 2; n <= 3; ++n) {
    uint64_t tables = uint64_t{1} << (uint64_t{1} << n);
    parallel_for(tables, [&](uint64_t bits) {
      TruthTable f = TruthTable::from_bits(n, bits);
      if (bftk::degree(f) != n) return;
      auto w = bftk::huang_witness(f);
      if (w.ratio < std::sqrt(double(n)) - 1e-8) ok = false;
      ++tested;
    });
  }
  // 100 seeded random full-degree functions at n = 4.
  uint64_t found = 0;
  bftk::SplitMix64 gen(404);
  while (found < 100 && ok) {
    TruthTable f = bftk::random_table(4, gen);
    if (bftk::degree(f) != 4) continue;
    ++found;
    auto w = bftk::huang_witness(f);
    if (w.ratio < 2.0 - 1e-8) ok = false;
  }
  std::ostringstream msg;
  msg << "witness ratio >= sqrt(n)-1e-8 on " << tested
      << " exhaustive full-degree functions (n=2,3) and 100 random at n=4";
  report(4, ok, msg.str());
}

// 5. Exact adjacency identity (n <= 4) and the conjugated eigenvalue (n <= 3).
void criterion_5() {
  std::atomic<bool> ok{true};
  for (int n = 1; n <= 4; ++n) {
    uint64_t tables = uint64_t{1} << (uint64_t{1} << n);
    parallel_for(tables, [&](uint64_t bits) {
      TruthTable f = TruthTable::from_bits(n, bits);
      for (uint64_t x = 0; x < f.size(); ++x) {
        int gx = f.value(x) ? -1 : 1;
        for (int i = 0; i < n; ++i) {
          uint64_t y = x ^ (uint64_t{1} << i);
          int gy = f.value(y) ? -1 : 1;
          int lhs = f.value(x) != f.value(y) ? 2 : 0;
          if (lhs != 1 - gx * gy) ok = false;
        }
      }
    });
  }
  std::atomic<double> worst{0.0};
  for (int n = 1; n <= 3; ++n) {
    uint64_t tables = uint64_t{1} << (uint64_t{1} << n);
    parallel_for(tables, [&](uint64_t bits) {
      TruthTable f = TruthTable::from_bits(n, bits);
      auto rep = bftk::hadamard_identities(f);
      if (!rep.ok) ok = false;
      double gap = rep.eig_gap;
      double seen = worst.load();
      while (gap > seen && !worst.compare_exchange_weak(seen, gap)) {
      }
    });
  }
  std::ostringstream msg;
  msg << "2A_f = A_H - diag(g) A_H diag(g) exact (n<=4); top-eig(RXR-X) = "
         "lambda within 1e-6 (n<=3), worst gap "
      << worst.load();
  report(5, ok, msg.str());
}

// 6. lambda <= 3 adeg_{1/3} and deg <= 9 adeg^2, minimality certified.
void criterion_6() {
  std::atomic<bool> ok{true};
  auto start = std::chrono::steady_clock::now();
  for (int n = 1; n <= 4; ++n) {
    uint64_t tables = uint64_t{1} << (uint64_t{1} << n);
    parallel_for(tables, [&](uint64_t bits) {
      if (!ok) return;
      TruthTable f = TruthTable::from_bits(n, bits);
      auto res = bftk::approx_degree(f, 1.0 / 3.0);
      double lambda = bftk::spectral_sensitivity_dense(f);
      int deg = bftk::degree(f);
      if (!res.minimality_certified) ok = false;
      if (lambda > 3.0 * res.degree + 1e-6) ok = false;
      if (deg > 9.0 * res.degree * res.degree) ok = false;
    });
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  std::ostringstream msg;
  msg << "lambda <= 3*adeg_{1/3} and deg <= 9*adeg^2 exhaustive n<=4 with "
         "Farkas-certified minimality, "
      << secs << " s";
  report(6, ok, msg.str());
}

// 7. The printed 13x13 band matrix, exact column norms, and the chain.
void criterion_7() {
  static const int expected[13][13] = {
      {0, -1, -2, -3, -2, -1, 0, 1, 2, 3, 2, 1, 0},
      {1, 0, -1, -2, -3, -2, -1, 0, 1, 2, 3, 2, 1},
      {2, 1, 0, -1, -2, -3, -2, -1, 0, 1, 2, 3, 2},
      {3, 2, 1, 0, -1, -2, -3, -2, -1, 0, 1, 2, 3},
      {2, 3, 2, 1, 0, -1, -2, -3, -2, -1, 0, 1, 2},
      {1, 2, 3, 2, 1, 0, -1, -2, -3, -2, -1, 0, 1},
      {0, 1, 2, 3, 2, 1, 0, -1, -2, -3, -2, -1, 0},
      {-1, 0, 1, 2, 3, 2, 1, 0, -1, -2, -3, -2, -1},
      {-2, -1, 0, 1, 2, 3, 2, 1, 0, -1, -2, -3, -2},
      {-3, -2, -1, 0, 1, 2, 3, 2, 1, 0, -1, -2, -3},
      {-2, -3, -2, -1, 0, 1, 2, 3, 2, 1, 0, -1, -2},
      {-1, -2, -3, -2, -1, 0, 1, 2, 3, 2, 1, 0, -1},
      {0, -1, -2, -3, -2, -1, 0, 1, 2, 3, 2, 1, 0}};
  bool ok = true;
  auto cert = bftk::build_gamma2_certificate(12, 3);
  Eigen::MatrixXi m = cert.product();
  for (int s = 0; s <= 12; ++s)
    for (int t = 0; t <= 12; ++t)
      if (m(s, t) != expected[s][t]) ok = false;
  // Exact column norms sqrt(3): every column carries exactly three +-1s.
  for (int col = 0; col <= 12; ++col) {
    int cs = 0, ct = 0;
    for (int j = 0; j < 6; ++j) {
      cs += cert.s(j, col) * cert.s(j, col);
      ct += cert.t(j, col) * cert.t(j, col);
    }
    if (cs != 3 || ct != 3) ok = false;
  }

  std::atomic<bool> chain_ok{true};
  for (double eps : {0.0, 1.0 / 3.0}) {
    for (int n = 1; n <= 4; ++n) {
      uint64_t tables = uint64_t{1} << (uint64_t{1} << n);
      parallel_for(tables, [&, eps](uint64_t bits) {
        if (!chain_ok) return;
        TruthTable f = TruthTable::from_bits(n, bits);
        try {
          if (!bftk::certificate_chain(f, eps).ok) chain_ok = false;
        } catch (const std::exception&) {
          chain_ok = false;
        }
      });
    }
  }
  report(7, ok && chain_ok,
         "gamma2 certificate (12,3) matches the band matrix entrywise, "
         "c(S)=c(T)=sqrt(3), chain holds exhaustively n<=4 at eps in {0,1/3}");
}

// 8. lambda composes multiplicatively.
void criterion_8() {
  std::atomic<bool> ok{true};
  parallel_for(256, [&](uint64_t pair) {
    TruthTable f = TruthTable::from_bits(2, pair / 16);
    TruthTable g = TruthTable::from_bits(2, pair % 16);
    if (f.is_constant() || g.is_constant()) return;
    double lfg = bftk::spectral_sensitivity(bftk::compose(f, g)).lambda;
    double prod = bftk::spectral_sensitivity(f).lambda *
                  bftk::spectral_sensitivity(g).lambda;
    if (std::fabs(lfg - prod) > 1e-6) ok = false;
  });
  std::atomic<uint64_t> sampled{0};
  parallel_for(200, [&](uint64_t i) {
    bftk::SplitMix64 gen = bftk::split_stream(808, i);
    int n = 2 + int(gen.below(2));
    int m = 2 + int(gen.below(2));
    TruthTable f = bftk::random_table(n, gen);
    TruthTable g = bftk::random_table(m, gen);
    if (f.is_constant() || g.is_constant()) return;
    ++sampled;
    double lfg = bftk::spectral_sensitivity(bftk::compose(f, g)).lambda;
    double prod = bftk::spectral_sensitivity(f).lambda *
                  bftk::spectral_sensitivity(g).lambda;
    if (std::fabs(lfg - prod) > 1e-6) ok = false;
  });
  std::ostringstream msg;
  msg << "lambda(f o g) = lambda(f) lambda(g): exhaustive non-constant pairs "
         "at n=m=2 plus "
      << sampled << " seeded pairs with n,m <= 3";
  report(8, ok, msg.str());
}

// 9. SWA_1 witness value and MM_1 weak duality.
void criterion_9() {
  std::atomic<bool> ok{true};
  for (int n = 1; n <= 3; ++n) {
    uint64_t tables = uint64_t{1} << (uint64_t{1} << n);
    parallel_for(tables, [&](uint64_t bits) {
      TruthTable f = TruthTable::from_bits(n, bits);
      if (f.is_constant()) return;
      auto res = bftk::swa1_witness(f);
      if (std::fabs(res.value - res.lambda) > 1e-6) ok = false;

      bftk::SplitMix64 gen = bftk::split_stream(909, bits * 7 + n);
      double lambda = res.lambda;
      for (int trial = 0; trial < 500; ++trial) {
        bftk::MinimaxWeightScheme w;
        w.n = f.arity();
        w.w.assign(f.size() * uint64_t(f.arity()), 0.0);
        for (uint64_t x = 0; x < f.size(); ++x) {
          bool fx = f.value(x);
          for (int i = 0; i < f.arity(); ++i) {
            uint64_t y = x ^ (uint64_t{1} << i);
            if (y < x || f.value(y) == fx) continue;
            double t = std::exp((double(gen.below(2001)) - 1000.0) / 700.0);
            double slack = 1.0 + double(gen.below(1000)) / 1000.0;
            w.at(x, i) = t * slack;
            w.at(y, i) = 1.0 / t;
          }
        }
        auto rep = bftk::mm1_verify(f, w);
        if (!rep.feasible || rep.objective < lambda - 1e-6) ok = false;
      }
    });
  }
  report(9, ok,
         "SWA_1 witness equals lambda (exhaustive n<=3) and 500 random "
         "feasible MM_1 schemes per function respect weak duality");
}

// 10. Read-once degree and graph-property checks.
void criterion_10() {
  std::atomic<bool> ok{true};
  parallel_for(200, [&](uint64_t i) {
    bftk::SplitMix64 gen = bftk::split_stream(1010, i);
    int n = 1 + int(gen.below(10));
    auto ast = bftk::random_readonce(n, gen.next());
    if (!bftk::readonce_degree_check(ast)) ok = false;
  });

  bftk::SplitMix64 gen(2020);
  for (const auto& name : bftk::graph_property_names()) {
    bool expect_monotone = name != "edge-parity";
    for (int vertices : {3, 4}) {
      auto p = bftk::make_graph_property(name, vertices);
      auto rep = bftk::graph_property_report(p);
      if (!rep.flags.invariant || !rep.flags.nontrivial) ok = false;
      if (rep.flags.monotone != expect_monotone) ok = false;
      if (expect_monotone) {
        if (rep.lambda * rep.lambda < double(rep.deg) - 1e-6) ok = false;
        if (rep.deg < rep.deg2) ok = false;
      }
      std::vector<int> perm(vertices);
      for (int k = 0; k < vertices; ++k) perm[k] = k;
      for (int trial = 0; trial < 50; ++trial) {
        for (int k = vertices - 1; k > 0; --k)
          std::swap(perm[k], perm[gen.below(uint64_t(k) + 1)]);
        for (uint64_t x = 0; x < p.table.size(); ++x) {
          uint32_t y = bftk::permute_edge_input(vertices, perm, uint32_t(x));
          if (p.table.value(x) != p.table.value(y)) ok = false;
        }
      }
    }
  }
  report(10, ok,
         "200 random read-once formulas have deg = n; built-in graph "
         "properties pass invariance, flags and the spectral chain");
}

// 11. Byte-identical reports from the CLI.
void criterion_11(const char* cli) {
  std::string out1 = "/tmp/bftk_report_1.json";
  std::string out2 = "/tmp/bftk_report_2.json";
  std::string base = std::string(cli) +
                     " verify --n 4 --exhaustive --relations all --jobs 8 "
                     "--seed 7 --out ";
  int rc1 = std::system((base + out1 + " 2>/dev/null").c_str());
  int rc2 = std::system((base + out2 + " 2>/dev/null").c_str());
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::string a = slurp(out1), b = slurp(out2);
  bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  std::ostringstream msg;
  msg << "two runs of `verify --n 4 --exhaustive --relations all --jobs 8 "
         "--seed 7` are byte-identical ("
      << a.size() << " bytes)";
  report(11, ok, msg.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    fprintf(stderr, "usage: acceptance <path-to-bftk-cli>\n");
    return 2;
  }
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11(argv[1]);
  if (g_failures) {
    printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  printf("all 11 acceptance criteria passed\n");
  return 0;
}
