// ldd: command line front end over the C interface.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldd/ldd.h"

namespace {

struct Failure {
  int code;
};

void check(ldd_status s, const char* what) {
  if (s == LDD_OK) return;
  std::fprintf(stderr, "ldd: %s: %s (%s)\n", what, ldd_last_error(), ldd_status_string(s));
  throw Failure{2};
}

// Owning wrappers for the C handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};
using Graph = Handle<ldd_graph, ldd_graph_free>;
using Support = Handle<ldd_support, ldd_support_free>;
using Cut = Handle<ldd_cut, ldd_cut_free>;

struct Text {
  char* p = nullptr;
  ~Text() { ldd_free_string(p); }
};

void emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "ldd: cannot write %s\n", path.c_str());
    throw Failure{2};
  }
  out << text;
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "ldd: cannot open %s\n", path.c_str());
    throw Failure{2};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void load(Graph& g, const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    check(ldd_graph_parse(ss.str().c_str(), &g.p), "reading graph");
  } else {
    check(ldd_graph_read(path.c_str(), &g.p), "reading graph");
  }
}

void print_validity(const ldd_validity& v) {
  if (v.valid) {
    std::printf("valid components=%u\n", v.components);
  } else if (v.distance == INT64_MAX) {
    std::printf("invalid u=%u v=%u distance=unreachable\n", v.u, v.v);
  } else {
    std::printf("invalid u=%u v=%u distance=%lld\n", v.u, v.v, static_cast<long long>(v.distance));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed low-diameter decompositions"};
  app.require_subcommand(1);

  std::string family, in, out, cut_path, support_path, algo = "fast", config;
  std::uint64_t seed = 0, samples = 1000, budget = ldd_det_options_default().subdivision_budget;
  std::int64_t d = 0;
  unsigned threads = 0, runs = 5;
  double c_psi = ldd_det_options_default().c_psi, gamma = ldd_det_options_default().gamma;
  bool timing = false;

  auto* gen = app.add_subcommand("gen", "generate a graph");
  gen->add_option("--family", family, "cycles:k:len | bidirected_random:n:p | dag_random:n:p | "
                                      "grid_torus:w:h | weighted_random:n:m:max_len")
      ->required();
  gen->add_option("--seed", seed);
  gen->add_option("--out", out, "edge list path (default stdout)");

  auto* det = app.add_subcommand("det", "deterministic LDD support");
  det->add_option("--d", d)->required();
  det->add_option("--in", in)->required();
  det->add_option("--out", out, "support JSON path (default stdout)");
  det->add_option("--c-psi", c_psi);
  det->add_option("--gamma", gamma);
  det->add_option("--budget", budget, "max subdivided size n + sum len");

  auto* fast = app.add_subcommand("fast", "randomized LDD sample");
  fast->add_option("--d", d)->required();
  fast->add_option("--seed", seed);
  fast->add_option("--in", in)->required();
  fast->add_option("--out", out, "cut JSON path (default stdout)");
  fast->add_flag("--timing", timing, "record wall time in the cut JSON");

  auto* verify = app.add_subcommand("verify", "exact weak-diameter check");
  verify->add_option("--d", d)->required();
  verify->add_option("--in", in)->required();
  auto* cut_opt = verify->add_option("--cut", cut_path);
  auto* sup_opt = verify->add_option("--support", support_path);
  cut_opt->excludes(sup_opt);
  sup_opt->excludes(cut_opt);

  auto* loss = app.add_subcommand("loss", "Monte Carlo cut frequencies");
  loss->add_option("--algo", algo)->check(CLI::IsMember({"fast", "det"}));
  loss->add_option("--d", d)->required();
  loss->add_option("--samples", samples);
  loss->add_option("--seed", seed);
  loss->add_option("--in", in)->required();
  loss->add_option("--out", out, "CSV path (default stdout)");
  loss->add_option("--threads", threads);

  auto* bench = app.add_subcommand("bench", "median wall time of the randomized algorithm");
  bench->add_option("--d", d)->required();
  bench->add_option("--in", in)->required();
  bench->add_option("--seed", seed);
  bench->add_option("--runs", runs)->check(CLI::Range(1u, 1000u));

  auto* exp = app.add_subcommand("experiment", "run a sweep from a key=value config");
  exp->add_option("--config", config)->required();
  exp->add_option("--out", out, "CSV path (default stdout)");
  exp->add_option("--threads", threads);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      Graph g;
      check(ldd_graph_generate(family.c_str(), seed, &g.p), "generating");
      Text t;
      check(ldd_graph_to_string(g.p, &t.p), "writing graph");
      emit(out, t.p);
    } else if (det->parsed()) {
      Graph g;
      load(g, in);
      ldd_det_options opt = ldd_det_options_default();
      opt.c_psi = c_psi;
      opt.gamma = gamma;
      opt.subdivision_budget = budget;
      Support s;
      check(ldd_det_run(g.p, d, &opt, &s.p), "det");
      Text t;
      check(ldd_support_to_json(s.p, &t.p), "serializing");
      emit(out, t.p);
      if (!out.empty() && out != "-")
        std::printf("rounds=%zu force_cut=%zu psi_doublings=%llu\n", ldd_support_rounds(s.p),
                    ldd_support_force_cut_size(s.p), static_cast<unsigned long long>(ldd_support_psi_doublings(s.p)));
    } else if (fast->parsed()) {
      Graph g;
      load(g, in);
      Cut c;
      check(ldd_fast_run(g.p, d, seed, &c.p), "fast");
      Text t;
      check(ldd_cut_to_json(c.p, timing ? 1 : 0, &t.p), "serializing");
      emit(out, t.p);
      if (!out.empty() && out != "-") {
        std::printf("cut=%zu restarts=%llu depth=%u", ldd_cut_size(c.p),
                    static_cast<unsigned long long>(ldd_cut_restarts(c.p)), ldd_cut_max_depth(c.p));
        if (timing) std::printf(" wall_time_ms=%.3f", ldd_cut_wall_time_ms(c.p));
        std::printf("\n");
      }
    } else if (verify->parsed()) {
      if (cut_path.empty() && support_path.empty()) {
        std::fprintf(stderr, "ldd verify: one of --cut or --support is required\n");
        return 2;
      }
      Graph g;
      load(g, in);
      ldd_validity v;
      if (!cut_path.empty()) {
        Cut c;
        check(ldd_cut_read_json(cut_path.c_str(), &c.p), "reading cut");
        check(ldd_verify_cut(g.p, c.p, d, &v), "verify");
        print_validity(v);
      } else {
        Support s;
        check(ldd_support_read_json(support_path.c_str(), &s.p), "reading support");
        std::size_t bad = 0;
        check(ldd_verify_support(g.p, s.p, d, &v, &bad), "verify");
        if (!v.valid) std::printf("round=%zu ", bad);
        else std::printf("rounds=%zu ", ldd_support_rounds(s.p));
        print_validity(v);
      }
      return v.valid ? 0 : 1;
    } else if (loss->parsed()) {
      Graph g;
      load(g, in);
      Text t;
      ldd_loss_summary sum;
      check(ldd_loss(g.p, d, algo == "det" ? LDD_ALGO_DET : LDD_ALGO_FAST, samples, seed, threads, &t.p, &sum),
            "loss");
      emit(out, t.p);
      std::fprintf(stderr, "measured_loss=%.9g measured_loss_upper=%.9g invalid_samples=%llu\n", sum.measured_loss,
                   sum.measured_loss_upper, static_cast<unsigned long long>(sum.invalid_samples));
      return sum.valid ? 0 : 1;
    } else if (bench->parsed()) {
      Graph g;
      load(g, in);
      std::vector<double> ms;
      for (unsigned r = 0; r < runs; ++r) {
        Cut c;
        const auto t0 = std::chrono::steady_clock::now();
        check(ldd_fast_run(g.p, d, seed + r, &c.p), "fast");
        ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
      }
      std::sort(ms.begin(), ms.end());
      std::printf("n=%u m=%u d=%lld runs=%u median_ms=%.3f min_ms=%.3f max_ms=%.3f\n", ldd_graph_node_count(g.p),
                  ldd_graph_edge_count(g.p), static_cast<long long>(d), runs, ms[ms.size() / 2], ms.front(),
                  ms.back());
    } else if (exp->parsed()) {
      const std::string text = read_all(config);
      Text t;
      int bad = 0;
      check(ldd_experiment(text.c_str(), threads, &t.p, &bad), "experiment");
      emit(out, t.p);
      return bad ? 1 : 0;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
