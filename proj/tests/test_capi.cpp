// Links only the shared library and its C header.
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "ldd/ldd.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  ldd_free_string(s);
  return out;
}

std::string run(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  for (std::size_t k; (k = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, k);
  CHECK(pclose(p) == 0);
  return out;
}

}  // namespace

TEST_CASE("graph handles") {
  const uint32_t src[] = {0, 1, 2};
  const uint32_t dst[] = {1, 2, 0};
  const int64_t len[] = {1, 2, 3};
  ldd_graph* g = nullptr;
  REQUIRE(ldd_graph_create(3, 3, src, dst, len, &g) == LDD_OK);
  CHECK(ldd_graph_node_count(g) == 3);
  CHECK(ldd_graph_edge_count(g) == 3);
  uint32_t s, d;
  int64_t l;
  CHECK(ldd_graph_edge(g, 2, &s, &d, &l) == LDD_OK);
  CHECK(s == 2);
  CHECK(d == 0);
  CHECK(l == 3);
  CHECK(ldd_graph_edge(g, 3, &s, &d, &l) == LDD_ERR_INVALID_ARGUMENT);
  char* text = nullptr;
  REQUIRE(ldd_graph_to_string(g, &text) == LDD_OK);
  CHECK(take(text) == "3 3\n0 1 1\n1 2 2\n2 0 3\n");
  ldd_graph_free(g);

  const int64_t zero[] = {0, 1, 1};
  CHECK(ldd_graph_create(3, 3, src, dst, zero, &g) == LDD_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(ldd_last_error()) > 0);
  CHECK(ldd_graph_parse("2 1\n0 1\n", &g) == LDD_ERR_PARSE);
  CHECK(ldd_graph_read("/nonexistent/graph.txt", &g) == LDD_ERR_IO);
  CHECK(ldd_graph_generate("nope:1", 0, &g) == LDD_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ldd_status_string(LDD_ERR_BUDGET)).size() > 0);
}

TEST_CASE("det and fast through the C interface") {
  ldd_graph* g = nullptr;
  REQUIRE(ldd_graph_generate("cycles:5:12", 0, &g) == LDD_OK);

  ldd_support* s = nullptr;
  REQUIRE(ldd_det_run(g, 10, nullptr, &s) == LDD_OK);
  CHECK(ldd_support_rounds(s) >= 1);
  CHECK(ldd_support_d(s) == 10);
  ldd_validity v{};
  size_t failed = 0;
  CHECK(ldd_verify_support(g, s, 10, &v, &failed) == LDD_OK);
  CHECK(v.valid == 1);
  char* a = nullptr;
  char* b = nullptr;
  ldd_support* s2 = nullptr;
  REQUIRE(ldd_det_run(g, 10, nullptr, &s2) == LDD_OK);
  REQUIRE(ldd_support_to_json(s, &a) == LDD_OK);
  REQUIRE(ldd_support_to_json(s2, &b) == LDD_OK);
  CHECK(take(a) == take(b));
  ldd_support_free(s);
  ldd_support_free(s2);

  ldd_det_options opt = ldd_det_options_default();
  opt.subdivision_budget = 3;
  CHECK(ldd_det_run(g, 10, &opt, &s) == LDD_ERR_BUDGET);

  ldd_cut* c = nullptr;
  REQUIRE(ldd_fast_run(g, 10, 42, &c) == LDD_OK);
  CHECK(ldd_cut_size(c) >= 5);
  CHECK(ldd_verify_cut(g, c, 10, &v) == LDD_OK);
  CHECK(v.valid == 1);
  ldd_cut* c2 = nullptr;
  REQUIRE(ldd_fast_run(g, 10, 42, &c2) == LDD_OK);
  REQUIRE(ldd_cut_to_json(c, 0, &a) == LDD_OK);
  REQUIRE(ldd_cut_to_json(c2, 0, &b) == LDD_OK);
  CHECK(take(a) == take(b));
  ldd_cut_free(c);
  ldd_cut_free(c2);

  char* csv = nullptr;
  ldd_loss_summary sum{};
  REQUIRE(ldd_loss(g, 10, LDD_ALGO_FAST, 100, 1, 2, &csv, &sum) == LDD_OK);
  CHECK(sum.valid == 1);
  CHECK(take(csv).rfind("edge_id,", 0) == 0);
  CHECK(ldd_fast_run(g, 0, 1, &c) == LDD_ERR_INVALID_ARGUMENT);
  ldd_graph_free(g);
}

TEST_CASE("command line output is reproducible") {
  const std::string cli = LDD_CLI_PATH;
  const std::string graph = "ldd_capi_test_graph.txt";
  run(cli + " gen --family weighted_random:60:200:5 --seed 7 --out " + graph);
  for (const std::string cmd : {cli + " det --d 16 --in " + graph,
                                cli + " fast --d 16 --seed 3 --in " + graph,
                                cli + " loss --algo fast --d 16 --samples 50 --seed 5 --in " + graph + " 2>/dev/null"}) {
    const std::string first = run(cmd);
    CHECK(!first.empty());
    CHECK(run(cmd) == first);
  }
  std::remove(graph.c_str());
}
