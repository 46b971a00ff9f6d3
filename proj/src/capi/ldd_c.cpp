#include "ldd/ldd.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "ldd/experiment.hpp"
#include "ldd/io.hpp"

struct ldd_graph {
  ldd::DirectedGraph g;
};

struct ldd_support {
  ldd::SupportFile file;
  std::string json;
  std::uint64_t psi_doublings = 0;
};

struct ldd_cut {
  ldd::CutFile file;
};

namespace {

thread_local std::string g_last_error;

ldd_status fail(ldd_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class F>
ldd_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return LDD_OK;
  } catch (const ldd::InvalidArgument& e) {
    return fail(LDD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const ldd::ParseError& e) {
    return fail(LDD_ERR_PARSE, e.what());
  } catch (const ldd::IoError& e) {
    return fail(LDD_ERR_IO, e.what());
  } catch (const ldd::BudgetExceeded& e) {
    return fail(LDD_ERR_BUDGET, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LDD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LDD_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LDD_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ldd::InvalidArgument(what);
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void fill(ldd_validity* out, const ldd::ValidityReport& r) {
  *out = ldd_validity{r.valid ? 1 : 0, 0, 0, 0, r.components};
  if (r.violation) {
    out->u = r.violation->u;
    out->v = r.violation->v;
    out->distance = r.violation->distance;
  }
}

ldd::CutSet checked_cut(const std::vector<ldd::EdgeId>& ids, const ldd::DirectedGraph& g, ldd::EdgeId edge_count) {
  require(edge_count == g.edge_count(), "edge count of the cut does not match the graph");
  return ldd::CutSet(ids, g.edge_count());
}

}  // namespace

extern "C" {

const char* ldd_last_error(void) { return g_last_error.c_str(); }

const char* ldd_status_string(ldd_status s) {
  switch (s) {
    case LDD_OK: return "ok";
    case LDD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LDD_ERR_PARSE: return "parse error";
    case LDD_ERR_IO: return "i/o error";
    case LDD_ERR_BUDGET: return "budget exceeded";
    case LDD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ldd_version(void) { return "0.1.0"; }

void ldd_free_string(char* s) { std::free(s); }

// ---- graphs

ldd_status ldd_graph_create(uint32_t n, uint32_t m, const uint32_t* src, const uint32_t* dst, const int64_t* len,
                            ldd_graph** out) {
  return guarded([&] {
    require(out, "out is null");
    require(m == 0 || (src && dst && len), "edge arrays are null");
    std::vector<ldd::Edge> edges(m);
    for (uint32_t i = 0; i < m; ++i) edges[i] = {src[i], dst[i], len[i]};
    *out = new ldd_graph{ldd::DirectedGraph(n, std::move(edges))};
  });
}

ldd_status ldd_graph_read(const char* path, ldd_graph** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new ldd_graph{ldd::read_edge_list_file(path)};
  });
}

ldd_status ldd_graph_parse(const char* text, ldd_graph** out) {
  return guarded([&] {
    require(text && out, "null argument");
    std::istringstream in{std::string(text)};
    *out = new ldd_graph{ldd::read_edge_list(in)};
  });
}

ldd_status ldd_graph_write(const ldd_graph* g, const char* path) {
  return guarded([&] {
    require(g && path, "null argument");
    ldd::write_edge_list_file(path, g->g);
  });
}

ldd_status ldd_graph_to_string(const ldd_graph* g, char** out) {
  return guarded([&] {
    require(g && out, "null argument");
    *out = dup(ldd::edge_list_string(g->g));
  });
}

ldd_status ldd_graph_generate(const char* family, uint64_t seed, ldd_graph** out) {
  return guarded([&] {
    require(family && out, "null argument");
    *out = new ldd_graph{ldd::generate({ldd::parse_family(family), seed})};
  });
}

void ldd_graph_free(ldd_graph* g) { delete g; }

uint32_t ldd_graph_node_count(const ldd_graph* g) { return g ? g->g.node_count() : 0; }
uint32_t ldd_graph_edge_count(const ldd_graph* g) { return g ? g->g.edge_count() : 0; }

ldd_status ldd_graph_edge(const ldd_graph* g, uint32_t e, uint32_t* src, uint32_t* dst, int64_t* len) {
  return guarded([&] {
    require(g, "graph is null");
    require(e < g->g.edge_count(), "edge id out of range");
    const ldd::Edge& x = g->g.edge(e);
    if (src) *src = x.src;
    if (dst) *dst = x.dst;
    if (len) *len = x.len;
  });
}

// ---- det

ldd_det_options ldd_det_options_default(void) {
  const ldd::DetConfig c;
  return ldd_det_options{c.c_psi.convert_to<double>(), c.gamma, c.subdivision_budget};
}

ldd_status ldd_det_run(const ldd_graph* g, int64_t d, const ldd_det_options* opt, ldd_support** out) {
  return guarded([&] {
    require(g && out, "null argument");
    ldd::DetConfig cfg;
    if (opt) {
      require(opt->c_psi > 0 && opt->gamma > 0, "c_psi and gamma must be positive");
      cfg.c_psi = ldd::Rational(opt->c_psi);
      cfg.gamma = opt->gamma;
      cfg.subdivision_budget = opt->subdivision_budget;
    }
    const ldd::LddSupport s = ldd::mwu_ldd(g->g, d, cfg);
    auto* h = new ldd_support;
    h->json = ldd::support_json(s, d, g->g.edge_count());
    h->file = ldd::SupportFile{d, g->g.edge_count(), s.force_cut, s.cuts};
    h->psi_doublings = s.stats.psi_doublings;
    *out = h;
  });
}

ldd_status ldd_support_read_json(const char* path, ldd_support** out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto* h = new ldd_support;
    try {
      h->json = ldd::read_file(path);
      h->file = ldd::parse_support_json(h->json);
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

ldd_status ldd_support_write_json(const ldd_support* s, const char* path) {
  return guarded([&] {
    require(s && path, "null argument");
    ldd::write_file(path, s->json);
  });
}

ldd_status ldd_support_to_json(const ldd_support* s, char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = dup(s->json);
  });
}

void ldd_support_free(ldd_support* s) { delete s; }

int64_t ldd_support_d(const ldd_support* s) { return s ? s->file.d : 0; }
size_t ldd_support_rounds(const ldd_support* s) { return s ? s->file.cuts.size() : 0; }
size_t ldd_support_cut_size(const ldd_support* s, size_t round) {
  return s && round < s->file.cuts.size() ? s->file.cuts[round].size() : 0;
}
const uint32_t* ldd_support_cut_edges(const ldd_support* s, size_t round) {
  return s && round < s->file.cuts.size() ? s->file.cuts[round].ids().data() : nullptr;
}
size_t ldd_support_force_cut_size(const ldd_support* s) { return s ? s->file.force_cut.size() : 0; }
const uint32_t* ldd_support_force_cut(const ldd_support* s) { return s ? s->file.force_cut.data() : nullptr; }
uint64_t ldd_support_psi_doublings(const ldd_support* s) { return s ? s->psi_doublings : 0; }

// ---- fast

ldd_status ldd_fast_run(const ldd_graph* g, int64_t d, uint64_t seed, ldd_cut** out) {
  return guarded([&] {
    require(g && out, "null argument");
    const auto t0 = std::chrono::steady_clock::now();
    ldd::Rng rng(seed);
    const ldd::FastResult r = ldd::ldd_fast(g->g, d, rng);
    const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
    auto* h = new ldd_cut;
    h->file.d = d;
    h->file.seed = seed;
    h->file.edge_count = g->g.edge_count();
    h->file.edges.assign(r.cut.begin(), r.cut.end());
    h->file.restarts = r.restarts;
    h->file.max_depth = r.max_depth;
    h->file.wall_time_ms = dt.count();
    *out = h;
  });
}

ldd_status ldd_cut_read_json(const char* path, ldd_cut** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new ldd_cut{ldd::parse_cut_json(ldd::read_file(path))};
  });
}

ldd_status ldd_cut_to_json(const ldd_cut* c, int include_timing, char** out) {
  return guarded([&] {
    require(c && out, "null argument");
    ldd::CutFile f = c->file;
    if (!include_timing) f.wall_time_ms.reset();
    *out = dup(ldd::cut_json(f));
  });
}

ldd_status ldd_cut_write_json(const ldd_cut* c, const char* path, int include_timing) {
  return guarded([&] {
    require(c && path, "null argument");
    ldd::CutFile f = c->file;
    if (!include_timing) f.wall_time_ms.reset();
    ldd::write_file(path, ldd::cut_json(f));
  });
}

void ldd_cut_free(ldd_cut* c) { delete c; }

size_t ldd_cut_size(const ldd_cut* c) { return c ? c->file.edges.size() : 0; }
const uint32_t* ldd_cut_edges(const ldd_cut* c) { return c ? c->file.edges.data() : nullptr; }
uint64_t ldd_cut_restarts(const ldd_cut* c) { return c ? c->file.restarts : 0; }
uint32_t ldd_cut_max_depth(const ldd_cut* c) { return c ? c->file.max_depth : 0; }
double ldd_cut_wall_time_ms(const ldd_cut* c) { return c && c->file.wall_time_ms ? *c->file.wall_time_ms : 0.0; }

// ---- verify

ldd_status ldd_verify_cut(const ldd_graph* g, const ldd_cut* c, int64_t d, ldd_validity* out) {
  return guarded([&] {
    require(g && c && out, "null argument");
    fill(out, ldd::verify_weak_diameter(g->g, checked_cut(c->file.edges, g->g, c->file.edge_count), d));
  });
}

ldd_status ldd_verify_support(const ldd_graph* g, const ldd_support* s, int64_t d, ldd_validity* out,
                              size_t* failed_round) {
  return guarded([&] {
    require(g && s && out, "null argument");
    require(s->file.edge_count == g->g.edge_count(), "edge count of the support does not match the graph");
    ldd_validity first{1, 0, 0, 0, 0};
    bool seen = false;
    for (size_t j = 0; j < s->file.cuts.size(); ++j) {
      ldd_validity v;
      fill(&v, ldd::verify_weak_diameter(g->g, s->file.cuts[j], d));
      if (!seen) first.components = v.components;
      if (!v.valid) {
        first = v;
        if (failed_round) *failed_round = j;
        break;
      }
      seen = true;
    }
    *out = first;
  });
}

ldd_status ldd_loss(const ldd_graph* g, int64_t d, ldd_algo algo, uint64_t samples, uint64_t seed, unsigned threads,
                    char** csv, ldd_loss_summary* summary) {
  return guarded([&] {
    require(g, "graph is null");
    require(algo == LDD_ALGO_DET || algo == LDD_ALGO_FAST, "unknown algorithm");
    ldd::MonteCarloConfig mc;
    mc.samples = samples;
    mc.seed = seed;
    mc.threads = threads;
    const ldd::VerificationReport r =
        ldd::estimate_cut_probabilities(g->g, d, algo == LDD_ALGO_DET ? ldd::Algo::Det : ldd::Algo::Fast, mc);
    if (summary) *summary = ldd_loss_summary{r.valid ? 1 : 0, r.invalid_samples, r.measured_loss, r.measured_loss_upper};
    if (csv) *csv = dup(ldd::loss_csv(g->g, r));
  });
}

// ---- experiment

ldd_status ldd_experiment(const char* config_text, unsigned threads, char** csv, int* any_invalid) {
  return guarded([&] {
    require(config_text, "config is null");
    const ldd::ExperimentReport r = ldd::run_experiment(ldd::parse_experiment_config(config_text), threads);
    if (any_invalid) *any_invalid = r.any_invalid ? 1 : 0;
    if (csv) *csv = dup(r.csv());
  });
}

}  // extern "C"
