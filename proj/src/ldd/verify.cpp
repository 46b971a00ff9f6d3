#include "ldd/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "ldd/ball.hpp"
#include "ldd/scc.hpp"

namespace ldd {

ValidityReport verify_weak_diameter(const DirectedGraph& g, const CutSet& s, Length d) {
  if (d < 0) throw InvalidArgument("D must be nonnegative");
  if (!s.empty() && s.ids().back() >= g.edge_count()) throw InvalidArgument("cut edge id out of range");
  ValidityReport rep;
  const GraphView full(g);
  const SccPartition scc = strongly_connected_components(remove(full, s));
  rep.components = scc.count;
  std::vector<NodeId> size(scc.count, 0);
  for (NodeId v = 0; v < g.node_count(); ++v) ++size[scc.component[v]];
  const auto groups = scc.groups();
  BallGrower grower(full);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const NodeId c = scc.component[u];
    if (size[c] < 2) continue;
    grower.grow(u, Direction::Out, d, std::nullopt, false);
    for (NodeId v : groups[c]) {
      if (grower.in_last_ball(v)) continue;
      rep.valid = false;
      rep.violation = Violation{u, v, distances(full, u, Direction::Out)[v]};
      return rep;
    }
  }
  return rep;
}

unsigned default_threads() {
  if (const char* env = std::getenv("LDD_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

void finalize_loss(const DirectedGraph& g, VerificationReport& rep) {
  rep.measured_loss = 0;
  rep.measured_loss_upper = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double scale = static_cast<double>(rep.d) / static_cast<double>(g.edge(e).len);
    rep.measured_loss = std::max(rep.measured_loss, rep.freq(e) * scale);
    rep.measured_loss_upper =
        std::max(rep.measured_loss_upper, wilson_interval(rep.counts[e], rep.samples).second * scale);
  }
}

// Runs body(i, counts) for i in [0, samples) on a worker pool; counts are
// per-worker and summed, so the result does not depend on scheduling.
template <class Body>
void parallel_samples(std::uint64_t samples, unsigned threads, EdgeId m, std::vector<std::uint64_t>& counts,
                      Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(samples, 1))));
  std::atomic<std::uint64_t> next{0};
  std::vector<std::vector<std::uint64_t>> local(threads, std::vector<std::uint64_t>(m, 0));
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&](unsigned t) {
    try {
      for (std::uint64_t i = next++; i < samples; i = next++) body(i, local[t]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      next = samples;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  for (const auto& l : local)
    for (EdgeId e = 0; e < m; ++e) counts[e] += l[e];
}

}  // namespace

VerificationReport estimate_cut_probabilities(const DirectedGraph& g, Length d, Algo algo,
                                              const MonteCarloConfig& config) {
  if (config.samples < 1) throw InvalidArgument("samples must be >= 1");
  VerificationReport rep;
  rep.samples = config.samples;
  rep.seed = config.seed;
  rep.d = d;
  rep.counts.assign(g.edge_count(), 0);
  const unsigned threads = config.threads ? config.threads : default_threads();
  const Rng master(config.seed);

  std::mutex mu;
  std::uint64_t first_bad = std::numeric_limits<std::uint64_t>::max();
  auto record = [&](std::uint64_t i, const ValidityReport& v) {
    if (v.valid) return;
    std::lock_guard<std::mutex> lock(mu);
    ++rep.invalid_samples;
    if (i < first_bad) {
      first_bad = i;
      rep.violation = v.violation;
    }
  };

  if (algo == Algo::Det) {
    const LddSupport support = mwu_ldd(g, d, config.det);
    const std::size_t r = support.rounds();
    std::vector<std::optional<ValidityReport>> checked(r);
    if (config.verify)
      for (std::size_t j = 0; j < r; ++j) checked[j] = verify_weak_diameter(g, support.cuts[j], d);
    parallel_samples(config.samples, threads, g.edge_count(), rep.counts, [&](std::uint64_t i, auto& counts) {
      Rng rng = master.split(i);
      const std::size_t j = rng.below(r);
      for (EdgeId e : support.cuts[j]) ++counts[e];
      if (checked[j]) record(i, *checked[j]);
    });
  } else {
    parallel_samples(config.samples, threads, g.edge_count(), rep.counts, [&](std::uint64_t i, auto& counts) {
      Rng rng = master.split(i);
      const FastResult res = ldd_fast(g, d, rng, config.fast);
      for (EdgeId e : res.cut) ++counts[e];
      if (config.verify) record(i, verify_weak_diameter(g, res.cut, d));
    });
  }
  rep.valid = rep.invalid_samples == 0;
  finalize_loss(g, rep);
  return rep;
}

VerificationReport summarize_samples(const DirectedGraph& g, Length d, const std::vector<CutSet>& cuts, bool verify) {
  VerificationReport rep;
  rep.samples = cuts.size();
  rep.d = d;
  rep.counts.assign(g.edge_count(), 0);
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    for (EdgeId e : cuts[i]) ++rep.counts[e];
    if (!verify) continue;
    const ValidityReport v = verify_weak_diameter(g, cuts[i], d);
    if (!v.valid) {
      if (!rep.violation) rep.violation = v.violation;
      ++rep.invalid_samples;
    }
  }
  rep.valid = rep.invalid_samples == 0;
  finalize_loss(g, rep);
  return rep;
}

std::vector<std::uint64_t> support_frequencies(const LddSupport& support, EdgeId edge_count) {
  std::vector<std::uint64_t> f(edge_count, 0);
  for (const CutSet& s : support.cuts)
    for (EdgeId e : s) ++f[e];
  return f;
}

std::string loss_csv(const DirectedGraph& g, const VerificationReport& report) {
  std::string out = "edge_id,freq,upper_ci,len,normalized_loss\n";
  char buf[160];
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const double f = report.freq(e);
    const double up = wilson_interval(report.counts[e], report.samples).second;
    const double norm = f * static_cast<double>(report.d) / static_cast<double>(g.edge(e).len);
    std::snprintf(buf, sizeof buf, "%u,%.9g,%.9g,%lld,%.9g\n", e, f, up, static_cast<long long>(g.edge(e).len), norm);
    out += buf;
  }
  return out;
}

DiameterProbe expander_diameter_probe(const DirectedGraph& g, const CapacityMap& cap, const Rational& psi_bound) {
  const GraphView view(g);
  if (!certify_lopsided_expander(view, cap, psi_bound).expander)
    throw InvalidArgument("expander_diameter_probe: graph is not a certified lopsided expander");
  DiameterProbe probe;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::vector<Length> dist = distances(view, u, Direction::Out);
    for (Length x : dist) probe.diameter = std::max(probe.diameter, x);
  }
  const double vol = static_cast<double>(to_long_double(cap.total()));
  const double lg = vol > 1 ? std::log2(vol) : 0.0;
  const double loglog = lg > 1 ? std::log2(lg) : 0.0;
  probe.bound_term = (psi_bound > 0 ? loglog / psi_bound.convert_to<double>() : 0.0) + lg;
  if (probe.diameter == 0) probe.ratio = 0;
  else probe.ratio = probe.bound_term > 0 ? static_cast<double>(probe.diameter) / probe.bound_term : INFINITY;
  return probe;
}

}  // namespace ldd
