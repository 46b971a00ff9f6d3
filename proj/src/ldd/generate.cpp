#include "ldd/generate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "ldd/rng.hpp"

namespace ldd {

namespace {

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

void check_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must be in (0, 1]");
}

// Bernoulli(p) over pair index 0..total-1 via geometric skips.
template <class Emit>
void sample_pairs(std::uint64_t total, double p, Rng& rng, Emit&& emit) {
  std::uint64_t i = 0;
  while (true) {
    const std::int64_t step = sample_geometric(p, rng);
    if (static_cast<std::uint64_t>(step) > total - i) return;
    i += static_cast<std::uint64_t>(step);
    emit(i - 1);
  }
}

// Unordered pair {u < v} at lexicographic index k for n nodes.
std::pair<NodeId, NodeId> unrank_pair(std::uint64_t k, std::uint32_t n) {
  // row u starts at u*n - u*(u+1)/2
  auto start = [n](std::uint64_t u) { return u * n - u * (u + 1) / 2; };
  std::uint64_t lo = 0, hi = n - 1;
  while (lo + 1 < hi) {
    const std::uint64_t mid = (lo + hi) / 2;
    if (start(mid) <= k) lo = mid;
    else hi = mid;
  }
  const std::uint64_t u = lo;
  return {static_cast<NodeId>(u), static_cast<NodeId>(u + 1 + (k - start(u)))};
}

DirectedGraph cycles(const CyclesSpec& s) {
  if (s.k < 1 || s.len < 2) throw InvalidArgument("cycles needs k >= 1 and len >= 2");
  const std::uint64_t n = std::uint64_t{s.k} * s.len;
  if (n >= kNoNode) throw InvalidArgument("cycles: too many nodes");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::uint32_t c = 0; c < s.k; ++c)
    for (std::uint32_t i = 0; i < s.len; ++i)
      edges.push_back({c * s.len + i, c * s.len + (i + 1) % s.len, 1});
  return DirectedGraph(static_cast<NodeId>(n), std::move(edges));
}

DirectedGraph bidirected_random(const BidirectedRandomSpec& s, Rng rng) {
  if (s.n < 1) throw InvalidArgument("bidirected_random needs n >= 1");
  check_p(s.p);
  std::vector<Edge> edges;
  const std::uint64_t pairs = std::uint64_t{s.n} * (s.n - 1) / 2;
  sample_pairs(pairs, s.p, rng, [&](std::uint64_t k) {
    const auto [u, v] = unrank_pair(k, s.n);
    edges.push_back({u, v, 1});
    edges.push_back({v, u, 1});
  });
  return DirectedGraph(s.n, std::move(edges));
}

DirectedGraph dag_random(const DagRandomSpec& s, Rng rng) {
  if (s.n < 1) throw InvalidArgument("dag_random needs n >= 1");
  check_p(s.p);
  std::vector<NodeId> label(s.n);
  std::iota(label.begin(), label.end(), 0);
  Rng shuffle = rng.split(1);
  std::shuffle(label.begin(), label.end(), shuffle);
  std::vector<Edge> edges;
  const std::uint64_t pairs = std::uint64_t{s.n} * (s.n - 1) / 2;
  Rng coins = rng.split(2);
  sample_pairs(pairs, s.p, coins, [&](std::uint64_t k) {
    const auto [u, v] = unrank_pair(k, s.n);
    edges.push_back({label[u], label[v], 1});
  });
  return DirectedGraph(s.n, std::move(edges));
}

DirectedGraph grid_torus(const GridTorusSpec& s) {
  if (s.w < 3 || s.h < 3) throw InvalidArgument("grid_torus needs w, h >= 3");
  const std::uint64_t n = std::uint64_t{s.w} * s.h;
  if (n >= kNoNode / 2) throw InvalidArgument("grid_torus: too many nodes");
  std::vector<Edge> edges;
  edges.reserve(2 * n);
  for (std::uint32_t y = 0; y < s.h; ++y)
    for (std::uint32_t x = 0; x < s.w; ++x) {
      const NodeId v = y * s.w + x;
      edges.push_back({v, y * s.w + (x + 1) % s.w, 1});
      edges.push_back({v, ((y + 1) % s.h) * s.w + x, 1});
    }
  return DirectedGraph(static_cast<NodeId>(n), std::move(edges));
}

DirectedGraph weighted_random(const WeightedRandomSpec& s, Rng rng) {
  if (s.n < 2 || s.max_len < 1) throw InvalidArgument("weighted_random needs n >= 2 and max_len >= 1");
  const std::uint64_t slots = std::uint64_t{s.n} * (s.n - 1);
  if (s.m > slots) throw InvalidArgument("weighted_random: m exceeds n(n-1)");
  // ordered pair index k -> (k / (n-1), skip-self)
  auto decode = [&](std::uint64_t k) {
    const NodeId u = static_cast<NodeId>(k / (s.n - 1));
    NodeId v = static_cast<NodeId>(k % (s.n - 1));
    if (v >= u) ++v;
    return std::pair{u, v};
  };
  std::vector<std::uint64_t> picked;
  picked.reserve(s.m);
  if (2 * std::uint64_t{s.m} <= slots) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(2 * s.m);
    while (picked.size() < s.m) {
      const std::uint64_t k = rng.below(slots);
      if (seen.insert(k).second) picked.push_back(k);
    }
  } else {
    std::vector<std::uint64_t> all(slots);
    std::iota(all.begin(), all.end(), 0);
    for (std::uint64_t i = 0; i < s.m; ++i) std::swap(all[i], all[i + rng.below(slots - i)]);
    picked.assign(all.begin(), all.begin() + s.m);
  }
  std::vector<Edge> edges;
  edges.reserve(s.m);
  for (std::uint64_t k : picked) {
    const auto [u, v] = decode(k);
    edges.push_back({u, v, 1 + static_cast<Length>(rng.below(static_cast<std::uint64_t>(s.max_len)))});
  }
  return DirectedGraph(s.n, std::move(edges));
}

template <class T>
T number(const std::string& tok, const std::string& text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw InvalidArgument("bad family parameter '" + tok + "' in '" + text + "'");
  return v;
}

std::string fmt_p(double p) {
  std::ostringstream ss;
  ss << p;
  return ss.str();
}

}  // namespace

DirectedGraph generate(const GenSpec& spec) {
  const Rng rng = Rng(spec.seed).split(0x67656e);
  return std::visit(Overload{
                        [&](const CyclesSpec& s) { return cycles(s); },
                        [&](const BidirectedRandomSpec& s) { return bidirected_random(s, rng); },
                        [&](const DagRandomSpec& s) { return dag_random(s, rng); },
                        [&](const GridTorusSpec& s) { return grid_torus(s); },
                        [&](const WeightedRandomSpec& s) { return weighted_random(s, rng); },
                    },
                    spec.family);
}

Family parse_family(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '\t') {
      cur += c;
    }
  }
  parts.push_back(cur);
  const std::string& name = parts[0];
  auto need = [&](std::size_t k) {
    if (parts.size() != k + 1)
      throw InvalidArgument("family '" + name + "' takes " + std::to_string(k) + " parameters: '" + text + "'");
  };
  if (name == "cycles") {
    need(2);
    return CyclesSpec{number<std::uint32_t>(parts[1], text), number<std::uint32_t>(parts[2], text)};
  }
  if (name == "bidirected_random") {
    need(2);
    return BidirectedRandomSpec{number<std::uint32_t>(parts[1], text), number<double>(parts[2], text)};
  }
  if (name == "dag_random") {
    need(2);
    return DagRandomSpec{number<std::uint32_t>(parts[1], text), number<double>(parts[2], text)};
  }
  if (name == "grid_torus") {
    need(2);
    return GridTorusSpec{number<std::uint32_t>(parts[1], text), number<std::uint32_t>(parts[2], text)};
  }
  if (name == "weighted_random") {
    need(3);
    return WeightedRandomSpec{number<std::uint32_t>(parts[1], text), number<std::uint32_t>(parts[2], text),
                              number<Length>(parts[3], text)};
  }
  throw InvalidArgument("unknown family '" + name + "'");
}

std::string family_name(const Family& f) {
  return std::visit(
      Overload{
          [](const CyclesSpec& s) { return "cycles:" + std::to_string(s.k) + ":" + std::to_string(s.len); },
          [](const BidirectedRandomSpec& s) { return "bidirected_random:" + std::to_string(s.n) + ":" + fmt_p(s.p); },
          [](const DagRandomSpec& s) { return "dag_random:" + std::to_string(s.n) + ":" + fmt_p(s.p); },
          [](const GridTorusSpec& s) { return "grid_torus:" + std::to_string(s.w) + ":" + std::to_string(s.h); },
          [](const WeightedRandomSpec& s) {
            return "weighted_random:" + std::to_string(s.n) + ":" + std::to_string(s.m) + ":" +
                   std::to_string(s.max_len);
          },
      },
      f);
}

}  // namespace ldd
