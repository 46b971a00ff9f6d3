#include "ldd/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "ldd/rng.hpp"

namespace ldd {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
T number(const std::string& tok, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("config line " + std::to_string(line) + ": bad number '" + tok + "'");
  return v;
}

const char* algo_name(Algo a) { return a == Algo::Det ? "det" : "fast"; }

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line " + std::to_string(no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "seed") {
      cfg.seed = number<std::uint64_t>(value, no);
    } else if (key == "families") {
      for (const auto& f : split_list(value)) {
        try {
          cfg.families.push_back(parse_family(f));
        } catch (const InvalidArgument& e) {
          throw ParseError("config line " + std::to_string(no) + ": " + e.what());
        }
      }
    } else if (key == "d") {
      for (const auto& x : split_list(value)) {
        const Length d = number<Length>(x, no);
        if (d < 1) throw ParseError("config line " + std::to_string(no) + ": D must be >= 1");
        cfg.d.push_back(d);
      }
    } else if (key == "algos") {
      for (const auto& x : split_list(value)) {
        if (x == "det") cfg.algos.push_back(Algo::Det);
        else if (x == "fast") cfg.algos.push_back(Algo::Fast);
        else throw ParseError("config line " + std::to_string(no) + ": unknown algo '" + x + "'");
      }
    } else if (key == "samples") {
      cfg.samples = number<std::uint64_t>(value, no);
      if (cfg.samples < 1) throw ParseError("config line " + std::to_string(no) + ": samples must be >= 1");
    } else if (key == "subdivision_budget") {
      cfg.subdivision_budget = number<std::uint64_t>(value, no);
    } else if (key == "c_psi") {
      cfg.c_psi = number<double>(value, no);
    } else {
      throw ParseError("config line " + std::to_string(no) + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

double loss_normalizer(EdgeId m) {
  const double lg = std::log2(std::max<double>(m, 4));
  return lg * std::log2(lg);
}

ExperimentReport run_experiment(const ExperimentConfig& config, unsigned threads) {
  ExperimentReport rep;
  const Rng master(config.seed);
  std::vector<DirectedGraph> graphs;
  for (std::size_t i = 0; i < config.families.size(); ++i)
    graphs.push_back(generate({config.families[i], master.split(i).next()}));

  struct Cell {
    std::size_t family;
    Length d;
    Algo algo;
  };
  std::vector<Cell> cells;
  for (std::size_t f = 0; f < graphs.size(); ++f)
    for (Length d : config.d)
      for (Algo a : config.algos) cells.push_back({f, d, a});
  rep.rows.resize(cells.size());
  if (cells.empty()) return rep;

  auto run_cell = [&](std::size_t i) {
    const Cell& c = cells[i];
    const DirectedGraph& g = graphs[c.family];
    ExperimentRow& row = rep.rows[i];
    row.family = family_name(config.families[c.family]);
    row.n = g.node_count();
    row.m = g.edge_count();
    row.d = c.d;
    row.algo = c.algo;
    row.samples = config.samples;
    MonteCarloConfig mc;
    mc.samples = config.samples;
    mc.seed = master.split((std::uint64_t{1} << 32) | i).next();
    mc.threads = 1;
    mc.det.c_psi = config.c_psi;
    mc.det.subdivision_budget = config.subdivision_budget;
    try {
      const VerificationReport v = estimate_cut_probabilities(g, c.d, c.algo, mc);
      row.status = v.valid ? "ok" : "invalid";
      row.invalid_samples = v.invalid_samples;
      row.measured_loss = v.measured_loss;
      row.measured_loss_upper = v.measured_loss_upper;
      row.k_normalized = v.measured_loss_upper / loss_normalizer(g.edge_count());
    } catch (const BudgetExceeded&) {
      row.status = "skipped: budget";
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads ? threads : default_threads(), static_cast<unsigned>(cells.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      next = cells.size();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  for (const auto& r : rep.rows) rep.any_invalid |= r.status == "invalid";
  return rep;
}

std::string ExperimentReport::csv() const {
  std::string out =
      "family,n,m,d,algo,samples,status,invalid_samples,measured_loss,measured_loss_upper,k_normalized\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%u,%u,%lld,%s,%llu,%s,%llu,%.9g,%.9g,%.9g\n", r.family.c_str(), r.n, r.m,
                  static_cast<long long>(r.d), algo_name(r.algo), static_cast<unsigned long long>(r.samples),
                  r.status.c_str(), static_cast<unsigned long long>(r.invalid_samples), r.measured_loss,
                  r.measured_loss_upper, r.k_normalized);
    out += buf;
  }
  return out;
}

}  // namespace ldd
