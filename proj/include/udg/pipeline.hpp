#pragma once

// The n = 8 and n = 9 pipelines: enumerate biconnected graphs, drop those
// containing a smaller catalog entry, then embed the rest into the witness
// hosts. Every stage writes its graphs as canonical graph6, one per line,
// sorted.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "udg/canonical.hpp"
#include "udg/classify.hpp"
#include "udg/enumerate.hpp"

namespace udg {

struct StageCount {
  std::string name;
  std::size_t count = 0;
  std::size_t expected = 0;
  double seconds = 0;

  bool ok() const { return count == expected; }
};

struct PipelineSummary {
  std::vector<StageCount> stages;
  std::vector<std::string> problems;  // count mismatches and unexpected graphs

  bool ok() const { return problems.empty(); }
};

struct PipelineOptions {
  int threads = 1;
  std::filesystem::path out_dir;  // no artifacts when empty
};

/// keep[i] = pred(items[i]), computed on `threads` workers.
template <class T, class Pred>
std::vector<char> parallel_mask(const std::vector<T>& items, int threads, Pred pred) {
  std::vector<char> keep(items.size(), 0);
  threads = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < items.size(); i += threads) keep[i] = pred(items[i]) ? 1 : 0;
    });
  }
  for (auto& th : pool) th.join();
  return keep;
}

/// Canonical graph6 strings, sorted.
inline std::vector<std::string> canonical_sorted(const std::vector<SmallGraph>& gs, int threads = 1) {
  std::vector<std::string> out(gs.size());
  threads = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < gs.size(); i += threads) out[i] = canonical_form(gs[i]).bytes;
    });
  }
  for (auto& th : pool) th.join();
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline void write_artifact(const PipelineOptions& opt, const std::string& name, const std::vector<SmallGraph>& gs) {
  if (opt.out_dir.empty()) return;
  std::filesystem::create_directories(opt.out_dir);
  std::ofstream out(opt.out_dir / name);
  for (const auto& s : canonical_sorted(gs, opt.threads)) out << s << '\n';
}

template <class Pred>
std::vector<SmallGraph> select(const std::vector<SmallGraph>& gs, int threads, Pred pred) {
  const auto keep = parallel_mask(gs, threads, pred);
  std::vector<SmallGraph> out;
  for (std::size_t i = 0; i < gs.size(); ++i)
    if (keep[i]) out.push_back(gs[i]);
  return out;
}

class StageTimer {
 public:
  StageTimer() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline void record(PipelineSummary& sum, std::string name, std::size_t count, std::size_t expected, double secs) {
  StageCount s{std::move(name), count, expected, secs};
  if (!s.ok()) {
    sum.problems.push_back(s.name + ": got " + std::to_string(count) + ", expected " + std::to_string(expected));
  }
  sum.stages.push_back(std::move(s));
}

}  // namespace detail

inline void run_stage8(const ClassifyContext& ctx, const PipelineOptions& opt, PipelineSummary& sum) {
  detail::StageTimer timer;
  const auto all = generate(8, Filter::biconnected, opt.threads);
  detail::record(sum, "n8.biconnected", all.size(), 7123, timer.lap());
  detail::write_artifact(opt, "n8_biconnected.g6", all);

  const auto free = detail::select(all, opt.threads, [&](const SmallGraph& g) { return !find_forbidden(ctx.catalog, g, 8); });
  detail::record(sum, "n8.catalog_free", free.size(), 366, timer.lap());
  detail::write_artifact(opt, "n8_catalog_free.g6", free);

  const WideHost& g27 = ctx.host_graphs.at(0);
  const auto outside = detail::select(free, opt.threads, [&](const SmallGraph& g) { return !embed_into(g, g27); });
  detail::record(sum, "n8.embedded_in_g27", free.size() - outside.size(), 366, timer.lap());
  detail::write_artifact(opt, "n8_outside_g27.g6", outside);
  for (const auto& g : outside) sum.problems.push_back("n8: unexpected graph outside G27: " + to_graph6(g));
}

inline void run_stage9(const ClassifyContext& ctx, const PipelineOptions& opt, PipelineSummary& sum) {
  detail::StageTimer timer;
  const auto all = generate(9, Filter::biconnected, opt.threads);
  detail::record(sum, "n9.biconnected", all.size(), 194066, timer.lap());
  detail::write_artifact(opt, "n9_biconnected.g6", all);

  const auto free = detail::select(all, opt.threads, [&](const SmallGraph& g) { return !find_forbidden(ctx.catalog, g, 9); });
  detail::record(sum, "n9.catalog_free", free.size(), 2984, timer.lap());
  detail::write_artifact(opt, "n9_catalog_free.g6", free);

  const WideHost& g27 = ctx.host_graphs.at(0);
  const auto out27 = detail::select(free, opt.threads, [&](const SmallGraph& g) { return !embed_into(g, g27); });
  detail::record(sum, "n9.outside_g27", out27.size(), 275, timer.lap());
  detail::write_artifact(opt, "n9_outside_g27.g6", out27);

  const WideHost& g118 = ctx.host_graphs.at(1);
  const auto out118 = detail::select(out27, opt.threads, [&](const SmallGraph& g) { return !embed_into(g, g118); });
  detail::record(sum, "n9.outside_g118", out118.size(), 2, timer.lap());
  detail::write_artifact(opt, "n9_outside_g118.g6", out118);

  // The survivors must be exactly the two graphs with their own tables.
  std::vector<std::string> expected;
  for (std::size_t k = 2; k < ctx.hosts.size(); ++k) {
    const auto& h = ctx.hosts[k];
    expected.push_back(canonical_form(SmallGraph::from_edges(h.size(), h.unit_pairs)).bytes);
  }
  std::sort(expected.begin(), expected.end());
  const auto got = canonical_sorted(out118);
  for (const auto& s : got)
    if (!std::binary_search(expected.begin(), expected.end(), s))
      sum.problems.push_back("n9: unexpected graph outside G118: " + s);
  for (const auto& s : expected)
    if (!std::binary_search(got.begin(), got.end(), s))
      sum.problems.push_back("n9: expected graph missing outside G118: " + s);
}

/// stage is "8", "9" or "all".
inline PipelineSummary reproduce(const std::string& stage, const ClassifyContext& ctx, const PipelineOptions& opt) {
  if (stage != "8" && stage != "9" && stage != "all") throw std::invalid_argument("unknown stage '" + stage + "'");
  PipelineSummary sum;
  if (stage != "9") run_stage8(ctx, opt, sum);
  if (stage != "8") run_stage9(ctx, opt, sum);
  if (!opt.out_dir.empty()) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& s : sum.stages) counts[s.name] = s.count;
    std::ofstream(opt.out_dir / "counts.json") << counts.dump(1) << '\n';
  }
  return sum;
}

inline nlohmann::json to_json(const PipelineSummary& s) {
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& st : s.stages)
    stages.push_back({{"stage", st.name}, {"count", st.count}, {"expected", st.expected}, {"seconds", st.seconds}});
  return {{"stages", stages}, {"ok", s.ok()}, {"problems", s.problems}};
}

}  // namespace udg
