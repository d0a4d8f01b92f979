// Command-line driver. Reports are JSON lines on stdout; graphs are graph6.
// Exit codes: 0 success, 1 usage or input error, 2 undecided or no
// embedding found, 3 data or verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "udg/catalog.hpp"
#include "udg/certify.hpp"
#include "udg/classify.hpp"
#include "udg/embed.hpp"
#include "udg/enumerate.hpp"
#include "udg/pipeline.hpp"
#include "udg/reasoner.hpp"
#include "udg/render.hpp"

using namespace udg;
using nlohmann::json;

namespace {

constexpr int kUndecided = 2;
constexpr int kDataFailure = 3;

struct Options {
  int threads = 1;
  int budget = 200;
  int precision_bits = kMaxPrecisionBits;
  std::uint64_t seed = 1;
  std::string data = default_data_dir().string();
};

void emit(const json& j) { std::cout << j.dump() << '\n'; }

std::vector<std::string> graphs_or_stdin(const std::vector<std::string>& args) {
  if (!args.empty()) return args;
  std::vector<std::string> out;
  for (std::string line; std::getline(std::cin, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

std::filesystem::path table_path(const Options& o, const std::string& which) {
  if (which == "table1" || which == "g27") return std::filesystem::path(o.data) / "g27.json";
  if (which == "table2" || which == "g118") return std::filesystem::path(o.data) / "g118.json";
  if (which == "h1") return std::filesystem::path(o.data) / "h1.json";
  if (which == "h2") return std::filesystem::path(o.data) / "h2.json";
  return which;
}

int run_verify(const Options& o, const std::string& which) {
  const CoordinateTable t = load_table(table_path(o, which));
  bool ok = true;
  if (which == "table1") {
    const Table1Report r = verify_table1(t);
    for (const auto& c : r.checks) {
      emit({{"edge", {t.points[c.edge.first].id, t.points[c.edge.second].id}},
            {"squared_length", c.squared_length.str()},
            {"exact_unit", c.ok()}});
    }
    ok = r.ok();
    emit({{"table", t.name}, {"vertices", r.vertices}, {"edges", r.checks.size()}, {"ok", ok}});
  } else {
    const EdgeCertificationReport r = certify_declared_edges(t, o.precision_bits);
    for (const auto& c : r.edges) emit(to_json(c));
    for (const auto& f : r.failures) emit({{"failure", f}});
    const BuildResult b = build_pointset(t, o.precision_bits);
    ok = r.ok();
    emit({{"table", t.name},
          {"points", b.points.size()},
          {"algebraic_points_refined", r.refined},
          {"declared_edges", t.edges.size()},
          {"unit_pairs", b.points.unit_pairs.size()},
          {"pairs_checked", b.pairs_checked},
          {"max_precision_bits", b.max_bits_used},
          {"worst_relative_residual", r.worst_relative_residual},
          {"ok", ok}});
  }
  return ok ? 0 : kDataFailure;
}

PointSet load_host(const Options& o, const std::string& which) {
  if (which == "core") return seed_core();
  return build_pointset(load_table(table_path(o, which)), o.precision_bits).points;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit-distance graph toolkit"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("UDG_THREADS")) o.threads = std::max(1, std::atoi(env));
  app.add_option("--threads", o.threads, "Worker threads (default: $UDG_THREADS or 1)");
  app.add_option("--budget", o.budget, "Numeric solver restarts");
  app.add_option("--precision-bits", o.precision_bits, "Top of the certification precision ladder");
  app.add_option("--seed", o.seed, "Numeric solver seed");
  app.add_option("--data", o.data, "Data directory");

  auto* enumerate = app.add_subcommand("enumerate", "List non-isomorphic graphs on n vertices");
  int n = 0;
  std::string filter = "all";
  enumerate->add_option("n", n)->required();
  enumerate->add_option("--filter", filter, "all | connected | biconnected");

  auto* catalog = app.add_subcommand("catalog", "Show the minimal forbidden graphs");
  catalog->require_subcommand(1);
  auto* catalog_list = catalog->add_subcommand("list", "All entries");
  auto* catalog_show = catalog->add_subcommand("show", "One entry");
  std::string entry_id;
  catalog_show->add_option("id", entry_id, "e.g. F(8,13,6)")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Decide whether graphs are unit-distance");
  std::vector<std::string> graphs;
  classify_cmd->add_option("graphs", graphs, "graph6 strings (default: stdin)");

  auto* prove = app.add_subcommand("prove", "Search for a forbiddenness proof");
  prove->add_option("graphs", graphs, "graph6 strings (default: stdin)");

  auto* embed = app.add_subcommand("embed", "Numeric unit-distance embedding");
  embed->add_option("graphs", graphs, "graph6 strings (default: stdin)");

  auto* witness = app.add_subcommand("witness", "Witness point sets");
  witness->require_subcommand(1);
  auto* extend = witness->add_subcommand("extend", "Grow a witness until it hosts a corpus");
  std::string base = "core", corpus_path;
  extend->add_option("--base", base, "core | g27 | g118 | h1 | h2 | table file");
  extend->add_option("--corpus", corpus_path, "graph6 file")->required();

  auto* verify = app.add_subcommand("verify", "Certify coordinate tables");
  std::string which;
  verify->add_option("table", which, "table1 | table2 | h1 | h2")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "h1", "h2"}));

  auto* render_cmd = app.add_subcommand("render", "Draw a point set or an embedded graph");
  std::string target, format = "svg";
  render_cmd->add_option("target", target, "g27 | g118 | h1 | h2 | graph6")->required();
  render_cmd->add_option("--format", format, "svg | tikz");

  auto* reproduce_cmd = app.add_subcommand("reproduce", "Re-derive the n = 8 and n = 9 counts");
  std::string stage = "all", out_dir;
  reproduce_cmd->add_option("stage", stage, "8 | 9 | all")->check(CLI::IsMember({"8", "9", "all"}));
  reproduce_cmd->add_option("--out", out_dir, "Directory for sorted graph6 artifacts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enumerate) {
      for (const auto& g : generate(n, parse_filter(filter), o.threads)) std::cout << to_graph6(g) << '\n';
      return 0;
    }
    if (*catalog) {
      const Catalog cat = load_catalog(o.data);
      if (*catalog_list) {
        for (const auto& e : cat.entries()) emit(to_json(e));
      } else {
        emit(to_json(cat.at(EntryId::parse(entry_id))));
      }
      return 0;
    }
    if (*classify_cmd) {
      ClassifyContext ctx = load_context(o.data, o.precision_bits);
      ctx.budget = o.budget;
      ctx.seed = o.seed;
      int code = 0;
      for (const auto& s : graphs_or_stdin(graphs)) {
        const ClassificationReport r = classify(s, ctx);
        json j = to_json(r);
        j["verified"] = verify_report(r, ctx);
        emit(j);
        if (r.verdict == Classification::undecided) code = kUndecided;
      }
      return code;
    }
    if (*prove) {
      const Catalog cat = load_catalog(o.data);
      int code = 0;
      for (const auto& s : graphs_or_stdin(graphs)) {
        const SmallGraph g = parse_graph6(s);
        if (auto t = prove_forbidden(g, &cat)) {
          emit({{"graph6", s}, {"proved", true}, {"proof", to_json(*t)}});
        } else {
          emit({{"graph6", s}, {"proved", false}});
          code = kUndecided;
        }
      }
      return code;
    }
    if (*embed) {
      int code = 0;
      for (const auto& s : graphs_or_stdin(graphs)) {
        const SmallGraph g = parse_graph6(s);
        const SolveReport r = solve_numeric_report(g, o.seed, o.budget);
        if (r.embedding) {
          json j = to_json(g, *r.embedding);
          j["attempts"] = r.attempts;
          emit(j);
        } else {
          emit({{"graph6", s}, {"embedding", nullptr}, {"attempts", r.attempts}, {"best_residual", r.best_residual}});
          code = kUndecided;
        }
      }
      return code;
    }
    if (*extend) {
      std::ifstream in(corpus_path);
      if (!in) throw std::runtime_error("cannot open " + corpus_path);
      std::vector<SmallGraph> corpus;
      for (std::string line; std::getline(in, line);)
        if (!line.empty()) corpus.push_back(parse_graph6(line));
      const PointSet start = load_host(o, base);
      const GrowthReport r = grow_witness(start, corpus);
      for (int i = start.size(); i < r.witness.size(); ++i) {
        emit({{"id", r.witness.ids[i]},
              {"point", {r.witness.coords[i].x, r.witness.coords[i].y}},
              {"provenance", r.witness.provenance[i]}});
      }
      for (const auto& g : r.uncovered) emit({{"uncovered", to_graph6(g)}});
      emit({{"base_points", start.size()},
            {"added_points", r.added_points},
            {"points", r.witness.size()},
            {"unit_pairs", r.witness.unit_pairs.size()},
            {"covered", r.covered},
            {"corpus", corpus.size()}});
      return r.uncovered.empty() ? 0 : kUndecided;
    }
    if (*verify) return run_verify(o, which);
    if (*render_cmd) {
      const RenderFormat fmt = parse_render_format(format);
      if (target == "g27" || target == "g118" || target == "h1" || target == "h2") {
        std::cout << render(drawing_of(load_host(o, target)), fmt);
        return 0;
      }
      ClassifyContext ctx = load_context(o.data, o.precision_bits);
      ctx.budget = o.budget;
      const ClassificationReport r = classify(target, ctx);
      if (r.verdict != Classification::unit_distance) {
        std::cerr << "render: " << target << " has no embedding (" << to_string(r.verdict) << ")\n";
        return kUndecided;
      }
      std::cout << render(drawing_of(r.graph, r.coords), fmt);
      return 0;
    }
    if (*reproduce_cmd) {
      const ClassifyContext ctx = load_context(o.data, o.precision_bits);
      const PipelineSummary s = reproduce(stage, ctx, {o.threads, out_dir});
      emit(to_json(s));
      return s.ok() ? 0 : kDataFailure;
    }
  } catch (const CatalogError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataFailure;
  } catch (const CertifyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
