#include "opmine/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "opmine/clean.hpp"
#include "opmine/compressor.hpp"
#include "opmine/dedup.hpp"
#include "opmine/errors.hpp"
#include "opmine/experiment.hpp"
#include "opmine/ingest.hpp"
#include "opmine/pattern_io.hpp"
#include "opmine/reducer.hpp"
#include "opmine/report.hpp"
#include "opmine/search.hpp"

namespace opmine::cli {

namespace fs = std::filesystem;

namespace {

struct Globals {
  int threads = 0;
  std::uint64_t seed = 0;
  bool strict = false;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

Corpus load(const std::string& manifest, const Globals& g, std::ostream& err) {
  Corpus corpus = load_corpus(manifest, g.strict);
  for (const auto& w : corpus.warnings) err << "warning: " << w << '\n';
  return corpus;
}

void add_manifest(CLI::App* cmd, std::string& manifest) {
  cmd->add_option("manifest,--manifest", manifest, "Corpus manifest (JSON lines)")->required();
}

void add_mining(CLI::App* cmd, MiningConfig& cfg, bool& all) {
  cmd->add_option("--tau", cfg.tau, "Minimum support as a fraction of the corpus, in (0, 1]")->capture_default_str();
  cmd->add_option("--min-nodes", cfg.min_nodes, "Smallest pattern size reported")->capture_default_str();
  cmd->add_flag("--closed", "Keep only closed patterns (default)");
  cmd->add_flag("--all", all, "Keep every frequent pattern, not only closed ones");
  cmd->add_option("--max-edges", cfg.max_pattern_edges, "Largest pattern size in edges");
}

std::string ratio_report(const ReductionStats& stats) {
  Table t{{"graph_id", "original_nodes", "reduced_nodes", "ratio"}, {}};
  for (const auto& r : stats.per_graph) {
    t.rows.push_back({r.graph_id, std::to_string(r.original_nodes), std::to_string(r.reduced_nodes), format_real(r.ratio)});
  }
  return t.to_text();
}

std::string summary_report(const ReductionStats& stats) {
  const auto& s = stats.summary;
  Table t{{"graphs", "min", "q1", "median", "q3", "max", "zero_ratio_graphs"},
          {{std::to_string(s.count), format_real(s.min), format_real(s.q1), format_real(s.median), format_real(s.q3),
            format_real(s.max), std::to_string(stats.zero_ratio_graphs.size())}}};
  return t.to_text();
}

std::vector<double> parse_taus(const std::string& text) {
  std::vector<double> taus;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      taus.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad tau value '" + item + "'");
    }
  }
  if (taus.empty()) throw ConfigError("no tau values given");
  return taus;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequent subgraph mining over corpora of computation graphs"};
  app.name("opmine");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads (default: all cores)");
  app.add_option("--seed", g.seed, "Seed for every randomized step")->capture_default_str();
  app.add_flag("--strict", g.strict, "Fail on unresolved references and unreadable graphs");

  std::string manifest, out_path, report_path, patterns_path;
  MiningConfig cfg;
  bool all = false;

  auto* ingest = app.add_subcommand("ingest", "Parse a manifest's graphs and write them in canonical form");
  add_manifest(ingest, manifest);
  ingest->add_option("--out", out_path, "Output directory")->required();
  ingest->add_option("--report", report_path, "Per-graph size report (default stdout)");

  std::string query;
  double threshold = 0.0;
  int top = 0;
  auto* search = app.add_subcommand("search", "Rank manifest entries against a task description");
  add_manifest(search, manifest);
  search->add_option("--query", query, "Free-text task description")->required();
  search->add_option("--threshold", threshold, "Report scores strictly above this value")->capture_default_str();
  search->add_option("--top", top, "Keep at most this many hits (0: all)");
  search->add_option("--out", out_path, "Write the matching entries as a manifest");

  auto* dedup = app.add_subcommand("dedup", "Drop structurally identical graphs");
  add_manifest(dedup, manifest);
  dedup->add_option("--out", out_path, "Output directory for the kept corpus")->required();
  dedup->add_option("--report", report_path, "Duplicate-cluster report (default stdout)");

  std::string rules_path;
  auto* clean = app.add_subcommand("clean", "Remove optimizer, saver, summary and initializer nodes");
  add_manifest(clean, manifest);
  clean->add_option("--out", out_path, "Output directory for the cleaned corpus")->required();
  clean->add_option("--rules", rules_path, "JSON file overriding default rule lists");
  clean->add_option("--report", report_path, "Per-graph size report (default stdout)");

  auto* mine_cmd = app.add_subcommand("mine", "Mine frequent connected subgraphs");
  add_manifest(mine_cmd, manifest);
  add_mining(mine_cmd, cfg, all);
  mine_cmd->add_option("--out", out_path, "Pattern file (.json for JSON, text otherwise; default stdout)");

  auto* reduce = app.add_subcommand("reduce", "Drop patterns that mostly occur inside bigger ones");
  add_manifest(reduce, manifest);
  reduce->add_option("--patterns", patterns_path, "Pattern file from mine")->required();
  reduce->add_option("--tau", cfg.tau, "Threshold for unique counts")->capture_default_str();
  reduce->add_option("--out", out_path, "Pattern file (default stdout)");

  auto* compress = app.add_subcommand("compress", "Replace pattern occurrences with supernodes");
  add_manifest(compress, manifest);
  compress->add_option("--patterns", patterns_path, "Pattern file")->required();
  compress->add_option("--out", out_path, "Output directory for compressed graphs");
  compress->add_option("--report", report_path, "Per-graph ratio report (default stdout)");
  std::string summary_path;
  compress->add_option("--summary", summary_path, "Distribution summary report");

  auto* stats = app.add_subcommand("stats", "Descriptive statistics");
  stats->require_subcommand(1);
  std::string measure = "nodes";
  auto* ccdf_cmd = stats->add_subcommand("ccdf", "CCDF of graph or pattern sizes");
  add_manifest(ccdf_cmd, manifest);
  ccdf_cmd->add_option("--of", measure, "nodes, edges or pattern-nodes")
      ->check(CLI::IsMember({"nodes", "edges", "pattern-nodes"}))
      ->capture_default_str();
  ccdf_cmd->add_option("--patterns", patterns_path, "Pattern file (for pattern-nodes)");
  ccdf_cmd->add_option("--report", report_path, "Output file (default stdout)");
  auto* occ_cmd = stats->add_subcommand("occurrences", "Occurrence counts per pattern");
  add_manifest(occ_cmd, manifest);
  occ_cmd->add_option("--patterns", patterns_path, "Pattern file")->required();
  occ_cmd->add_option("--report", report_path, "Output file (default stdout)");
  std::string taus_text = "0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0";
  auto* sweep_cmd = stats->add_subcommand("sweep", "Pattern counts across support thresholds");
  add_manifest(sweep_cmd, manifest);
  sweep_cmd->add_option("--taus", taus_text, "Comma-separated thresholds")->capture_default_str();
  sweep_cmd->add_option("--min-nodes", cfg.min_nodes, "Smallest pattern size counted")->capture_default_str();
  sweep_cmd->add_flag("--all", all, "Count every frequent pattern, not only closed ones");
  sweep_cmd->add_option("--max-edges", cfg.max_pattern_edges, "Largest pattern size in edges");
  sweep_cmd->add_option("--report", report_path, "Output file (default stdout)");

  SplitConfig split;
  std::optional<std::uint64_t> split_seed;
  auto* split_cmd = app.add_subcommand("split-eval", "Mine on training splits, measure compression on test splits");
  add_manifest(split_cmd, manifest);
  split_cmd->add_option("--repeats", split.repeats, "Number of random splits")->capture_default_str();
  split_cmd->add_option("--train-frac", split.train_fraction, "Fraction of graphs used for mining")
      ->capture_default_str();
  split_cmd->add_option("--seed", split_seed, "Split seed (default: the global --seed)");
  split_cmd->add_flag("--group-by-repo", split.group_by_repo, "Keep repositories on one side of each split");
  add_mining(split_cmd, cfg, all);
  split_cmd->add_option("--out", out_path, "Directory for per-repeat ratio files");
  split_cmd->add_option("--report", report_path, "Summary report (default stdout)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run 'opmine --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (g.threads < 0) throw ConfigError("--threads must be non-negative");
    if (g.threads > 0) omp_set_num_threads(g.threads);
    cfg.closed_only = !all;
    cfg.seed = g.seed;

    if (ingest->parsed()) {
      const Corpus corpus = load(manifest, g, err);
      write_corpus(corpus, out_path);
      Table t{{"graph_id", "nodes", "edges", "repo_id"}, {}};
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& gr = corpus.graphs()[i];
        t.rows.push_back({gr.graph_id(), std::to_string(gr.node_count()), std::to_string(gr.edge_count()),
                          corpus.entries()[i].repo_id});
      }
      emit(t.to_text(), report_path, out);
    } else if (search->parsed()) {
      const CorpusManifest m = read_manifest(manifest);
      auto hits = query_task(build_index(m), query, threshold);
      if (top > 0 && hits.size() > static_cast<std::size_t>(top)) hits.resize(static_cast<std::size_t>(top));
      Table t{{"graph_id", "score"}, {}};
      for (const auto& h : hits) t.rows.push_back({h.graph_id, format_real(h.score)});
      out << t.to_text();
      if (!out_path.empty()) {
        CorpusManifest subset;
        subset.base_dir = m.base_dir;
        for (const auto& h : hits) {
          subset.entries.push_back(*std::find_if(m.entries.begin(), m.entries.end(),
                                                 [&](const ManifestEntry& e) { return e.graph_id == h.graph_id; }));
        }
        write_manifest(subset, out_path);
      }
    } else if (dedup->parsed()) {
      const Corpus corpus = load(manifest, g, err);
      std::map<std::string, std::vector<std::string>> clusters;
      const Corpus kept = dedup_corpus(corpus, &clusters);
      write_corpus(kept, out_path);
      Table t{{"representative_id", "duplicates", "duplicate_ids"}, {}};
      for (const auto& [rep, dups] : clusters) {
        std::string ids;
        for (const auto& d : dups) ids += (ids.empty() ? "" : ",") + d;
        t.rows.push_back({rep, std::to_string(dups.size()), ids});
      }
      emit(t.to_text(), report_path, out);
      err << "kept " << kept.size() << " of " << corpus.size() << " graphs\n";
    } else if (clean->parsed()) {
      const CleaningRules rules = rules_path.empty() ? CleaningRules{} : load_cleaning_rules(rules_path);
      const Corpus corpus = load(manifest, g, err);
      auto cleaned = clean_graphs(corpus.graphs(), rules);
      Table t{{"graph_id", "nodes_before", "nodes_after", "edges_before", "edges_after"}, {}};
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& a = corpus.graphs()[i];
        const auto& b = cleaned[i];
        t.rows.push_back({a.graph_id(), std::to_string(a.node_count()), std::to_string(b.node_count()),
                          std::to_string(a.edge_count()), std::to_string(b.edge_count())});
      }
      write_corpus(corpus.with_graphs(std::move(cleaned)), out_path);
      emit(t.to_text(), report_path, out);
    } else if (mine_cmd->parsed()) {
      cfg.validate();
      const Corpus corpus = load(manifest, g, err);
      const auto patterns = mine(corpus.graphs(), cfg);
      if (out_path.empty()) {
        out << serialize_patterns_text(patterns);
      } else {
        write_patterns(out_path, patterns);
      }
      err << patterns.size() << " patterns at min support " << cfg.min_support(static_cast<int>(corpus.size()))
          << " of " << corpus.size() << " graphs\n";
    } else if (reduce->parsed()) {
      cfg.validate();
      const auto frequent = read_patterns(patterns_path);
      const Corpus corpus = load(manifest, g, err);
      const auto reduced = reduce_frequent_set(frequent, corpus.graphs(), cfg);
      if (out_path.empty()) {
        out << serialize_patterns_text(reduced);
      } else {
        write_patterns(out_path, reduced);
      }
      err << "kept " << reduced.size() << " of " << frequent.size() << " patterns\n";
    } else if (compress->parsed()) {
      const auto patterns = read_patterns(patterns_path);
      const Corpus corpus = load(manifest, g, err);
      std::vector<LabeledDigraph> compressed(corpus.size());
      std::vector<GraphReduction> rows(corpus.size());
      const long n = static_cast<long>(corpus.size());
#pragma omp parallel for schedule(dynamic, 1)
      for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        auto r = compress_graph(corpus.graphs()[k], patterns);
        rows[k] = {corpus.graphs()[k].graph_id(), r.original_nodes, r.reduced_nodes, r.reduction_ratio};
        compressed[k] = std::move(r.compressed);
      }
      ReductionStats st;
      std::vector<double> ratios;
      for (const auto& r : rows) {
        ratios.push_back(r.ratio);
        if (r.ratio == 0.0) st.zero_ratio_graphs.push_back(r.graph_id);
      }
      st.summary = summarize(ratios);
      st.per_graph = std::move(rows);
      if (!out_path.empty()) write_corpus(corpus.with_graphs(std::move(compressed)), out_path);
      emit(ratio_report(st), report_path, out);
      if (!summary_path.empty()) write_text_file(summary_path, summary_report(st));
      err << "median reduction " << format_real(st.summary.median) << " over " << st.summary.count << " graphs\n";
    } else if (ccdf_cmd->parsed()) {
      std::vector<long long> values;
      if (measure == "pattern-nodes") {
        if (patterns_path.empty()) throw ConfigError("--of pattern-nodes needs --patterns");
        for (const auto& p : read_patterns(patterns_path)) values.push_back(p.node_count);
      } else {
        const Corpus corpus = load(manifest, g, err);
        for (const auto& gr : corpus.graphs()) values.push_back(measure == "nodes" ? gr.node_count() : gr.edge_count());
      }
      Table t{{measure, "ccdf"}, {}};
      for (const auto& p : ccdf(values)) t.rows.push_back({std::to_string(p.x), format_real(p.fraction)});
      emit(t.to_text(), report_path, out);
    } else if (occ_cmd->parsed()) {
      const auto patterns = read_patterns(patterns_path);
      const Corpus corpus = load(manifest, g, err);
      Table t{{"pattern", "nodes", "support", "total_occurrences", "graphs_containing", "median_per_graph", "code"}, {}};
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        const auto s = occurrence_stats(patterns[i], corpus.graphs());
        t.rows.push_back({std::to_string(i), std::to_string(patterns[i].node_count), std::to_string(patterns[i].support),
                          std::to_string(s.total), std::to_string(s.graphs_containing), format_real(s.median),
                          patterns[i].code.to_string()});
      }
      emit(t.to_text(), report_path, out);
    } else if (sweep_cmd->parsed()) {
      const auto taus = parse_taus(taus_text);
      for (double tau : taus) {
        MiningConfig c = cfg;
        c.tau = tau;
        c.validate();
      }
      const Corpus corpus = load(manifest, g, err);
      Table t{{"tau", "min_support", "frequent", "reduced"}, {}};
      for (const auto& r : support_sweep(corpus.graphs(), taus, cfg)) {
        t.rows.push_back({format_real(r.tau), std::to_string(r.min_support), std::to_string(r.frequent),
                          std::to_string(r.reduced)});
      }
      emit(t.to_text(), report_path, out);
    } else if (split_cmd->parsed()) {
      cfg.validate();
      split.seed = split_seed.value_or(g.seed);
      split.validate();
      const Corpus corpus = load(manifest, g, err);
      const auto reps = split_eval(corpus, cfg, split);
      Table t{{"repeat", "train_graphs", "test_graphs", "patterns", "train_median", "test_min", "test_q1",
               "test_median", "test_q3", "test_max", "test_zero_ratio_graphs"},
              {}};
      for (const auto& r : reps) {
        const auto& s = r.test.summary;
        t.rows.push_back({std::to_string(r.repeat), std::to_string(r.train_ids.size()), std::to_string(r.test_ids.size()),
                          std::to_string(r.patterns.size()), format_real(r.train.summary.median), format_real(s.min),
                          format_real(s.q1), format_real(s.median), format_real(s.q3), format_real(s.max),
                          std::to_string(r.test.zero_ratio_graphs.size())});
        if (!out_path.empty()) {
          const fs::path dir(out_path);
          write_text_file(dir / ("repeat_" + std::to_string(r.repeat) + "_test.tsv"), ratio_report(r.test));
          write_text_file(dir / ("repeat_" + std::to_string(r.repeat) + "_patterns.txt"),
                          serialize_patterns_text(r.patterns));
        }
      }
      emit(t.to_text(), report_path, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace opmine::cli
