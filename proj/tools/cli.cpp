#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nerd/nerd.hpp"

namespace nerd::cli {

namespace {

struct TrainOptions {
  std::string input;
  std::string out;
  int dim = 128;
  std::uint64_t walks_per_node = 800;
  std::uint64_t walks = 0;
  int pairs = 1;
  int negatives = 3;
  bool joint = false;
  double lr = 0.025;
  int threads = 1;
  std::uint64_t seed = 1;
  std::string preset;
  bool quiet = false;
};

struct SplitOptions {
  std::string input;
  std::string out;
  double test_frac = 0.3;
  double invert = 0.0;
  std::uint64_t seed = 1;
};

struct EvalLpOptions {
  std::string emb;
  std::string split;
  double invert = -1.0;
  std::uint64_t seed = 1;
};

struct EvalGrOptions {
  std::string emb;
  std::string input;
  std::vector<int> ks{1, 2, 5, 10, 100, 200};
  double sample_frac = 0.1;
  std::uint64_t seed = 1;
};

struct EvalNcOptions {
  std::string emb;
  std::string labels;
  int folds = 5;
  int concat_dim = 64;
  std::uint64_t seed = 1;
};

struct OracleOptions {
  std::string input;
  bool target = false;
  bool bipartite = false;
  int pairs = 1;
  double kappa = 1.0;
};

struct WalksOptions {
  std::string input;
  int pairs = 1;
  std::uint64_t count = 10;
  std::string kind = "mixed";
  std::uint64_t seed = 1;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::size_t dense_limit() {
  if (const char* env = std::getenv("NERD_DENSE_LIMIT")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw ConfigError("NERD_DENSE_LIMIT must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return oracle::default_dense_limit;
}

void run_train(const TrainOptions& o, const CLI::App& cmd, std::ostream& err) {
  TrainConfig cfg;
  if (o.preset == "lp") cfg = link_prediction_preset(cfg);
  if (o.preset == "gr-nc") cfg = reconstruction_preset(cfg);
  // Explicit flags override the preset.
  if (o.preset.empty() || cmd.count("--pairs")) cfg.pairs = o.pairs;
  if (o.preset.empty() || cmd.count("--negatives")) cfg.negatives = o.negatives;
  if (o.preset.empty() || cmd.count("--joint")) cfg.joint = o.joint;
  cfg.dim = o.dim;
  cfg.walks_per_node = o.walks_per_node;
  cfg.walks = o.walks;
  cfg.initial_lr = o.lr;
  cfg.threads = o.threads;
  cfg.seed = o.seed;
  cfg.report_progress = !o.quiet;

  const auto g = load_edge_list_file(o.input);
  if (!o.quiet)
    err << "train: N=" << g.node_count() << " M=" << g.edge_count() << " d=" << cfg.dim
        << " n=" << cfg.pairs << " kappa=" << cfg.negatives << " joint=" << cfg.joint
        << " walks=" << cfg.total_walks(g.node_count()) << '\n';
  const auto emb = train(g, cfg);
  save_embeddings(emb, g.ids(), o.out);
  std::ofstream ids(o.out + ".ids");
  if (!ids) throw IoError("cannot write '" + o.out + ".ids'");
  write_id_map(ids, g.ids());
}

void run_split(const SplitOptions& o, std::ostream& out) {
  const auto g = load_edge_list_file(o.input);
  const auto split = make_lp_split(g, o.test_frac, o.invert, o.seed);
  save_split(split, o.out);
  out << "train_edges\t" << split.train_graph.edge_count() << '\n'
      << "test_pos\t" << split.pos_edges.size() << '\n'
      << "test_neg\t" << split.neg_edges.size() << '\n'
      << "substitutions\t" << split.substitutions << '\n';
}

void run_eval_lp(const EvalLpOptions& o, std::ostream& out) {
  const auto loaded = load_embeddings(o.emb);
  const IdMap ids(loaded.labels);
  auto to_pairs = [&](const std::string& path) {
    std::vector<NodePair> pairs;
    for (const auto& [a, b] : read_pairs_file(path)) pairs.emplace_back(ids.at(a), ids.at(b));
    return pairs;
  };
  const auto pos = to_pairs(o.split + ".test.pos");
  std::vector<NodePair> neg;
  if (o.invert >= 0.0) {
    // Rebuild negatives against the full graph (train + held-out positives).
    std::vector<Edge> edges;
    {
      std::ifstream in(o.split + ".train");
      if (!in) throw IoError("cannot open '" + o.split + ".train'");
      const auto train_graph = load_edge_list(in);
      for (const auto& e : train_graph.edges())
        edges.push_back({ids.at(train_graph.ids().label(e.src)), ids.at(train_graph.ids().label(e.dst)), e.weight});
    }
    for (auto [u, v] : pos) edges.push_back({u, v, 1.0});
    const DirectedGraph full(ids.size(), edges, ids);
    Rng rng(o.seed);
    neg = make_negatives(full, pos, o.invert, rng).edges;
  } else {
    neg = to_pairs(o.split + ".test.neg");
  }
  out << "auc\t" << fmt(link_prediction_auc(embedding_scorer(loaded.embeddings), pos, neg)) << '\n';
}

void run_eval_gr(const EvalGrOptions& o, std::ostream& out) {
  const auto g = load_edge_list_file(o.input);
  const auto emb = align_embeddings(load_embeddings(o.emb), g.ids());
  ReconstructionConfig cfg;
  cfg.k_values = o.ks;
  cfg.sample_fraction = o.sample_frac;
  cfg.validate(g.node_count());
  const auto nodes = sample_test_nodes(g.node_count(), o.sample_frac, o.seed);
  const auto res = reconstruct(embedding_scorer(emb), g, nodes, cfg);
  for (std::size_t q = 0; q < res.k_values.size(); ++q)
    out << "precision@" << res.k_values[q] << '\t' << fmt(res.mean_score[q]) << '\n';
}

void run_eval_nc(const EvalNcOptions& o, std::ostream& out) {
  const auto loaded = load_embeddings(o.emb);
  const IdMap ids(loaded.labels);
  std::ifstream in(o.labels);
  if (!in) throw IoError("cannot open labels '" + o.labels + "'");
  const auto labels = load_labels(in, ids);
  const auto f1 = classify_cv(loaded.embeddings, labels, o.folds, o.concat_dim, o.seed);
  out << "micro_f1\t" << fmt(f1.micro) << '\n' << "macro_f1\t" << fmt(f1.macro) << '\n';
}

void run_oracle(const OracleOptions& o, std::ostream& out) {
  const auto g = load_edge_list_file(o.input);
  const auto limit = dense_limit();
  if (o.bipartite)
    oracle::write_tsv(out, oracle::bipartite_adjacency(g, limit));
  else if (o.target)
    oracle::write_tsv(out, oracle::factorization_target(g, o.pairs, o.kappa, limit));
  else
    oracle::write_tsv(out, oracle::pair_distribution(g, o.pairs, limit));
}

void run_walks(const WalksOptions& o, std::ostream& out) {
  const auto g = load_edge_list_file(o.input);
  const AlternatingWalker walker(g);
  Rng rng(o.seed);
  for (std::uint64_t i = 0; i < o.count; ++i) {
    WalkKind kind = WalkKind::source_walk;
    if (o.kind == "target") kind = WalkKind::target_walk;
    if (o.kind == "mixed") kind = uniform01(rng) > 0.5 ? WalkKind::source_walk : WalkKind::target_walk;
    write_walk(out, g.ids(), walker.sample(kind, o.pairs, rng));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Directed graph embeddings from alternating random walks"};
  app.name(args.empty() ? "nerd" : args[0]);
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  TrainOptions tr;
  auto* train_cmd = app.add_subcommand("train", "Learn source/target embeddings");
  train_cmd->add_option("--input", tr.input, "Edge list `src dst [weight]`")->required();
  train_cmd->add_option("--out", tr.out, "Output prefix for .src/.tgt/.ids")->required();
  train_cmd->add_option("--dim", tr.dim, "Embedding dimension per role");
  train_cmd->add_option("--walks-per-node", tr.walks_per_node, "Total walks = this * N");
  train_cmd->add_option("--walks", tr.walks, "Total walks; overrides --walks-per-node when > 0");
  train_cmd->add_option("--pairs,--n", tr.pairs, "Opposite-role context nodes per walk");
  train_cmd->add_option("--negatives,--kappa", tr.negatives, "Negative samples per positive");
  train_cmd->add_flag("--joint", tr.joint, "Also train same-role pairs");
  train_cmd->add_option("--lr", tr.lr, "Initial learning rate");
  train_cmd->add_option("--threads", tr.threads, "Worker threads (1 = deterministic)");
  train_cmd->add_option("--seed", tr.seed, "RNG seed");
  train_cmd->add_option("--preset", tr.preset, "lp: n=1 kappa=3; gr-nc: n=10 kappa=5 joint")
      ->check(CLI::IsMember({"lp", "gr-nc"}));
  train_cmd->add_flag("--quiet", tr.quiet, "No progress output");

  SplitOptions sp;
  auto* split_cmd = app.add_subcommand("split", "Build a directed link-prediction split");
  split_cmd->add_option("--input", sp.input, "Edge list")->required();
  split_cmd->add_option("--out", sp.out, "Prefix for .train/.test.pos/.test.neg")->required();
  split_cmd->add_option("--test-frac", sp.test_frac, "Fraction of edges held out");
  split_cmd->add_option("--invert", sp.invert, "Fraction of positives inverted into negatives")
      ->check(CLI::Range(0.0, 1.0));
  split_cmd->add_option("--seed", sp.seed, "RNG seed");

  EvalLpOptions lp;
  auto* lp_cmd = app.add_subcommand("eval-lp", "Link-prediction ROC-AUC");
  lp_cmd->add_option("--emb", lp.emb, "Embedding prefix")->required();
  lp_cmd->add_option("--split", lp.split, "Split prefix")->required();
  lp_cmd->add_option("--invert", lp.invert,
                     "Rebuild negatives with this inversion fraction (< 0 reads .test.neg)");
  lp_cmd->add_option("--seed", lp.seed, "RNG seed for rebuilt negatives");

  EvalGrOptions gr;
  auto* gr_cmd = app.add_subcommand("eval-gr", "Bidirectional graph reconstruction");
  gr_cmd->add_option("--emb", gr.emb, "Embedding prefix")->required();
  gr_cmd->add_option("--input", gr.input, "Edge list to reconstruct")->required();
  gr_cmd->add_option("--ks", gr.ks, "Values of k")->delimiter(',');
  gr_cmd->add_option("--sample-frac", gr.sample_frac, "Fraction of nodes in the test set");
  gr_cmd->add_option("--seed", gr.seed, "RNG seed for the test set");

  EvalNcOptions nc;
  auto* nc_cmd = app.add_subcommand("eval-nc", "Cross-validated node classification");
  nc_cmd->add_option("--emb", nc.emb, "Embedding prefix")->required();
  nc_cmd->add_option("--labels", nc.labels, "`node label` lines")->required();
  nc_cmd->add_option("--folds", nc.folds, "Cross-validation folds");
  nc_cmd->add_option("--concat-dim", nc.concat_dim, "Leading dimensions taken per role");
  nc_cmd->add_option("--seed", nc.seed, "RNG seed for fold assignment");

  OracleOptions orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "Dense analytic matrices as TSV");
  oracle_cmd->add_option("--input", orc.input, "Edge list")->required();
  auto* target_flag = oracle_cmd->add_flag("--target", orc.target, "Print the factorization target");
  auto* bip_flag = oracle_cmd->add_flag("--bipartite", orc.bipartite, "Print the bipartite adjacency");
  target_flag->excludes(bip_flag);
  oracle_cmd->add_option("--pairs,--n", orc.pairs, "Pairs per walk");
  oracle_cmd->add_option("--negatives,--kappa", orc.kappa, "Negative samples kappa");
  oracle_cmd->footer("Default output is the pair distribution. NERD_DENSE_LIMIT caps N (default 2000).");

  WalksOptions wk;
  auto* walks_cmd = app.add_subcommand("walks-dump", "Print sampled alternating walks");
  walks_cmd->add_option("--input", wk.input, "Edge list")->required();
  walks_cmd->add_option("--pairs,--n", wk.pairs, "Pairs per walk");
  walks_cmd->add_option("--count", wk.count, "Number of walks");
  walks_cmd->add_option("--kind", wk.kind, "source, target or mixed")
      ->check(CLI::IsMember({"source", "target", "mixed"}));
  walks_cmd->add_option("--seed", wk.seed, "RNG seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage_error;
  }

  try {
    if (*train_cmd) run_train(tr, *train_cmd, err);
    else if (*split_cmd) run_split(sp, out);
    else if (*lp_cmd) run_eval_lp(lp, out);
    else if (*gr_cmd) run_eval_gr(gr, out);
    else if (*nc_cmd) run_eval_nc(nc, out);
    else if (*oracle_cmd) run_oracle(orc, out);
    else if (*walks_cmd) run_walks(wk, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::io_error;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::format_error;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::format_error;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::size_error;
  } catch (const SplitError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::split_error;
  } catch (const DeadEndError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::dead_end_error;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::config_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode::internal_error;
  }
  return ExitCode::ok;
}

}  // namespace nerd::cli
