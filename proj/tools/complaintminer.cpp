// complaintminer: mine complaint topics out of star-rated review dumps.
//
// Subcommands: ingest (corpus stats), ngram (frequency ranking or
// competitor mentions), train (LDA topic report), sweep (topic-count
// selection by log-likelihood).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "complaintminer/corpus.hpp"
#include "complaintminer/lda.hpp"
#include "complaintminer/ngram.hpp"
#include "complaintminer/report.hpp"
#include "complaintminer/review.hpp"

namespace {

struct CorpusOptions {
  std::string input;
  std::string format = "csv";
  int min_stars = 1;
  int max_stars = 5;
  std::string stopword_file;
  int min_df = 2;
  int min_token_len = 3;
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& opt) {
  cmd->add_option("--input", opt.input, "review file")->required();
  cmd->add_option("--format", opt.format, "input format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--min-stars", opt.min_stars, "lowest rating kept");
  cmd->add_option("--max-stars", opt.max_stars, "highest rating kept");
  cmd->add_option("--stopwords", opt.stopword_file,
                  "stopword file (one word per line), replaces the bundled list");
  cmd->add_option("--min-df", opt.min_df,
                  "drop words with fewer corpus-wide occurrences (0 disables)");
  cmd->add_option("--min-token-len", opt.min_token_len, "shortest token kept");
}

struct BuiltCorpus {
  cmine::ReviewSet raw;
  cmine::ReviewSet filtered;
  cmine::Corpus corpus;
};

BuiltCorpus build_from_options(const CorpusOptions& opt) {
  if (opt.min_stars < 1 || opt.max_stars > 5 || opt.min_stars > opt.max_stars)
    throw std::invalid_argument("inverted rating bounds");
  if (!std::ifstream(opt.input))
    throw std::invalid_argument("cannot open " + opt.input);
  BuiltCorpus out;
  out.raw = cmine::load_reviews(opt.input, cmine::parse_input_format(opt.format),
                                &std::cerr);
  out.filtered = cmine::filter_by_rating(out.raw, opt.min_stars, opt.max_stars);
  cmine::TokenizerConfig tok;
  tok.min_token_len = opt.min_token_len;
  if (!opt.stopword_file.empty())
    tok.stopwords = cmine::load_stopwords(opt.stopword_file);
  cmine::PruneConfig prune;
  prune.min_df = opt.min_df;
  out.corpus = cmine::build_corpus(out.filtered, tok, prune);
  return out;
}

void log_corpus_options(const CorpusOptions& opt) {
  std::cerr << "config: input=" << opt.input << " format=" << opt.format
            << " stars=[" << opt.min_stars << "," << opt.max_stars << "]"
            << " min_df=" << opt.min_df
            << " min_token_len=" << opt.min_token_len << " stopwords="
            << (opt.stopword_file.empty() ? "<bundled>" : opt.stopword_file)
            << "\n";
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<int> parse_grid(const std::string& spec) {
  std::vector<int> grid;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    grid.push_back(std::stoi(item));
  }
  if (grid.empty()) throw std::invalid_argument("empty K grid");
  return grid;
}

std::set<std::string> parse_category_set(const std::string& spec) {
  std::set<std::string> cats;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) cats.insert(item);
  if (cats.empty()) throw std::invalid_argument("empty category set");
  return cats;
}

int cmd_ingest(const CorpusOptions& opt) {
  log_corpus_options(opt);
  BuiltCorpus built = build_from_options(opt);
  std::cout << "reviews_read\t" << built.raw.reviews.size() << "\n"
            << "reviews_kept\t" << built.filtered.reviews.size() << "\n"
            << "docs_kept\t" << built.corpus.docs.size() << "\n"
            << "docs_dropped\t" << built.corpus.dropped_ids.size() << "\n"
            << "vocab_size\t" << built.corpus.vocab_size() << "\n"
            << "token_count\t" << built.corpus.token_count() << "\n";
  if (!built.corpus.dropped_ids.empty()) {
    std::cerr << "dropped (empty after filtering):";
    for (const auto& id : built.corpus.dropped_ids) std::cerr << ' ' << id;
    std::cerr << "\n";
  }
  return 0;
}

int cmd_ngram(const CorpusOptions& opt, int n, int top,
              const std::string& competitors) {
  log_corpus_options(opt);
  std::cerr << "config: n=" << n << " top=" << top << "\n";
  BuiltCorpus built = build_from_options(opt);
  if (!competitors.empty()) {
    cmine::PhraseQuery query;
    if (competitors == "default") {
      query = cmine::default_competitors();
    } else {
      std::ifstream in(competitors);
      if (!in) throw std::invalid_argument("cannot open " + competitors);
      cmine::TokenizerConfig tok;
      tok.min_token_len = opt.min_token_len;
      tok.stopwords.clear();  // competitor names are never stopwords
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        query.phrases.emplace_back(line, cmine::tokenize(line, tok));
      }
    }
    auto freq = cmine::phrase_frequency(built.corpus, query);
    std::vector<std::pair<std::string, std::int64_t>> rows(freq.begin(),
                                                           freq.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    for (const auto& [name, count] : rows)
      std::cout << name << '\t' << count << '\n';
    return 0;
  }
  cmine::NGramTable table = cmine::extract_ngrams(built.corpus, n);
  auto ranked = cmine::top_ngrams(table, top);
  for (size_t i = 0; i < ranked.size(); ++i)
    std::cout << (i + 1) << '\t' << ranked[i].first << '\t' << ranked[i].second
              << '\n';
  return 0;
}

struct TrainOptions {
  int topics = 30;
  double alpha = 0.0;  // 0 = auto 50/K
  double beta = 0.01;
  int iters = 1000;
  int burn_in = 200;
  std::uint64_t seed = 42;
  int top_words = 10;
  std::string labels;
  std::string categories;
  std::string save_model;
  std::string ll_trace;
  std::string output;
  std::string output_format = "tsv";
};

int cmd_train(const CorpusOptions& copt, const TrainOptions& topt) {
  cmine::LdaConfig cfg;
  cfg.topics = topt.topics;
  cfg.alpha = topt.alpha > 0 ? topt.alpha : 50.0 / topt.topics;
  cfg.beta = topt.beta;
  cfg.iterations = topt.iters;
  cfg.burn_in = topt.burn_in;
  cfg.seed = topt.seed;
  cfg.validate();

  log_corpus_options(copt);
  std::cerr << "config: topics=" << cfg.topics << " alpha=" << cfg.alpha
            << " beta=" << cfg.beta << " iterations=" << cfg.iterations
            << " burn_in=" << cfg.burn_in << " seed=" << cfg.seed << "\n";

  BuiltCorpus built = build_from_options(copt);
  std::vector<cmine::TraceEntry> trace;
  cmine::TrainedModel model =
      cmine::train(built.corpus, cfg,
                   topt.ll_trace.empty() ? nullptr : &trace, &std::cerr);

  auto summaries = cmine::top_words(model, topt.top_words);
  std::set<std::string> category_set = cmine::default_categories();
  if (!topt.labels.empty()) {
    if (!topt.categories.empty()) {
      // Labels may reference a custom taxonomy; accept the queried codes too.
      for (const auto& c : parse_category_set(topt.categories))
        category_set.insert(c);
    }
    summaries = cmine::apply_labels(
        summaries, cmine::load_labels(topt.labels, category_set));
  }

  if (topt.output.empty()) {
    cmine::write_report(std::cout, summaries,
                        cmine::parse_report_format(topt.output_format));
  } else {
    cmine::export_report(summaries, topt.output,
                         cmine::parse_report_format(topt.output_format));
  }

  if (!topt.categories.empty()) {
    auto subset = parse_category_set(topt.categories);
    cmine::CategorySummary cs = cmine::category_summary(summaries, subset);
    for (const auto& [cat, count] : cs.counts) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", cs.fractions.at(cat));
      std::cout << "category\t" << cat << '\t' << count << '\t' << buf << '\n';
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", cs.subset_fraction);
    std::cout << "subset_fraction\t" << topt.categories << '\t'
              << cs.subset_count << '/' << cs.categorized_total << '\t' << buf
              << '\n';
  }

  if (!topt.save_model.empty()) {
    std::ofstream out(topt.save_model, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot open " + topt.save_model +
                               " for writing");
    cmine::write_model(out, model);
  }
  if (!topt.ll_trace.empty()) {
    std::ofstream out(topt.ll_trace, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot open " + topt.ll_trace +
                               " for writing");
    out << "sweep\tlog_likelihood\n";
    for (const auto& e : trace)
      out << e.sweep << '\t' << fmt17(e.log_likelihood) << '\n';
  }
  std::cerr << "final log-likelihood: " << fmt17(model.final_ll) << "\n";
  return 0;
}

int cmd_sweep(const CorpusOptions& copt, const std::string& grid_spec,
              const TrainOptions& topt, unsigned jobs) {
  std::vector<int> grid = parse_grid(grid_spec);
  cmine::LdaConfig tmpl;
  tmpl.topics = grid.front();
  tmpl.alpha = topt.alpha;  // <= 0 means auto 50/K per grid entry
  tmpl.beta = topt.beta;
  tmpl.iterations = topt.iters;
  tmpl.burn_in = topt.burn_in;
  tmpl.seed = topt.seed;

  log_corpus_options(copt);
  std::cerr << "config: k_grid=" << grid_spec << " alpha="
            << (topt.alpha > 0 ? std::to_string(topt.alpha) : "50/K")
            << " beta=" << tmpl.beta << " iterations=" << tmpl.iterations
            << " burn_in=" << tmpl.burn_in << " base_seed=" << tmpl.seed
            << " jobs=" << jobs << "\n";
  for (int k : grid)
    std::cerr << "derived seed: K=" << k << " seed="
              << cmine::derive_seed(tmpl.seed, k) << "\n";

  BuiltCorpus built = build_from_options(copt);
  cmine::SweepResult result =
      cmine::sweep_topics(built.corpus, grid, tmpl, jobs);
  for (const auto& e : result.entries)
    std::cout << e.topics << '\t' << fmt17(e.log_likelihood) << '\t' << e.seed
              << '\n';
  std::cout << "selected_K\t" << result.selected_topics << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complaint mining pipeline: reviews -> n-grams -> LDA topics"};
  app.require_subcommand(1);

  CorpusOptions copt;
  TrainOptions topt;
  int ngram_n = 2;
  int ngram_top = 20;
  std::string competitors;
  std::string grid_spec;
  unsigned jobs = 0;

  CLI::App* ingest = app.add_subcommand("ingest", "load reviews, print corpus stats");
  add_corpus_options(ingest, copt);

  CLI::App* ngram = app.add_subcommand("ngram", "rank n-grams or count competitor mentions");
  add_corpus_options(ngram, copt);
  ngram->add_option("--n", ngram_n, "n-gram size")->check(CLI::PositiveNumber);
  ngram->add_option("--top", ngram_top, "entries to print");
  ngram->add_option("--competitors", competitors,
                    "phrase file ('default' for the bundled insurer list); "
                    "prints mention counts instead of the ranking");

  auto add_train_options = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", topt.alpha, "doc-topic prior (default 50/K)");
    cmd->add_option("--beta", topt.beta, "topic-word prior");
    cmd->add_option("--iters", topt.iters, "Gibbs sweeps");
    cmd->add_option("--burn-in", topt.burn_in, "sweeps before readout");
    cmd->add_option("--seed", topt.seed, "RNG seed");
  };

  CLI::App* train = app.add_subcommand("train", "train an LDA model, emit a topic report");
  add_corpus_options(train, copt);
  train->add_option("--topics", topt.topics, "number of topics K");
  add_train_options(train);
  train->add_option("--top-words", topt.top_words, "words per topic in the report");
  train->add_option("--labels", topt.labels, "label TSV: topic_id<TAB>label<TAB>category");
  train->add_option("--categories", topt.categories,
                    "comma-separated category subset to roll up");
  train->add_option("--save-model", topt.save_model, "write phi/theta dump here");
  train->add_option("--ll-trace", topt.ll_trace, "write sweep/LL TSV here");
  train->add_option("--output", topt.output, "report file (default stdout)");
  train->add_option("--output-format", topt.output_format, "tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));

  CLI::App* sweep = app.add_subcommand("sweep", "train one chain per K, select by log-likelihood");
  add_corpus_options(sweep, copt);
  sweep->add_option("--k-grid", grid_spec, "comma-separated K values")->required();
  add_train_options(sweep);
  sweep->add_option("--jobs", jobs, "parallel chains (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(copt);
    if (ngram->parsed()) return cmd_ngram(copt, ngram_n, ngram_top, competitors);
    if (train->parsed()) return cmd_train(copt, topt);
    if (sweep->parsed()) return cmd_sweep(copt, grid_spec, topt, jobs);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
