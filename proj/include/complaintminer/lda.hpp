#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "complaintminer/corpus.hpp"

namespace cmine {

struct LdaConfig {
  int topics = 30;       // K
  double alpha = 0.0;    // symmetric document-topic prior
  double beta = 0.01;    // symmetric topic-word prior
  int iterations = 1000; // Gibbs sweeps
  int burn_in = 200;     // sweeps before any statistic is read
  std::uint64_t seed = 42;

  // Standard defaults: alpha = 50/K, beta = 0.01.
  static LdaConfig defaults(int k) {
    LdaConfig cfg;
    cfg.topics = k;
    cfg.alpha = 50.0 / k;
    return cfg;
  }

  void validate() const {
    if (topics < 1) throw std::invalid_argument("topics must be >= 1");
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be > 0");
    if (!(beta > 0)) throw std::invalid_argument("beta must be > 0");
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (burn_in < 0 || burn_in >= iterations)
      throw std::invalid_argument("burn_in must be in [0, iterations)");
  }
};

/// Collapsed Gibbs chain state: per-token topic assignments plus the three
/// count tables they imply. doc_topic is D*K row-major, topic_word is V*K
/// with topics contiguous per word (the sweep's hot axis).
struct LdaState {
  int num_topics = 0;
  int vocab = 0;
  std::vector<std::vector<int>> assignments;  // z[d][i] in 0..K-1
  std::vector<int> doc_topic;                 // [d*K + k]
  std::vector<int> topic_word;                // [w*K + k]
  std::vector<std::int64_t> topic_total;      // [k]
  std::vector<int> doc_len;                   // [d]
  std::mt19937_64 rng;

  int dt(int d, int k) const { return doc_topic[static_cast<size_t>(d) * num_topics + k]; }
  int tw(int w, int k) const { return topic_word[static_cast<size_t>(w) * num_topics + k]; }
};

struct TrainedModel {
  std::vector<std::vector<double>> phi;    // K rows, V columns, row-stochastic
  std::vector<std::vector<double>> theta;  // D rows, K columns, row-stochastic
  double final_ll = 0.0;
  LdaConfig config;
  std::vector<std::string> vocab;
};

struct TraceEntry {
  int sweep;
  double log_likelihood;
};

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw in [0,1); identical on every platform.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Assigns every token a uniformly random topic and builds the count tables.
inline LdaState init_state(const Corpus& corpus, const LdaConfig& cfg,
                           std::ostream* warn = nullptr) {
  cfg.validate();
  if (corpus.docs.empty()) throw std::invalid_argument("empty corpus");
  const int k_count = cfg.topics;
  if (warn && static_cast<std::int64_t>(k_count) > corpus.token_count())
    *warn << "warning: more topics (" << k_count << ") than tokens ("
          << corpus.token_count() << ")\n";

  LdaState state;
  state.num_topics = k_count;
  state.vocab = corpus.vocab_size();
  state.rng.seed(cfg.seed);
  const size_t d_count = corpus.docs.size();
  state.doc_topic.assign(d_count * k_count, 0);
  state.topic_word.assign(static_cast<size_t>(state.vocab) * k_count, 0);
  state.topic_total.assign(k_count, 0);
  state.doc_len.resize(d_count);
  state.assignments.resize(d_count);

  for (size_t d = 0; d < d_count; ++d) {
    const auto& doc = corpus.docs[d];
    state.doc_len[d] = static_cast<int>(doc.size());
    state.assignments[d].resize(doc.size());
    for (size_t i = 0; i < doc.size(); ++i) {
      const int k = static_cast<int>(state.rng() % k_count);
      state.assignments[d][i] = k;
      ++state.doc_topic[d * k_count + k];
      ++state.topic_word[static_cast<size_t>(doc[i]) * k_count + k];
      ++state.topic_total[k];
    }
  }
  return state;
}

/// Full conditional p(z_{d,i} = k | z_{-di}, w), the token at (d,i) excluded
/// from all counts: p(k) ∝ (n_dk + α)(n_kw + β)/(n_k + Vβ). Normalized.
inline std::vector<double> conditional(const Corpus& corpus,
                                       const LdaState& state,
                                       const LdaConfig& cfg, int d, int i) {
  const int k_count = state.num_topics;
  const int w = corpus.docs[d][i];
  const int current = state.assignments[d][i];
  const double v_beta = static_cast<double>(state.vocab) * cfg.beta;
  std::vector<double> p(k_count);
  double total = 0.0;
  for (int k = 0; k < k_count; ++k) {
    const int excl = (k == current) ? 1 : 0;
    p[k] = (state.dt(d, k) - excl + cfg.alpha) *
           (state.tw(w, k) - excl + cfg.beta) /
           (static_cast<double>(state.topic_total[k] - excl) + v_beta);
    total += p[k];
  }
  for (double& x : p) x /= total;
  return p;
}

/// One full resampling pass, document order then position order. Count
/// tables are updated incrementally; one uniform draw per token, inverse
/// CDF on the unnormalized weights.
inline void gibbs_sweep(const Corpus& corpus, LdaState& state,
                        const LdaConfig& cfg) {
  const int k_count = state.num_topics;
  const double alpha = cfg.alpha;
  const double beta = cfg.beta;
  const double v_beta = static_cast<double>(state.vocab) * beta;
  std::vector<double> cum(k_count);
  for (size_t d = 0; d < corpus.docs.size(); ++d) {
    const auto& doc = corpus.docs[d];
    int* dt_row = state.doc_topic.data() + d * k_count;
    for (size_t i = 0; i < doc.size(); ++i) {
      const int w = doc[i];
      const int old_k = state.assignments[d][i];
      int* tw_row = state.topic_word.data() + static_cast<size_t>(w) * k_count;
      --dt_row[old_k];
      --tw_row[old_k];
      --state.topic_total[old_k];

      double total = 0.0;
      for (int k = 0; k < k_count; ++k) {
        total += (dt_row[k] + alpha) * (tw_row[k] + beta) /
                 (static_cast<double>(state.topic_total[k]) + v_beta);
        cum[k] = total;
      }
      const double u = detail::uniform01(state.rng) * total;
      int k_new = 0;
      while (k_new < k_count - 1 && cum[k_new] < u) ++k_new;

      state.assignments[d][i] = k_new;
      ++dt_row[k_new];
      ++tw_row[k_new];
      ++state.topic_total[k_new];
    }
  }
}

/// log P(w|z) with the topic-word distributions integrated out:
/// Σ_k [ lnΓ(Vβ) − lnΓ(n_k + Vβ) + Σ_w (lnΓ(n_kw + β) − lnΓ(β)) ].
/// Per-topic terms are sorted before summing so the result is exactly
/// invariant under topic relabeling.
inline double log_likelihood(const LdaState& state, const LdaConfig& cfg) {
  const int k_count = state.num_topics;
  const double beta = cfg.beta;
  const double v_beta = static_cast<double>(state.vocab) * beta;
  const double lg_beta = std::lgamma(beta);
  const double lg_v_beta = std::lgamma(v_beta);
  std::vector<double> terms(k_count, 0.0);
  for (int k = 0; k < k_count; ++k) {
    double t = 0.0;
    if (state.topic_total[k] > 0)
      t += lg_v_beta -
           std::lgamma(static_cast<double>(state.topic_total[k]) + v_beta);
    for (int w = 0; w < state.vocab; ++w) {
      const int c = state.tw(w, k);
      if (c > 0) t += std::lgamma(c + beta) - lg_beta;
    }
    terms[k] = t;
  }
  std::sort(terms.begin(), terms.end());
  double ll = 0.0;
  for (double t : terms) ll += t;
  return ll;
}

/// Runs init plus cfg.iterations sweeps and reads phi, theta and the final
/// log-likelihood off the last state. Optionally records an LL trace every
/// 10 sweeps.
inline TrainedModel train(const Corpus& corpus, const LdaConfig& cfg,
                          std::vector<TraceEntry>* trace = nullptr,
                          std::ostream* warn = nullptr) {
  cfg.validate();
  LdaState state = init_state(corpus, cfg, warn);
  if (trace) trace->push_back({0, log_likelihood(state, cfg)});
  for (int s = 1; s <= cfg.iterations; ++s) {
    gibbs_sweep(corpus, state, cfg);
    if (trace && (s % 10 == 0 || s == cfg.iterations))
      if (trace->empty() || trace->back().sweep != s)
        trace->push_back({s, log_likelihood(state, cfg)});
  }

  const int k_count = cfg.topics;
  const int v = state.vocab;
  const double v_beta = v * cfg.beta;
  const double k_alpha = k_count * cfg.alpha;
  TrainedModel model;
  model.config = cfg;
  model.vocab = corpus.words;
  model.final_ll = log_likelihood(state, cfg);
  model.phi.assign(k_count, std::vector<double>(v));
  for (int k = 0; k < k_count; ++k) {
    const double denom = static_cast<double>(state.topic_total[k]) + v_beta;
    for (int w = 0; w < v; ++w)
      model.phi[k][w] = (state.tw(w, k) + cfg.beta) / denom;
  }
  model.theta.assign(corpus.docs.size(), std::vector<double>(k_count));
  for (size_t d = 0; d < corpus.docs.size(); ++d) {
    const double denom = state.doc_len[d] + k_alpha;
    for (int k = 0; k < k_count; ++k)
      model.theta[d][k] = (state.dt(static_cast<int>(d), k) + cfg.alpha) / denom;
  }
  return model;
}

struct SweepEntry {
  int topics;
  double log_likelihood;
  std::uint64_t seed;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // grid order
  int selected_topics = 0;          // argmax LL, ties -> smallest K
};

inline std::uint64_t derive_seed(std::uint64_t base_seed, int k) {
  return base_seed ^ (static_cast<std::uint64_t>(k) * 0x9E3779B97F4A7C15ULL);
}

/// Trains one chain per K on the grid, each with a seed derived from the
/// base seed and K, so the result is independent of scheduling. jobs = 0
/// means hardware concurrency.
inline SweepResult sweep_topics(const Corpus& corpus,
                                const std::vector<int>& k_grid,
                                const LdaConfig& cfg_template,
                                unsigned jobs = 1) {
  if (k_grid.empty()) throw std::invalid_argument("empty K grid");
  for (int k : k_grid)
    if (k < 1) throw std::invalid_argument("K grid values must be >= 1");
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, k_grid.size());

  // Resolve and validate every per-K config before any chain starts, so
  // bad arguments surface on the calling thread.
  std::vector<LdaConfig> configs;
  configs.reserve(k_grid.size());
  for (int k : k_grid) {
    LdaConfig cfg = cfg_template;
    cfg.topics = k;
    cfg.alpha = cfg_template.alpha > 0 ? cfg_template.alpha : 50.0 / k;
    cfg.seed = derive_seed(cfg_template.seed, k);
    cfg.validate();
    configs.push_back(cfg);
  }

  SweepResult result;
  result.entries.resize(k_grid.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t idx; (idx = next.fetch_add(1)) < k_grid.size();) {
      TrainedModel model = train(corpus, configs[idx]);
      result.entries[idx] = {k_grid[idx], model.final_ll, configs[idx].seed};
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  const SweepEntry* best = nullptr;
  for (const SweepEntry& e : result.entries)
    if (!best || e.log_likelihood > best->log_likelihood ||
        (e.log_likelihood == best->log_likelihood && e.topics < best->topics))
      best = &e;
  result.selected_topics = best->topics;
  return result;
}

/// Line-oriented model dump: `K V alpha beta seed`, K rows of phi, D rows
/// of theta, 17 significant digits.
inline void write_model(std::ostream& out, const TrainedModel& model) {
  char buf[64];
  auto fmt = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  out << model.config.topics << ' ' << model.vocab.size() << ' '
      << fmt(model.config.alpha) << ' ' << fmt(model.config.beta) << ' '
      << model.config.seed << '\n';
  for (const auto& row : model.phi) {
    for (size_t w = 0; w < row.size(); ++w)
      out << (w ? " " : "") << fmt(row[w]);
    out << '\n';
  }
  for (const auto& row : model.theta) {
    for (size_t k = 0; k < row.size(); ++k)
      out << (k ? " " : "") << fmt(row[k]);
    out << '\n';
  }
}

}  // namespace cmine
