#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slotforge/diversity.hpp"
#include "slotforge/nn/params.hpp"

namespace slotforge {

struct TrainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenVocab {
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;
  static constexpr int kUnk = 3;

  std::vector<std::string> id_to_token;
  std::map<std::string, int> token_to_id;

  static GenVocab build(const std::vector<TranslationPair>& pairs);
  static GenVocab from_tokens(std::vector<std::string> tokens);  // full list incl. reserved

  int id(const std::string& tok) const;  // unk for OOV
  const std::string& token(int id) const { return id_to_token.at(id); }
  int size() const { return static_cast<int>(id_to_token.size()); }
};

struct GenConfig {
  int num_layers = 2;
  int hidden_size = 64;   // paper 500; desk default keeps tests fast
  int embed_size = 32;
  int max_source_len = 50;
  int beam_size = 10;
  int batch_size = 16;
  double learning_rate = 1e-3;
  bool lr_halving = true;
  int max_epochs = 30;
  double clip_norm = 5.0;
  std::uint64_t seed = 1;
  std::string attention = "general";  // or "dot"
  bool bidirectional = false;
  int max_decode_len = 0;  // 0: 2 * source length + 5

  void validate() const;
};

struct Hypothesis {
  std::vector<int> ids;  // emitted token ids, eos included when reached
  double log_prob = 0;
  std::vector<Eigen::VectorXd> attention;  // one distribution per emitted token
};

nn::ParamSet init_params(const GenConfig& config, const GenVocab& vocab);

struct ForwardResult {
  double mean_loss = 0;       // mean token cross-entropy
  std::size_t num_tokens = 0;
  nn::ParamSet grads;
};

ForwardResult forward_loss(const nn::ParamSet& params,
                           const std::vector<TranslationPair>& batch,
                           const GenVocab& vocab, const GenConfig& config);

struct GenEpochLog {
  int epoch = 0;
  double train_loss = 0;
  double dev_perplexity = 0;  // 0 when no dev set
  double learning_rate = 0;
};

struct TrainedGenerator {
  nn::ParamSet params;
  GenVocab vocab;
  GenConfig config;
  std::vector<GenEpochLog> log;
};

TrainedGenerator train_generator(const std::vector<TranslationPair>& pairs,
                                 const std::vector<TranslationPair>& dev_pairs,
                                 const GenConfig& config);

double perplexity(const nn::ParamSet& params, const std::vector<TranslationPair>& pairs,
                  const GenVocab& vocab, const GenConfig& config);

// Source tokens must include the trailing rank token. Hypotheses are
// returned in descending log probability, at most beam_size of them.
std::vector<Hypothesis> beam_search(const nn::ParamSet& params,
                                    const std::vector<std::string>& source,
                                    const GenVocab& vocab, const GenConfig& config);

// Replaces each generated unk by the source token under the attention
// argmax for that step; the trailing rank token never wins the argmax.
std::vector<std::string> unk_replace(const Hypothesis& hyp,
                                     const std::vector<std::string>& source,
                                     const GenVocab& vocab);

inline constexpr const char* kGenMagic = "SFGN";

void save_generator(const TrainedGenerator& gen, const std::string& path);
TrainedGenerator load_generator(const std::string& path);

// Teacher-forced per-step distributions from the inference path; used by
// tests to pin the training and decoding paths together.
std::vector<Eigen::VectorXd> step_distributions(const nn::ParamSet& params,
                                                const std::vector<int>& src_ids,
                                                const std::vector<int>& out_ids,
                                                const GenVocab& vocab,
                                                const GenConfig& config);

std::vector<int> source_ids(const std::vector<std::string>& source,
                            const GenVocab& vocab, const GenConfig& config);

}  // namespace slotforge
