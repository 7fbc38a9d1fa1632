#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slotforge/corpus.hpp"
#include "slotforge/nn/params.hpp"

namespace slotforge {

struct TaggerConfig {
  int embed_size = 32;   // paper 100
  int hidden_size = 32;  // paper 100, per direction
  double dropout = 0.0;  // paper grid {0, 0.1, 0.2}
  int batch_size = 16;
  double learning_rate = 1e-3;
  int max_epochs = 100;
  int patience = 10;  // early stop on dev F1
  std::uint64_t seed = 1;
  std::string pretrained_vectors_path;  // empty: uniform init

  void validate() const;
};

struct TagVocab {
  std::vector<std::string> words;  // "<unk>" first
  std::vector<std::string> tags;   // serialized SlotTags

  int word_id(const std::string& w) const;  // 0 (unk) for OOV
  int tag_id(const std::string& t) const;
};

struct TaggerEpochLog {
  int epoch = 0;
  double train_loss = 0;
  double dev_f1 = 0;
};

struct TrainedTagger {
  nn::ParamSet params;
  TagVocab vocab;
  TaggerConfig config;
  std::vector<TaggerEpochLog> log;
};

struct TaggerForward {
  double mean_loss = 0;
  std::size_t num_tokens = 0;
  nn::ParamSet grads;
};

nn::ParamSet init_tagger_params(const TaggerConfig& config, const TagVocab& vocab);

// Dropout (train-time only) draws its masks from rng; pass dropout 0 in the
// config for deterministic evaluation-style forwards.
TaggerForward tagger_forward_loss(const nn::ParamSet& params,
                                  const std::vector<Utterance>& batch,
                                  const TagVocab& vocab, const TaggerConfig& config,
                                  Rng& rng, bool training);

TrainedTagger train_tagger(const Corpus& train, const Corpus& dev,
                           const TaggerConfig& config);

std::vector<SlotTag> predict_tags(const TrainedTagger& tagger,
                                  const std::vector<std::string>& tokens);

// One word per line, word then whitespace-separated floats.
std::map<std::string, std::vector<double>> load_word_vectors(const std::string& path);

inline constexpr const char* kTaggerMagic = "SFTG";

void save_tagger(const TrainedTagger& tagger, const std::string& path);
TrainedTagger load_tagger(const std::string& path);

}  // namespace slotforge
