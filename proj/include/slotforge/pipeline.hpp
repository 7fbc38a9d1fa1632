#pragma once

#include "slotforge/config.hpp"
#include "slotforge/corpus.hpp"
#include "slotforge/eval.hpp"
#include "slotforge/seq2seq.hpp"

namespace slotforge {

struct PipelineError : std::runtime_error {
  PipelineError(const std::string& stage, const std::string& what)
      : std::runtime_error("stage '" + stage + "': " + what), stage(stage) {}
  std::string stage;
};

struct SeedResult {
  std::uint64_t seed = 0;
  double baseline_f1 = 0;
  double augmented_f1 = 0;
};

struct PipelineReport {
  std::size_t train_size = 0;
  std::size_t num_pairs = 0;
  std::size_t num_generated = 0;
  std::size_t augmented_size = 0;  // merged corpus size
  AugmentationStats stats;
  std::vector<SeedResult> per_seed;
  double mean_baseline_f1 = 0;
  double mean_augmented_f1 = 0;

  std::string text() const;
  std::string json() const;
};

// Augmentation stages only (no tagger runs); exposed for the CLI's
// `augment` command and for tests.
struct AugmentationResult {
  std::vector<TranslationPair> pairs;
  std::optional<TrainedGenerator> generator;
  std::map<DelexUtterance, std::vector<DelexUtterance>> generated;
  Corpus augmented;  // train merged with realised generations, deduped
  AugmentationStats stats;
  std::size_t num_generated = 0;
};

// When pretrained is non-null (and no_seq2seq is off) the generator
// training stage is skipped in favor of the given checkpoint.
AugmentationResult run_augmentation(const PipelineConfig& config, const Corpus& train,
                                    const TrainedGenerator* pretrained = nullptr);

// Full pipeline over in-memory corpora; when output_dir is non-empty all
// intermediate artifacts are written there (and removed again if a stage
// fails).
PipelineReport run_pipeline(const PipelineConfig& config, const Corpus& train,
                            const Corpus& dev, const Corpus& test);

// Loads the corpora from config.paths and runs the pipeline.
PipelineReport run_pipeline(const PipelineConfig& config);

}  // namespace slotforge
