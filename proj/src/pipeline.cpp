#include "slotforge/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "slotforge/checkpoint.hpp"
#include "slotforge/log.hpp"
#include "slotforge/tagger.hpp"

namespace slotforge {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kRealiseSeedSalt = 0x5f3759df9e3779b9ULL;

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << v;
  return ss.str();
}

}  // namespace

std::string PipelineReport::text() const {
  std::ostringstream out;
  out << "train_size\t" << train_size << '\n';
  out << "num_pairs\t" << num_pairs << '\n';
  out << "num_generated\t" << num_generated << '\n';
  out << "augmented_size\t" << augmented_size << '\n';
  out << "num_new_delex\t" << stats.num_new_delex << '\n';
  out << "avg_max_edit_distance\t" << fmt(stats.avg_max_edit_distance) << '\n';
  for (const SeedResult& r : per_seed) {
    out << "seed_" << r.seed << "_baseline_f1\t" << fmt(r.baseline_f1) << '\n';
    out << "seed_" << r.seed << "_augmented_f1\t" << fmt(r.augmented_f1) << '\n';
  }
  out << "mean_baseline_f1\t" << fmt(mean_baseline_f1) << '\n';
  out << "mean_augmented_f1\t" << fmt(mean_augmented_f1) << '\n';
  return out.str();
}

std::string PipelineReport::json() const {
  nlohmann::json j;
  j["train_size"] = train_size;
  j["num_pairs"] = num_pairs;
  j["num_generated"] = num_generated;
  j["augmented_size"] = augmented_size;
  j["num_new_delex"] = stats.num_new_delex;
  j["avg_max_edit_distance"] = stats.avg_max_edit_distance;
  j["per_seed"] = nlohmann::json::array();
  for (const SeedResult& r : per_seed)
    j["per_seed"].push_back({{"seed", r.seed},
                             {"baseline_f1", r.baseline_f1},
                             {"augmented_f1", r.augmented_f1}});
  j["mean_baseline_f1"] = mean_baseline_f1;
  j["mean_augmented_f1"] = mean_augmented_f1;
  return j.dump(2) + "\n";
}

namespace {

void merge_dedup(Corpus& merged, const std::vector<Utterance>& extra) {
  std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> seen;
  auto key = [](const Utterance& u) {
    std::vector<std::string> tag_strs;
    for (const SlotTag& t : u.tags) tag_strs.push_back(t.str());
    return std::make_pair(u.tokens, tag_strs);
  };
  for (const Utterance& u : merged.utterances) seen.insert(key(u));
  for (const Utterance& u : extra)
    if (seen.insert(key(u)).second) merged.utterances.push_back(u);
}

}  // namespace

AugmentationResult run_augmentation(const PipelineConfig& config, const Corpus& train,
                                    const TrainedGenerator* pretrained) {
  AugmentationResult res;
  res.augmented = train;
  res.augmented.provenance = train.provenance + "+augmented";

  auto clusters = cluster_by_frame(train);
  std::vector<DelexUtterance> delexed(train.size());
  for (std::size_t i = 0; i < train.size(); ++i)
    delexed[i] = delexicalise(train.utterances[i]).delex;
  std::set<DelexUtterance> train_delex(delexed.begin(), delexed.end());
  SlotValueMap svm = build_slot_value_map(train);

  Rng realise_rng(config.gen.seed ^ kRealiseSeedSalt);
  std::vector<Utterance> new_utterances;

  if (config.no_seq2seq) {
    // ablation: one fresh realisation per training delex utterance
    for (const DelexUtterance& d : train_delex) {
      res.generated[d].push_back(d);
      new_utterances.push_back(realise(d, svm, realise_rng));
      ++res.num_generated;
    }
  } else {
    PairOptions popts;
    popts.filter_half = !config.no_filter;
    popts.constant_rank = config.no_ranks;
    res.pairs = build_training_pairs(train, popts);
    if (res.pairs.empty())
      throw std::runtime_error("no translation pairs (all clusters are singletons)");

    if (pretrained) {
      res.generator = *pretrained;
    } else {
      // holdout for perplexity-based lr halving and checkpoint selection
      std::vector<TranslationPair> gen_train = res.pairs, gen_dev;
      if (config.gen_dev_fraction > 0 && res.pairs.size() >= 10) {
        std::vector<std::size_t> order(res.pairs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        Rng split_rng(config.gen.seed ^ 0xabcdef12345ULL);
        shuffle_indices(order, split_rng);
        std::size_t n_dev =
            static_cast<std::size_t>(double(res.pairs.size()) * config.gen_dev_fraction);
        gen_train.clear();
        gen_dev.clear();
        for (std::size_t i = 0; i < order.size(); ++i)
          (i < n_dev ? gen_dev : gen_train).push_back(res.pairs[order[i]]);
      }
      log_info("training generator on " + std::to_string(gen_train.size()) + " pairs (" +
               std::to_string(gen_dev.size()) + " dev)");
      res.generator = train_generator(gen_train, gen_dev, config.gen);
    }
    const TrainedGenerator& gen = *res.generator;

    // decode each distinct (source, rank) once
    std::map<std::pair<std::vector<std::string>, std::size_t>,
             std::vector<std::vector<std::string>>> decode_cache;
    for (std::size_t i = 0; i < train.size(); ++i) {
      const DelexUtterance& d = delexed[i];
      SemanticFrame frame = frame_of(train.utterances[i]);
      for (std::size_t rank : augmentation_ranks(frame, clusters)) {
        std::size_t req = config.no_ranks ? 1 : rank;
        auto cache_key = std::make_pair(d.tokens, req);
        auto it = decode_cache.find(cache_key);
        if (it == decode_cache.end()) {
          std::vector<std::string> source = d.tokens;
          source.push_back(rank_token(req));
          auto hyps = beam_search(gen.params, source, gen.vocab, gen.config);
          std::vector<std::vector<std::string>> outs;
          for (std::size_t h = 0;
               h < std::min<std::size_t>(hyps.size(), config.top_m); ++h) {
            auto toks = unk_replace(hyps[h], source, gen.vocab);
            if (!toks.empty()) outs.push_back(std::move(toks));
          }
          it = decode_cache.emplace(cache_key, std::move(outs)).first;
        }
        for (const auto& toks : it->second) {
          DelexUtterance g{toks};
          auto& gens = res.generated[d];
          if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
        }
      }
    }
    // realise generations, deterministically ordered by (source, target)
    for (const auto& [source, gens] : res.generated) {
      SemanticFrame source_frame;
      for (const std::string& tok : source.tokens) {
        std::string ty = placeholder_type(tok);
        if (!ty.empty()) ++source_frame.counts[ty];
      }
      for (const DelexUtterance& g : gens) {
        ++res.num_generated;
        if (config.enforce_frame_match) {
          SemanticFrame gen_frame;
          for (const std::string& tok : g.tokens) {
            std::string ty = placeholder_type(tok);
            if (!ty.empty()) ++gen_frame.counts[ty];
          }
          if (!(gen_frame == source_frame)) continue;
        }
        try {
          new_utterances.push_back(realise(g, svm, realise_rng));
        } catch (const RealiseError& e) {
          log_warn(std::string("dropping generation: ") + e.what());
        }
      }
    }
  }

  res.stats = augmentation_stats(train_delex, res.generated);
  merge_dedup(res.augmented, new_utterances);
  return res;
}

namespace {

// Removes everything this run wrote if a later stage fails.
class ArtifactDir {
 public:
  explicit ArtifactDir(std::string dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }

  std::string path(const std::string& name) {
    std::string p = (fs::path(dir_) / name).string();
    written_.push_back(p);
    return p;
  }

  bool enabled() const { return !dir_.empty(); }

  void remove_all() {
    for (const std::string& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

 private:
  std::string dir_;
  std::vector<std::string> written_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

PipelineReport run_pipeline(const PipelineConfig& config, const Corpus& train,
                            const Corpus& dev, const Corpus& test) {
  config.validate();
  PipelineReport report;
  report.train_size = train.size();
  ArtifactDir artifacts(config.output_dir);
  std::string stage = "augment";
  try {
    AugmentationResult aug = run_augmentation(config, train);
    report.num_pairs = aug.pairs.size();
    report.num_generated = aug.num_generated;
    report.augmented_size = aug.augmented.size();
    report.stats = aug.stats;

    if (artifacts.enabled()) {
      stage = "artifacts";
      if (!aug.pairs.empty()) save_pairs(aug.pairs, artifacts.path("pairs.tsv"));
      build_slot_value_map(train).save(artifacts.path("slot_value_map.tsv"));
      save_conll(aug.augmented, artifacts.path("augmented.conll"));
      if (aug.generator) save_generator(*aug.generator, artifacts.path("generator.ckpt"));
    }

    stage = "tagger";
    TaggerConfig tc = config.tagger;
    double base_sum = 0, aug_sum = 0;
    for (std::uint64_t seed : config.seeds) {
      tc.seed = seed;
      TrainedTagger base = train_tagger(train, dev, tc);
      TrainedTagger augd = train_tagger(aug.augmented, dev, tc);
      auto eval_on = [&](const TrainedTagger& t) {
        std::vector<std::vector<SlotTag>> predicted;
        for (const Utterance& u : test.utterances)
          predicted.push_back(predict_tags(t, u.tokens));
        return chunk_prf(test, predicted).f1;
      };
      SeedResult r;
      r.seed = seed;
      r.baseline_f1 = eval_on(base);
      r.augmented_f1 = eval_on(augd);
      base_sum += r.baseline_f1;
      aug_sum += r.augmented_f1;
      report.per_seed.push_back(r);
      log_info("seed " + std::to_string(seed) + ": baseline " + fmt(r.baseline_f1) +
               ", augmented " + fmt(r.augmented_f1));
      if (artifacts.enabled()) {
        save_tagger(base, artifacts.path("tagger_base_seed" + std::to_string(seed) + ".ckpt"));
        save_tagger(augd, artifacts.path("tagger_aug_seed" + std::to_string(seed) + ".ckpt"));
      }
    }
    report.mean_baseline_f1 = base_sum / double(config.seeds.size());
    report.mean_augmented_f1 = aug_sum / double(config.seeds.size());

    if (artifacts.enabled()) {
      stage = "report";
      write_text(artifacts.path("report.txt"), report.text());
      write_text(artifacts.path("report.json"), report.json());
    }
  } catch (const std::exception& e) {
    artifacts.remove_all();
    throw PipelineError(stage, e.what());
  }
  return report;
}

PipelineReport run_pipeline(const PipelineConfig& config) {
  Corpus train, dev, test;
  try {
    train = load_conll(config.train_path);
    dev = load_conll(config.dev_path);
    test = load_conll(config.test_path);
  } catch (const std::exception& e) {
    throw PipelineError("parse", e.what());
  }
  return run_pipeline(config, train, dev, test);
}

}  // namespace slotforge
