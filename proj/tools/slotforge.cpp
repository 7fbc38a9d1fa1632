#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "slotforge/log.hpp"
#include "slotforge/pipeline.hpp"
#include "slotforge/synth.hpp"

namespace fs = std::filesystem;
using namespace slotforge;

namespace {

// Config file first, then repeatable --set key=value, then dedicated flags.
struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::string seed_list;

  PipelineConfig resolve() const {
    KeyValueConfig kv =
        config_path.empty() ? KeyValueConfig{} : KeyValueConfig::load(config_path);
    for (const std::string& s : sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got " + s);
      kv.set(s.substr(0, eq), s.substr(eq + 1));
    }
    PipelineConfig pc = pipeline_config_from(kv);
    if (!seed_list.empty()) pc.seeds = parse_seed_list(seed_list);
    return pc;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "key=value config file");
  cmd->add_option("--set", opts.sets, "override a config key (key=value, repeatable)");
  cmd->add_option("--seed-list", opts.seed_list, "comma-separated tagger seeds");
}

int cmd_synth(std::uint64_t seed, std::size_t n_train, std::size_t n_test,
              const std::string& out_dir) {
  SyntheticData data = make_synthetic(seed, n_train, n_test);
  fs::create_directories(out_dir);
  save_conll(data.train, (fs::path(out_dir) / "train.conll").string());
  save_conll(data.dev, (fs::path(out_dir) / "dev.conll").string());
  save_conll(data.test, (fs::path(out_dir) / "test.conll").string());
  std::cout << "wrote " << data.train.size() << " train, " << data.dev.size()
            << " dev, " << data.test.size() << " test utterances to " << out_dir << "\n";
  return 0;
}

int cmd_stats(const std::string& train_path) {
  Corpus c = load_conll(train_path);
  auto clusters = cluster_by_frame(c);
  std::set<DelexUtterance> delex;
  std::size_t tokens = 0, segments = 0;
  std::set<std::string> slot_types;
  for (const Utterance& u : c.utterances) {
    tokens += u.tokens.size();
    for (const auto& s : slot_segments(u)) {
      ++segments;
      slot_types.insert(s.slot_type);
    }
    delex.insert(delexicalise(u).delex);
  }
  std::map<std::string, double> m;
  m["utterances"] = double(c.size());
  m["tokens"] = double(tokens);
  m["slot_segments"] = double(segments);
  m["slot_types"] = double(slot_types.size());
  m["frame_clusters"] = double(clusters.size());
  m["distinct_delex"] = double(delex.size());
  std::size_t largest = 0;
  for (const auto& [f, members] : clusters) largest = std::max(largest, members.size());
  m["largest_cluster"] = double(largest);
  std::cout << metrics_report_text(m);
  return 0;
}

int cmd_pairs(const CommonOpts& common, const std::string& train_path,
              const std::string& out_path) {
  PipelineConfig pc = common.resolve();
  Corpus train = load_conll(train_path);
  PairOptions popts;
  popts.filter_half = !pc.no_filter;
  popts.constant_rank = pc.no_ranks;
  auto pairs = build_training_pairs(train, popts);
  save_pairs(pairs, out_path);
  std::cout << "wrote " << pairs.size() << " pairs to " << out_path << "\n";
  return 0;
}

int cmd_train_gen(const CommonOpts& common, const std::string& pairs_path,
                  const std::string& out_path) {
  PipelineConfig pc = common.resolve();
  auto pairs = load_pairs(pairs_path);
  std::vector<TranslationPair> train = pairs, dev;
  if (pc.gen_dev_fraction > 0 && pairs.size() >= 10) {
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(pc.gen.seed ^ 0xabcdef12345ULL);
    shuffle_indices(order, rng);
    std::size_t n_dev = std::size_t(double(pairs.size()) * pc.gen_dev_fraction);
    train.clear();
    for (std::size_t i = 0; i < order.size(); ++i)
      (i < n_dev ? dev : train).push_back(pairs[order[i]]);
  }
  TrainedGenerator gen = train_generator(train, dev, pc.gen);
  for (const GenEpochLog& e : gen.log)
    std::cout << "epoch " << e.epoch << "\tloss " << e.train_loss << "\tdev_ppl "
              << e.dev_perplexity << "\tlr " << e.learning_rate << "\n";
  save_generator(gen, out_path);
  std::cout << "saved generator to " << out_path << "\n";
  return 0;
}

int cmd_augment(const CommonOpts& common, const std::string& train_path,
                const std::string& gen_path, const std::string& out_path) {
  PipelineConfig pc = common.resolve();
  Corpus train = load_conll(train_path);
  AugmentationResult res;
  if (!gen_path.empty() && !pc.no_seq2seq) {
    TrainedGenerator gen = load_generator(gen_path);
    res = run_augmentation(pc, train, &gen);
  } else {
    res = run_augmentation(pc, train);
  }
  save_conll(res.augmented, out_path);
  std::map<std::string, double> m;
  m["num_generated"] = double(res.num_generated);
  m["num_new_delex"] = double(res.stats.num_new_delex);
  m["avg_max_edit_distance"] = res.stats.avg_max_edit_distance;
  m["augmented_size"] = double(res.augmented.size());
  std::cout << metrics_report_text(m);
  std::cout << "wrote augmented corpus to " << out_path << "\n";
  return 0;
}

int cmd_train_tagger(const CommonOpts& common, const std::string& train_path,
                     const std::string& dev_path, const std::string& out_path) {
  PipelineConfig pc = common.resolve();
  Corpus train = load_conll(train_path);
  Corpus dev = load_conll(dev_path);
  TaggerConfig tc = pc.tagger;
  if (!pc.seeds.empty()) tc.seed = pc.seeds.front();
  TrainedTagger tagger = train_tagger(train, dev, tc);
  for (const TaggerEpochLog& e : tagger.log)
    std::cout << "epoch " << e.epoch << "\tloss " << e.train_loss << "\tdev_f1 "
              << e.dev_f1 << "\n";
  save_tagger(tagger, out_path);
  std::cout << "saved tagger to " << out_path << "\n";
  return 0;
}

int cmd_evaluate(const std::string& model_path, const std::string& test_path, bool json) {
  TrainedTagger tagger = load_tagger(model_path);
  Corpus test = load_conll(test_path);
  std::vector<std::vector<SlotTag>> predicted;
  for (const Utterance& u : test.utterances)
    predicted.push_back(predict_tags(tagger, u.tokens));
  ChunkMetrics cm = chunk_prf(test, predicted);
  std::map<std::string, double> m = {{"precision", cm.precision},
                                     {"recall", cm.recall},
                                     {"f1", cm.f1},
                                     {"gold_chunks", double(cm.gold_chunks)},
                                     {"predicted_chunks", double(cm.predicted_chunks)},
                                     {"correct_chunks", double(cm.correct_chunks)}};
  std::cout << (json ? metrics_report_json(m) : metrics_report_text(m));
  return 0;
}

int cmd_pipeline(const CommonOpts& common, const std::string& train_path,
                 const std::string& dev_path, const std::string& test_path,
                 const std::string& out_dir, bool json) {
  PipelineConfig pc = common.resolve();
  if (!train_path.empty()) pc.train_path = train_path;
  if (!dev_path.empty()) pc.dev_path = dev_path;
  if (!test_path.empty()) pc.test_path = test_path;
  if (!out_dir.empty()) pc.output_dir = out_dir;
  PipelineReport report = run_pipeline(pc);
  std::cout << (json ? report.json() : report.text());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slot-filling data augmentation via diversity-ranked paraphrase generation"};
  app.require_subcommand(1);

  std::uint64_t synth_seed = 1;
  std::size_t synth_train = 120, synth_test = 200;
  std::string synth_out = "synth";
  auto* synth = app.add_subcommand("synth", "generate a synthetic labeled corpus");
  synth->add_option("--seed", synth_seed, "grammar sampling seed");
  synth->add_option("--train-size", synth_train, "training utterances");
  synth->add_option("--test-size", synth_test, "test utterances");
  synth->add_option("--out-dir", synth_out, "output directory");

  std::string stats_train;
  auto* stats = app.add_subcommand("stats", "corpus and cluster statistics");
  stats->add_option("--train", stats_train, "CONLL corpus")->required();

  CommonOpts pairs_common;
  std::string pairs_train, pairs_out = "pairs.tsv";
  auto* pairs = app.add_subcommand("pairs", "build the filtered seq2seq pair set");
  add_common(pairs, pairs_common);
  pairs->add_option("--train", pairs_train, "CONLL training corpus")->required();
  pairs->add_option("--out", pairs_out, "output TSV path");

  CommonOpts tg_common;
  std::string tg_pairs, tg_out = "generator.ckpt";
  auto* train_gen = app.add_subcommand("train-gen", "train the paraphrase generator");
  add_common(train_gen, tg_common);
  train_gen->add_option("--pairs", tg_pairs, "pair TSV from `pairs`")->required();
  train_gen->add_option("--out", tg_out, "checkpoint path");

  CommonOpts aug_common;
  std::string aug_train, aug_gen, aug_out = "augmented.conll";
  auto* augment = app.add_subcommand("augment", "generate and realise augmented data");
  add_common(augment, aug_common);
  augment->add_option("--train", aug_train, "CONLL training corpus")->required();
  augment->add_option("--gen", aug_gen, "generator checkpoint (trained inline if omitted)");
  augment->add_option("--out", aug_out, "augmented CONLL path");

  CommonOpts tt_common;
  std::string tt_train, tt_dev, tt_out = "tagger.ckpt";
  auto* train_tag = app.add_subcommand("train-tagger", "train the BiLSTM slot tagger");
  add_common(train_tag, tt_common);
  train_tag->add_option("--train", tt_train, "CONLL training corpus")->required();
  train_tag->add_option("--dev", tt_dev, "CONLL development corpus")->required();
  train_tag->add_option("--out", tt_out, "checkpoint path");

  std::string ev_model, ev_test;
  bool ev_json = false;
  auto* evaluate = app.add_subcommand("evaluate", "score a tagger with chunk F1");
  evaluate->add_option("--model", ev_model, "tagger checkpoint")->required();
  evaluate->add_option("--test", ev_test, "CONLL test corpus")->required();
  evaluate->add_flag("--json", ev_json, "emit JSON instead of TSV");

  CommonOpts pl_common;
  std::string pl_train, pl_dev, pl_test, pl_out;
  bool pl_json = false;
  auto* pipeline = app.add_subcommand("pipeline", "full augmentation + evaluation run");
  add_common(pipeline, pl_common);
  pipeline->add_option("--train", pl_train, "CONLL training corpus");
  pipeline->add_option("--dev", pl_dev, "CONLL development corpus");
  pipeline->add_option("--test", pl_test, "CONLL test corpus");
  pipeline->add_option("--out-dir", pl_out, "artifact directory");
  pipeline->add_flag("--json", pl_json, "emit JSON report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(synth_seed, synth_train, synth_test, synth_out);
    if (stats->parsed()) return cmd_stats(stats_train);
    if (pairs->parsed()) return cmd_pairs(pairs_common, pairs_train, pairs_out);
    if (train_gen->parsed()) return cmd_train_gen(tg_common, tg_pairs, tg_out);
    if (augment->parsed()) return cmd_augment(aug_common, aug_train, aug_gen, aug_out);
    if (train_tag->parsed()) return cmd_train_tagger(tt_common, tt_train, tt_dev, tt_out);
    if (evaluate->parsed()) return cmd_evaluate(ev_model, ev_test, ev_json);
    if (pipeline->parsed())
      return cmd_pipeline(pl_common, pl_train, pl_dev, pl_test, pl_out, pl_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
