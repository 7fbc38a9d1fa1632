#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "slotforge/pipeline.hpp"
#include "slotforge/synth.hpp"

using namespace slotforge;
namespace fs = std::filesystem;

namespace {

// Small-but-real settings so end-to-end cases stay fast.
PipelineConfig fast_config() {
  PipelineConfig c;
  c.output_dir.clear();
  c.gen.num_layers = 1;
  c.gen.hidden_size = 16;
  c.gen.embed_size = 8;
  c.gen.beam_size = 3;
  c.gen.batch_size = 8;
  c.gen.learning_rate = 5e-3;
  c.gen.max_epochs = 30;
  c.tagger.embed_size = 12;
  c.tagger.hidden_size = 12;
  c.tagger.max_epochs = 3;
  c.tagger.patience = 3;
  c.seeds = {1, 2};
  return c;
}

std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> as_set(const Corpus& c) {
  std::set<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
  for (const Utterance& u : c.utterances) {
    std::vector<std::string> tags;
    for (const SlotTag& t : u.tags) tags.push_back(t.str());
    out.emplace(u.tokens, tags);
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("key=value config parsing") {
  KeyValueConfig kv = KeyValueConfig::parse(
      "# comment\n"
      "gen.beam_size = 7\n"
      "tagger.dropout=0.1\n"
      "augment.no_ranks = true\n"
      "seeds=3,4\n"
      "\n");
  CHECK(kv.get_int("gen.beam_size", 0) == 7);
  CHECK(kv.get_double("tagger.dropout", 0) == 0.1);
  CHECK(kv.get_bool("augment.no_ranks", false));
  CHECK(kv.get_int("gen.hidden_size", 64) == 64);  // fallback
  CHECK_THROWS_AS(KeyValueConfig::parse("not a pair\n"), ConfigError);
  kv.set("x", "abc");
  CHECK_THROWS_AS(kv.get_int("x", 0), ConfigError);
  CHECK_THROWS_AS(kv.get_bool("x", false), ConfigError);

  PipelineConfig pc = pipeline_config_from(kv);
  CHECK(pc.gen.beam_size == 7);
  CHECK(pc.tagger.dropout == 0.1);
  CHECK(pc.no_ranks);
  CHECK(pc.seeds == std::vector<std::uint64_t>{3, 4});
  CHECK(pc.top_m == 1);
}

TEST_CASE("seed lists parse and validate") {
  CHECK(parse_seed_list("1,2,3") == std::vector<std::uint64_t>{1, 2, 3});
  CHECK_THROWS_AS(parse_seed_list("1,x"), ConfigError);
  CHECK_THROWS_AS(parse_seed_list(""), ConfigError);

  PipelineConfig c = fast_config();
  CHECK_NOTHROW(c.validate());
  c.seeds = {1, 1};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = fast_config();
  c.top_m = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = fast_config();
  c.gen_dev_fraction = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("no_seq2seq ablation re-realises without new delex forms") {
  SyntheticData data = make_synthetic(21, 40, 10);
  PipelineConfig c = fast_config();
  c.no_seq2seq = true;
  AugmentationResult res = run_augmentation(c, data.train);
  CHECK(res.stats.num_new_delex == 0);
  CHECK(res.pairs.empty());
  CHECK(!res.generator.has_value());
  CHECK(res.num_generated > 0);
  for (const auto& [src, gens] : res.generated)
    CHECK(gens == std::vector<DelexUtterance>{src});
  // the original corpus survives the merge
  auto train_set = as_set(data.train);
  auto aug_set = as_set(res.augmented);
  for (const auto& u : train_set) CHECK(aug_set.count(u));
}

TEST_CASE("full augmentation merges well-formed generations") {
  SyntheticData data = make_synthetic(22, 40, 10);
  PipelineConfig c = fast_config();
  AugmentationResult res = run_augmentation(c, data.train);
  CHECK(!res.pairs.empty());
  CHECK(res.generator.has_value());
  CHECK(res.num_generated > 0);
  CHECK(res.augmented.size() >= data.train.size());

  auto train_set = as_set(data.train);
  auto aug_set = as_set(res.augmented);
  for (const auto& u : train_set) CHECK(aug_set.count(u));
  // additions are unique and absent from the original corpus
  CHECK(res.augmented.size() - data.train.size() == aug_set.size() - train_set.size());
  for (const Utterance& u : res.augmented.utterances) {
    CHECK(u.tokens.size() == u.tags.size());
    CHECK(!u.tokens.empty());
  }
}

TEST_CASE("augmentation is deterministic") {
  SyntheticData data = make_synthetic(23, 30, 8);
  PipelineConfig c = fast_config();
  c.gen.max_epochs = 2;
  AugmentationResult a = run_augmentation(c, data.train);
  AugmentationResult b = run_augmentation(c, data.train);
  CHECK(a.augmented.utterances == b.augmented.utterances);
  CHECK(a.generated == b.generated);
  CHECK(a.stats.num_new_delex == b.stats.num_new_delex);
  CHECK(a.stats.avg_max_edit_distance == b.stats.avg_max_edit_distance);
}

TEST_CASE("no_ranks pins every source to #1") {
  SyntheticData data = make_synthetic(24, 30, 8);
  PipelineConfig c = fast_config();
  c.no_ranks = true;
  c.gen.max_epochs = 1;
  AugmentationResult res = run_augmentation(c, data.train);
  for (const auto& p : res.pairs) CHECK(p.source.back() == "#1");
}

TEST_CASE("enforce_frame_match keeps generation frames inside the train frames") {
  SyntheticData data = make_synthetic(25, 40, 10);
  PipelineConfig c = fast_config();
  c.enforce_frame_match = true;
  c.gen.max_epochs = 2;
  AugmentationResult res = run_augmentation(c, data.train);
  std::set<SemanticFrame> train_frames;
  for (const Utterance& u : data.train.utterances) train_frames.insert(frame_of(u));
  for (const Utterance& u : res.augmented.utterances)
    CHECK(train_frames.count(frame_of(u)) == 1);
}

TEST_CASE("a pretrained generator skips the training stage") {
  SyntheticData data = make_synthetic(26, 30, 8);
  PipelineConfig c = fast_config();
  c.gen.max_epochs = 2;
  AugmentationResult first = run_augmentation(c, data.train);
  REQUIRE(first.generator.has_value());
  c.gen.max_epochs = 1;  // would train differently; must be ignored
  AugmentationResult second = run_augmentation(c, data.train, &*first.generator);
  CHECK(second.generated == first.generated);
  CHECK(second.augmented.utterances == first.augmented.utterances);
}

TEST_CASE("run_pipeline writes artifacts and is byte-deterministic") {
  SyntheticData data = make_synthetic(27, 30, 10);
  PipelineConfig c = fast_config();
  c.output_dir = "pipe_out_a";
  PipelineReport r1 = run_pipeline(c, data.train, data.dev, data.test);
  c.output_dir = "pipe_out_b";
  PipelineReport r2 = run_pipeline(c, data.train, data.dev, data.test);

  CHECK(r1.text() == r2.text());
  CHECK(r1.json() == r2.json());
  CHECK(r1.per_seed.size() == 2);
  CHECK(r1.train_size == 30);
  CHECK(r1.augmented_size >= 30);

  for (const char* name :
       {"pairs.tsv", "slot_value_map.tsv", "augmented.conll", "generator.ckpt",
        "tagger_base_seed1.ckpt", "tagger_aug_seed2.ckpt", "report.txt", "report.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(fs::path("pipe_out_a") / name));
    CHECK(slurp((fs::path("pipe_out_a") / name).string()) ==
          slurp((fs::path("pipe_out_b") / name).string()));
  }
  CHECK(slurp("pipe_out_a/report.txt") == r1.text());

  // report text carries the fixed-format seed lines
  CHECK(r1.text().find("seed_1_baseline_f1\t") != std::string::npos);
  CHECK(r1.text().find("mean_augmented_f1\t") != std::string::npos);

  fs::remove_all("pipe_out_a");
  fs::remove_all("pipe_out_b");
}

TEST_CASE("stage failures name the stage and clean up artifacts") {
  // two singleton clusters: pair building must fail inside 'augment'
  Corpus train = parse_conll("a O\nb B-x\n\nc O\nd B-y\n");
  Corpus dev = train, test = train;
  PipelineConfig c = fast_config();
  c.output_dir = "pipe_out_fail";
  bool threw = false;
  try {
    run_pipeline(c, train, dev, test);
  } catch (const PipelineError& e) {
    threw = true;
    CHECK(e.stage == "augment");
    CHECK(std::string(e.what()).find("augment") != std::string::npos);
  }
  CHECK(threw);
  if (fs::exists("pipe_out_fail"))
    CHECK(fs::is_empty("pipe_out_fail"));
  fs::remove_all("pipe_out_fail");

  // unreadable paths fail in 'parse'
  PipelineConfig missing = fast_config();
  missing.train_path = "no_such.conll";
  missing.dev_path = "no_such.conll";
  missing.test_path = "no_such.conll";
  try {
    run_pipeline(missing);
    CHECK(false);
  } catch (const PipelineError& e) {
    CHECK(e.stage == "parse");
  }
}
