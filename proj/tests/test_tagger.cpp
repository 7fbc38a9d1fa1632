#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "slotforge/checkpoint.hpp"
#include "slotforge/eval.hpp"
#include "slotforge/tagger.hpp"

using namespace slotforge;
using nn::Mat;

namespace {

const char* kSmallConll =
    "show O\nme O\nthe O\nclosest B-distance\nrestaurant B-poi_type\n"
    "\n"
    "find O\na O\ngas B-poi_type\nstation I-poi_type\nin O\nboston B-city\n"
    "\n"
    "is O\nthere O\na O\nhospital B-poi_type\nnearby B-distance\n";

TaggerConfig tiny_config() {
  TaggerConfig c;
  c.embed_size = 4;
  c.hidden_size = 3;
  c.seed = 13;
  return c;
}

double measure_dev_f1(const TrainedTagger& tagger, const Corpus& dev) {
  std::vector<std::vector<SlotTag>> predicted;
  for (const Utterance& u : dev.utterances)
    predicted.push_back(predict_tags(tagger, u.tokens));
  return chunk_prf(dev, predicted).f1;
}

}  // namespace

TEST_CASE("tagger config validation") {
  TaggerConfig c = tiny_config();
  CHECK_NOTHROW(c.validate());
  c.dropout = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = tiny_config();
  c.hidden_size = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("tag vocab maps OOV words to unk and rejects unknown tags") {
  Corpus train = parse_conll(kSmallConll);
  TrainedTagger t = train_tagger(train, {}, tiny_config());
  CHECK(t.vocab.words[0] == "<unk>");
  CHECK(t.vocab.word_id("never-seen-word") == 0);
  CHECK(t.vocab.word_id("boston") > 0);
  CHECK(t.vocab.tag_id("O") >= 0);
  CHECK_THROWS_AS(t.vocab.tag_id("B-made-up"), std::invalid_argument);
}

TEST_CASE("init_tagger_params determinism and pretrained vectors") {
  Corpus train = parse_conll(kSmallConll);
  TaggerConfig c = tiny_config();
  TrainedTagger probe = train_tagger(train, {}, c);
  TagVocab v = probe.vocab;

  nn::ParamSet p1 = init_tagger_params(c, v);
  nn::ParamSet p2 = init_tagger_params(c, v);
  for (std::size_t i = 0; i < p1.tensors().size(); ++i) {
    CHECK(p1.tensors()[i].second == p2.tensors()[i].second);
    CHECK(p1.tensors()[i].second.maxCoeff() <= 0.1);
    CHECK(p1.tensors()[i].second.minCoeff() >= -0.1);
  }

  SUBCASE("matching vector file seeds the embedding column") {
    const char* path = "test_vectors.txt";
    std::ofstream(path) << "boston 0.5 -0.5 0.25 0.125\n";
    c.pretrained_vectors_path = path;
    nn::ParamSet p = init_tagger_params(c, v);
    Eigen::VectorXd col = p.at("embed").col(v.word_id("boston"));
    CHECK(col(0) == 0.5);
    CHECK(col(3) == 0.125);
    // other columns keep the uniform init
    CHECK(p.at("embed").col(0) == p1.at("embed").col(0));
    std::remove(path);
  }
  SUBCASE("dimension mismatch is a config error") {
    const char* path = "test_vectors_bad.txt";
    std::ofstream(path) << "boston 0.5 -0.5\n";
    c.pretrained_vectors_path = path;
    CHECK_THROWS_AS(init_tagger_params(c, v), std::invalid_argument);
    std::remove(path);
  }
  SUBCASE("missing vector file is an error") {
    c.pretrained_vectors_path = "no_such_vectors.txt";
    CHECK_THROWS_AS(init_tagger_params(c, v), std::invalid_argument);
  }
}

TEST_CASE("load_word_vectors parses the text layout") {
  const char* path = "test_vectors_parse.txt";
  std::ofstream(path) << "alpha 1 2 3\n\nbeta -0.5 0.5 0\n";
  auto vecs = load_word_vectors(path);
  CHECK(vecs.size() == 2);
  CHECK(vecs.at("alpha") == std::vector<double>{1, 2, 3});
  CHECK(vecs.at("beta")[0] == -0.5);
  std::remove(path);
  CHECK_THROWS_AS(load_word_vectors("no_such_file.txt"), std::invalid_argument);
}

TEST_CASE("tagger gradients match central finite differences") {
  Corpus train = parse_conll(kSmallConll);
  std::vector<Utterance> batch = {train.utterances[0], train.utterances[1]};
  TaggerConfig c = tiny_config();
  TrainedTagger probe = train_tagger(train, {}, c);
  TagVocab v = probe.vocab;
  nn::ParamSet params = init_tagger_params(c, v);

  Rng rng(1);
  TaggerForward fr = tagger_forward_loss(params, batch, v, c, rng, true);
  const double h = 1e-5;
  for (auto& [name, grad] : fr.grads.tensors()) {
    Mat& w = params.at(name);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      double keep = w.data()[i];
      Rng rp(1), rm(1);
      w.data()[i] = keep + h;
      double fp = tagger_forward_loss(params, batch, v, c, rp, true).mean_loss;
      w.data()[i] = keep - h;
      double fm = tagger_forward_loss(params, batch, v, c, rm, true).mean_loss;
      w.data()[i] = keep;
      double numeric = (fp - fm) / (2 * h);
      double analytic = grad.data()[i];
      double tol = 1e-6 + 1e-4 * std::max(std::abs(analytic), std::abs(numeric));
      CHECK_MESSAGE(std::abs(analytic - numeric) <= tol,
                    name, "[", i, "]: ", analytic, " vs ", numeric);
    }
  }
}

TEST_CASE("batch loss is the token-weighted mean of per-utterance losses") {
  Corpus train = parse_conll(kSmallConll);
  TaggerConfig c = tiny_config();
  TrainedTagger probe = train_tagger(train, {}, c);
  nn::ParamSet params = init_tagger_params(c, probe.vocab);
  Rng r1(1), r2(1), r3(1);
  auto both = tagger_forward_loss(params, {train.utterances[0], train.utterances[1]},
                                  probe.vocab, c, r1, false);
  auto a = tagger_forward_loss(params, {train.utterances[0]}, probe.vocab, c, r2, false);
  auto b = tagger_forward_loss(params, {train.utterances[1]}, probe.vocab, c, r3, false);
  CHECK(both.num_tokens == a.num_tokens + b.num_tokens);
  CHECK(both.mean_loss * double(both.num_tokens) ==
        doctest::Approx(a.mean_loss * double(a.num_tokens) +
                        b.mean_loss * double(b.num_tokens))
            .epsilon(1e-12));
  CHECK_THROWS_AS(tagger_forward_loss(params, {}, probe.vocab, c, r1, false),
                  std::invalid_argument);
}

TEST_CASE("ten copies of one utterance overfit to exact tags") {
  Corpus one = parse_conll(
      "navigate O\nto O\nthe O\nnearest B-distance\ngas B-poi_type\nstation I-poi_type\n");
  Corpus train;
  for (int i = 0; i < 10; ++i) train.utterances.push_back(one.utterances[0]);

  TaggerConfig c;
  c.embed_size = 16;
  c.hidden_size = 16;
  c.learning_rate = 1e-2;
  c.batch_size = 2;
  c.max_epochs = 100;
  c.patience = 100;  // plateau at 0 early on must not stop the run
  c.seed = 2;
  TrainedTagger tagger = train_tagger(train, one, c);

  std::vector<SlotTag> pred = predict_tags(tagger, one.utterances[0].tokens);
  REQUIRE(pred.size() == one.utterances[0].tags.size());
  for (std::size_t i = 0; i < pred.size(); ++i)
    CHECK(pred[i] == one.utterances[0].tags[i]);

  SUBCASE("all-unk input still yields valid tags") {
    std::vector<SlotTag> out = predict_tags(tagger, {"zz1", "zz2", "zz3"});
    REQUIRE(out.size() == 3);
    for (const SlotTag& t : out)
      CHECK_NOTHROW(tagger.vocab.tag_id(t.str()));
  }
  SUBCASE("prediction length always matches input length") {
    for (std::size_t n = 1; n <= 7; ++n) {
      std::vector<std::string> toks(n, "gas");
      CHECK(predict_tags(tagger, toks).size() == n);
    }
    CHECK_THROWS_AS(predict_tags(tagger, {}), std::invalid_argument);
  }
}

TEST_CASE("training is deterministic under a fixed seed") {
  Corpus train = parse_conll(kSmallConll);
  Corpus dev = parse_conll(kSmallConll);
  TaggerConfig c = tiny_config();
  c.max_epochs = 6;
  c.dropout = 0.1;  // exercises the mask rng too
  TrainedTagger a = train_tagger(train, dev, c);
  TrainedTagger b = train_tagger(train, dev, c);
  REQUIRE(a.log.size() == b.log.size());
  for (std::size_t i = 0; i < a.log.size(); ++i) {
    CHECK(a.log[i].train_loss == b.log[i].train_loss);
    CHECK(a.log[i].dev_f1 == b.log[i].dev_f1);
  }
  for (std::size_t i = 0; i < a.params.tensors().size(); ++i)
    CHECK(a.params.tensors()[i].second == b.params.tensors()[i].second);
}

TEST_CASE("returned parameters are the best dev-F1 epoch") {
  Corpus train = parse_conll(kSmallConll);
  Corpus dev = parse_conll(kSmallConll);
  TaggerConfig c;
  c.embed_size = 8;
  c.hidden_size = 8;
  c.learning_rate = 5e-3;
  c.max_epochs = 15;
  c.seed = 4;
  TrainedTagger tagger = train_tagger(train, dev, c);
  double best_logged = 0;
  for (const auto& e : tagger.log) best_logged = std::max(best_logged, e.dev_f1);
  CHECK(measure_dev_f1(tagger, dev) == doctest::Approx(best_logged));
}

TEST_CASE("patience stops training once dev F1 saturates") {
  Corpus one = parse_conll("the O\nnearest B-distance\nstop B-poi_type\n");
  Corpus train;
  for (int i = 0; i < 8; ++i) train.utterances.push_back(one.utterances[0]);
  TaggerConfig c;
  c.embed_size = 16;
  c.hidden_size = 16;
  c.learning_rate = 1e-2;
  c.max_epochs = 200;
  c.patience = 3;
  c.seed = 6;
  TrainedTagger tagger = train_tagger(train, one, c);
  // F1 hits 100 early and can't improve; the run must stop long before the cap
  CHECK(tagger.log.size() < 50);
  CHECK(measure_dev_f1(tagger, one) == 100.0);
}

TEST_CASE("tagger checkpoint roundtrip") {
  Corpus train = parse_conll(kSmallConll);
  TaggerConfig c = tiny_config();
  c.max_epochs = 2;
  TrainedTagger tagger = train_tagger(train, {}, c);
  tagger.params.round_to_f32();  // the container stores float32

  const std::string path = "test_tagger_ckpt.bin";
  save_tagger(tagger, path);
  TrainedTagger back = load_tagger(path);

  CHECK(back.vocab.words == tagger.vocab.words);
  CHECK(back.vocab.tags == tagger.vocab.tags);
  CHECK(back.config.hidden_size == c.hidden_size);
  CHECK(back.config.dropout == c.dropout);
  for (std::size_t i = 0; i < tagger.params.tensors().size(); ++i) {
    CHECK(back.params.tensors()[i].first == tagger.params.tensors()[i].first);
    CHECK(back.params.tensors()[i].second == tagger.params.tensors()[i].second);
  }
  // identical predictions across the roundtrip
  for (const Utterance& u : train.utterances)
    CHECK(predict_tags(back, u.tokens) == predict_tags(tagger, u.tokens));

  SUBCASE("generator magic is rejected") {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.write("SFGN", 4);
    f.close();
    CHECK_THROWS_AS(load_tagger(path), CheckpointError);
  }
  std::remove(path.c_str());
}
