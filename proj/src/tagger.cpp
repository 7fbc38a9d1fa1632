#include "slotforge/tagger.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "slotforge/checkpoint.hpp"
#include "slotforge/eval.hpp"

namespace slotforge {

using nn::Mat;
using nn::ParamSet;
using nn::Tape;
using nn::TapeParams;
using Eigen::VectorXd;

void TaggerConfig::validate() const {
  if (embed_size < 1 || hidden_size < 1 || batch_size < 1 || max_epochs < 1)
    throw std::invalid_argument("invalid tagger config");
  if (dropout < 0 || dropout >= 1)
    throw std::invalid_argument("tagger dropout must be in [0, 1)");
}

int TagVocab::word_id(const std::string& w) const {
  auto it = std::find(words.begin(), words.end(), w);
  return it == words.end() ? 0 : static_cast<int>(it - words.begin());
}

int TagVocab::tag_id(const std::string& t) const {
  auto it = std::find(tags.begin(), tags.end(), t);
  if (it == tags.end()) throw std::invalid_argument("unknown tag " + t);
  return static_cast<int>(it - tags.begin());
}

namespace {

TagVocab build_vocab(const Corpus& train, const Corpus& dev) {
  std::set<std::string> words, tags;
  for (const Utterance& u : train.utterances) {
    words.insert(u.tokens.begin(), u.tokens.end());
    for (const SlotTag& t : u.tags) tags.insert(t.str());
  }
  for (const Utterance& u : dev.utterances)
    for (const SlotTag& t : u.tags) tags.insert(t.str());
  TagVocab v;
  v.words.push_back("<unk>");
  v.words.insert(v.words.end(), words.begin(), words.end());
  v.tags.assign(tags.begin(), tags.end());
  return v;
}

}  // namespace

nn::ParamSet init_tagger_params(const TaggerConfig& config, const TagVocab& vocab) {
  config.validate();
  const int E = config.embed_size, H = config.hidden_size;
  const int V = static_cast<int>(vocab.words.size());
  const int T = static_cast<int>(vocab.tags.size());
  ParamSet p;
  p.add("embed", E, V);
  for (const char* dir : {"fwd", "bwd"}) {
    p.add(std::string(dir) + ".Wx", 4 * H, E);
    p.add(std::string(dir) + ".Wh", 4 * H, H);
    p.add(std::string(dir) + ".b", 4 * H, 1);
  }
  p.add("out.W", T, 2 * H);
  p.add("out.b", T, 1);
  Rng rng(config.seed);
  p.fill_uniform(-0.1, 0.1, rng);

  if (!config.pretrained_vectors_path.empty()) {
    auto vectors = load_word_vectors(config.pretrained_vectors_path);
    Mat& embed = p.at("embed");
    for (int w = 0; w < V; ++w) {
      auto it = vectors.find(vocab.words[w]);
      if (it == vectors.end()) continue;
      if (static_cast<int>(it->second.size()) != E)
        throw std::invalid_argument(
            "pretrained vector dimension " + std::to_string(it->second.size()) +
            " != embed_size " + std::to_string(E));
      for (int i = 0; i < E; ++i) embed(i, w) = it->second[i];
    }
  }
  return p;
}

namespace {

struct TapeLstm {
  Tape& tape;
  TapeParams& tp;
  std::string prefix;
  int H;

  std::pair<Tape::Id, Tape::Id> step(Tape::Id x, Tape::Id h, Tape::Id c) const {
    Tape::Id z = tape.add(tape.add(tape.matmul(tp[prefix + ".Wx"], x),
                                   tape.matmul(tp[prefix + ".Wh"], h)),
                          tp[prefix + ".b"]);
    Tape::Id i = tape.sigmoid_(tape.rows(z, 0, H));
    Tape::Id f = tape.sigmoid_(tape.rows(z, H, H));
    Tape::Id g = tape.tanh_(tape.rows(z, 2 * H, H));
    Tape::Id o = tape.sigmoid_(tape.rows(z, 3 * H, H));
    Tape::Id c2 = tape.add(tape.hadamard(f, c), tape.hadamard(i, g));
    Tape::Id h2 = tape.hadamard(o, tape.tanh_(c2));
    return {h2, c2};
  }
};

std::vector<Tape::Id> utterance_forward(Tape& tape, TapeParams& tp,
                                        const std::vector<int>& word_ids,
                                        const TaggerConfig& config, Rng& rng,
                                        bool training) {
  const int H = config.hidden_size;
  const std::size_t n = word_ids.size();
  const double rate = training ? config.dropout : 0.0;
  Tape::Id zero = tape.leaf(Mat::Zero(H, 1));
  Tape::Id embed = tp["embed"];

  std::vector<Tape::Id> xs(n);
  for (std::size_t t = 0; t < n; ++t)
    xs[t] = tape.dropout(tape.col(embed, word_ids[t]), rate, rng);

  TapeLstm fwd{tape, tp, "fwd", H}, bwd{tape, tp, "bwd", H};
  std::vector<Tape::Id> hf(n), hb(n);
  Tape::Id h = zero, c = zero;
  for (std::size_t t = 0; t < n; ++t) {
    std::tie(h, c) = fwd.step(xs[t], h, c);
    hf[t] = h;
  }
  h = zero;
  c = zero;
  for (std::size_t t = n; t-- > 0;) {
    std::tie(h, c) = bwd.step(xs[t], h, c);
    hb[t] = h;
  }
  std::vector<Tape::Id> logits(n);
  for (std::size_t t = 0; t < n; ++t) {
    Tape::Id hcat = tape.dropout(tape.vconcat(hf[t], hb[t]), rate, rng);
    logits[t] = tape.add(tape.matmul(tp["out.W"], hcat), tp["out.b"]);
  }
  return logits;
}

}  // namespace

TaggerForward tagger_forward_loss(const nn::ParamSet& params,
                                  const std::vector<Utterance>& batch,
                                  const TagVocab& vocab, const TaggerConfig& config,
                                  Rng& rng, bool training) {
  if (batch.empty()) throw std::invalid_argument("tagger_forward_loss: empty batch");
  TaggerForward fr;
  fr.grads = params.zeros_like();
  double loss_sum = 0;
  for (const Utterance& u : batch) {
    Tape tape;
    TapeParams tp(tape, params);
    std::vector<int> word_ids, tag_ids;
    for (const auto& w : u.tokens) word_ids.push_back(vocab.word_id(w));
    for (const auto& t : u.tags) tag_ids.push_back(vocab.tag_id(t.str()));
    auto logits = utterance_forward(tape, tp, word_ids, config, rng, training);
    std::vector<Tape::Id> losses;
    for (std::size_t t = 0; t < logits.size(); ++t)
      losses.push_back(tape.cross_entropy(logits[t], tag_ids[t]));
    Tape::Id total = tape.sum(losses);
    loss_sum += tape.value(total)(0, 0);
    fr.num_tokens += losses.size();
    tape.backward(total);
    tp.accumulate_grads(fr.grads);
  }
  fr.mean_loss = loss_sum / double(fr.num_tokens);
  for (auto& [name, m] : fr.grads.tensors()) m /= double(fr.num_tokens);
  return fr;
}

std::vector<SlotTag> predict_tags(const TrainedTagger& tagger,
                                  const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw std::invalid_argument("predict_tags: empty input");
  Tape tape;
  TapeParams tp(tape, tagger.params);
  std::vector<int> word_ids;
  for (const auto& w : tokens) word_ids.push_back(tagger.vocab.word_id(w));
  Rng rng(0);  // unused: dropout off outside training
  auto logits = utterance_forward(tape, tp, word_ids, tagger.config, rng, false);
  std::vector<SlotTag> out;
  for (Tape::Id id : logits) {
    Eigen::Index best;
    tape.value(id).col(0).maxCoeff(&best);
    out.push_back(SlotTag::parse(tagger.vocab.tags[static_cast<std::size_t>(best)]));
  }
  return out;
}

namespace {

double dev_f1(const TrainedTagger& tagger, const Corpus& dev) {
  std::vector<std::vector<SlotTag>> predicted;
  for (const Utterance& u : dev.utterances)
    predicted.push_back(predict_tags(tagger, u.tokens));
  return chunk_prf(dev, predicted).f1;
}

}  // namespace

TrainedTagger train_tagger(const Corpus& train, const Corpus& dev,
                           const TaggerConfig& config) {
  config.validate();
  if (train.utterances.empty()) throw std::invalid_argument("train_tagger: empty corpus");
  TrainedTagger tagger;
  tagger.config = config;
  tagger.vocab = build_vocab(train, dev);
  tagger.params = init_tagger_params(config, tagger.vocab);

  nn::Adam adam;
  Rng rng(config.seed ^ 0xda3e39cb94b95bdbULL);
  std::vector<std::size_t> order(train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  double best_f1 = -1;
  ParamSet best_params = tagger.params;
  int epochs_since_best = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    shuffle_indices(order, rng);
    double loss_sum = 0;
    std::size_t tok_sum = 0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      std::vector<Utterance> batch;
      for (std::size_t i = start;
           i < std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
           ++i)
        batch.push_back(train.utterances[order[i]]);
      TaggerForward fr =
          tagger_forward_loss(tagger.params, batch, tagger.vocab, config, rng, true);
      if (!std::isfinite(fr.mean_loss))
        throw std::runtime_error("non-finite tagger loss at epoch " +
                                 std::to_string(epoch) + ", batch " +
                                 std::to_string(start / config.batch_size));
      nn::clip_by_global_norm(fr.grads, 5.0);
      adam.step(tagger.params, fr.grads, config.learning_rate);
      loss_sum += fr.mean_loss * double(fr.num_tokens);
      tok_sum += fr.num_tokens;
    }
    TaggerEpochLog entry;
    entry.epoch = epoch;
    entry.train_loss = loss_sum / double(tok_sum);
    if (!dev.utterances.empty()) {
      entry.dev_f1 = dev_f1(tagger, dev);
      if (entry.dev_f1 > best_f1) {
        best_f1 = entry.dev_f1;
        best_params = tagger.params;
        epochs_since_best = 0;
      } else if (++epochs_since_best >= config.patience) {
        tagger.log.push_back(entry);
        break;
      }
    }
    tagger.log.push_back(entry);
  }
  if (!dev.utterances.empty()) tagger.params = std::move(best_params);
  return tagger;
}

std::map<std::string, std::vector<double>> load_word_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open vector file " + path);
  std::map<std::string, std::vector<double>> vectors;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string word;
    ss >> word;
    std::vector<double> vals;
    double v;
    while (ss >> v) vals.push_back(v);
    if (vals.empty())
      throw std::invalid_argument("vector file line without values: " + line);
    vectors[word] = std::move(vals);
  }
  return vectors;
}

void save_tagger(const TrainedTagger& tagger, const std::string& path) {
  nlohmann::json header;
  header["config"] = {{"embed_size", tagger.config.embed_size},
                      {"hidden_size", tagger.config.hidden_size},
                      {"dropout", tagger.config.dropout},
                      {"batch_size", tagger.config.batch_size},
                      {"learning_rate", tagger.config.learning_rate},
                      {"max_epochs", tagger.config.max_epochs},
                      {"patience", tagger.config.patience},
                      {"seed", tagger.config.seed}};
  header["words"] = tagger.vocab.words;
  header["tags"] = tagger.vocab.tags;
  save_checkpoint_file(path, kTaggerMagic, std::move(header), tagger.params);
}

TrainedTagger load_tagger(const std::string& path) {
  LoadedCheckpoint ck = load_checkpoint_file(path, kTaggerMagic);
  TrainedTagger tagger;
  const auto& c = ck.header.at("config");
  tagger.config.embed_size = c.at("embed_size");
  tagger.config.hidden_size = c.at("hidden_size");
  tagger.config.dropout = c.at("dropout");
  tagger.config.batch_size = c.at("batch_size");
  tagger.config.learning_rate = c.at("learning_rate");
  tagger.config.max_epochs = c.at("max_epochs");
  tagger.config.patience = c.at("patience");
  tagger.config.seed = c.at("seed");
  tagger.vocab.words = ck.header.at("words").get<std::vector<std::string>>();
  tagger.vocab.tags = ck.header.at("tags").get<std::vector<std::string>>();
  tagger.params = std::move(ck.params);
  return tagger;
}

}  // namespace slotforge
