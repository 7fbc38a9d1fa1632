#include "slotforge/seq2seq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "json.hpp"
#include "slotforge/checkpoint.hpp"

namespace slotforge {

using nn::Mat;
using nn::ParamSet;
using nn::Tape;
using nn::TapeParams;
using Eigen::VectorXd;

// ---------------------------------------------------------------- vocab

GenVocab GenVocab::from_tokens(std::vector<std::string> tokens) {
  GenVocab v;
  v.id_to_token = std::move(tokens);
  for (std::size_t i = 0; i < v.id_to_token.size(); ++i)
    v.token_to_id[v.id_to_token[i]] = static_cast<int>(i);
  return v;
}

GenVocab GenVocab::build(const std::vector<TranslationPair>& pairs) {
  std::set<std::string> words;
  for (const auto& p : pairs) {
    words.insert(p.source.begin(), p.source.end());
    words.insert(p.target.begin(), p.target.end());
  }
  std::vector<std::string> tokens = {"<pad>", "<s>", "</s>", "<unk>"};
  for (const auto& w : words)
    if (std::find(tokens.begin(), tokens.end(), w) == tokens.end()) tokens.push_back(w);
  return from_tokens(std::move(tokens));
}

int GenVocab::id(const std::string& tok) const {
  auto it = token_to_id.find(tok);
  return it == token_to_id.end() ? kUnk : it->second;
}

void GenConfig::validate() const {
  if (num_layers < 1 || hidden_size < 1 || embed_size < 1 || beam_size < 1 ||
      max_source_len < 2 || batch_size < 1)
    throw std::invalid_argument("invalid generator config");
  if (attention != "general" && attention != "dot")
    throw std::invalid_argument("unknown attention type: " + attention);
}

// ---------------------------------------------------------------- params

nn::ParamSet init_params(const GenConfig& config, const GenVocab& vocab) {
  config.validate();
  const int H = config.hidden_size, E = config.embed_size, V = vocab.size();
  ParamSet p;
  p.add("src_embed", E, V);
  p.add("tgt_embed", E, V);
  for (int l = 0; l < config.num_layers; ++l) {
    int in = l == 0 ? E : H;
    p.add("enc" + std::to_string(l) + ".Wx", 4 * H, in);
    p.add("enc" + std::to_string(l) + ".Wh", 4 * H, H);
    p.add("enc" + std::to_string(l) + ".b", 4 * H, 1);
  }
  if (config.bidirectional) {
    p.add("encb0.Wx", 4 * H, E);
    p.add("encb0.Wh", 4 * H, H);
    p.add("encb0.b", 4 * H, 1);
  }
  for (int l = 0; l < config.num_layers; ++l) {
    int in = l == 0 ? E + H : H;
    p.add("dec" + std::to_string(l) + ".Wx", 4 * H, in);
    p.add("dec" + std::to_string(l) + ".Wh", 4 * H, H);
    p.add("dec" + std::to_string(l) + ".b", 4 * H, 1);
  }
  if (config.attention == "general") p.add("att.Wa", H, H);
  p.add("att.Wc", H, 2 * H);
  p.add("att.bc", H, 1);
  p.add("out.W", V, H);
  p.add("out.b", V, 1);
  Rng rng(config.seed);
  p.fill_uniform(-0.1, 0.1, rng);
  return p;
}

// ------------------------------------------------------------- helpers

namespace {

std::vector<std::string> truncate_source_tokens(const std::vector<std::string>& source,
                                                const GenConfig& config) {
  const std::size_t cap = static_cast<std::size_t>(config.max_source_len);
  if (source.size() <= cap) return source;
  std::vector<std::string> out(source.begin(),
                               source.begin() + static_cast<long>(cap));
  // keep the rank token when truncation would drop it
  if (is_rank_token(source.back()) && !is_rank_token(out.back())) out.back() = source.back();
  return out;
}

std::vector<int> to_ids(const std::vector<std::string>& toks, const GenVocab& vocab) {
  std::vector<int> ids;
  ids.reserve(toks.size());
  for (const auto& t : toks) ids.push_back(vocab.id(t));
  return ids;
}

struct TapeLstm {
  Tape& tape;
  TapeParams& tp;
  std::string prefix;
  int H;

  // returns (h', c')
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

struct PairLoss {
  std::vector<Tape::Id> token_losses;
};

PairLoss pair_forward(Tape& tape, TapeParams& tp, const TranslationPair& pair,
                      const GenVocab& vocab, const GenConfig& config) {
  const int H = config.hidden_size;
  const int L = config.num_layers;
  std::vector<int> src = to_ids(truncate_source_tokens(pair.source, config), vocab);
  std::vector<std::string> tgt_toks = pair.target;
  if (tgt_toks.size() > static_cast<std::size_t>(config.max_source_len))
    tgt_toks.resize(config.max_source_len);
  std::vector<int> out_ids = to_ids(tgt_toks, vocab);
  out_ids.push_back(GenVocab::kEos);

  Tape::Id zero = tape.leaf(Mat::Zero(H, 1));
  Tape::Id src_embed = tp["src_embed"];

  // encoder
  std::vector<Tape::Id> layer_in;
  for (int id : src) layer_in.push_back(tape.col(src_embed, id));
  std::vector<std::pair<Tape::Id, Tape::Id>> enc_final(L);
  for (int l = 0; l < L; ++l) {
    TapeLstm cell{tape, tp, "enc" + std::to_string(l), H};
    Tape::Id h = zero, c = zero;
    std::vector<Tape::Id> outs;
    for (Tape::Id x : layer_in) {
      std::tie(h, c) = cell.step(x, h, c);
      outs.push_back(h);
    }
    if (l == 0 && config.bidirectional) {
      TapeLstm bcell{tape, tp, "encb0", H};
      Tape::Id bh = zero, bc = zero;
      std::vector<Tape::Id> bouts(layer_in.size());
      for (std::size_t t = layer_in.size(); t-- > 0;) {
        std::tie(bh, bc) = bcell.step(layer_in[t], bh, bc);
        bouts[t] = bh;
      }
      for (std::size_t t = 0; t < outs.size(); ++t)
        outs[t] = tape.add(outs[t], bouts[t]);
      h = tape.add(h, bh);
      c = tape.add(c, bc);
    }
    enc_final[l] = {h, c};
    layer_in = std::move(outs);
  }
  Tape::Id Hs = tape.hconcat(layer_in);  // top-layer states, H x n

  // decoder with input feeding
  Tape::Id tgt_embed = tp["tgt_embed"];
  std::vector<std::pair<Tape::Id, Tape::Id>> state = enc_final;
  Tape::Id s_tilde = zero;
  PairLoss loss;
  int prev = GenVocab::kBos;
  for (std::size_t t = 0; t < out_ids.size(); ++t) {
    Tape::Id x = tape.vconcat(tape.col(tgt_embed, prev), s_tilde);
    for (int l = 0; l < L; ++l) {
      TapeLstm cell{tape, tp, "dec" + std::to_string(l), H};
      auto [h2, c2] = cell.step(x, state[l].first, state[l].second);
      state[l] = {h2, c2};
      x = h2;
    }
    Tape::Id query = config.attention == "general" ? tape.matmul(tp["att.Wa"], x) : x;
    Tape::Id scores = tape.matmul(tape.transpose(Hs), query);
    Tape::Id attn = tape.softmax_col(scores);
    Tape::Id ctx = tape.matmul(Hs, attn);
    s_tilde = tape.tanh_(
        tape.add(tape.matmul(tp["att.Wc"], tape.vconcat(ctx, x)), tp["att.bc"]));
    Tape::Id logits = tape.add(tape.matmul(tp["out.W"], s_tilde), tp["out.b"]);
    loss.token_losses.push_back(tape.cross_entropy(logits, out_ids[t]));
    prev = out_ids[t];
  }
  return loss;
}

// Plain (tape-free) path used for decoding and perplexity.
struct PlainState {
  std::vector<std::pair<VectorXd, VectorXd>> layers;  // (h, c) per decoder layer
  VectorXd s_tilde;
};

struct Encoded {
  Mat Hs;  // H x n, top encoder layer
  PlainState init;
};

std::pair<VectorXd, VectorXd> plain_lstm_step(const ParamSet& p, const std::string& prefix,
                                              const VectorXd& x, const VectorXd& h,
                                              const VectorXd& c) {
  const int H = static_cast<int>(h.size());
  VectorXd z = p.at(prefix + ".Wx") * x + p.at(prefix + ".Wh") * h + p.at(prefix + ".b");
  auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  VectorXd i = z.segment(0, H).unaryExpr(sig);
  VectorXd f = z.segment(H, H).unaryExpr(sig);
  VectorXd g = z.segment(2 * H, H).array().tanh();
  VectorXd o = z.segment(3 * H, H).unaryExpr(sig);
  VectorXd c2 = f.cwiseProduct(c) + i.cwiseProduct(g);
  VectorXd h2 = o.cwiseProduct(c2.array().tanh().matrix());
  return {h2, c2};
}

Encoded encode(const ParamSet& p, const std::vector<int>& src, const GenConfig& config) {
  const int H = config.hidden_size;
  const int L = config.num_layers;
  std::vector<VectorXd> layer_in;
  for (int id : src) layer_in.push_back(p.at("src_embed").col(id));
  Encoded enc;
  enc.init.layers.resize(L);
  for (int l = 0; l < L; ++l) {
    std::string prefix = "enc" + std::to_string(l);
    VectorXd h = VectorXd::Zero(H), c = VectorXd::Zero(H);
    std::vector<VectorXd> outs;
    for (const VectorXd& x : layer_in) {
      std::tie(h, c) = plain_lstm_step(p, prefix, x, h, c);
      outs.push_back(h);
    }
    if (l == 0 && config.bidirectional) {
      VectorXd bh = VectorXd::Zero(H), bc = VectorXd::Zero(H);
      std::vector<VectorXd> bouts(layer_in.size());
      for (std::size_t t = layer_in.size(); t-- > 0;) {
        std::tie(bh, bc) = plain_lstm_step(p, "encb0", layer_in[t], bh, bc);
        bouts[t] = bh;
      }
      for (std::size_t t = 0; t < outs.size(); ++t) outs[t] += bouts[t];
      h += bh;
      c += bc;
    }
    enc.init.layers[l] = {h, c};
    layer_in = std::move(outs);
  }
  enc.Hs.resize(H, static_cast<Eigen::Index>(layer_in.size()));
  for (std::size_t t = 0; t < layer_in.size(); ++t) enc.Hs.col(t) = layer_in[t];
  enc.init.s_tilde = VectorXd::Zero(H);
  return enc;
}

struct StepOut {
  VectorXd log_probs;  // over vocab
  VectorXd attention;  // over source positions
  PlainState state;
};

StepOut plain_step(const ParamSet& p, const Encoded& enc, const PlainState& st,
                   int prev_token, const GenConfig& config) {
  const int L = config.num_layers;
  StepOut out;
  out.state = st;
  VectorXd emb = p.at("tgt_embed").col(prev_token);
  VectorXd x(emb.size() + st.s_tilde.size());
  x << emb, st.s_tilde;
  for (int l = 0; l < L; ++l) {
    std::string prefix = "dec" + std::to_string(l);
    auto [h2, c2] =
        plain_lstm_step(p, prefix, x, out.state.layers[l].first, out.state.layers[l].second);
    out.state.layers[l] = {h2, c2};
    x = h2;
  }
  VectorXd query = config.attention == "general" ? VectorXd(p.at("att.Wa") * x) : x;
  VectorXd scores = enc.Hs.transpose() * query;
  VectorXd attn = (scores.array() - scores.maxCoeff()).exp();
  attn /= attn.sum();
  VectorXd ctx = enc.Hs * attn;
  VectorXd cat(ctx.size() + x.size());
  cat << ctx, x;
  VectorXd s_tilde = (p.at("att.Wc") * cat + p.at("att.bc")).array().tanh();
  VectorXd logits = p.at("out.W") * s_tilde + p.at("out.b");
  double m = logits.maxCoeff();
  double lse = m + std::log((logits.array() - m).exp().sum());
  out.log_probs = logits.array() - lse;
  out.attention = std::move(attn);
  out.state.s_tilde = std::move(s_tilde);
  return out;
}

}  // namespace

std::vector<int> source_ids(const std::vector<std::string>& source, const GenVocab& vocab,
                            const GenConfig& config) {
  return to_ids(truncate_source_tokens(source, config), vocab);
}

// --------------------------------------------------------- forward_loss

ForwardResult forward_loss(const nn::ParamSet& params,
                           const std::vector<TranslationPair>& batch,
                           const GenVocab& vocab, const GenConfig& config) {
  if (batch.empty()) throw std::invalid_argument("forward_loss: empty batch");
  ForwardResult fr;
  fr.grads = params.zeros_like();
  double loss_sum = 0;
  for (const TranslationPair& pair : batch) {
    Tape tape;
    TapeParams tp(tape, params);
    PairLoss pl = pair_forward(tape, tp, pair, vocab, config);
    Tape::Id total = tape.sum(pl.token_losses);
    loss_sum += tape.value(total)(0, 0);
    fr.num_tokens += pl.token_losses.size();
    tape.backward(total);
    tp.accumulate_grads(fr.grads);
  }
  fr.mean_loss = loss_sum / double(fr.num_tokens);
  for (auto& [name, m] : fr.grads.tensors()) m /= double(fr.num_tokens);
  return fr;
}

double perplexity(const nn::ParamSet& params, const std::vector<TranslationPair>& pairs,
                  const GenVocab& vocab, const GenConfig& config) {
  if (pairs.empty()) throw std::invalid_argument("perplexity: empty pair list");
  double nll = 0;
  std::size_t tokens = 0;
  for (const TranslationPair& pair : pairs) {
    std::vector<int> src = source_ids(pair.source, vocab, config);
    std::vector<std::string> tgt = pair.target;
    if (tgt.size() > static_cast<std::size_t>(config.max_source_len))
      tgt.resize(config.max_source_len);
    std::vector<int> out_ids = to_ids(tgt, vocab);
    out_ids.push_back(GenVocab::kEos);
    Encoded enc = encode(params, src, config);
    PlainState st = enc.init;
    int prev = GenVocab::kBos;
    for (int id : out_ids) {
      StepOut so = plain_step(params, enc, st, prev, config);
      nll -= so.log_probs(id);
      st = std::move(so.state);
      prev = id;
      ++tokens;
    }
  }
  return std::exp(nll / double(tokens));
}

std::vector<Eigen::VectorXd> step_distributions(const nn::ParamSet& params,
                                                const std::vector<int>& src_ids,
                                                const std::vector<int>& out_ids,
                                                const GenVocab& vocab,
                                                const GenConfig& config) {
  (void)vocab;
  Encoded enc = encode(params, src_ids, config);
  PlainState st = enc.init;
  int prev = GenVocab::kBos;
  std::vector<Eigen::VectorXd> dists;
  for (int id : out_ids) {
    StepOut so = plain_step(params, enc, st, prev, config);
    dists.push_back(so.log_probs.array().exp());
    st = std::move(so.state);
    prev = id;
  }
  return dists;
}

// -------------------------------------------------------------- training

TrainedGenerator train_generator(const std::vector<TranslationPair>& pairs,
                                 const std::vector<TranslationPair>& dev_pairs,
                                 const GenConfig& config) {
  config.validate();
  if (pairs.empty()) throw TrainError("train_generator: no training pairs");
  TrainedGenerator gen;
  gen.config = config;
  gen.vocab = GenVocab::build(pairs);
  gen.params = init_params(config, gen.vocab);

  nn::Adam adam;
  double lr = config.learning_rate;
  Rng shuffle_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  double best_ppl = std::numeric_limits<double>::infinity();
  ParamSet best_params = gen.params;

  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    shuffle_indices(order, shuffle_rng);
    double loss_sum = 0;
    std::size_t tok_sum = 0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      std::vector<TranslationPair> batch;
      for (std::size_t i = start;
           i < std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
           ++i)
        batch.push_back(pairs[order[i]]);
      ForwardResult fr = forward_loss(gen.params, batch, gen.vocab, config);
      if (!std::isfinite(fr.mean_loss))
        throw TrainError("non-finite generator loss at epoch " + std::to_string(epoch) +
                         ", batch " + std::to_string(start / config.batch_size));
      nn::clip_by_global_norm(fr.grads, config.clip_norm);
      adam.step(gen.params, fr.grads, lr);
      loss_sum += fr.mean_loss * double(fr.num_tokens);
      tok_sum += fr.num_tokens;
    }
    GenEpochLog entry;
    entry.epoch = epoch;
    entry.train_loss = loss_sum / double(tok_sum);
    entry.learning_rate = lr;
    if (!dev_pairs.empty()) {
      entry.dev_perplexity = perplexity(gen.params, dev_pairs, gen.vocab, config);
      if (entry.dev_perplexity < best_ppl) {
        best_ppl = entry.dev_perplexity;
        best_params = gen.params;
      } else if (config.lr_halving) {
        lr /= 2;
      }
    }
    gen.log.push_back(entry);
  }
  if (!dev_pairs.empty()) gen.params = std::move(best_params);
  return gen;
}

// ------------------------------------------------------------ beam search

std::vector<Hypothesis> beam_search(const nn::ParamSet& params,
                                    const std::vector<std::string>& source,
                                    const GenVocab& vocab, const GenConfig& config) {
  config.validate();
  std::vector<int> src = source_ids(source, vocab, config);
  if (src.empty()) throw std::invalid_argument("beam_search: empty source");
  const std::size_t cap = config.max_decode_len > 0
                              ? static_cast<std::size_t>(config.max_decode_len)
                              : 2 * src.size() + 5;
  Encoded enc = encode(params, src, config);

  struct Beam {
    PlainState state;
    std::vector<int> ids;
    double logp = 0;
    std::vector<VectorXd> att;
  };
  std::vector<Beam> live{{enc.init, {}, 0.0, {}}};
  std::vector<Beam> completed;

  for (std::size_t step = 0; step < cap && !live.empty(); ++step) {
    struct Cand {
      std::size_t parent;
      int token;
      double logp;
    };
    std::vector<Cand> cands;
    std::vector<StepOut> outs(live.size());
    for (std::size_t i = 0; i < live.size(); ++i) {
      int prev = live[i].ids.empty() ? GenVocab::kBos : live[i].ids.back();
      outs[i] = plain_step(params, enc, live[i].state, prev, config);
      // top beam_size expansions of this hypothesis
      std::vector<int> toks(vocab.size());
      for (int t = 0; t < vocab.size(); ++t) toks[t] = t;
      std::size_t k = std::min<std::size_t>(config.beam_size, toks.size());
      std::partial_sort(toks.begin(), toks.begin() + static_cast<long>(k), toks.end(),
                        [&](int a, int b) {
                          double la = outs[i].log_probs(a), lb = outs[i].log_probs(b);
                          if (la != lb) return la > lb;
                          return a < b;
                        });
      for (std::size_t t = 0; t < k; ++t)
        cands.push_back({i, toks[t], live[i].logp + outs[i].log_probs(toks[t])});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.logp != b.logp) return a.logp > b.logp;
      if (a.token != b.token) return a.token < b.token;
      return a.parent < b.parent;
    });
    std::vector<Beam> next;
    for (const Cand& c : cands) {
      if (next.size() + 0 >= static_cast<std::size_t>(config.beam_size) &&
          completed.size() >= static_cast<std::size_t>(config.beam_size))
        break;
      Beam b;
      b.ids = live[c.parent].ids;
      b.ids.push_back(c.token);
      b.logp = c.logp;
      b.att = live[c.parent].att;
      b.att.push_back(outs[c.parent].attention);
      b.state = outs[c.parent].state;
      if (c.token == GenVocab::kEos) {
        completed.push_back(std::move(b));
      } else if (next.size() < static_cast<std::size_t>(config.beam_size)) {
        next.push_back(std::move(b));
      }
    }
    live = std::move(next);
  }
  // force-complete anything still live at the cap
  for (Beam& b : live) completed.push_back(std::move(b));

  std::sort(completed.begin(), completed.end(), [](const Beam& a, const Beam& b) {
    if (a.logp != b.logp) return a.logp > b.logp;
    return a.ids < b.ids;
  });
  if (completed.size() > static_cast<std::size_t>(config.beam_size))
    completed.resize(config.beam_size);

  std::vector<Hypothesis> hyps;
  for (Beam& b : completed)
    hyps.push_back({std::move(b.ids), b.logp, std::move(b.att)});
  return hyps;
}

std::vector<std::string> unk_replace(const Hypothesis& hyp,
                                     const std::vector<std::string>& source,
                                     const GenVocab& vocab) {
  // attention positions index the truncated source the decoder saw
  std::vector<std::string> src = source;
  if (!hyp.attention.empty() &&
      static_cast<std::size_t>(hyp.attention.front().size()) < src.size()) {
    std::vector<std::string> cut(src.begin(),
                                 src.begin() + hyp.attention.front().size());
    if (is_rank_token(src.back())) cut.back() = src.back();
    src = std::move(cut);
  }
  std::vector<std::string> out;
  for (std::size_t t = 0; t < hyp.ids.size(); ++t) {
    int id = hyp.ids[t];
    if (id == GenVocab::kEos) break;
    if (id != GenVocab::kUnk) {
      out.push_back(vocab.token(id));
      continue;
    }
    const VectorXd& att = hyp.attention.at(t);
    std::size_t n = static_cast<std::size_t>(att.size());
    std::size_t limit = n;
    if (!src.empty() && is_rank_token(src.back()) && n == src.size() && n > 1)
      limit = n - 1;  // rank token position excluded
    std::size_t best = 0;
    for (std::size_t i = 1; i < limit; ++i)
      if (att(i) > att(best)) best = i;  // ties stay leftmost
    out.push_back(src.at(best));
  }
  return out;
}

// ------------------------------------------------------------ checkpoints

namespace {

nlohmann::json config_to_json(const GenConfig& c) {
  return {{"num_layers", c.num_layers},       {"hidden_size", c.hidden_size},
          {"embed_size", c.embed_size},       {"max_source_len", c.max_source_len},
          {"beam_size", c.beam_size},         {"batch_size", c.batch_size},
          {"learning_rate", c.learning_rate}, {"lr_halving", c.lr_halving},
          {"max_epochs", c.max_epochs},       {"clip_norm", c.clip_norm},
          {"seed", c.seed},                   {"attention", c.attention},
          {"bidirectional", c.bidirectional}, {"max_decode_len", c.max_decode_len}};
}

GenConfig config_from_json(const nlohmann::json& j) {
  GenConfig c;
  c.num_layers = j.at("num_layers");
  c.hidden_size = j.at("hidden_size");
  c.embed_size = j.at("embed_size");
  c.max_source_len = j.at("max_source_len");
  c.beam_size = j.at("beam_size");
  c.batch_size = j.at("batch_size");
  c.learning_rate = j.at("learning_rate");
  c.lr_halving = j.at("lr_halving");
  c.max_epochs = j.at("max_epochs");
  c.clip_norm = j.at("clip_norm");
  c.seed = j.at("seed");
  c.attention = j.at("attention");
  c.bidirectional = j.at("bidirectional");
  c.max_decode_len = j.at("max_decode_len");
  return c;
}

}  // namespace

void save_generator(const TrainedGenerator& gen, const std::string& path) {
  nlohmann::json header;
  header["config"] = config_to_json(gen.config);
  header["vocab"] = gen.vocab.id_to_token;
  save_checkpoint_file(path, kGenMagic, std::move(header), gen.params);
}

TrainedGenerator load_generator(const std::string& path) {
  LoadedCheckpoint ck = load_checkpoint_file(path, kGenMagic);
  TrainedGenerator gen;
  gen.config = config_from_json(ck.header.at("config"));
  gen.vocab = GenVocab::from_tokens(ck.header.at("vocab").get<std::vector<std::string>>());
  gen.params = std::move(ck.params);
  return gen;
}

}  // namespace slotforge
