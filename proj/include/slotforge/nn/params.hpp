#pragma once

#include <map>
#include <string>
#include <vector>

#include "slotforge/nn/tape.hpp"

namespace slotforge::nn {

// Named dense tensors with stable insertion order (the checkpoint manifest
// order and the Adam state order).
class ParamSet {
 public:
  Mat& add(const std::string& name, int rows, int cols);
  Mat& at(const std::string& name);
  const Mat& at(const std::string& name) const;
  bool has(const std::string& name) const { return index_.count(name) > 0; }

  const std::vector<std::pair<std::string, Mat>>& tensors() const { return tensors_; }
  std::vector<std::pair<std::string, Mat>>& tensors() { return tensors_; }

  ParamSet zeros_like() const;
  void fill_uniform(double lo, double hi, Rng& rng);
  // Round every entry through float32; the checkpoint container stores f32.
  void round_to_f32();

  double grad_norm() const;

 private:
  std::vector<std::pair<std::string, Mat>> tensors_;
  std::map<std::string, std::size_t> index_;
};

// Scale gradients so their global L2 norm is at most max_norm.
void clip_by_global_norm(ParamSet& grads, double max_norm);

class Adam {
 public:
  explicit Adam(double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(ParamSet& params, const ParamSet& grads, double lr);

 private:
  double beta1_, beta2_, eps_;
  long t_ = 0;
  std::map<std::string, std::pair<Mat, Mat>> moments_;
};

// Binds ParamSet tensors to tape leaves and reads gradients back out.
class TapeParams {
 public:
  TapeParams(Tape& tape, const ParamSet& params) : tape_(tape), params_(params) {}

  Tape::Id operator[](const std::string& name);

  // Accumulates tape gradients of every bound tensor into grads.
  void accumulate_grads(ParamSet& grads) const;

 private:
  Tape& tape_;
  const ParamSet& params_;
  std::map<std::string, Tape::Id> bound_;
};

}  // namespace slotforge::nn
