#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "slotforge/rng.hpp"

namespace slotforge::nn {

using Mat = Eigen::MatrixXd;

// Reverse-mode autodiff over dense double matrices. Nodes are created in
// forward order; backward() replays the tape in reverse. One tape per
// forward pass; ids index into the tape.
class Tape {
 public:
  using Id = int;

  Id leaf(const Mat& value);

  Id matmul(Id a, Id b);
  Id add(Id a, Id b);
  Id scale(Id a, double s);
  Id hadamard(Id a, Id b);
  Id tanh_(Id a);
  Id sigmoid_(Id a);
  Id rows(Id a, int first, int count);
  Id col(Id a, int j);
  Id vconcat(Id a, Id b);
  Id hconcat(const std::vector<Id>& cols);
  Id transpose(Id a);
  Id softmax_col(Id a);  // column-vector softmax
  // -log softmax(logits)[target], a 1x1 node.
  Id cross_entropy(Id logits, int target);
  Id sum(const std::vector<Id>& scalars);  // 1x1 nodes
  // Inverted dropout; identity when rate == 0.
  Id dropout(Id a, double rate, Rng& rng);

  const Mat& value(Id id) const { return nodes_[id].value; }
  const Mat& grad(Id id) const { return nodes_[id].grad; }

  void backward(Id loss);

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Mat value;
    Mat grad;
    std::function<void()> back;  // null for leaves
  };

  Id push(Mat value, std::function<void()> back = nullptr);
  Mat& g(Id id) { return nodes_[id].grad; }

  std::vector<Node> nodes_;
};

}  // namespace slotforge::nn
