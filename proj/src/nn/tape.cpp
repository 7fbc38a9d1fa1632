#include "slotforge/nn/tape.hpp"

#include <cassert>
#include <cmath>

namespace slotforge::nn {

Tape::Id Tape::push(Mat value, std::function<void()> back) {
  Node n;
  n.grad = Mat::Zero(value.rows(), value.cols());
  n.value = std::move(value);
  n.back = std::move(back);
  nodes_.push_back(std::move(n));
  return static_cast<Id>(nodes_.size() - 1);
}

Tape::Id Tape::leaf(const Mat& value) { return push(value); }

Tape::Id Tape::matmul(Id a, Id b) {
  assert(value(a).cols() == value(b).rows());
  Id out = push(value(a) * value(b));
  nodes_[out].back = [this, a, b, out] {
    g(a).noalias() += g(out) * value(b).transpose();
    g(b).noalias() += value(a).transpose() * g(out);
  };
  return out;
}

Tape::Id Tape::add(Id a, Id b) {
  Id out = push(value(a) + value(b));
  nodes_[out].back = [this, a, b, out] {
    g(a) += g(out);
    g(b) += g(out);
  };
  return out;
}

Tape::Id Tape::scale(Id a, double s) {
  Id out = push(value(a) * s);
  nodes_[out].back = [this, a, s, out] { g(a) += g(out) * s; };
  return out;
}

Tape::Id Tape::hadamard(Id a, Id b) {
  Id out = push(value(a).cwiseProduct(value(b)));
  nodes_[out].back = [this, a, b, out] {
    g(a) += g(out).cwiseProduct(value(b));
    g(b) += g(out).cwiseProduct(value(a));
  };
  return out;
}

Tape::Id Tape::tanh_(Id a) {
  Id out = push(value(a).array().tanh().matrix());
  nodes_[out].back = [this, a, out] {
    g(a).array() += g(out).array() * (1.0 - value(out).array().square());
  };
  return out;
}

Tape::Id Tape::sigmoid_(Id a) {
  Id out = push((1.0 / (1.0 + (-value(a).array()).exp())).matrix());
  nodes_[out].back = [this, a, out] {
    g(a).array() += g(out).array() * value(out).array() * (1.0 - value(out).array());
  };
  return out;
}

Tape::Id Tape::rows(Id a, int first, int count) {
  Id out = push(value(a).middleRows(first, count));
  nodes_[out].back = [this, a, first, count, out] {
    g(a).middleRows(first, count) += g(out);
  };
  return out;
}

Tape::Id Tape::col(Id a, int j) {
  Id out = push(value(a).col(j));
  nodes_[out].back = [this, a, j, out] { g(a).col(j) += g(out); };
  return out;
}

Tape::Id Tape::vconcat(Id a, Id b) {
  Mat v(value(a).rows() + value(b).rows(), value(a).cols());
  v << value(a), value(b);
  Id out = push(std::move(v));
  nodes_[out].back = [this, a, b, out] {
    g(a) += g(out).topRows(value(a).rows());
    g(b) += g(out).bottomRows(value(b).rows());
  };
  return out;
}

Tape::Id Tape::hconcat(const std::vector<Id>& cols) {
  assert(!cols.empty());
  const auto r = value(cols.front()).rows();
  Mat v(r, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) v.col(i) = value(cols[i]);
  Id out = push(std::move(v));
  nodes_[out].back = [this, cols, out] {
    for (std::size_t i = 0; i < cols.size(); ++i) g(cols[i]) += g(out).col(i);
  };
  return out;
}

Tape::Id Tape::transpose(Id a) {
  Id out = push(value(a).transpose());
  nodes_[out].back = [this, a, out] { g(a) += g(out).transpose(); };
  return out;
}

Tape::Id Tape::softmax_col(Id a) {
  const Mat& z = value(a);
  Mat s = (z.array() - z.maxCoeff()).exp().matrix();
  s /= s.sum();
  Id out = push(std::move(s));
  nodes_[out].back = [this, a, out] {
    const Mat& s = value(out);
    double dot = s.cwiseProduct(g(out)).sum();
    g(a).array() += s.array() * (g(out).array() - dot);
  };
  return out;
}

Tape::Id Tape::cross_entropy(Id logits, int target) {
  const Mat& z = value(logits);
  double m = z.maxCoeff();
  double lse = m + std::log((z.array() - m).exp().sum());
  Mat loss(1, 1);
  loss(0, 0) = lse - z(target, 0);
  Id out = push(std::move(loss));
  nodes_[out].back = [this, logits, target, out] {
    const Mat& z = value(logits);
    double m = z.maxCoeff();
    Mat p = (z.array() - m).exp().matrix();
    p /= p.sum();
    p(target, 0) -= 1.0;
    g(logits) += g(out)(0, 0) * p;
  };
  return out;
}

Tape::Id Tape::sum(const std::vector<Id>& scalars) {
  Mat v = Mat::Zero(1, 1);
  for (Id s : scalars) v(0, 0) += value(s)(0, 0);
  Id out = push(std::move(v));
  nodes_[out].back = [this, scalars, out] {
    for (Id s : scalars) g(s) += g(out);
  };
  return out;
}

Tape::Id Tape::dropout(Id a, double rate, Rng& rng) {
  if (rate == 0.0) return a;
  const double keep = 1.0 - rate;
  Mat mask(value(a).rows(), value(a).cols());
  for (Eigen::Index i = 0; i < mask.size(); ++i)
    mask.data()[i] = uniform_real(rng, 0.0, 1.0) < keep ? 1.0 / keep : 0.0;
  Id out = push(value(a).cwiseProduct(mask));
  nodes_[out].back = [this, a, out, mask] { g(a) += g(out).cwiseProduct(mask); };
  return out;
}

void Tape::backward(Id loss) {
  assert(nodes_[loss].value.size() == 1);
  nodes_[loss].grad(0, 0) = 1.0;
  for (Id i = loss; i >= 0; --i)
    if (nodes_[i].back) nodes_[i].back();
}

}  // namespace slotforge::nn
