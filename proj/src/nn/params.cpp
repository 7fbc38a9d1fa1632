#include "slotforge/nn/params.hpp"

#include <cmath>
#include <stdexcept>

namespace slotforge::nn {

Mat& ParamSet::add(const std::string& name, int rows, int cols) {
  if (index_.count(name)) throw std::logic_error("duplicate tensor " + name);
  index_[name] = tensors_.size();
  tensors_.emplace_back(name, Mat::Zero(rows, cols));
  return tensors_.back().second;
}

Mat& ParamSet::at(const std::string& name) {
  return tensors_[index_.at(name)].second;
}

const Mat& ParamSet::at(const std::string& name) const {
  return tensors_[index_.at(name)].second;
}

ParamSet ParamSet::zeros_like() const {
  ParamSet z;
  for (const auto& [name, m] : tensors_)
    z.add(name, static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  return z;
}

void ParamSet::fill_uniform(double lo, double hi, Rng& rng) {
  for (auto& [name, m] : tensors_)
    for (Eigen::Index i = 0; i < m.size(); ++i)
      m.data()[i] = uniform_real(rng, lo, hi);
}

void ParamSet::round_to_f32() {
  for (auto& [name, m] : tensors_)
    for (Eigen::Index i = 0; i < m.size(); ++i)
      m.data()[i] = static_cast<double>(static_cast<float>(m.data()[i]));
}

double ParamSet::grad_norm() const {
  double sq = 0;
  for (const auto& [name, m] : tensors_) sq += m.squaredNorm();
  return std::sqrt(sq);
}

void clip_by_global_norm(ParamSet& grads, double max_norm) {
  if (max_norm <= 0) return;
  double norm = grads.grad_norm();
  if (norm <= max_norm) return;
  double s = max_norm / norm;
  for (auto& [name, m] : grads.tensors()) m *= s;
}

void Adam::step(ParamSet& params, const ParamSet& grads, double lr) {
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, double(t_));
  const double bc2 = 1.0 - std::pow(beta2_, double(t_));
  for (auto& [name, p] : params.tensors()) {
    const Mat& grad = grads.at(name);
    auto [it, fresh] = moments_.try_emplace(
        name, std::make_pair(Mat::Zero(p.rows(), p.cols()), Mat::Zero(p.rows(), p.cols())));
    Mat& m = it->second.first;
    Mat& v = it->second.second;
    m = beta1_ * m + (1.0 - beta1_) * grad;
    v = beta2_ * v + (1.0 - beta2_) * grad.cwiseProduct(grad);
    p.array() -= lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + eps_);
  }
}

Tape::Id TapeParams::operator[](const std::string& name) {
  auto it = bound_.find(name);
  if (it != bound_.end()) return it->second;
  Tape::Id id = tape_.leaf(params_.at(name));
  bound_[name] = id;
  return id;
}

void TapeParams::accumulate_grads(ParamSet& grads) const {
  for (const auto& [name, id] : bound_) grads.at(name) += tape_.grad(id);
}

}  // namespace slotforge::nn
