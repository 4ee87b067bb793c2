#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "beliefnav/rl/state_tensor.hpp"

namespace beliefnav::rl {

// Dense map of goal values over the grid.
struct QMap {
  int height = 0;
  int width = 0;
  std::vector<double> values;  // row-major

  double at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * width + col];
  }
};

struct ConvSpec {
  int out_channels = 8;
  int dilation = 1;  // 3x3 kernel, 'same' padding = dilation
};

// Fully-convolutional value network: a stack of 3x3 convolutions with ReLU
// between them, shape-preserving, single-channel output. Parameters live in
// one flat vector so the optimizer, checkpointing, and finite-difference
// checks all address them uniformly.
class QNetwork {
 public:
  QNetwork(int in_channels, std::vector<ConvSpec> hidden, std::uint64_t init_seed);

  int in_channels() const { return in_channels_; }
  const std::vector<ConvSpec>& hidden() const { return hidden_; }
  std::size_t param_count() const { return params_.size(); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }
  void copy_params_from(const QNetwork& other);

  // Scratch space for a forward pass; reusable across calls of equal shape.
  struct Activations {
    int height = 0;
    int width = 0;
    std::vector<double> input;                 // in_channels * H * W
    std::vector<std::vector<double>> outputs;  // per conv layer, post-ReLU
  };

  void forward(const StateTensor& state, Activations& acts) const;
  QMap forward(const StateTensor& state) const;

  struct BackwardScratch {
    std::vector<double> grad_a;
    std::vector<double> grad_b;
  };

  // Accumulates d(output[row, col] * dout)/d(params) into `grad` (same flat
  // layout as params()). The output gradient of the goal-level loss touches
  // a single cell, so the backward pass walks only the growing receptive
  // box around it.
  void backward_point(const Activations& acts, int row, int col, double dout,
                      std::span<double> grad, BackwardScratch& scratch) const;

 private:
  struct Layer {
    int in_channels;
    int out_channels;
    int dilation;
    bool relu;
    std::size_t weight_offset;  // [out][in][3][3] in params_
    std::size_t bias_offset;    // [out]
  };

  int in_channels_;
  std::vector<ConvSpec> hidden_;
  std::vector<Layer> layers_;
  std::vector<double> params_;
};

// Production architecture: dilations widen the receptive field so goal
// values can reflect both local belief structure and robot proximity.
QNetwork make_default_qnetwork(std::uint64_t init_seed);

// Adam with bias correction; beta1=0.9, beta2=0.999, eps=1e-8.
class AdamOptimizer {
 public:
  AdamOptimizer(std::size_t param_count, double learning_rate);
  void step(std::span<double> params, std::span<const double> grad);
  long steps_taken() const { return t_; }

 private:
  double lr_;
  long t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

}  // namespace beliefnav::rl
