#include "beliefnav/rl/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "beliefnav/common/rng.hpp"

namespace beliefnav::rl {

QNetwork::QNetwork(int in_channels, std::vector<ConvSpec> hidden,
                   std::uint64_t init_seed)
    : in_channels_(in_channels), hidden_(std::move(hidden)) {
  if (in_channels_ < 1) throw std::invalid_argument("QNetwork: in_channels must be >= 1");

  std::size_t offset = 0;
  int ch = in_channels_;
  auto add_layer = [&](int out_ch, int dilation, bool relu) {
    if (out_ch < 1 || dilation < 1)
      throw std::invalid_argument("QNetwork: bad layer spec");
    Layer layer{ch, out_ch, dilation, relu, offset, 0};
    offset += static_cast<std::size_t>(out_ch) * ch * 9;
    layer.bias_offset = offset;
    offset += out_ch;
    layers_.push_back(layer);
    ch = out_ch;
  };
  for (const auto& spec : hidden_) add_layer(spec.out_channels, spec.dilation, true);
  add_layer(1, 1, false);  // dense single-channel Q-map head

  params_.assign(offset, 0.0);
  Rng rng(init_seed);
  for (const auto& layer : layers_) {
    const double limit = std::sqrt(6.0 / (layer.in_channels * 9));
    for (std::size_t i = 0; i < static_cast<std::size_t>(layer.out_channels) *
                                    layer.in_channels * 9;
         ++i)
      params_[layer.weight_offset + i] = rng.uniform_in(-limit, limit);
  }
}

void QNetwork::copy_params_from(const QNetwork& other) {
  if (other.params_.size() != params_.size())
    throw std::invalid_argument("copy_params_from: architecture mismatch");
  params_ = other.params_;
}

void QNetwork::forward(const StateTensor& state, Activations& acts) const {
  if (state.height < 1 || state.width < 1)
    throw std::invalid_argument("QNetwork::forward: empty state");
  const int h = state.height;
  const int w = state.width;
  const std::size_t plane = static_cast<std::size_t>(h) * w;

  acts.height = h;
  acts.width = w;
  acts.input.assign(state.data.begin(), state.data.end());
  acts.outputs.resize(layers_.size());

  const double* in = acts.input.data();
  int in_ch = in_channels_;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    auto& out = acts.outputs[l];
    out.assign(static_cast<std::size_t>(layer.out_channels) * plane, 0.0);

    const int d = layer.dilation;
    for (int co = 0; co < layer.out_channels; ++co) {
      double* out_plane = out.data() + co * plane;
      const double bias = params_[layer.bias_offset + co];
      std::fill(out_plane, out_plane + plane, bias);
      for (int ci = 0; ci < in_ch; ++ci) {
        const double* in_plane = in + ci * plane;
        for (int ky = 0; ky < 3; ++ky) {
          const int oy = (ky - 1) * d;
          const int y0 = std::max(0, -oy);
          const int y1 = std::min(h, h - oy);
          for (int kx = 0; kx < 3; ++kx) {
            const int ox = (kx - 1) * d;
            const int x0 = std::max(0, -ox);
            const int x1 = std::min(w, w - ox);
            if (x0 >= x1) continue;
            const double wv =
                params_[layer.weight_offset +
                        ((static_cast<std::size_t>(co) * in_ch + ci) * 3 + ky) * 3 + kx];
            for (int y = y0; y < y1; ++y) {
              double* dst = out_plane + static_cast<std::size_t>(y) * w + x0;
              const double* src =
                  in_plane + static_cast<std::size_t>(y + oy) * w + x0 + ox;
              for (int x = 0; x < x1 - x0; ++x) dst[x] += wv * src[x];
            }
          }
        }
      }
      if (layer.relu)
        for (std::size_t i = 0; i < plane; ++i)
          out_plane[i] = std::max(0.0, out_plane[i]);
    }
    in = out.data();
    in_ch = layer.out_channels;
  }
}

QMap QNetwork::forward(const StateTensor& state) const {
  Activations acts;
  forward(state, acts);
  return QMap{state.height, state.width, std::move(acts.outputs.back())};
}

void QNetwork::backward_point(const Activations& acts, int row, int col, double dout,
                              std::span<double> grad, BackwardScratch& scratch) const {
  if (grad.size() != params_.size())
    throw std::invalid_argument("backward_point: grad size mismatch");
  const int h = acts.height;
  const int w = acts.width;
  const std::size_t plane = static_cast<std::size_t>(h) * w;

  int max_ch = in_channels_;
  for (const auto& layer : layers_) max_ch = std::max(max_ch, layer.out_channels);
  scratch.grad_a.resize(static_cast<std::size_t>(max_ch) * plane);
  scratch.grad_b.resize(static_cast<std::size_t>(max_ch) * plane);

  // Gradient w.r.t. the current layer's output, nonzero only inside the box.
  double* cur = scratch.grad_a.data();
  double* nxt = scratch.grad_b.data();
  int r0 = row, r1 = row, c0 = col, c1 = col;
  cur[static_cast<std::size_t>(row) * w + col] = dout;

  for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l) {
    const Layer& layer = layers_[l];
    const int d = layer.dilation;
    const double* in_data = l == 0 ? acts.input.data() : acts.outputs[l - 1].data();
    const bool want_input_grad = l > 0;

    // Zero the expanded box in the next-gradient buffer.
    const int nr0 = std::max(0, r0 - d);
    const int nr1 = std::min(h - 1, r1 + d);
    const int nc0 = std::max(0, c0 - d);
    const int nc1 = std::min(w - 1, c1 + d);
    if (want_input_grad) {
      for (int ci = 0; ci < layer.in_channels; ++ci)
        for (int y = nr0; y <= nr1; ++y)
          std::fill_n(nxt + ci * plane + static_cast<std::size_t>(y) * w + nc0,
                      nc1 - nc0 + 1, 0.0);
    }

    for (int co = 0; co < layer.out_channels; ++co) {
      const double* gout_plane = cur + co * plane;
      double* dbias = grad.data() + layer.bias_offset + co;
      for (int y = r0; y <= r1; ++y) {
        for (int x = c0; x <= c1; ++x) {
          const double g = gout_plane[static_cast<std::size_t>(y) * w + x];
          if (g == 0.0) continue;
          *dbias += g;
          for (int ci = 0; ci < layer.in_channels; ++ci) {
            const double* in_plane = in_data + ci * plane;
            double* gin_plane = nxt + ci * plane;
            const std::size_t wbase =
                layer.weight_offset + (static_cast<std::size_t>(co) * layer.in_channels + ci) * 9;
            for (int ky = 0; ky < 3; ++ky) {
              const int iy = y + (ky - 1) * d;
              if (iy < 0 || iy >= h) continue;
              for (int kx = 0; kx < 3; ++kx) {
                const int ix = x + (kx - 1) * d;
                if (ix < 0 || ix >= w) continue;
                const std::size_t in_idx = static_cast<std::size_t>(iy) * w + ix;
                grad[wbase + ky * 3 + kx] += g * in_plane[in_idx];
                if (want_input_grad)
                  gin_plane[in_idx] += g * params_[wbase + ky * 3 + kx];
              }
            }
          }
        }
      }
    }

    if (want_input_grad) {
      // ReLU gate of the previous layer's activations.
      const double* prev = acts.outputs[l - 1].data();
      for (int ci = 0; ci < layer.in_channels; ++ci)
        for (int y = nr0; y <= nr1; ++y)
          for (int x = nc0; x <= nc1; ++x) {
            const std::size_t idx = ci * plane + static_cast<std::size_t>(y) * w + x;
            if (prev[idx] <= 0.0) nxt[idx] = 0.0;
          }
      std::swap(cur, nxt);
      r0 = nr0;
      r1 = nr1;
      c0 = nc0;
      c1 = nc1;
    }
  }
}

QNetwork make_default_qnetwork(std::uint64_t init_seed) {
  return QNetwork(StateTensor::kChannels, {{8, 1}, {8, 2}, {8, 4}}, init_seed);
}

AdamOptimizer::AdamOptimizer(std::size_t param_count, double learning_rate)
    : lr_(learning_rate), m_(param_count, 0.0), v_(param_count, 0.0) {
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("AdamOptimizer: learning rate must be > 0");
}

void AdamOptimizer::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size())
    throw std::invalid_argument("AdamOptimizer: size mismatch");
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  ++t_;
  const double bc1 = 1.0 - std::pow(kBeta1, t_);
  const double bc2 = 1.0 - std::pow(kBeta2, t_);
  for (std::size_t i = 0; i < m_.size(); ++i) {
    m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grad[i];
    v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grad[i] * grad[i];
    params[i] -= lr_ * (m_[i] / bc1) / (std::sqrt(v_[i] / bc2) + kEps);
  }
}

}  // namespace beliefnav::rl
