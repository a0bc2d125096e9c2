#include "aztext/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "aztext/errors.hpp"

namespace aztext {

namespace {

bool finite(double x) { return std::isfinite(x); }

// Activations of every layer after the input for one sample. activ.back()
// holds softmax probabilities; the rest hold tanh outputs.
void forward(const MlpModel& model, const SparseVector& x,
             std::vector<std::vector<double>>& activ) {
  std::size_t gaps = model.weights.size();
  activ.resize(gaps);
  for (std::size_t l = 0; l < gaps; ++l) {
    std::size_t out = model.layer_sizes[l + 1];
    activ[l].assign(model.biases[l].begin(), model.biases[l].end());
    const std::vector<double>& W = model.weights[l];
    if (l == 0) {
      for (const auto& e : x.entries) {
        const double* row = W.data() + static_cast<std::size_t>(e.index) * out;
        for (std::size_t j = 0; j < out; ++j) activ[l][j] += e.value * row[j];
      }
    } else {
      const std::vector<double>& prev = activ[l - 1];
      for (std::size_t i = 0; i < prev.size(); ++i) {
        if (prev[i] == 0.0) continue;
        const double* row = W.data() + i * out;
        for (std::size_t j = 0; j < out; ++j) activ[l][j] += prev[i] * row[j];
      }
    }
    if (l + 1 < gaps) {
      for (double& z : activ[l]) z = std::tanh(z);
    }
  }
  // softmax on the last layer via logsumexp
  std::vector<double>& z = activ.back();
  double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

struct PackLayout {
  std::vector<std::size_t> w_offset;
  std::vector<std::size_t> b_offset;
  std::size_t total = 0;
};

PackLayout layout_of(const MlpModel& model) {
  PackLayout layout;
  std::size_t pos = 0;
  for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
    std::size_t in = model.layer_sizes[l];
    std::size_t out = model.layer_sizes[l + 1];
    layout.w_offset.push_back(pos);
    pos += in * out;
    layout.b_offset.push_back(pos);
    pos += out;
  }
  layout.total = pos;
  return layout;
}

}  // namespace

MlpModel init_mlp(std::uint32_t input_size, const std::vector<std::uint32_t>& hidden,
                  std::uint32_t output_size, std::uint64_t seed) {
  if (input_size == 0 || output_size == 0) throw Error("layer sizes must be positive");
  for (std::uint32_t h : hidden) {
    if (h == 0) throw Error("layer sizes must be positive");
  }

  MlpModel model;
  model.seed = seed;
  model.layer_sizes.push_back(input_size);
  model.layer_sizes.insert(model.layer_sizes.end(), hidden.begin(), hidden.end());
  model.layer_sizes.push_back(output_size);

  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
    std::size_t in = model.layer_sizes[l];
    std::size_t out = model.layer_sizes[l + 1];
    double r = std::sqrt(6.0 / static_cast<double>(in + out));
    std::vector<double> W(in * out);
    for (double& w : W) w = r * (2.0 * uniform_unit(rng) - 1.0);
    model.weights.push_back(std::move(W));
    model.biases.emplace_back(out, 0.0);
  }
  return model;
}

std::vector<double> mlp_probabilities(const MlpModel& model, const SparseVector& x) {
  std::vector<std::vector<double>> activ;
  forward(model, x, activ);
  return activ.back();
}

std::uint32_t mlp_predict(const MlpModel& model, const SparseVector& x) {
  return static_cast<std::uint32_t>(argmax_lowest(mlp_probabilities(model, x)));
}

std::vector<double> mlp_pack(const MlpModel& model) {
  PackLayout layout = layout_of(model);
  std::vector<double> params(layout.total);
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    std::copy(model.weights[l].begin(), model.weights[l].end(),
              params.begin() + static_cast<std::ptrdiff_t>(layout.w_offset[l]));
    std::copy(model.biases[l].begin(), model.biases[l].end(),
              params.begin() + static_cast<std::ptrdiff_t>(layout.b_offset[l]));
  }
  return params;
}

void mlp_unpack(MlpModel& model, const std::vector<double>& params) {
  PackLayout layout = layout_of(model);
  if (params.size() != layout.total) throw LengthMismatch(params.size(), layout.total);
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    std::copy_n(params.begin() + static_cast<std::ptrdiff_t>(layout.w_offset[l]),
                model.weights[l].size(), model.weights[l].begin());
    std::copy_n(params.begin() + static_cast<std::ptrdiff_t>(layout.b_offset[l]),
                model.biases[l].size(), model.biases[l].begin());
  }
}

namespace {

// Mean cross-entropy and its packed gradient over the given sample indices.
double loss_and_gradient_on(const MlpModel& model, const LabeledDataset& data,
                            const std::vector<std::size_t>& samples, std::vector<double>* grad) {
  PackLayout layout = layout_of(model);
  if (grad) grad->assign(layout.total, 0.0);

  double loss = 0.0;
  double inv_n = 1.0 / static_cast<double>(samples.size());
  std::vector<std::vector<double>> activ;
  std::vector<double> delta, delta_prev;
  for (std::size_t idx : samples) {
    const SparseVector& x = data.X[idx];
    std::uint32_t label = data.y[idx];
    forward(model, x, activ);
    double p = activ.back()[label];
    // No clamp: softmax underflow to an exact 0 must surface as an infinite
    // loss so the divergence check can fire.
    loss -= inv_n * std::log(p);
    if (!grad) continue;

    // delta at the output: (softmax - onehot) * inv_n
    delta.assign(activ.back().begin(), activ.back().end());
    delta[label] -= 1.0;
    for (double& d : delta) d *= inv_n;

    for (std::size_t l = model.weights.size(); l-- > 0;) {
      std::size_t out = model.layer_sizes[l + 1];
      double* gw = grad->data() + layout.w_offset[l];
      double* gb = grad->data() + layout.b_offset[l];
      for (std::size_t j = 0; j < out; ++j) gb[j] += delta[j];
      if (l == 0) {
        for (const auto& e : x.entries) {
          double* row = gw + static_cast<std::size_t>(e.index) * out;
          for (std::size_t j = 0; j < out; ++j) row[j] += e.value * delta[j];
        }
      } else {
        const std::vector<double>& prev = activ[l - 1];
        for (std::size_t i = 0; i < prev.size(); ++i) {
          if (prev[i] == 0.0) continue;
          double* row = gw + i * out;
          for (std::size_t j = 0; j < out; ++j) row[j] += prev[i] * delta[j];
        }
        // propagate through tanh: delta_prev = (W delta) . (1 - a^2)
        delta_prev.assign(prev.size(), 0.0);
        const std::vector<double>& W = model.weights[l];
        for (std::size_t i = 0; i < prev.size(); ++i) {
          const double* row = W.data() + i * out;
          double s = 0.0;
          for (std::size_t j = 0; j < out; ++j) s += row[j] * delta[j];
          delta_prev[i] = s * (1.0 - prev[i] * prev[i]);
        }
        delta.swap(delta_prev);
      }
    }
  }
  return loss;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

void train_quasi_newton(MlpModel& model, const LabeledDataset& data, const MlpOptions& opt) {
  const std::size_t memory = 10;
  const double c1 = 1e-4;
  std::vector<std::size_t> samples = all_indices(data.X.size());

  std::vector<double> params = mlp_pack(model);
  std::vector<double> g;
  double f = loss_and_gradient_on(model, data, samples, &g);
  if (!finite(f)) throw NonFiniteLoss();

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<double> d, trial, g_new, alpha;

  for (std::uint32_t iter = 0; iter < opt.max_iters; ++iter) {
    // Two-loop recursion for d = -H g
    d = g;
    alpha.assign(s_hist.size(), 0.0);
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      double a = rho_hist[k] * std::inner_product(s_hist[k].begin(), s_hist[k].end(), d.begin(), 0.0);
      alpha[k] = a;
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= a * y_hist[k][i];
    }
    if (!s_hist.empty()) {
      const std::vector<double>& s = s_hist.back();
      const std::vector<double>& yv = y_hist.back();
      double sy = std::inner_product(s.begin(), s.end(), yv.begin(), 0.0);
      double yy = std::inner_product(yv.begin(), yv.end(), yv.begin(), 0.0);
      if (yy > 0.0) {
        double gamma = sy / yy;
        for (double& v : d) v *= gamma;
      }
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      double beta = rho_hist[k] * std::inner_product(y_hist[k].begin(), y_hist[k].end(), d.begin(), 0.0);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] += (alpha[k] - beta) * s_hist[k][i];
    }
    for (double& v : d) v = -v;

    double gd = std::inner_product(g.begin(), g.end(), d.begin(), 0.0);
    if (gd >= 0.0) {  // not a descent direction; fall back to steepest descent
      d = g;
      for (double& v : d) v = -v;
      gd = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
    }
    if (gd > -1e-18) break;  // gradient effectively zero

    double step = 1.0;
    if (s_hist.empty()) {
      double gnorm = std::sqrt(-gd);
      step = std::min(1.0, 1.0 / std::max(gnorm, 1e-12));
    }

    bool accepted = false;
    double f_new = f;
    for (int ls = 0; ls < 50; ++ls) {
      trial.resize(params.size());
      for (std::size_t i = 0; i < params.size(); ++i) trial[i] = params[i] + step * d[i];
      mlp_unpack(model, trial);
      f_new = loss_and_gradient_on(model, data, samples, &g_new);
      if (finite(f_new) && f_new <= f + c1 * step * gd) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      mlp_unpack(model, params);  // restore the last good point
      break;
    }

    std::vector<double> s(params.size()), yv(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
      s[i] = trial[i] - params[i];
      yv[i] = g_new[i] - g[i];
    }
    double sy = std::inner_product(s.begin(), s.end(), yv.begin(), 0.0);
    if (sy > 1e-12) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(yv));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    double decrease = f - f_new;
    params.swap(trial);
    f = f_new;
    g.swap(g_new);
    if (decrease < opt.tol) break;
  }
  if (!finite(f)) throw NonFiniteLoss();
  mlp_unpack(model, params);
}

void train_minibatch_sgd(MlpModel& model, const LabeledDataset& data, const MlpOptions& opt) {
  std::size_t n = data.X.size();
  std::mt19937_64 rng(opt.seed);
  std::vector<std::size_t> order = all_indices(n);
  std::vector<std::size_t> all = all_indices(n);
  std::vector<std::size_t> batch;
  std::vector<double> params = mlp_pack(model);
  std::vector<double> grad;

  double prev_loss = loss_and_gradient_on(model, data, all, nullptr);
  if (!finite(prev_loss)) throw NonFiniteLoss();
  std::size_t batch_size = std::max<std::size_t>(1, opt.batch_size);

  for (std::uint32_t epoch = 0; epoch < opt.max_iters; ++epoch) {
    deterministic_shuffle(order, rng);
    for (std::size_t start = 0; start < n; start += batch_size) {
      std::size_t end = std::min(n, start + batch_size);
      batch.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                   order.begin() + static_cast<std::ptrdiff_t>(end));
      loss_and_gradient_on(model, data, batch, &grad);
      for (std::size_t i = 0; i < params.size(); ++i) {
        params[i] -= opt.learning_rate * grad[i];
      }
      mlp_unpack(model, params);
    }
    double loss = loss_and_gradient_on(model, data, all, nullptr);
    if (!finite(loss)) throw NonFiniteLoss();
    double decrease = prev_loss - loss;
    prev_loss = loss;
    if (decrease < opt.tol) break;
  }
}

}  // namespace

MlpModel train_mlp(const LabeledDataset& data, const MlpOptions& options) {
  validate_for_training(data);
  if (options.hidden.empty()) throw Error("hidden layer list must be non-empty");
  if (options.max_iters < 1) throw Error("max_iters must be >= 1");
  if (data.vocab_size == 0) throw Error("vocab_size must be set on the dataset");

  MlpModel model = init_mlp(static_cast<std::uint32_t>(data.vocab_size), options.hidden,
                            static_cast<std::uint32_t>(data.class_names.size()), options.seed);
  if (options.solver == MlpSolver::quasi_newton) {
    train_quasi_newton(model, data, options);
  } else {
    train_minibatch_sgd(model, data, options);
  }
  return model;
}

double mlp_loss(const MlpModel& model, const LabeledDataset& data) {
  std::vector<std::size_t> samples(data.X.size());
  std::iota(samples.begin(), samples.end(), std::size_t{0});
  return loss_and_gradient_on(model, data, samples, nullptr);
}

double mlp_loss_and_gradient(const MlpModel& model, const LabeledDataset& data,
                             std::vector<double>& grad) {
  std::vector<std::size_t> samples(data.X.size());
  std::iota(samples.begin(), samples.end(), std::size_t{0});
  return loss_and_gradient_on(model, data, samples, &grad);
}

}  // namespace aztext
