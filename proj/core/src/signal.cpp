#include "ghr/signal.hpp"

#include <cmath>
#include <functional>

#include "ghr/errors.hpp"
#include "ghr/random.hpp"

namespace ghr {
namespace {

constexpr double kArCoefficient = 0.8;
constexpr double kFirCoefficient = 0.5;

void validate(std::size_t taps, std::size_t n, double snr_db) {
  if (taps == 0) {
    throw ConfigError("system needs at least one tap");
  }
  if (n <= taps) {
    throw ConfigError("signal length must exceed the tap count");
  }
  if (std::isnan(snr_db) || snr_db == -INFINITY) {
    throw ConfigError("snr_db must be finite or +inf");
  }
}

std::vector<Quaternion> input_process(SignalKind kind, std::size_t count, Rng rng) {
  std::vector<Quaternion> u(count);
  Quaternion previous_noise = rng.gaussian_quaternion(1.0);
  Quaternion state = previous_noise;
  const double ar_gain = std::sqrt(1.0 - kArCoefficient * kArCoefficient);
  const double fir_gain = 1.0 / std::sqrt(1.0 + kFirCoefficient * kFirCoefficient);
  for (std::size_t n = 0; n < count; ++n) {
    const Quaternion w = rng.gaussian_quaternion(1.0);
    switch (kind) {
      case SignalKind::white_circular:
        u[n] = w;
        break;
      case SignalKind::ar1:
        state = kArCoefficient * state + ar_gain * w;
        u[n] = state;
        break;
      case SignalKind::fir_channel:
        u[n] = fir_gain * (w + kFirCoefficient * previous_noise);
        break;
    }
    previous_noise = w;
  }
  return u;
}

std::vector<Sample> build(SignalKind kind, std::size_t taps, std::size_t n, double snr_db,
                          std::uint64_t seed,
                          const std::function<Quaternion(const QVector&)>& model) {
  validate(taps, n, snr_db);
  const Rng root(seed);
  const std::vector<Quaternion> u = input_process(kind, n + taps - 1, root.split(1));

  std::vector<Sample> samples(n);
  double signal_power = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    QVector x(taps);
    for (std::size_t m = 0; m < taps; ++m) {
      x[m] = u[k + taps - 1 - m];
    }
    samples[k].d = model(x);
    signal_power += modulus_squared(samples[k].d);
    samples[k].x = std::move(x);
  }
  signal_power /= static_cast<double>(n);

  if (std::isfinite(snr_db)) {
    const double noise_power = signal_power / std::pow(10.0, snr_db / 10.0);
    const double sigma = std::sqrt(noise_power / 4.0);
    Rng noise = root.split(2);
    for (Sample& s : samples) {
      s.d += noise.gaussian_quaternion(sigma);
    }
  }
  return samples;
}

}  // namespace

std::string signal_kind_name(SignalKind kind) {
  switch (kind) {
    case SignalKind::white_circular:
      return "white_circular";
    case SignalKind::ar1:
      return "ar1";
    case SignalKind::fir_channel:
      return "fir_channel";
  }
  return "unknown";
}

std::optional<SignalKind> signal_kind_from_name(const std::string& name) {
  if (name == "white_circular") return SignalKind::white_circular;
  if (name == "ar1") return SignalKind::ar1;
  if (name == "fir_channel") return SignalKind::fir_channel;
  return std::nullopt;
}

std::vector<Sample> generate_signal(SignalKind kind, const QVector& taps, std::size_t n,
                                    double snr_db, std::uint64_t seed, const Nonlinearity* output) {
  return build(kind, taps.size(), n, snr_db, seed, [&](const QVector& x) {
    const Quaternion s = transpose_product(taps, x);
    return output ? output->phi(s) : s;
  });
}

std::vector<Sample> generate_signal(SignalKind kind, const WidelyLinearSystem& system,
                                    std::size_t n, double snr_db, std::uint64_t seed) {
  const std::size_t taps = system.h.size();
  if (system.g.size() != taps || system.u.size() != taps || system.v.size() != taps) {
    throw ConfigError("widely linear system vectors must share one length");
  }
  return build(kind, taps, n, snr_db, seed, [&](const QVector& x) {
    return hermitian_product(system.h, x) + hermitian_product(system.g, involution(x, Axis::i)) +
           hermitian_product(system.u, involution(x, Axis::j)) +
           hermitian_product(system.v, involution(x, Axis::k));
  });
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.steps == 0) {
    throw ConfigError("experiment needs at least one step");
  }
  std::optional<Nonlinearity> phi;
  if (config.variant == Variant::QNGD) {
    phi = nonlinearity_from_name(config.nonlinearity);
    if (!phi) {
      throw ConfigError("unknown nonlinearity '" + config.nonlinearity + "'");
    }
  }

  const bool widely = config.variant == Variant::WLQLMS;
  const std::size_t taps = widely ? config.wl_system.h.size() : config.taps.size();
  const std::vector<Sample> samples =
      widely ? generate_signal(config.signal, config.wl_system, config.steps, config.snr_db,
                               config.seed)
             : generate_signal(config.signal, config.taps, config.steps, config.snr_db,
                               config.seed, phi ? &*phi : nullptr);

  FilterState state = make_filter(config.variant, taps, config.alpha, phi);

  auto weight_error = [&]() {
    if (!widely) {
      double sum = 0.0;
      for (std::size_t m = 0; m < taps; ++m) {
        sum += modulus_squared(state.w[m] - config.taps[m]);
      }
      return std::sqrt(sum);
    }
    const WidelyLinearSystem& sys = config.wl_system;
    double sum = 0.0;
    for (std::size_t m = 0; m < taps; ++m) {
      sum += modulus_squared(state.h[m] - sys.h[m]) + modulus_squared(state.g[m] - sys.g[m]) +
             modulus_squared(state.u[m] - sys.u[m]) + modulus_squared(state.v[m] - sys.v[m]);
    }
    return std::sqrt(sum);
  };
  auto weight_norm = [&]() {
    if (!widely) return norm(state.w);
    return std::sqrt(norm(state.h) * norm(state.h) + norm(state.g) * norm(state.g) +
                     norm(state.u) * norm(state.u) + norm(state.v) * norm(state.v));
  };

  ExperimentResult result;
  result.seed = config.seed;
  result.steps = config.steps;
  result.mse_curve.reserve(config.steps);
  result.weight_error_curve.reserve(config.steps);
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const Quaternion e = filter_step(state, samples[n].x, samples[n].d);
    const double wn = weight_norm();
    const double sq_error = modulus_squared(e);
    if (!(wn <= kDivergenceLimit) || !std::isfinite(sq_error)) {
      throw DivergenceError("filter diverged at step " + std::to_string(n), n);
    }
    result.mse_curve.push_back(sq_error);
    result.weight_error_curve.push_back(weight_error());
  }
  result.final_weight_error = result.weight_error_curve.back();
  return result;
}

}  // namespace ghr
