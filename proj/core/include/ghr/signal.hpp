#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghr/filters.hpp"

namespace ghr {

// Input processes; every component has unit variance.
//   white_circular  i.i.d. quaternion Gaussian samples
//   ar1             u(n) = 0.8 u(n-1) + 0.6 w(n)
//   fir_channel     u(n) = (w(n) + 0.5 w(n-1)) / sqrt(1.25)
enum class SignalKind { white_circular, ar1, fir_channel };

std::string signal_kind_name(SignalKind kind);
std::optional<SignalKind> signal_kind_from_name(const std::string& name);

struct Sample {
  QVector x;  // [u(n), u(n-1), ..., u(n-L+1)]
  Quaternion d;
};

// d = h^H x + g^H x^i + u^H x^j + v^H x^k
struct WidelyLinearSystem {
  QVector h;
  QVector g;
  QVector u;
  QVector v;
};

// Desired output d = taps^T x (passed through `output` when given) plus circular white
// Gaussian noise at snr_db, where SNR = 10 log10(mean |clean d|^2 / mean |noise|^2).
// snr_db = +inf disables noise. Random streams: input = Rng(seed).split(1),
// noise = Rng(seed).split(2). Throws ConfigError for n <= taps, empty taps or a
// NaN / -inf SNR.
std::vector<Sample> generate_signal(SignalKind kind, const QVector& taps, std::size_t n,
                                    double snr_db, std::uint64_t seed,
                                    const Nonlinearity* output = nullptr);

std::vector<Sample> generate_signal(SignalKind kind, const WidelyLinearSystem& system,
                                    std::size_t n, double snr_db, std::uint64_t seed);

struct ExperimentConfig {
  Variant variant = Variant::QLMS;
  SignalKind signal = SignalKind::white_circular;
  QVector taps;                   // ground truth for QLMS and QNGD
  WidelyLinearSystem wl_system;   // ground truth for WL-QLMS
  double alpha = 0.01;
  std::size_t steps = 5000;
  double snr_db = 30.0;
  std::uint64_t seed = 1;
  std::string nonlinearity = "identity";  // QNGD only; also shapes the desired signal
};

struct ExperimentResult {
  std::vector<double> mse_curve;           // |e(n)|^2
  std::vector<double> weight_error_curve;  // distance to the ground truth after step n
  double final_weight_error = 0.0;
  std::size_t steps = 0;
  std::uint64_t seed = 0;
};

// Divergence threshold on the weight-vector norm.
inline constexpr double kDivergenceLimit = 1e6;

// Throws DivergenceError("filter diverged at step n") when weights exceed
// kDivergenceLimit in norm or become non-finite.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace ghr
