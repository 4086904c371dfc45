#pragma once

#include <optional>
#include <vector>

#include "nvmo/hilbert.hpp"
#include "nvmo/linalg.hpp"

namespace nvmo {

/// Physical parameters of the NV-center / mechanical-oscillator system.
///
/// Frequencies and rates are angular (rad/s) in SI runs, or in units of a
/// chosen reference rate after `scaled_rates`. Occupations are plain numbers.
struct ModelParams {
  double omega_z = 0.0;  // NV splitting between |e> and |g>
  double delta = 0.0;    // detuning of mode b from the drive, omega_b - omega_a
  double omega = 0.0;    // squeeze detuning omega_z - delta
  double Omega1 = 0.0;   // drive on mode a
  double Omega2 = 0.0;   // drive on mode b (and c in the three-mode model)
  double g = 0.0;        // second-order gradient coupling (g_a = g_b = g_ab = g)
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double dephasing_rate = 0.0;  // NV pure dephasing
  double n_bath = 0.0;          // bath occupation entering the Lindblad rates
  double n_init = 0.0;          // initial thermal occupation of the mode(s)
  std::optional<Complex> alpha;  // steady amplitude of mode a
  std::optional<Complex> beta;   // steady amplitude of mode b
  int N = 1;                     // NV count
  double delta_phase = 0.0;      // phase of the collective squeezing mode
  double spin_sign = 1.0;        // <sigma_z> of the NV during squeezing (+1: |e>)

  /// Throws ParameterError on negative rates, N < 1 or non-finite fields.
  void validate() const;
};

/// Copy of `p` with every frequency and rate divided by `unit` (amplitudes,
/// occupations and phases unchanged).
ModelParams scaled_rates(const ModelParams& p, double unit);

struct SteadyState {
  Complex alpha;
  Complex beta;
  Complex beta_approx;        // -Omega2 / (2 delta)
  double beta_relative_diff;  // |beta - beta_approx| / |beta|, 0 when beta == 0
};

/// Fixed point of the mean-field Langevin equations for modes a and b.
SteadyState steady_state_amplitudes(const ModelParams& p);

/// Right-hand side of the mean-field equations,
/// d<a>/dt = -i Omega1/2 - (gamma1/2)<a>, d<b>/dt = -i delta <b> - i Omega2/2 - (gamma2/2)<b>.
struct MeanFieldRates {
  Complex da;
  Complex db;
};
MeanFieldRates mean_field_rates(const ModelParams& p, Complex a, Complex b);

/// A Hamiltonian split into its free and interaction parts.
struct SplitHamiltonian {
  CMatrix h0;
  CMatrix h1;
  CMatrix total() const { return h0 + h1; }
};

/// H(t) = static + sum_k (M_k e^{i w_k t} + h.c.)
class TimeDependentOperator {
 public:
  struct Term {
    CMatrix op;
    double frequency = 0.0;
  };

  TimeDependentOperator() = default;
  TimeDependentOperator(CMatrix static_part, std::vector<Term> terms);

  std::size_t dim() const { return static_part_.rows(); }
  const CMatrix& static_part() const { return static_part_; }
  const std::vector<Term>& terms() const { return terms_; }

  CMatrix at(double t) const;

 private:
  CMatrix static_part_;
  std::vector<Term> terms_;
};

/// Two-mode model in the frame rotating at the drive frequency, space nv (x) a (x) b.
SplitHamiltonian build_H_lab(const ModelParams& p, const HilbertSpace& space);

/// Same model after shifting a -> a + alpha and b -> b + beta, space nv (x) a (x) b.
/// h0 = (omega_z/2) sz + delta b^dag b; h1 keeps every displacement term.
SplitHamiltonian build_H_displaced(const ModelParams& p, const HilbertSpace& space);

/// Jaynes-Cummings exchange g (alpha^* b s+ + alpha b^dag s-), space nv (x) b.
CMatrix build_H_effective_JC(const ModelParams& p, const HilbertSpace& space);

/// Largest NV count supported by the dense ensemble path.
inline constexpr int kMaxDenseEnsemble = 5;

/// Collective exchange g (alpha^* b J+ + alpha b^dag J-), space nv_1 .. nv_N (x) b.
CMatrix build_H_ensemble(const ModelParams& p, const HilbertSpace& space);

/// Three-mode model, space nv (x) a (x) b (x) c.
SplitHamiltonian build_H_squeeze_full(const ModelParams& p, const HilbertSpace& space);

/// Interaction-picture coupling of the NV to modes b and c, space nv (x) b (x) c:
/// g (alpha^* b s+ e^{iwt} + alpha b^dag s- e^{-iwt} + alpha^* c^dag s+ e^{iwt} + alpha c s- e^{-iwt}).
TimeDependentOperator build_H_SI(const ModelParams& p, const HilbertSpace& space);

/// eta = |alpha|^2 g^2 s_z / omega.
double squeeze_rate(const ModelParams& p);

/// eta (b^dag b + c^dag c + b c + c^dag b^dag), space b (x) c.
CMatrix build_H_squeeze_eff(const ModelParams& p, const HilbertSpace& space);

struct CollectiveModeOps {
  CMatrix d;
  CMatrix d_dag;
  CMatrix d1;  // (d + d^dag)/2
  CMatrix d2;  // (d - d^dag)/(2i)
};

/// d = (b + e^{-i delta_phase} c)/sqrt(2) and its quadratures, space b (x) c.
CollectiveModeOps collective_mode_ops(const HilbertSpace& space, double delta_phase);

}  // namespace nvmo
