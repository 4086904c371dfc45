#pragma once

#include <numbers>
#include <vector>

#include "nvmo/hilbert.hpp"
#include "nvmo/linalg.hpp"

namespace nvmo {

/// Which subsystems get transposed in a partial transpose.
struct BipartiteSplit {
  HilbertSpace space;
  std::vector<std::size_t> part_a;

  /// Throws ParameterError unless part_a is a non-empty proper subset of valid indices.
  void validate() const;
};

/// rho^{T_A}: row and column levels of the subsystems in part_a are exchanged.
CMatrix partial_transpose(const DensityMatrix& rho, const BipartiteSplit& split);
CMatrix partial_transpose(const CMatrix& rho, const BipartiteSplit& split);

/// (||rho^{T_A}||_1 - 1) / 2, with the trace norm taken as the sum of |eigenvalues|.
double negativity(const DensityMatrix& rho, const BipartiteSplit& split);

/// sqrt(<psi|rho|psi>)
double fidelity_pure(const StateVector& target, const DensityMatrix& rho);

Complex expectation(const DensityMatrix& rho, const CMatrix& op);
Complex expectation(const StateVector& psi, const CMatrix& op);

struct QuadratureMoments {
  double mean_sq;   // <d1^2>
  double variance;  // <d1^2> - <d1>^2
  double mean;      // <d1>
};

/// Moments of d1 = (d + d^dag)/2 for a state on b (x) c.
QuadratureMoments d1_variance(const DensityMatrix& rho, double delta_phase);

/// Population of the top Fock level of each mode of `rho`, summed over modes.
double tail_population(const DensityMatrix& rho);

/// cos(g|alpha| t)|0,e> - i e^{i phi} sin(g|alpha| t)|1,g> on space nv (x) b,
/// phi = arg(alpha). The default phase, alpha = -i|alpha|, gives
/// cos(..)|0,e> - sin(..)|1,g>.
StateVector oracle_jc_state(double t, double g_alpha, const HilbertSpace& space,
                            double alpha_phase = -std::numbers::pi / 2.0);

/// Single-excitation exchange between the symmetric NV state
/// |W> = N^{-1/2} sum_i |e_i> (mode in vacuum) and |g..g> with one phonon:
/// cos(g|alpha| sqrt(N) t)|W,0> - i e^{i phi} sin(g|alpha| sqrt(N) t)|g..g,1>,
/// on space nv_1 .. nv_N (x) b.
StateVector oracle_ensemble_state(double t, double g_alpha, const HilbertSpace& space,
                                  double alpha_phase = -std::numbers::pi / 2.0);

/// The symmetric single-excitation NV state with the mode in vacuum.
StateVector symmetric_excitation_state(const HilbertSpace& space);

/// Lossless <d1^2>(xi) for a vacuum-seeded two-mode squeeze:
/// (1 + 2(1 - cos delta) xi^2 - 2 sin(delta) xi) / 4.
double d1_mean_sq_lossless(double xi, double delta_phase);

struct SqueezeOptimum {
  double xi_star;
  double min_value;
  // False when xi* falls outside [0, kMaxReliableXi], where the default
  // per-mode cutoff no longer holds the squeezed state.
  bool truncation_valid;
};

inline constexpr double kMaxReliableXi = 0.75;

/// Stationary point of d1_mean_sq_lossless in xi for the given phase,
/// xi* = sin(delta) / (2(1 - cos(delta))), minimum (1 - cos(delta)) / 8.
SqueezeOptimum oracle_d1_min(double delta_phase);

}  // namespace nvmo
