#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nvmo/hilbert.hpp"
#include "nvmo/linalg.hpp"
#include "nvmo/models.hpp"
#include "nvmo/tolerances.hpp"

namespace nvmo {

/// One dissipative channel. Contributes (rate/2) * L[o] rho to d(rho)/dt with
/// L[o] rho = 2 o rho o^dag - o^dag o rho - rho o^dag o.
struct LindbladTerm {
  CMatrix collapse;
  double rate = 0.0;
  std::string label;
};

using Hamiltonian = std::variant<CMatrix, TimeDependentOperator>;

CMatrix evaluate(const Hamiltonian& h, double t);
std::size_t dimension(const Hamiltonian& h);

struct Observable {
  std::string name;
  CMatrix op;
};

using DensityProbe = std::function<double(double t, const DensityMatrix& rho)>;
using PureProbe = std::function<double(double t, const StateVector& psi)>;

struct EvolutionSpec {
  Hamiltonian hamiltonian;
  std::vector<LindbladTerm> terms;
  double t_final = 0.0;
  double dt = 1e-3;
  std::size_t record_every = 1;
  std::vector<Observable> observables;
  std::vector<std::pair<std::string, DensityProbe>> probes;
  /// Certify lambda_min(rho) at recorded points (shifted Cholesky).
  bool check_positivity = true;
  Tolerances tol = default_tolerances();
};

struct PureEvolutionSpec {
  Hamiltonian hamiltonian;
  double t_final = 0.0;
  double dt = 1e-3;
  std::size_t record_every = 1;
  std::vector<Observable> observables;
  std::vector<std::pair<std::string, PureProbe>> probes;
  Tolerances tol = default_tolerances();
};

struct Trajectory {
  std::vector<double> times;
  std::map<std::string, std::vector<Complex>> observables;
  std::map<std::string, std::vector<double>> probes;
  /// Master runs: |tr rho - 1|. Pure runs: |<psi|psi> - 1| before renormalization.
  std::vector<double> trace_deviation;
  /// Master runs with positivity checks: certified lower bound on lambda_min(rho).
  std::vector<double> min_eig_bound;
  double max_hermiticity_error = 0.0;
  double max_norm_drift = 0.0;
  std::size_t steps = 0;
  std::vector<std::string> warnings;
  std::variant<std::monostate, DensityMatrix, StateVector> final_state;

  std::size_t index_near(double t) const;
  const DensityMatrix& final_density() const;
  const StateVector& final_pure() const;
};

/// d(rho)/dt = -i[H, rho] + sum_k (rate_k / 2) L[o_k] rho, assembled densely.
CMatrix lindblad_rhs(const DensityMatrix& rho, const CMatrix& h, const std::vector<LindbladTerm>& terms);
CMatrix lindblad_rhs(const CMatrix& rho, const CMatrix& h, const std::vector<LindbladTerm>& terms);

/// The same generator compiled into sparse form for repeated application.
class LindbladGenerator {
 public:
  LindbladGenerator(const Hamiltonian& h, const std::vector<LindbladTerm>& terms);

  std::size_t dim() const { return dim_; }
  /// out = L_t(rho); out is resized as needed.
  void apply(double t, const CMatrix& rho, CMatrix& out) const;

 private:
  struct Jump {
    SparseMatrix op;
    SparseMatrix op_adj;
    double rate;
  };
  std::size_t dim_ = 0;
  std::optional<TimeDependentOperator> td_;
  CMatrix damping_;  // sum_k (rate_k/2) o_k^dag o_k
  SparseMatrix h_eff_;
  SparseMatrix h_eff_adj_;
  std::vector<Jump> jumps_;
  mutable CMatrix scratch_;
};

/// Fixed-step RK4 propagation of the master equation.
Trajectory evolve_master(const DensityMatrix& rho0, const EvolutionSpec& spec);

/// Fixed-step RK4 on -i H(t) psi with renormalization after every step.
Trajectory evolve_pure(const StateVector& psi0, const PureEvolutionSpec& spec);
Trajectory evolve_pure(const StateVector& psi0, const Hamiltonian& h, double t_final, double dt);

/// Thermal decay/heating of the mode plus NV dephasing, space nv (x) b.
std::vector<LindbladTerm> bath_terms_single(const ModelParams& p, const HilbertSpace& space);

/// Mode terms as in the single-NV case plus one dephasing term per NV,
/// space nv_1 .. nv_N (x) b.
std::vector<LindbladTerm> bath_terms_ensemble(const ModelParams& p, const HilbertSpace& space);

/// Thermal decay/heating pairs for modes b and c, space b (x) c. Heating uses
/// b^dag / c^dag; `heating_as_decay` instead applies L[b] / L[c] at the
/// n_bath rate, so both channels lower the occupation.
std::vector<LindbladTerm> bath_terms_squeeze(const ModelParams& p, const HilbertSpace& space,
                                             bool heating_as_decay = false);

}  // namespace nvmo
