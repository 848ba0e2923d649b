#pragma once

#include <Eigen/Core>
#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cca/model.hpp"

namespace cca {

// Single-excitation state: atom amplitude plus the full-length vector of
// mode amplitudes (index k-1 holds mode k).
struct ExcitationState {
    std::complex<double> alpha;
    Eigen::VectorXcd beta;

    double norm_sq() const { return std::norm(alpha) + beta.squaredNorm(); }
};

ExcitationState initial_excited_state(const CcaModel& model);

// Restricts the dynamics to modes [center - half_width, center + half_width]
// clipped to [1, N]. center defaults to the resonant mode.
struct TruncationWindow {
    int half_width = 0;
    std::optional<int> center;
};

// Global 1-based indices of the modes kept by the window (all modes when
// no window is given).
std::vector<int> window_modes(const CcaModel& model,
                              const std::optional<TruncationWindow>& trunc);

// Arrowhead matrix over (atom, included modes): diagonal (omega_a,
// omega_k...), first row/column the couplings g_k.
Eigen::MatrixXd build_hamiltonian(const CcaModel& model,
                                  const std::optional<TruncationWindow>& trunc = {});

struct Trajectory {
    std::vector<double> times;
    std::vector<double> atom_pop;
    std::map<int, std::vector<double>> mode_pops;  // tracked modes only
    CcaParams params;
    std::optional<TruncationWindow> truncation;

    const std::vector<double>& mode_pop(int k) const;
};

// Exact propagator: one dense symmetric eigendecomposition of the arrowhead
// Hamiltonian, after which the state at any time (forward or backward) is a
// closed-form superposition; no step error, only floating-point roundoff.
class EigenPropagator {
public:
    explicit EigenPropagator(const CcaModel& model,
                             std::optional<TruncationWindow> trunc = {});

    ExcitationState evolve(const ExcitationState& initial, double t) const;

    // Populations of the atom and of tracked_modes at the given times
    // (strictly increasing, times[0] >= 0). Tracked modes must be inside
    // the truncation window.
    Trajectory propagate(const ExcitationState& initial,
                         std::span<const double> times,
                         std::span<const int> tracked_modes = {}) const;

    const std::vector<int>& included_modes() const { return modes_; }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

private:
    Eigen::VectorXcd reduce(const ExcitationState& state) const;

    int n_modes_total_ = 0;
    CcaParams params_;
    std::optional<TruncationWindow> trunc_;
    std::vector<int> modes_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

Trajectory propagate_eigen(const CcaModel& model, const ExcitationState& initial,
                           std::span<const double> times,
                           const std::optional<TruncationWindow>& trunc = {},
                           std::span<const int> tracked_modes = {});

// Fixed-step RK4 integration of i dC/dt = H C, independent of the
// eigendecomposition path (used as its oracle). Samples every
// sample_stride steps. Requires dt * (2 eta + |omega_a|) < 0.1.
Trajectory propagate_ode(const CcaModel& model, const ExcitationState& initial,
                         double t_max, double dt,
                         const std::optional<TruncationWindow>& trunc = {},
                         std::span<const int> tracked_modes = {},
                         int sample_stride = 1);

// Row-aligned population table (time, atom_pop, mode_<k>...) for a
// selection of tracked modes.
struct PopulationTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;  // column-major
};

PopulationTable observables(const Trajectory& traj, std::span<const int> selection);

}  // namespace cca
