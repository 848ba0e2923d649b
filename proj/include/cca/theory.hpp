#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cca/dynamics.hpp"
#include "cca/model.hpp"

namespace cca {

// Weisskopf-Wigner spontaneous emission rate
// Gamma = 4 g^2 / sqrt((2 eta)^2 - (omega_a - omega_c)^2).
// Throws when the atom frequency sits at or outside the band edges, where
// the density of states diverges and the formula is invalid.
double decay_rate_ww(const CcaModel& model);

// Coupling to the resonant mode at an antinode, g_r = sqrt(2/(N+1)) g.
double resonant_coupling(const CcaModel& model);

// Turning time t_c = 2 pi / Delta_1.
double turning_time(const CcaModel& model);

struct DecayPrediction {
    double gamma;
    double omega0;  // resonant (atom) frequency
    double t_c;
    double g_r;
};

DecayPrediction decay_prediction(const CcaModel& model);

// Population e^{-gamma t} of a bare exponentially decaying atom.
std::vector<double> exponential_prediction(double gamma, std::span<const double> times);

// Mode population during the naked-atom stage,
//   M_k(t) = A_k (e^{-Gamma t} - 2 e^{-Gamma t/2} cos(Delta_k t) + 1),
//   A_k = g_k^2 / (Gamma^2/4 + Delta_k^2),
// with the Gamma = Delta_k = 0 limit g_k^2 t^2 handled explicitly.
double mode_population_model(const CcaModel& model, double gamma, int k, double t);

struct ModeMinimum {
    double time;               // 2 pi l / |Delta_k|
    double detuning_to_gamma;  // |Delta_k| / gamma; validity requires >> 1
};

// Time of the l-th population minimum of mode k. Throws for the resonant
// mode (zero detuning, no oscillation). The Delta_k >> Gamma validity
// requirement is reported through detuning_to_gamma, not enforced.
ModeMinimum mode_minimum_time(const CcaModel& model, double gamma, int k, int l);

// Linear approximation Delta_k ~ (k - k0) Delta_1.
double detuning_linear_approx(const CcaModel& model, int k);

// 2x2 density block over the dressed states
// |1>,|2> = (|e,vac> +- |g,1_k0>)/sqrt(2) at a reference time.
struct DressedBlock {
    double rho11 = 0.0;
    double rho22 = 0.0;
    std::complex<double> rho12;
    double t_ref = 0.0;

    double trace() const { return rho11 + rho22; }
    DressedBlock renormalized() const;
};

// Projects a pure state onto the dressed doublet. Amplitudes in the other
// modes are discarded, so the block is sub-normalized; this keeps the
// predicted atom population continuous at t_ref.
DressedBlock dressed_basis_project(const ExcitationState& state, const CcaModel& model,
                                   double t_ref);

// Closed-form dressed-stage atom population
//   rho_ee(t) = 1/2 e^{-Gamma (t - t_ref)/2} [rho11 + rho22
//               + 2 Re(rho12 e^{-2 i g_r (t - t_ref)})].
// Times must not precede block.t_ref.
std::vector<double> dressed_decay_closed_form(double gamma, double g_r,
                                              const DressedBlock& block,
                                              std::span<const double> times);
std::vector<double> dressed_decay_prediction(const CcaModel& model,
                                             const DressedBlock& block,
                                             std::span<const double> times);

// RK4 integration of the dressed-atom master equation on the three-level
// space {|e,0>, |g,1_k0>, |g,0>} with jump |g,0><e,0| at rate gamma; the
// non-secular oracle for the closed form above.
std::vector<double> dressed_lindblad_evolve(double gamma, double g_r, double omega0,
                                            const DressedBlock& block,
                                            std::span<const double> times, double dt);
std::vector<double> dressed_lindblad_oracle(const CcaModel& model, const DressedBlock& block,
                                            std::span<const double> times, double dt = 0.02);

}  // namespace cca
