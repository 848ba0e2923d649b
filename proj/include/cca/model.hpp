#pragma once

#include <optional>
#include <variant>
#include <vector>

namespace cca {

// Resonance selection: either lock the atom frequency to one of the array
// modes, or give the bare atom frequency directly (the resonant mode index
// is then resolved to the nearest mode, smaller index on ties).
struct ResonantMode {
    int index = 1;
};
struct AtomFrequency {
    double value = 0.0;
};
using Resonance = std::variant<ResonantMode, AtomFrequency>;

// User-facing parameters of a two-level atom in a finite coupled-cavity
// array. Energies are in units of the hopping strength by default
// (hopping_eta = 1, cavity_freq = 0); both can be overridden.
struct CcaParams {
    int n_cavities = 0;       // array length N
    int atom_site = 0;        // 1-based cavity index n hosting the atom
    double coupling_g = 0.0;  // atom-cavity coupling g >= 0
    double hopping_eta = 1.0;
    double cavity_freq = 0.0;
    Resonance resonance = ResonantMode{1};
};

// Immutable derived model. Standing-wave mode angles theta_k = k pi/(N+1),
// frequencies omega_k = omega_c - 2 eta cos(theta_k), couplings
// g_k = sqrt(2/(N+1)) sin(n theta_k) g and detunings Delta_k = omega_k -
// omega_a. Mode indices are 1-based throughout.
class CcaModel {
public:
    const CcaParams& params() const { return params_; }
    int size() const { return static_cast<int>(omega_.size()); }

    // Resolved resonant mode index and atom frequency.
    int k0() const { return k0_; }
    double atom_frequency() const { return omega_a_; }

    double mode_angle(int k) const;
    double mode_frequency(int k) const;
    double mode_coupling(int k) const;
    double detuning(int k) const;

    // Spacing omega_{k0+1} - omega_{k0} to the next higher mode; throws
    // when the resonant mode is the topmost one.
    double nearest_mode_spacing() const;

    const std::vector<double>& mode_angles() const { return theta_; }
    const std::vector<double>& frequencies() const { return omega_; }
    const std::vector<double>& couplings() const { return g_k_; }
    const std::vector<double>& detunings() const { return delta_; }

private:
    friend CcaModel build_model(const CcaParams& params);
    CcaModel() = default;
    void check_mode_index(int k) const;

    CcaParams params_;
    std::vector<double> theta_;
    std::vector<double> omega_;
    std::vector<double> g_k_;
    std::vector<double> delta_;
    int k0_ = 0;
    double omega_a_ = 0.0;
    std::optional<double> delta_1_;
};

// Validates the parameters and derives the full mode table.
CcaModel build_model(const CcaParams& params);

// Site n in [1, N] maximizing |sin(n theta_k0)|, ties broken toward the
// largest n (edge placement).
int find_antinode_site(const CcaModel& model, int k0);

}  // namespace cca
