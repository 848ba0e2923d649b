#include "cca/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cca {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw std::invalid_argument(message);
}

}  // namespace

void CcaModel::check_mode_index(int k) const {
    if (k < 1 || k > size())
        throw std::out_of_range("mode index " + std::to_string(k) +
                                " outside [1, " + std::to_string(size()) + "]");
}

double CcaModel::mode_angle(int k) const {
    check_mode_index(k);
    return theta_[k - 1];
}

double CcaModel::mode_frequency(int k) const {
    check_mode_index(k);
    return omega_[k - 1];
}

double CcaModel::mode_coupling(int k) const {
    check_mode_index(k);
    return g_k_[k - 1];
}

double CcaModel::detuning(int k) const {
    check_mode_index(k);
    return delta_[k - 1];
}

double CcaModel::nearest_mode_spacing() const {
    if (!delta_1_)
        throw std::invalid_argument(
            "nearest_mode_spacing: resonant mode k0 = " + std::to_string(k0_) +
            " is the topmost mode, no higher neighbor exists");
    return *delta_1_;
}

CcaModel build_model(const CcaParams& params) {
    const int n = params.n_cavities;
    require(n >= 1, "n_cavities must be positive, got " + std::to_string(n));
    require(params.atom_site >= 1 && params.atom_site <= n,
            "atom_site must lie in [1, " + std::to_string(n) + "], got " +
                std::to_string(params.atom_site));
    require(std::isfinite(params.coupling_g) && params.coupling_g >= 0.0,
            "coupling_g must be a nonnegative real");
    require(std::isfinite(params.hopping_eta) && params.hopping_eta > 0.0,
            "hopping_eta must be positive");
    require(std::isfinite(params.cavity_freq), "cavity_freq must be finite");
    if (const auto* by_mode = std::get_if<ResonantMode>(&params.resonance)) {
        require(by_mode->index >= 1 && by_mode->index <= n,
                "resonant mode index must lie in [1, " + std::to_string(n) +
                    "], got " + std::to_string(by_mode->index));
    } else {
        require(std::isfinite(std::get<AtomFrequency>(params.resonance).value),
                "atom frequency must be finite");
    }

    CcaModel model;
    model.params_ = params;
    model.theta_.resize(n);
    model.omega_.resize(n);
    model.g_k_.resize(n);
    model.delta_.resize(n);

    const double pi = std::acos(-1.0);
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int k = 1; k <= n; ++k) {
        const double theta = k * pi / (n + 1);
        model.theta_[k - 1] = theta;
        model.omega_[k - 1] = params.cavity_freq - 2.0 * params.hopping_eta * std::cos(theta);
        model.g_k_[k - 1] = norm * std::sin(params.atom_site * theta) * params.coupling_g;
    }

    if (const auto* by_mode = std::get_if<ResonantMode>(&params.resonance)) {
        model.k0_ = by_mode->index;
        model.omega_a_ = model.omega_[model.k0_ - 1];
    } else {
        // Nearest mode wins; on an exact distance tie the smaller index does.
        model.omega_a_ = std::get<AtomFrequency>(params.resonance).value;
        int best = 1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= n; ++k) {
            const double dist = std::abs(model.omega_[k - 1] - model.omega_a_);
            if (dist < best_dist) {
                best_dist = dist;
                best = k;
            }
        }
        model.k0_ = best;
    }

    for (int k = 1; k <= n; ++k)
        model.delta_[k - 1] = model.omega_[k - 1] - model.omega_a_;
    if (model.k0_ < n)
        model.delta_1_ = model.omega_[model.k0_] - model.omega_[model.k0_ - 1];

    return model;
}

int find_antinode_site(const CcaModel& model, int k0) {
    if (k0 < 1 || k0 > model.size())
        throw std::out_of_range("find_antinode_site: mode index " + std::to_string(k0) +
                                " outside [1, " + std::to_string(model.size()) + "]");
    const double theta = model.mode_angle(k0);
    int best = 1;
    double best_amp = -1.0;
    for (int n = 1; n <= model.size(); ++n) {
        const double amp = std::abs(std::sin(n * theta));
        if (amp >= best_amp) {
            best_amp = amp;
            best = n;
        }
    }
    return best;
}

}  // namespace cca
