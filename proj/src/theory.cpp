#include "cca/theory.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cca {

namespace {

using Complex = std::complex<double>;

void check_times_from(std::span<const double> times, double t_ref) {
    if (times.empty()) throw std::invalid_argument("empty time grid");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_ref)
            throw std::invalid_argument("dressed-stage times must not precede t_ref");
        if (i > 0 && times[i] <= times[i - 1])
            throw std::invalid_argument("times must be strictly increasing");
    }
}

}  // namespace

double decay_rate_ww(const CcaModel& model) {
    const double eta = model.params().hopping_eta;
    const double w0 = model.atom_frequency() - model.params().cavity_freq;
    const double band = 2.0 * eta;
    if (!(std::abs(w0) < band))
        throw std::invalid_argument(
            "decay_rate_ww: atom frequency at or outside the band (|omega_0 - "
            "omega_c| >= 2 eta), the Weisskopf-Wigner rate is undefined");
    const double g = model.params().coupling_g;
    return 4.0 * g * g / std::sqrt(band * band - w0 * w0);
}

double resonant_coupling(const CcaModel& model) {
    return std::sqrt(2.0 / (model.size() + 1)) * model.params().coupling_g;
}

double turning_time(const CcaModel& model) {
    const double pi = std::acos(-1.0);
    return 2.0 * pi / model.nearest_mode_spacing();
}

DecayPrediction decay_prediction(const CcaModel& model) {
    return DecayPrediction{decay_rate_ww(model), model.atom_frequency(),
                           turning_time(model), resonant_coupling(model)};
}

std::vector<double> exponential_prediction(double gamma, std::span<const double> times) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
    std::vector<double> out;
    out.reserve(times.size());
    for (const double t : times) out.push_back(std::exp(-gamma * t));
    return out;
}

double mode_population_model(const CcaModel& model, double gamma, int k, double t) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
    const double g_k = model.mode_coupling(k);
    const double delta = model.detuning(k);
    const double denom = gamma * gamma / 4.0 + delta * delta;
    if (denom == 0.0) return g_k * g_k * t * t;  // resonant, undamped limit
    const double amp = g_k * g_k / denom;
    return amp * (std::exp(-gamma * t) - 2.0 * std::exp(-gamma * t / 2.0) * std::cos(delta * t) +
                  1.0);
}

ModeMinimum mode_minimum_time(const CcaModel& model, double gamma, int k, int l) {
    if (l < 1) throw std::invalid_argument("minimum index l must be a positive integer");
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
    const double delta = model.detuning(k);
    if (delta == 0.0)
        throw std::invalid_argument("mode " + std::to_string(k) +
                                    " has zero detuning: no population oscillation");
    const double pi = std::acos(-1.0);
    return ModeMinimum{2.0 * pi * l / std::abs(delta), std::abs(delta) / gamma};
}

double detuning_linear_approx(const CcaModel& model, int k) {
    if (k < 1 || k > model.size())
        throw std::out_of_range("mode index " + std::to_string(k) + " outside [1, " +
                                std::to_string(model.size()) + "]");
    return (k - model.k0()) * model.nearest_mode_spacing();
}

DressedBlock DressedBlock::renormalized() const {
    const double tr = trace();
    if (!(tr > 0.0))
        throw std::invalid_argument("cannot renormalize a dressed block with zero trace");
    return DressedBlock{rho11 / tr, rho22 / tr, rho12 / tr, t_ref};
}

DressedBlock dressed_basis_project(const ExcitationState& state, const CcaModel& model,
                                   double t_ref) {
    const Complex a = state.alpha;
    const Complex b = state.beta(model.k0() - 1);
    const Complex plus = a + b;
    const Complex minus = a - b;
    DressedBlock block;
    block.rho11 = 0.5 * std::norm(plus);
    block.rho22 = 0.5 * std::norm(minus);
    block.rho12 = 0.5 * plus * std::conj(minus);
    block.t_ref = t_ref;
    return block;
}

std::vector<double> dressed_decay_closed_form(double gamma, double g_r,
                                              const DressedBlock& block,
                                              std::span<const double> times) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
    check_times_from(times, block.t_ref);
    std::vector<double> out;
    out.reserve(times.size());
    for (const double t : times) {
        const double tau = t - block.t_ref;
        const Complex osc = block.rho12 * std::polar(1.0, -2.0 * g_r * tau);
        out.push_back(0.5 * std::exp(-gamma * tau / 2.0) *
                      (block.rho11 + block.rho22 + 2.0 * osc.real()));
    }
    return out;
}

std::vector<double> dressed_decay_prediction(const CcaModel& model, const DressedBlock& block,
                                             std::span<const double> times) {
    return dressed_decay_closed_form(decay_rate_ww(model), resonant_coupling(model), block,
                                     times);
}

std::vector<double> dressed_lindblad_evolve(double gamma, double g_r, double omega0,
                                            const DressedBlock& block,
                                            std::span<const double> times, double dt) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    check_times_from(times, block.t_ref);

    using Matrix3c = Eigen::Matrix3cd;
    Matrix3c h = Matrix3c::Zero();
    h(0, 0) = 0.5 * omega0;
    h(1, 1) = 0.5 * omega0;
    h(2, 2) = -0.5 * omega0;
    h(0, 1) = g_r;
    h(1, 0) = g_r;

    // Dressed block -> bare basis {|e,0>, |g,1>}; the leftover weight sits
    // in the decoupled ground level.
    Eigen::Matrix2cd dressed;
    dressed << block.rho11, block.rho12, std::conj(block.rho12), block.rho22;
    Eigen::Matrix2cd u;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    u << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
    const Eigen::Matrix2cd bare = u * dressed * u.adjoint();

    Matrix3c rho = Matrix3c::Zero();
    rho.topLeftCorner<2, 2>() = bare;
    rho(2, 2) = std::max(0.0, 1.0 - bare.trace().real());

    const Complex minus_i(0.0, -1.0);
    auto deriv = [&](const Matrix3c& r) -> Matrix3c {
        Matrix3c d = minus_i * (h * r - r * h);
        // jump |g,0><e,0| at rate gamma
        d(2, 2) += gamma * r(0, 0);
        d.row(0) -= (0.5 * gamma) * r.row(0);
        d.col(0) -= (0.5 * gamma) * r.col(0);
        d(0, 0) += 0.5 * gamma * r(0, 0);  // row+col double-counted the corner
        return d;
    };

    std::vector<double> out;
    out.reserve(times.size());
    double t_cur = block.t_ref;
    Matrix3c k1, k2, k3, k4;
    for (const double t : times) {
        const double span = t - t_cur;
        if (span > 0.0) {
            const auto n_sub = static_cast<std::int64_t>(std::ceil(span / dt - 1e-12));
            const double h_step = span / static_cast<double>(n_sub);
            for (std::int64_t s = 0; s < n_sub; ++s) {
                k1 = deriv(rho);
                k2 = deriv(rho + (h_step / 2.0) * k1);
                k3 = deriv(rho + (h_step / 2.0) * k2);
                k4 = deriv(rho + h_step * k3);
                rho += (h_step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            t_cur = t;
        }
        out.push_back(rho(0, 0).real());
    }
    return out;
}

std::vector<double> dressed_lindblad_oracle(const CcaModel& model, const DressedBlock& block,
                                            std::span<const double> times, double dt) {
    const double eta = model.params().hopping_eta;
    if (!(dt * (2.0 * eta + std::abs(model.atom_frequency())) < 0.1))
        throw std::invalid_argument(
            "master-equation step too large: need dt * (2 eta + |omega_a|) < 0.1");
    return dressed_lindblad_evolve(decay_rate_ww(model), resonant_coupling(model),
                                   model.atom_frequency(), block, times, dt);
}

}  // namespace cca
