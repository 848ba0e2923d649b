#include "cca/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cca {

namespace {

using Complex = std::complex<double>;

std::vector<double> sample_times(std::span<const double> times) {
    if (times.empty()) throw std::invalid_argument("propagation needs at least one sample time");
    if (times[0] < 0.0) throw std::invalid_argument("sample times must start at t >= 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::invalid_argument("sample times must be strictly increasing");
    return {times.begin(), times.end()};
}

}  // namespace

ExcitationState initial_excited_state(const CcaModel& model) {
    ExcitationState state;
    state.alpha = Complex(1.0, 0.0);
    state.beta = Eigen::VectorXcd::Zero(model.size());
    return state;
}

std::vector<int> window_modes(const CcaModel& model,
                              const std::optional<TruncationWindow>& trunc) {
    const int n = model.size();
    if (!trunc) {
        std::vector<int> all(n);
        for (int k = 1; k <= n; ++k) all[k - 1] = k;
        return all;
    }
    if (trunc->half_width < 0)
        throw std::invalid_argument("truncation half_width must be nonnegative");
    const int center = trunc->center.value_or(model.k0());
    if (center < 1 || center > n)
        throw std::invalid_argument("truncation center " + std::to_string(center) +
                                    " outside [1, " + std::to_string(n) + "]");
    const int lo = std::max(1, center - trunc->half_width);
    const int hi = std::min(n, center + trunc->half_width);
    std::vector<int> modes;
    modes.reserve(hi - lo + 1);
    for (int k = lo; k <= hi; ++k) modes.push_back(k);
    return modes;
}

Eigen::MatrixXd build_hamiltonian(const CcaModel& model,
                                  const std::optional<TruncationWindow>& trunc) {
    const std::vector<int> modes = window_modes(model, trunc);
    if (modes.empty()) throw std::invalid_argument("empty truncation window");
    const int dim = static_cast<int>(modes.size()) + 1;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    h(0, 0) = model.atom_frequency();
    for (int i = 0; i < dim - 1; ++i) {
        const int k = modes[i];
        h(i + 1, i + 1) = model.mode_frequency(k);
        h(0, i + 1) = model.mode_coupling(k);
        h(i + 1, 0) = h(0, i + 1);
    }
    return h;
}

const std::vector<double>& Trajectory::mode_pop(int k) const {
    const auto it = mode_pops.find(k);
    if (it == mode_pops.end())
        throw std::invalid_argument("mode " + std::to_string(k) +
                                    " was not tracked in this trajectory");
    return it->second;
}

EigenPropagator::EigenPropagator(const CcaModel& model,
                                 std::optional<TruncationWindow> trunc)
    : n_modes_total_(model.size()),
      params_(model.params()),
      trunc_(trunc),
      modes_(window_modes(model, trunc)) {
    const Eigen::MatrixXd h = build_hamiltonian(model, trunc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success || !solver.eigenvalues().allFinite())
        throw std::runtime_error("eigendecomposition of the Hamiltonian failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::VectorXcd EigenPropagator::reduce(const ExcitationState& state) const {
    if (state.beta.size() != n_modes_total_)
        throw std::invalid_argument("state has " + std::to_string(state.beta.size()) +
                                    " mode amplitudes, model has " +
                                    std::to_string(n_modes_total_));
    Eigen::VectorXcd c(modes_.size() + 1);
    c(0) = state.alpha;
    for (std::size_t i = 0; i < modes_.size(); ++i) c(i + 1) = state.beta(modes_[i] - 1);
    return c;
}

ExcitationState EigenPropagator::evolve(const ExcitationState& initial, double t) const {
    const int dim = static_cast<int>(modes_.size()) + 1;
    const Eigen::VectorXcd coeffs = eigenvectors_.transpose() * reduce(initial);
    // Split the phased coefficients into (re, im) columns so the real
    // eigenvector matrix multiplies them in one pass.
    Eigen::MatrixXd phased(dim, 2);
    for (int j = 0; j < dim; ++j) {
        const Complex c = coeffs(j) * std::polar(1.0, -eigenvalues_(j) * t);
        phased(j, 0) = c.real();
        phased(j, 1) = c.imag();
    }
    const Eigen::MatrixXd out = eigenvectors_ * phased;
    ExcitationState state;
    state.alpha = Complex(out(0, 0), out(0, 1));
    state.beta = Eigen::VectorXcd::Zero(n_modes_total_);
    for (std::size_t i = 0; i < modes_.size(); ++i)
        state.beta(modes_[i] - 1) = Complex(out(i + 1, 0), out(i + 1, 1));
    return state;
}

Trajectory EigenPropagator::propagate(const ExcitationState& initial,
                                      std::span<const double> times,
                                      std::span<const int> tracked_modes) const {
    Trajectory traj;
    traj.times = sample_times(times);
    traj.params = params_;
    traj.truncation = trunc_;

    std::vector<int> tracked(tracked_modes.begin(), tracked_modes.end());
    std::sort(tracked.begin(), tracked.end());
    tracked.erase(std::unique(tracked.begin(), tracked.end()), tracked.end());

    // Row 0 of the selection is the atom; the rest are the tracked modes.
    const int dim = static_cast<int>(modes_.size()) + 1;
    const int n_rows = static_cast<int>(tracked.size()) + 1;
    Eigen::MatrixXd rows(n_rows, dim);
    rows.row(0) = eigenvectors_.row(0);
    for (std::size_t i = 0; i < tracked.size(); ++i) {
        const auto it = std::lower_bound(modes_.begin(), modes_.end(), tracked[i]);
        if (it == modes_.end() || *it != tracked[i])
            throw std::invalid_argument("tracked mode " + std::to_string(tracked[i]) +
                                        " is outside the truncation window");
        rows.row(i + 1) = eigenvectors_.row(1 + (it - modes_.begin()));
    }

    const Eigen::VectorXcd coeffs = eigenvectors_.transpose() * reduce(initial);
    traj.atom_pop.reserve(traj.times.size());
    for (int k : tracked) traj.mode_pops[k].reserve(traj.times.size());

    Eigen::MatrixXd phased(dim, 2);
    for (const double t : traj.times) {
        for (int j = 0; j < dim; ++j) {
            const Complex c = coeffs(j) * std::polar(1.0, -eigenvalues_(j) * t);
            phased(j, 0) = c.real();
            phased(j, 1) = c.imag();
        }
        const Eigen::MatrixXd out = rows * phased;
        traj.atom_pop.push_back(out(0, 0) * out(0, 0) + out(0, 1) * out(0, 1));
        for (std::size_t i = 0; i < tracked.size(); ++i)
            traj.mode_pops[tracked[i]].push_back(out(i + 1, 0) * out(i + 1, 0) +
                                                 out(i + 1, 1) * out(i + 1, 1));
    }
    return traj;
}

Trajectory propagate_eigen(const CcaModel& model, const ExcitationState& initial,
                           std::span<const double> times,
                           const std::optional<TruncationWindow>& trunc,
                           std::span<const int> tracked_modes) {
    return EigenPropagator(model, trunc).propagate(initial, times, tracked_modes);
}

Trajectory propagate_ode(const CcaModel& model, const ExcitationState& initial,
                         double t_max, double dt,
                         const std::optional<TruncationWindow>& trunc,
                         std::span<const int> tracked_modes, int sample_stride) {
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");
    const double eta = model.params().hopping_eta;
    if (!(dt * (2.0 * eta + std::abs(model.atom_frequency())) < 0.1))
        throw std::invalid_argument(
            "ODE step too large: need dt * (2 eta + |omega_a|) < 0.1");

    const std::vector<int> modes = window_modes(model, trunc);
    const int m = static_cast<int>(modes.size());

    Eigen::VectorXd omega(m), g(m);
    for (int i = 0; i < m; ++i) {
        omega(i) = model.mode_frequency(modes[i]);
        g(i) = model.mode_coupling(modes[i]);
    }
    const double omega_a = model.atom_frequency();

    Trajectory traj;
    traj.params = model.params();
    traj.truncation = trunc;
    std::vector<int> tracked(tracked_modes.begin(), tracked_modes.end());
    std::sort(tracked.begin(), tracked.end());
    tracked.erase(std::unique(tracked.begin(), tracked.end()), tracked.end());
    std::vector<int> tracked_pos(tracked.size());
    for (std::size_t i = 0; i < tracked.size(); ++i) {
        const auto it = std::lower_bound(modes.begin(), modes.end(), tracked[i]);
        if (it == modes.end() || *it != tracked[i])
            throw std::invalid_argument("tracked mode " + std::to_string(tracked[i]) +
                                        " is outside the truncation window");
        tracked_pos[i] = static_cast<int>(it - modes.begin());
    }

    Eigen::VectorXcd c(m + 1);
    c(0) = initial.alpha;
    if (initial.beta.size() != model.size())
        throw std::invalid_argument("state size does not match the model");
    for (int i = 0; i < m; ++i) c(i + 1) = initial.beta(modes[i] - 1);

    // i dC/dt = H C with the arrowhead structure applied directly.
    const Eigen::VectorXcd omega_c = omega.cast<Complex>();
    const Eigen::VectorXcd g_c = g.cast<Complex>();
    const Complex minus_i(0.0, -1.0);
    auto deriv = [&](const Eigen::VectorXcd& v) {
        Eigen::VectorXcd d(m + 1);
        d(0) = minus_i * (omega_a * v(0) + g_c.dot(v.tail(m)));
        d.tail(m) =
            minus_i * (omega_c.array() * v.tail(m).array() + g_c.array() * v(0)).matrix();
        return d;
    };

    auto record = [&](std::int64_t step) {
        traj.times.push_back(step * dt);
        traj.atom_pop.push_back(std::norm(c(0)));
        for (std::size_t i = 0; i < tracked.size(); ++i)
            traj.mode_pops[tracked[i]].push_back(std::norm(c(tracked_pos[i] + 1)));
    };

    const auto n_steps = static_cast<std::int64_t>(std::ceil(t_max / dt - 1e-9));
    record(0);
    Eigen::VectorXcd k1, k2, k3, k4;
    for (std::int64_t step = 1; step <= n_steps; ++step) {
        k1 = deriv(c);
        k2 = deriv(c + (dt / 2.0) * k1);
        k3 = deriv(c + (dt / 2.0) * k2);
        k4 = deriv(c + dt * k3);
        c += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (step % sample_stride == 0 || step == n_steps) record(step);
    }
    return traj;
}

PopulationTable observables(const Trajectory& traj, std::span<const int> selection) {
    std::vector<int> picked(selection.begin(), selection.end());
    std::sort(picked.begin(), picked.end());
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());

    PopulationTable table;
    table.columns = {"time", "atom_pop"};
    table.data = {traj.times, traj.atom_pop};
    for (int k : picked) {
        table.columns.push_back("mode_" + std::to_string(k));
        table.data.push_back(traj.mode_pop(k));
    }
    return table;
}

}  // namespace cca
