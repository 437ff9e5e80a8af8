#include "ringnet/sim.hpp"

#include <cmath>
#include <stdexcept>

namespace ringnet::sim {

namespace {

constexpr std::size_t kMaxSteps = 10'000'000;
constexpr double kOverflowGuard = 1e12;

topology::Digraph build_topology(consensus::Topology topology, int n) {
    switch (topology) {
        case consensus::Topology::alternating:
            if (n < 6 || n % 2 != 0) {
                throw std::invalid_argument(
                    "alternating ring needs an even agent count n = 2m >= 6");
            }
            return topology::build_alternating_ring(n / 2);
        case consensus::Topology::cyclic:
            return topology::build_cyclic_pursuit(n);
        case consensus::Topology::bidirectional:
            return topology::build_bidirectional_ring(n);
    }
    throw std::invalid_argument("unknown topology");
}

}  // namespace

void SimConfig::validate() const {
    if (n < 1) throw std::invalid_argument("SimConfig: n must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("SimConfig: gamma must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
    if (!(horizon >= dt)) throw std::invalid_argument("SimConfig: horizon must be >= dt");
    if (!(init_low <= init_high)) {
        throw std::invalid_argument("SimConfig: init_low must be <= init_high");
    }
    const double steps = std::round(horizon / dt);
    if (steps > static_cast<double>(kMaxSteps)) {
        throw std::invalid_argument("SimConfig: step count exceeds 1e7");
    }
}

Eigen::MatrixXd build_F(double gamma, const topology::LaplacianMatrix& L) {
    const consensus::AgentModel agent(gamma);
    if (L.entries.rows() != L.n || L.entries.cols() != L.n || L.n < 1) {
        throw std::invalid_argument("build_F: Laplacian dimension mismatch");
    }
    const Eigen::Matrix2d A = agent.state_matrix();
    const Eigen::Matrix2d BK = agent.input_matrix() * agent.feedback_gain();
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(2 * L.n, 2 * L.n);
    for (int i = 0; i < L.n; ++i) {
        for (int k = 0; k < L.n; ++k) {
            Eigen::Matrix2d block = -L.entries(i, k) * BK;
            if (i == k) block += A;
            F.block<2, 2>(2 * i, 2 * k) = block;
        }
    }
    return F;
}

double disagreement(const Eigen::VectorXd& state, int n) {
    if (state.size() != 2 * n) {
        throw std::invalid_argument("disagreement: state length must be 2n");
    }
    double worst_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double xi = state[2 * i];
        const double vi = state[2 * i + 1];
        for (int k = i + 1; k < n; ++k) {
            const double dx = xi - state[2 * k];
            const double dv = vi - state[2 * k + 1];
            const double d = dx * dx + dv * dv;
            if (d > worst_sq) worst_sq = d;
        }
    }
    return std::sqrt(worst_sq);
}

Trajectory integrate(const Eigen::MatrixXd& F, const Eigen::VectorXd& xi0, double dt,
                     double horizon, bool store_states) {
    if (F.rows() != F.cols() || F.rows() != xi0.size() || F.rows() % 2 != 0) {
        throw std::invalid_argument("integrate: F must be square of size 2n matching xi0");
    }
    if (!(dt > 0.0) || !(horizon >= dt)) {
        throw std::invalid_argument("integrate: need dt > 0 and horizon >= dt");
    }
    const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
    if (steps > kMaxSteps) {
        throw std::invalid_argument("integrate: step count exceeds 1e7");
    }
    const int n = static_cast<int>(F.rows()) / 2;

    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.disagreement.reserve(steps + 1);
    if (store_states) traj.states.reserve(steps + 1);

    Eigen::VectorXd state = xi0;
    Eigen::VectorXd k1(2 * n), k2(2 * n), k3(2 * n), k4(2 * n), tmp(2 * n);

    traj.times.push_back(0.0);
    traj.disagreement.push_back(disagreement(state, n));
    if (store_states) traj.states.push_back(state);

    for (std::size_t step = 1; step <= steps; ++step) {
        k1.noalias() = F * state;
        tmp.noalias() = state + (0.5 * dt) * k1;
        k2.noalias() = F * tmp;
        tmp.noalias() = state + (0.5 * dt) * k2;
        k3.noalias() = F * tmp;
        tmp.noalias() = state + dt * k3;
        k4.noalias() = F * tmp;
        state.noalias() += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double norm = state.norm();
        if (!std::isfinite(norm) || norm >= kOverflowGuard) {
            traj.truncated = true;
            traj.truncation_step = step;
            break;
        }
        traj.times.push_back(static_cast<double>(step) * dt);
        traj.disagreement.push_back(disagreement(state, n));
        if (store_states) traj.states.push_back(state);
    }
    return traj;
}

Trajectory simulate(const SimConfig& cfg) {
    cfg.validate();
    const topology::Digraph g = build_topology(cfg.topology, cfg.n);
    const topology::LaplacianMatrix L = topology::laplacian(g);
    const Eigen::MatrixXd F = build_F(cfg.gamma, L);

    SplitMix64 rng(cfg.seed);
    Eigen::VectorXd xi0(2 * cfg.n);
    for (int i = 0; i < cfg.n; ++i) {
        xi0[2 * i] = rng.uniform(cfg.init_low, cfg.init_high);
        xi0[2 * i + 1] = cfg.zero_velocity ? 0.0 : rng.uniform(cfg.init_low, cfg.init_high);
    }
    return integrate(F, xi0, cfg.dt, cfg.horizon, cfg.store_states);
}

double fit_tail_slope(const Trajectory& traj) {
    if (traj.times.size() < 4) {
        throw std::invalid_argument("fit_tail_slope: trajectory too short");
    }
    const double t_start = traj.times.back() / 2.0;
    double sum_t = 0.0, sum_y = 0.0, sum_tt = 0.0, sum_ty = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        if (traj.times[k] < t_start || traj.disagreement[k] <= 0.0) continue;
        const double t = traj.times[k];
        const double y = std::log(traj.disagreement[k]);
        sum_t += t;
        sum_y += y;
        sum_tt += t * t;
        sum_ty += t * y;
        ++count;
    }
    if (count < 2) {
        throw std::invalid_argument("fit_tail_slope: not enough positive tail samples");
    }
    const double denom = count * sum_tt - sum_t * sum_t;
    return (count * sum_ty - sum_t * sum_y) / denom;
}

}  // namespace ringnet::sim
