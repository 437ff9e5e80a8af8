#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "ringnet/consensus.hpp"
#include "ringnet/topology.hpp"

namespace ringnet::sim {

/// SplitMix64 stream. The generator is part of the external contract so that
/// trajectories reproduce bit-identically across implementations: state
/// advances by 0x9E3779B97F4A7C15 and the output is finalized with the
/// 30/27/31 xor-shift-multiply mix. Uniform doubles take the top 53 bits.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [lo, hi) from the top 53 bits of next().
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

private:
    std::uint64_t state_;
};

struct SimConfig {
    consensus::Topology topology = consensus::Topology::alternating;
    int n = 50;                 ///< agent count
    double gamma = 2.0;
    double dt = 0.01;
    double horizon = 100.0;
    std::uint64_t seed = 42;
    double init_low = 0.0;
    double init_high = 10.0;
    bool zero_velocity = false; ///< draw positions only, start at rest
    bool store_states = true;   ///< keep the full state history (memory heavy
                                ///< for long horizons; disagreement is always kept)

    void validate() const;
};

/// Time-indexed stacked states [x1, v1, x2, v2, ...] with the pairwise
/// disagreement series. times[k] = k * dt; states parallels times when state
/// storage is enabled. A run that hits the overflow guard (state norm 1e12)
/// or a non-finite value is returned truncated at the offending step.
struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;
    std::vector<double> disagreement;
    bool truncated = false;
    std::size_t truncation_step = 0;
};

/// Closed-loop matrix of the networked system, block form
/// F = I (x) A - L (x) B K for the damped double-integrator agent.
Eigen::MatrixXd build_F(double gamma, const topology::LaplacianMatrix& L);

/// Max over agent pairs of the Euclidean distance between full states
/// (position and velocity). state must have length 2n.
double disagreement(const Eigen::VectorXd& state, int n);

/// Fixed-step classic RK4 on xi_dot = F xi. Deterministic; no adaptivity.
Trajectory integrate(const Eigen::MatrixXd& F, const Eigen::VectorXd& xi0, double dt,
                     double horizon, bool store_states = true);

/// Build the configured topology, draw the initial state with SplitMix64
/// (per agent: position, then velocity unless zero_velocity), integrate.
Trajectory simulate(const SimConfig& cfg);

/// Least-squares slope of log(disagreement) over the tail half of the run
/// (entries with positive disagreement only). The asymptote of a convergent
/// run matches the spectral abscissa of the non-structural modes.
double fit_tail_slope(const Trajectory& traj);

}  // namespace ringnet::sim
