#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ringnet/consensus.hpp"
#include "ringnet/sim.hpp"
#include "ringnet/spectra.hpp"
#include "ringnet/topology.hpp"

using namespace ringnet;
using consensus::Topology;

namespace {

/// Straightforward Kronecker product, independent of the block construction
/// used by build_F.
Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::MatrixXd out(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) {
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("SplitMix64 reference stream") {
    sim::SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);

    sim::SplitMix64 rng42(42);
    CHECK(rng42.uniform(0.0, 10.0) == doctest::Approx(7.415648787718233).epsilon(1e-15));
    CHECK(rng42.uniform(0.0, 10.0) == doctest::Approx(1.599103928769201).epsilon(1e-15));
}

TEST_CASE("build_F block structure") {
    topology::LaplacianMatrix none;
    none.n = 1;
    none.entries = Eigen::MatrixXd::Zero(1, 1);
    Eigen::MatrixXd expected(2, 2);
    expected << 0, 1, 0, -2;
    CHECK(sim::build_F(2.0, none) == expected);

    const auto L = topology::laplacian(topology::build_cyclic_pursuit(3));
    const Eigen::MatrixXd F = sim::build_F(1.0, L);
    REQUIRE(F.rows() == 6);
    Eigen::Matrix2d coupling;  // the (1,3) block comes from the single arc (1,3)
    coupling << 0, 0, 1, 0;
    CHECK(F.block<2, 2>(0, 4) == coupling);
    Eigen::Matrix2d diag;
    diag << 0, 1, -1, -1;
    CHECK(F.block<2, 2>(0, 0) == diag);
}

TEST_CASE("build_F equals the Kronecker construction") {
    const consensus::AgentModel agent(1.7);
    const Eigen::MatrixXd BK = agent.input_matrix() * agent.feedback_gain();
    for (int m : {3, 5}) {
        const auto L = topology::laplacian(topology::build_alternating_ring(m));
        const Eigen::MatrixXd direct =
            kron(Eigen::MatrixXd::Identity(L.n, L.n), agent.state_matrix()) -
            kron(L.entries, BK);
        CHECK(sim::build_F(1.7, L) == direct);
    }
}

TEST_CASE("build_F eigenvalues match the modal spectrum (oracle path, m=3)") {
    const auto L = topology::laplacian(topology::build_alternating_ring(3));
    const Eigen::MatrixXd F = sim::build_F(2.0, L);
    const auto oracle_roots = spectra::poly_roots(spectra::dense_char_poly(F));
    const auto modal =
        consensus::system_spectrum(2.0, spectra::closed_form_spectrum(3).eigenvalues);
    REQUIRE(oracle_roots.size() == modal.size());
    CHECK(spectra::min_distance_pairing_gap(oracle_roots, modal) <= 1e-8);
}

TEST_CASE("disagreement") {
    Eigen::VectorXd same(6);
    same << 5, 0, 5, 0, 5, 0;
    CHECK(sim::disagreement(same, 3) == 0.0);

    Eigen::VectorXd two(4);
    two << 0, 0, 3, 4;
    CHECK(sim::disagreement(two, 2) == 5.0);

    // translation invariance in the positions
    Eigen::VectorXd shifted = two;
    shifted[0] += 100.0;
    shifted[2] += 100.0;
    CHECK(sim::disagreement(shifted, 2) == sim::disagreement(two, 2));

    CHECK_THROWS_AS(sim::disagreement(two, 3), std::invalid_argument);
}

TEST_CASE("single uncoupled agent stays put") {
    Eigen::MatrixXd F(2, 2);
    F << 0, 1, 0, -1;
    Eigen::VectorXd xi0(2);
    xi0 << 1, 0;
    const auto traj = sim::integrate(F, xi0, 0.01, 5.0);
    REQUIRE_FALSE(traj.truncated);
    for (const auto& state : traj.states) {
        REQUIRE(state[0] == 1.0);
        REQUIRE(state[1] == 0.0);
    }
}

TEST_CASE("RK4 converges at fourth order on the exact exponential") {
    Eigen::MatrixXd F(2, 2);
    F << 0, 1, 0, -1;  // gamma = 1, no coupling
    Eigen::VectorXd xi0(2);
    xi0 << 1, 1;
    const double T = 5.0;

    std::vector<double> log_dt, log_err;
    for (const double dt : {0.1, 0.05, 0.025, 0.0125}) {
        const auto traj = sim::integrate(F, xi0, dt, T, true);
        const auto& last = traj.states.back();
        // exact flow: x(t) = x0 + v0 (1 - e^-t), v(t) = v0 e^-t
        const double xe = 1.0 + (1.0 - std::exp(-T));
        const double ve = std::exp(-T);
        const double err = std::hypot(last[0] - xe, last[1] - ve);
        log_dt.push_back(std::log(dt));
        log_err.push_back(std::log(err));
    }
    const auto n = static_cast<double>(log_dt.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < log_dt.size(); ++i) {
        st += log_dt[i];
        sy += log_err[i];
        stt += log_dt[i] * log_dt[i];
        sty += log_dt[i] * log_err[i];
    }
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    CHECK(slope == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("simulate is deterministic") {
    sim::SimConfig cfg;
    cfg.topology = Topology::cyclic;
    cfg.n = 5;
    cfg.gamma = 1.5;
    cfg.horizon = 2.0;
    cfg.seed = 123;
    const auto a = sim::simulate(cfg);
    const auto b = sim::simulate(cfg);
    REQUIRE(a.times == b.times);
    REQUIRE(a.disagreement == b.disagreement);
    REQUIRE(a.states.size() == b.states.size());
    for (std::size_t k = 0; k < a.states.size(); ++k) {
        REQUIRE(a.states[k] == b.states[k]);
    }
}

TEST_CASE("initial draws follow the seeded stream, positions then velocities") {
    sim::SimConfig cfg;
    cfg.topology = Topology::cyclic;
    cfg.n = 3;
    cfg.horizon = 0.01;
    cfg.seed = 42;
    const auto traj = sim::simulate(cfg);
    sim::SplitMix64 rng(42);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(traj.states[0][2 * i] == rng.uniform(0.0, 10.0));
        REQUIRE(traj.states[0][2 * i + 1] == rng.uniform(0.0, 10.0));
    }

    cfg.zero_velocity = true;
    const auto rest = sim::simulate(cfg);
    sim::SplitMix64 rng2(42);
    for (int i = 0; i < 3; ++i) {
        REQUIRE(rest.states[0][2 * i] == rng2.uniform(0.0, 10.0));
        REQUIRE(rest.states[0][2 * i + 1] == 0.0);
    }
}

TEST_CASE("trajectory times are uniform and strictly increasing") {
    sim::SimConfig cfg;
    cfg.topology = Topology::bidirectional;
    cfg.n = 4;
    cfg.horizon = 1.0;
    cfg.dt = 0.25;
    const auto traj = sim::simulate(cfg);
    REQUIRE(traj.times.size() == 5);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        REQUIRE(traj.times[k] == static_cast<double>(k) * 0.25);
    }
    REQUIRE(traj.disagreement.size() == traj.times.size());
    REQUIRE(traj.states.size() == traj.times.size());
}

TEST_CASE("overflow guard truncates divergent runs") {
    Eigen::MatrixXd F(2, 2);
    F << 0, 1, 10, 0;  // unstable: eigenvalue +sqrt(10)
    Eigen::VectorXd xi0(2);
    xi0 << 1, 1;
    const auto traj = sim::integrate(F, xi0, 0.01, 100.0);
    CHECK(traj.truncated);
    CHECK(traj.truncation_step > 0);
    CHECK(traj.times.size() == traj.truncation_step);
    CHECK(traj.disagreement.size() == traj.times.size());
    CHECK(traj.states.size() == traj.times.size());
}

TEST_CASE("non-finite dynamics truncate immediately") {
    Eigen::MatrixXd F(2, 2);
    F << 0, 1, std::numeric_limits<double>::quiet_NaN(), 0;
    Eigen::VectorXd xi0(2);
    xi0 << 1, 1;
    const auto traj = sim::integrate(F, xi0, 0.01, 1.0);
    CHECK(traj.truncated);
    CHECK(traj.truncation_step == 1);
}

TEST_CASE("config validation") {
    sim::SimConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.horizon = 0.001;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.init_low = 5.0;
    cfg.init_high = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.dt = 1e-9;
    cfg.horizon = 100.0;  // 1e11 steps
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.topology = Topology::alternating;
    cfg.n = 7;
    CHECK_THROWS_AS(sim::simulate(cfg), std::invalid_argument);
}

TEST_CASE("convergent run settles on a constant consensus value") {
    sim::SimConfig cfg;
    cfg.topology = Topology::alternating;
    cfg.n = 6;
    cfg.gamma = 2.0;
    cfg.horizon = 150.0;
    cfg.seed = 42;
    const auto traj = sim::simulate(cfg);
    REQUIRE_FALSE(traj.truncated);

    std::size_t settled = traj.times.size();
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        if (traj.disagreement[k] < 1e-9) {
            settled = k;
            break;
        }
    }
    REQUIRE(settled < traj.times.size());

    const auto& ref = traj.states[settled];
    const auto& last = traj.states.back();
    for (int i = 0; i < cfg.n; ++i) {
        REQUIRE(std::abs(last[2 * i] - ref[2 * i]) <= 1e-8);   // positions frozen
        REQUIRE(std::abs(last[2 * i + 1]) <= 1e-9);            // velocities vanish
    }
}

TEST_CASE("tail decay slope tracks the spectral abscissa") {
    sim::SimConfig cfg;
    cfg.topology = Topology::alternating;
    cfg.n = 14;
    cfg.gamma = 2.0;
    cfg.horizon = 300.0;
    cfg.seed = 42;
    cfg.store_states = false;
    const auto traj = sim::simulate(cfg);
    REQUIRE_FALSE(traj.truncated);
    CHECK(traj.states.empty());

    const double slope = sim::fit_tail_slope(traj);
    const double abscissa = consensus::max_real_nonstructural(
        2.0, consensus::topology_spectrum(Topology::alternating, 14));
    CHECK(slope == doctest::Approx(abscissa).epsilon(0.2));
}
