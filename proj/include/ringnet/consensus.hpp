#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ringnet/polynomial.hpp"

namespace ringnet::consensus {

/// Double-integrator agent with velocity damping gamma:
///   xdot = v,  vdot = -gamma v + u,
/// written as xi_dot = A xi + B u with position feedback gain K.
struct AgentModel {
    double gamma;

    explicit AgentModel(double gamma_in);

    Eigen::Matrix2d state_matrix() const;           ///< A = [[0, 1], [0, -gamma]]
    Eigen::Vector2d input_matrix() const;           ///< B = [0, 1]^T
    Eigen::RowVector2d feedback_gain() const;       ///< K = [1, 0]
};

/// Membership in the consensus region of phi(s) = s^2 + gamma s: true iff
/// both roots of s^2 + gamma s - lambda are strictly in the open left
/// half-plane. Equivalent to the strict parabola test
/// Re(lambda) < -Im(lambda)^2 / gamma^2; boundary points (including
/// lambda = 0) are excluded.
bool omega_contains(double gamma, Complex lambda);

/// The two closed-loop eigenvalues a Laplacian eigenvalue mu contributes:
/// roots of s^2 + gamma s + mu, i.e. (-gamma +- sqrt(gamma^2 - 4 mu)) / 2
/// with the principal square root.
std::pair<Complex, Complex> mode_roots(double gamma, Complex mu);

/// All 2n closed-loop eigenvalues: the union of mode_roots over the given
/// Laplacian spectrum. Requires the spectrum to contain exactly one zero
/// eigenvalue (|mu| <= 1e-9); valid for spectra with distinct eigenvalues,
/// where the closed-loop matrix decouples block-wise.
std::vector<Complex> system_spectrum(double gamma, const std::vector<Complex>& lap_spectrum);

/// Largest real part over the closed-loop spectrum after removing exactly
/// one structural zero: the s = 0 root contributed by the mu = 0 block.
/// Other eigenvalues are kept even when they touch the imaginary axis.
double max_real_nonstructural(double gamma, const std::vector<Complex>& lap_spectrum);

/// Consensus criterion: every nonzero Laplacian eigenvalue mu must place
/// -mu inside the consensus region. Agrees with max_real_nonstructural < 0.
bool consensus_by_criterion(double gamma, const std::vector<Complex>& lap_spectrum);

/// Cubic in x produced by substituting the parabola boundary y^2 = -gamma^2 x
/// into the Cassini quartic of the negated alternating-ring locus:
///   x^3 + (6 - 2p) x^2 + (p^2 - 6p + 11) x + (6 - 7p),  p = gamma^2.
/// Its real nonpositive roots are the curve intersections away from the
/// origin; the root product equals 7p - 6 (Vieta).
spectra::Polynomial intersection_cubic(double gamma);

/// Size-independent sufficient condition for the alternating ring:
/// consensus for every network size iff gamma > sqrt(6/7), strictly.
bool consensus_by_theorem(double gamma);

/// The strict damping threshold sqrt(6/7) used by consensus_by_theorem.
double theorem_threshold();

/// Damping threshold for cyclic pursuit in the large-n limit: sqrt(2).
double cyclic_margin_asymptote();

/// Nonzero root of the circle/parabola intersection equation
/// x^2 + (2 - gamma^2) x = 0 for the cyclic-pursuit locus; equals
/// gamma^2 - 2 and changes sign exactly at gamma = sqrt(2).
double cyclic_intersection_nonzero_root(double gamma);

enum class Topology { alternating, cyclic, bidirectional };

/// Closed-form Laplacian spectrum for a topology; n is the agent count
/// (even and >= 6 for the alternating ring, >= 3 otherwise).
std::vector<Complex> topology_spectrum(Topology topology, int n);

struct MarginResult {
    Topology topology;
    int n = 0;
    double gamma_star = 0.0;      ///< consensus for gamma > gamma_star
    double bracket_width = 0.0;   ///< final bisection bracket
    double max_re_at_star = 0.0;
    double slope_at_star = 0.0;   ///< local d(max_re)/d(gamma) at gamma_star
    int iterations = 0;
    bool unconditional = false;   ///< bidirectional: consensus for any gamma > 0
};

/// Critical damping by bisection of max_real_nonstructural over
/// gamma in [1e-3, 2]. The bracket must straddle a sign change or this
/// throws; it is never silently clamped. For the bidirectional ring the
/// result is gamma_star = 0 with the unconditional flag set.
MarginResult margin(Topology topology, int n, double tol = 1e-6);

}  // namespace ringnet::consensus
