#include "ringnet/consensus.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ringnet/spectra.hpp"

namespace ringnet::consensus {

namespace {

constexpr double kZeroEigTol = 1e-9;

/// Index of the structural zero eigenvalue; enforces that exactly one exists.
std::size_t structural_zero_index(const std::vector<Complex>& lap_spectrum) {
    std::size_t count = 0;
    std::size_t index = 0;
    for (std::size_t i = 0; i < lap_spectrum.size(); ++i) {
        if (std::abs(lap_spectrum[i]) <= kZeroEigTol) {
            ++count;
            index = i;
        }
    }
    if (count != 1) {
        throw std::invalid_argument(
            "expected exactly one zero Laplacian eigenvalue (|mu| <= 1e-9), found " +
            std::to_string(count));
    }
    return index;
}

void require_positive_gamma(double gamma) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("gamma must be > 0");
    }
}

}  // namespace

AgentModel::AgentModel(double gamma_in) : gamma(gamma_in) {
    require_positive_gamma(gamma);
}

Eigen::Matrix2d AgentModel::state_matrix() const {
    Eigen::Matrix2d A;
    A << 0.0, 1.0, 0.0, -gamma;
    return A;
}

Eigen::Vector2d AgentModel::input_matrix() const { return {0.0, 1.0}; }

Eigen::RowVector2d AgentModel::feedback_gain() const { return {1.0, 0.0}; }

bool omega_contains(double gamma, Complex lambda) {
    require_positive_gamma(gamma);
    const Complex r = std::sqrt(gamma * gamma + 4.0 * lambda);
    const Complex s_plus = 0.5 * (-gamma + r);
    const Complex s_minus = 0.5 * (-gamma - r);
    return s_plus.real() < 0.0 && s_minus.real() < 0.0;
}

std::pair<Complex, Complex> mode_roots(double gamma, Complex mu) {
    require_positive_gamma(gamma);
    const Complex r = std::sqrt(gamma * gamma - 4.0 * mu);
    return {0.5 * (-gamma + r), 0.5 * (-gamma - r)};
}

std::vector<Complex> system_spectrum(double gamma, const std::vector<Complex>& lap_spectrum) {
    require_positive_gamma(gamma);
    structural_zero_index(lap_spectrum);
    std::vector<Complex> out;
    out.reserve(2 * lap_spectrum.size());
    for (const Complex mu : lap_spectrum) {
        const auto [a, b] = mode_roots(gamma, mu);
        out.push_back(a);
        out.push_back(b);
    }
    return out;
}

double max_real_nonstructural(double gamma, const std::vector<Complex>& lap_spectrum) {
    require_positive_gamma(gamma);
    const std::size_t zero_idx = structural_zero_index(lap_spectrum);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lap_spectrum.size(); ++i) {
        const auto [a, b] = mode_roots(gamma, lap_spectrum[i]);
        if (i == zero_idx) {
            // the mu = 0 block contributes {0, -gamma}; drop only the s = 0 root
            best = std::max(best, std::min(a.real(), b.real()));
        } else {
            best = std::max(best, std::max(a.real(), b.real()));
        }
    }
    return best;
}

bool consensus_by_criterion(double gamma, const std::vector<Complex>& lap_spectrum) {
    require_positive_gamma(gamma);
    const std::size_t zero_idx = structural_zero_index(lap_spectrum);
    for (std::size_t i = 0; i < lap_spectrum.size(); ++i) {
        if (i == zero_idx) continue;
        if (!omega_contains(gamma, -lap_spectrum[i])) return false;
    }
    return true;
}

spectra::Polynomial intersection_cubic(double gamma) {
    require_positive_gamma(gamma);
    const double p = gamma * gamma;
    return spectra::Polynomial({6.0 - 7.0 * p, p * p - 6.0 * p + 11.0, 6.0 - 2.0 * p, 1.0});
}

bool consensus_by_theorem(double gamma) {
    require_positive_gamma(gamma);
    return gamma > theorem_threshold();
}

double theorem_threshold() { return std::sqrt(6.0 / 7.0); }

double cyclic_margin_asymptote() { return std::sqrt(2.0); }

double cyclic_intersection_nonzero_root(double gamma) {
    require_positive_gamma(gamma);
    return gamma * gamma - 2.0;
}

std::vector<Complex> topology_spectrum(Topology topology, int n) {
    switch (topology) {
        case Topology::alternating: {
            if (n < 6 || n % 2 != 0) {
                throw std::invalid_argument(
                    "alternating ring needs an even agent count n = 2m >= 6");
            }
            return spectra::closed_form_spectrum(n / 2, spectra::SpectrumSign::laplacian)
                .eigenvalues;
        }
        case Topology::cyclic:
            return spectra::circulant_spectrum(n, spectra::SpectrumSign::laplacian).eigenvalues;
        case Topology::bidirectional: {
            const std::vector<double> real_eigs = spectra::bidirectional_spectrum(n);
            return {real_eigs.begin(), real_eigs.end()};
        }
    }
    throw std::invalid_argument("unknown topology");
}

MarginResult margin(Topology topology, int n, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("margin: tol must be > 0");
    }
    MarginResult result;
    result.topology = topology;
    result.n = n;

    const std::vector<Complex> spectrum = topology_spectrum(topology, n);

    if (topology == Topology::bidirectional) {
        // real nonnegative spectrum: consensus for every gamma > 0
        result.unconditional = true;
        result.gamma_star = 0.0;
        result.max_re_at_star = max_real_nonstructural(1e-3, spectrum);
        return result;
    }

    const auto f = [&](double g) { return max_real_nonstructural(g, spectrum); };

    double lo = 1e-3;
    double hi = 2.0;
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (!(f_lo > 0.0) || !(f_hi < 0.0)) {
        std::ostringstream os;
        os << "margin: bracket [1e-3, 2] does not straddle a sign change "
           << "(f(lo) = " << f_lo << ", f(hi) = " << f_hi << ")";
        throw std::runtime_error(os.str());
    }

    int iterations = 0;
    while (hi - lo > tol && iterations < 64) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++iterations;
    }

    result.gamma_star = 0.5 * (lo + hi);
    result.bracket_width = hi - lo;
    result.max_re_at_star = f(result.gamma_star);
    result.slope_at_star =
        (f(result.gamma_star + tol) - f(result.gamma_star - tol)) / (2.0 * tol);
    result.iterations = iterations;
    return result;
}

}  // namespace ringnet::consensus
