#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ringnet/polynomial.hpp"

namespace ringnet::spectra {

/// Which matrix a spectrum or locus refers to: the Laplacian itself or its
/// negation (the open-loop eigenvalue set fed to the consensus region test).
enum class SpectrumSign { laplacian, negated };

enum class SpectrumSource { closed_form, oracle };

struct SpectrumReport {
    std::vector<Complex> eigenvalues;  ///< sorted by (re, im)
    SpectrumSource source = SpectrumSource::closed_form;
    /// Largest Cassini-oval residual over the eigenvalues; only meaningful
    /// for the alternating-ring locus, absent otherwise.
    std::optional<double> max_cassini_residual;
};

/// m-th roots of unity e^{j 2 pi k / m}, k = 0..m-1.
std::vector<Complex> cyclotomic_roots(int m);

/// Z_k from the recursion Z_k = (x - 2) Z_{k-1} - Z_{k-2},
/// Z_0 = 1, Z_1 = x - 1. Integer coefficients, degree k.
Polynomial chebyshev_Z(int k);

/// Characteristic polynomial of the alternating-ring Laplacian on 2m
/// vertices: (x^2 - 3x + 1)^m - 1, expanded. The constant term is exactly 0.
Polynomial char_poly_alternating(int m);

/// The 2m alternating-ring Laplacian eigenvalues in closed form:
/// c +- 0.5 sqrt(5 + 4 e^{j 2 pi k / m}) with c = 1.5 (laplacian) or
/// -1.5 (negated); principal square root. All 2m values are distinct and the
/// k = 0 pair is exact ({0, 3} resp. {-3, 0}).
SpectrumReport closed_form_spectrum(int m, SpectrumSign sign = SpectrumSign::laplacian);

/// Residual of the expanded Cassini quartic at lambda = x + jy:
/// |((x -+ 3/2)^2 - y^2 - 5/4)^2 + 4 y^2 (x -+ 3/2)^2 - 1|.
/// Zero exactly on the eigenvalue locus of the (negated) alternating-ring
/// Laplacian. The expanded form avoids the cancellation the distance-product
/// definition suffers near the origin.
double cassini_residual(Complex lambda, SpectrumSign sign = SpectrumSign::laplacian);

/// Cyclic-pursuit (circulant) Laplacian spectrum: 1 - e^{j 2 pi k / n}, or
/// its negation. Lies on the unit circle centred at (1, 0) resp. (-1, 0).
SpectrumReport circulant_spectrum(int n, SpectrumSign sign = SpectrumSign::laplacian);

/// Two-directional ring Laplacian spectrum: 2 - 2 cos(2 pi k / n), all real.
std::vector<double> bidirectional_spectrum(int n);

/// Monic characteristic polynomial det(xI - M) by the Faddeev-LeVerrier
/// recursion. Oracle-scale only: dimension capped at 128.
Polynomial dense_char_poly(const Eigen::MatrixXd& M);

/// Worst paired distance under a greedy minimum-distance multiset matching
/// of two equal-size eigenvalue lists. Used to compare spectra computed by
/// independent routes.
double min_distance_pairing_gap(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace ringnet::spectra
