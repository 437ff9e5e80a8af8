#pragma once

#include <complex>
#include <vector>

namespace ringnet {
using Complex = std::complex<double>;
}

namespace ringnet::spectra {

/// Dense univariate polynomial with real coefficients in ascending degree
/// order. Construction trims exact trailing zeros, so the leading
/// coefficient of any nonzero polynomial is nonzero.
class Polynomial {
public:
    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> ascending);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int k) const;
    double leading() const { return coeffs_.back(); }

    double operator()(double x) const;
    Complex operator()(Complex z) const;

    Polynomial derivative() const;

    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;

    bool operator==(const Polynomial& rhs) const { return coeffs_ == rhs.coeffs_; }

private:
    std::vector<double> coeffs_;
};

/// Simultaneous root finder (Aberth-Ehrlich iteration).
///
/// Deterministic and seedless: initial points sit on circles whose radii come
/// from the Newton polygon of the coefficient magnitudes, with angles offset
/// by 0.4 rad to break symmetry. Polynomial values are evaluated with a
/// compensated (double-double) Horner scheme, which keeps the returned roots
/// accurate even for high-degree polynomials whose expanded coefficients are
/// large. Exact zero roots (trailing zero coefficients at the low end) are
/// deflated up front and re-attached, so they come back exact.
///
/// tol <= 0 selects the default residual tolerance: 1e-12 for degree <= 40,
/// 1e-9 above. On return every root r satisfies
/// |p(r)| <= tol * (1 + max|coeff|); if the iteration cap (1000 sweeps) is
/// reached without meeting that bound, throws std::runtime_error carrying the
/// worst residual.
///
/// Results are sorted by (re, im).
std::vector<Complex> poly_roots(const Polynomial& p, double tol = 0.0);

}  // namespace ringnet::spectra
