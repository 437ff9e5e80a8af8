#include "ringnet/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ringnet::spectra {

namespace {

void sort_by_re_im(std::vector<Complex>& v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

}  // namespace

std::vector<Complex> cyclotomic_roots(int m) {
    if (m < 1) {
        throw std::invalid_argument("cyclotomic_roots: m must be >= 1");
    }
    std::vector<Complex> roots;
    roots.reserve(m);
    for (int k = 0; k < m; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / m;
        roots.emplace_back(std::cos(theta), std::sin(theta));
    }
    return roots;
}

Polynomial chebyshev_Z(int k) {
    if (k < 0) {
        throw std::invalid_argument("chebyshev_Z: k must be >= 0");
    }
    Polynomial z_prev({1.0});        // Z_0 = 1
    if (k == 0) return z_prev;
    Polynomial z_cur({-1.0, 1.0});   // Z_1 = x - 1
    const Polynomial shift({-2.0, 1.0});
    for (int i = 2; i <= k; ++i) {
        Polynomial z_next = shift * z_cur - z_prev;
        z_prev = std::move(z_cur);
        z_cur = std::move(z_next);
    }
    return z_cur;
}

Polynomial char_poly_alternating(int m) {
    if (m < 3) {
        throw std::invalid_argument("char_poly_alternating: m must be >= 3");
    }
    const Polynomial z2 = chebyshev_Z(2);  // x^2 - 3x + 1
    Polynomial acc({1.0});
    for (int i = 0; i < m; ++i) {
        acc = acc * z2;
    }
    return acc - Polynomial({1.0});
}

SpectrumReport closed_form_spectrum(int m, SpectrumSign sign) {
    if (m < 3) {
        throw std::invalid_argument("closed_form_spectrum: m must be >= 3");
    }
    const double centre = sign == SpectrumSign::laplacian ? 1.5 : -1.5;
    SpectrumReport report;
    report.source = SpectrumSource::closed_form;
    report.eigenvalues.reserve(2 * m);
    double worst = 0.0;
    for (const Complex z : cyclotomic_roots(m)) {
        const Complex r = std::sqrt(5.0 + 4.0 * z);  // principal branch
        for (const Complex lambda : {centre + 0.5 * r, centre - 0.5 * r}) {
            report.eigenvalues.push_back(lambda);
            worst = std::max(worst, cassini_residual(lambda, sign));
        }
    }
    sort_by_re_im(report.eigenvalues);
    report.max_cassini_residual = worst;
    return report;
}

double cassini_residual(Complex lambda, SpectrumSign sign) {
    const double centre = sign == SpectrumSign::laplacian ? 1.5 : -1.5;
    const double x = lambda.real() - centre;
    const double y = lambda.imag();
    const double a = x * x - y * y - 1.25;
    return std::abs(a * a + 4.0 * y * y * x * x - 1.0);
}

SpectrumReport circulant_spectrum(int n, SpectrumSign sign) {
    if (n < 3) {
        throw std::invalid_argument("circulant_spectrum: n must be >= 3");
    }
    SpectrumReport report;
    report.source = SpectrumSource::closed_form;
    report.eigenvalues.reserve(n);
    for (const Complex z : cyclotomic_roots(n)) {
        const Complex lambda = 1.0 - z;
        report.eigenvalues.push_back(sign == SpectrumSign::laplacian ? lambda : -lambda);
    }
    sort_by_re_im(report.eigenvalues);
    return report;
}

std::vector<double> bidirectional_spectrum(int n) {
    if (n < 3) {
        throw std::invalid_argument("bidirectional_spectrum: n must be >= 3");
    }
    std::vector<double> eigs(n);
    for (int k = 0; k < n; ++k) {
        eigs[k] = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n);
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

double min_distance_pairing_gap(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("min_distance_pairing_gap: size mismatch");
    }
    struct Entry {
        double d;
        std::size_t i, j;
    };
    std::vector<Entry> pairs;
    pairs.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            pairs.push_back({std::abs(a[i] - b[j]), i, j});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Entry& x, const Entry& y) {
        if (x.d != y.d) return x.d < y.d;
        if (x.i != y.i) return x.i < y.i;
        return x.j < y.j;
    });
    std::vector<char> used_a(a.size(), 0), used_b(b.size(), 0);
    double worst = 0.0;
    std::size_t matched = 0;
    for (const Entry& e : pairs) {
        if (used_a[e.i] || used_b[e.j]) continue;
        used_a[e.i] = used_b[e.j] = 1;
        worst = std::max(worst, e.d);
        if (++matched == a.size()) break;
    }
    return worst;
}

Polynomial dense_char_poly(const Eigen::MatrixXd& M) {
    if (M.rows() != M.cols()) {
        throw std::invalid_argument("dense_char_poly: matrix must be square");
    }
    const int n = static_cast<int>(M.rows());
    if (n < 1 || n > 128) {
        throw std::invalid_argument("dense_char_poly: dimension must be in 1..128");
    }
    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    c[n] = 1.0;
    Eigen::MatrixXd Mk = Eigen::MatrixXd::Zero(n, n);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        Mk = M * (Mk + c[n - k + 1] * I);
        c[n - k] = -Mk.trace() / k;
    }
    return Polynomial(std::move(c));
}

}  // namespace ringnet::spectra
