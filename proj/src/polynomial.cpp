#include "ringnet/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ringnet::spectra {

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
    if (coeffs_.empty()) {
        coeffs_.push_back(0.0);
    }
    for (double c : coeffs_) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("Polynomial: non-finite coefficient");
        }
    }
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) {
        coeffs_.pop_back();
    }
}

double Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(k)];
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Complex Polynomial::operator()(Complex z) const {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial({0.0});
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    }
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    std::vector<double> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<double> out(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = coeff(static_cast<int>(i)) + rhs.coeff(static_cast<int>(i));
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    std::vector<double> out(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = coeff(static_cast<int>(i)) - rhs.coeff(static_cast<int>(i));
    }
    return Polynomial(std::move(out));
}

// ---------------------------------------------------------------------------
// Compensated (double-double) arithmetic for the root finder. Only what the
// complex Horner evaluation needs; error-free transforms via fma.
// ---------------------------------------------------------------------------

namespace {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    const double e = s.lo + a.lo + b.lo;
    DD r = two_sum(s.hi, e);
    return r;
}

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    const double e = p.lo + a.hi * b.lo + a.lo * b.hi;
    DD r = two_sum(p.hi, e);
    return r;
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

struct CDD {
    DD re, im;
};

inline CDD cdd_add(CDD a, CDD b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline CDD cdd_mul(CDD a, CDD b) {
    return {dd_add(dd_mul(a.re, b.re), dd_neg(dd_mul(a.im, b.im))),
            dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re))};
}

/// Compensated complex Horner: evaluates as if in twice the working
/// precision, which is what keeps root refinement meaningful when the
/// expanded coefficients are large.
Complex horner_dd(const std::vector<double>& c, Complex z) {
    const CDD zz{{z.real(), 0.0}, {z.imag(), 0.0}};
    CDD acc{{c.back(), 0.0}, {0.0, 0.0}};
    for (auto it = c.rbegin() + 1; it != c.rend(); ++it) {
        acc = cdd_mul(acc, zz);
        acc = cdd_add(acc, CDD{{*it, 0.0}, {0.0, 0.0}});
    }
    return {acc.re.hi + acc.re.lo, acc.im.hi + acc.im.lo};
}

/// Initial points on circles whose radii follow the Newton polygon of the
/// coefficient magnitudes (upper convex hull of (k, log|c_k|)): each hull
/// edge contributes its length in points at the edge's root-modulus
/// estimate. Deterministic; angles offset by 0.4 rad.
std::vector<Complex> initial_points(const std::vector<double>& c) {
    const int deg = static_cast<int>(c.size()) - 1;
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    std::vector<double> logs(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        logs[k] = c[k] == 0.0 ? kNegInf : std::log(std::abs(c[k]));
    }

    std::vector<int> hull{0};
    for (int k = 1; k <= deg; ++k) {
        if (logs[k] == kNegInf && k != deg) continue;
        while (hull.size() >= 2) {
            const int k1 = hull[hull.size() - 2];
            const int k2 = hull.back();
            if ((logs[k2] - logs[k1]) * (k - k2) <= (logs[k] - logs[k2]) * (k2 - k1)) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(k);
    }

    std::vector<Complex> pts;
    pts.reserve(deg);
    int idx = 0;
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        const int k1 = hull[e];
        const int k2 = hull[e + 1];
        const double r = std::pow(std::abs(c[k1]) / std::abs(c[k2]), 1.0 / (k2 - k1));
        for (int j = 0; j < k2 - k1; ++j, ++idx) {
            const double ang = 0.4 + 2.0 * std::numbers::pi * idx / deg;
            pts.push_back(r * Complex(std::cos(ang), std::sin(ang)));
        }
    }
    return pts;
}

}  // namespace

std::vector<Complex> poly_roots(const Polynomial& p, double tol) {
    std::vector<double> c = p.coeffs();
    if (c.size() < 2) {
        throw std::invalid_argument("poly_roots: degree must be >= 1");
    }

    // exact zero roots deflate losslessly
    std::size_t zero_roots = 0;
    while (zero_roots + 1 < c.size() && c[zero_roots] == 0.0) {
        ++zero_roots;
    }
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zero_roots));

    std::vector<Complex> roots(zero_roots, Complex(0.0, 0.0));
    const int deg = static_cast<int>(c.size()) - 1;

    double max_coeff = 0.0;
    for (double v : p.coeffs()) max_coeff = std::max(max_coeff, std::abs(v));
    if (tol <= 0.0) {
        tol = p.degree() <= 40 ? 1e-12 : 1e-9;
    }
    const double residual_cap = tol * (1.0 + max_coeff);

    if (deg >= 1) {
        std::vector<double> dc(c.size() - 1);
        for (std::size_t k = 1; k < c.size(); ++k) {
            dc[k - 1] = static_cast<double>(k) * c[k];
        }

        std::vector<Complex> z = initial_points(c);
        constexpr int kMaxSweeps = 1000;

        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            double moved = 0.0;
            double extent = 1.0;
            for (int i = 0; i < deg; ++i) {
                extent = std::max(extent, std::abs(z[i]));
                const Complex pv = horner_dd(c, z[i]);
                if (pv == Complex(0.0, 0.0)) continue;  // exact root hit
                const Complex dv = horner_dd(dc, z[i]);
                if (dv == Complex(0.0, 0.0)) {
                    z[i] *= 1.0 + 1e-6;  // stationary point; nudge off it
                    continue;
                }
                const Complex newton = pv / dv;
                Complex repulse = 0.0;
                for (int j = 0; j < deg; ++j) {
                    const Complex diff = z[i] - z[j];
                    if (j != i && diff != Complex(0.0, 0.0)) repulse += 1.0 / diff;
                }
                const Complex denom = 1.0 - newton * repulse;
                const Complex delta = denom == Complex(0.0, 0.0) ? newton : newton / denom;
                z[i] -= delta;
                moved = std::max(moved, std::abs(delta));
            }
            if (moved <= 1e-14 * extent) break;
        }

        double worst = 0.0;
        for (int i = 0; i < deg; ++i) {
            worst = std::max(worst, std::abs(horner_dd(c, z[i])));
        }
        if (worst > residual_cap) {
            std::ostringstream os;
            os << "poly_roots: residual bound not met within 1000 sweeps (degree "
               << p.degree() << ", worst residual " << worst << ", allowed " << residual_cap
               << ")";
            throw std::runtime_error(os.str());
        }
        roots.insert(roots.end(), z.begin(), z.end());
    }

    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

}  // namespace ringnet::spectra
