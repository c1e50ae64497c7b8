#include "optosqueeze/poly_roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "optosqueeze/errors.hpp"

namespace optosqueeze {

namespace {

double sign_of(double magnitude, double sign_source) {
    return sign_source >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Diagonal similarity scaling (powers of the radix) so that row and column
// norms are comparable. Preserves Hessenberg structure.
void balance(Eigen::MatrixXd& a) {
    constexpr double radix = std::numeric_limits<double>::radix;
    constexpr double radix_sq = radix * radix;
    const Eigen::Index n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double row = 0.0;
            double col = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                col += std::abs(a(j, i));
                row += std::abs(a(i, j));
            }
            if (col == 0.0 || row == 0.0) continue;
            double g = row / radix;
            double f = 1.0;
            const double s = col + row;
            while (col < g) {
                f *= radix;
                col *= radix_sq;
            }
            g = row * radix;
            while (col > g) {
                f /= radix;
                col /= radix_sq;
            }
            if ((col + row) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

}  // namespace

std::vector<std::complex<double>> hessenberg_eigenvalues(Eigen::MatrixXd a) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const int n = static_cast<int>(a.rows());
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    if (n == 0) return out;

    double anorm = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
    }

    int nn = n - 1;
    double t = 0.0;  // accumulated exceptional shifts
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            // Look for a small subdiagonal element to split the problem.
            for (l = nn; l > 0; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= eps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                out[static_cast<std::size_t>(nn--)] = x + t;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    const double p = 0.5 * (y - x);
                    const double q = p * p + w;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    const auto lo = static_cast<std::size_t>(nn - 1);
                    const auto hi = static_cast<std::size_t>(nn);
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        out[lo] = out[hi] = x + z;
                        if (z != 0.0) out[hi] = x - w / z;
                    } else {
                        out[hi] = {x + p, -z};
                        out[lo] = std::conj(out[hi]);
                    }
                    nn -= 2;
                } else {
                    if (its == 30) throw ConvergenceError("hessenberg_eigenvalues: too many QR iterations");
                    if (its == 10 || its == 20) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m = nn - 2;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        double s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v =
                            std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (int i = m; i < nn - 1; ++i) {
                        a(i + 2, i) = 0.0;
                        if (i != m) a(i + 2, i - 1) = 0.0;
                    }
                    // Double-shift QR sweep on rows/columns l..nn.
                    for (int k = m; k < nn; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = (k + 1 != nn) ? a(k + 2, k - 1) : 0.0;
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            p = a(k, j) + q * a(k + 1, j);
                            if (k + 1 != nn) {
                                p += r * a(k + 2, j);
                                a(k + 2, j) -= p * z;
                            }
                            a(k + 1, j) -= p * y;
                            a(k, j) -= p * x;
                        }
                        const int mmin = std::min(nn, k + 3);
                        for (int i = l; i <= mmin; ++i) {
                            p = x * a(i, k) + y * a(i, k + 1);
                            if (k + 1 != nn) {
                                p += z * a(i, k + 2);
                                a(i, k + 2) -= p * r;
                            }
                            a(i, k + 1) -= p * q;
                            a(i, k) -= p;
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }
    return out;
}

std::vector<std::complex<double>> monic_polynomial_roots(std::span<const double> coefficients) {
    const auto n = static_cast<Eigen::Index>(coefficients.size());
    if (n == 0) return {};
    for (double c : coefficients) {
        if (!std::isfinite(c)) throw DomainError("monic_polynomial_roots: non-finite coefficient");
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) companion(0, j) = -coefficients[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    balance(companion);

    auto roots = hessenberg_eigenvalues(std::move(companion));

    for (auto& root : roots) {
        if (std::abs(root.imag()) <= 1e-10 * std::max(1.0, std::abs(root))) root.imag(0.0);
    }
    // The 2x2 deflation produces conjugates already; re-symmetrize anyway so
    // snapping above cannot leave an unpaired complex root.
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i] || roots[i].imag() <= 0.0) continue;
        std::size_t best = roots.size();
        double best_distance = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j == i || used[j] || roots[j].imag() >= 0.0) continue;
            const double d = std::abs(roots[j] - std::conj(roots[i]));
            if (d < best_distance) {
                best_distance = d;
                best = j;
            }
        }
        if (best == roots.size() || best_distance > 1e-10 * std::max(1.0, std::abs(roots[i]))) {
            throw NumericalError("monic_polynomial_roots: complex root without conjugate partner");
        }
        const double re = 0.5 * (roots[i].real() + roots[best].real());
        const double im = 0.5 * (roots[i].imag() - roots[best].imag());
        roots[i] = {re, im};
        roots[best] = {re, -im};
        used[i] = used[best] = true;
    }
    sort_spectrum(roots);
    return roots;
}

void sort_spectrum(std::span<std::complex<double>> values) {
    std::sort(values.begin(), values.end(), [](const auto& lhs, const auto& rhs) {
        if (lhs.real() != rhs.real()) return lhs.real() < rhs.real();
        return lhs.imag() < rhs.imag();
    });
}

}  // namespace optosqueeze
