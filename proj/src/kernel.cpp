#include "walklab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace walklab {

namespace {

Complex horner(const std::vector<Complex>& c, Complex x) {
    Complex acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

Complex horner_deriv(const std::vector<Complex>& c, Complex x) {
    Complex acc = 0;
    for (size_t i = c.size(); i-- > 1;) acc = acc * x + c[i] * double(i);
    return acc;
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
    std::vector<Complex> c = coeffs;
    while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg < 1) throw ValidationError("polynomial_roots: degree must be >= 1");

    // Explicit zero roots first so the iteration sees a nonzero constant term.
    int zero_roots = 0;
    while (zero_roots < deg && std::abs(c[zero_roots]) == 0.0) ++zero_roots;
    std::vector<Complex> work(c.begin() + zero_roots, c.end());
    const int m = static_cast<int>(work.size()) - 1;

    std::vector<Complex> r(m);
    if (m >= 1) {
        // Initial guesses on a circle scaled by the root-magnitude estimate.
        double radius = std::pow(std::abs(work.front() / work.back()), 1.0 / m);
        if (!(radius > 0) || !std::isfinite(radius)) radius = 1.0;
        for (int i = 0; i < m; ++i) {
            const double ang = 2.0 * M_PI * i / m + 0.4;
            r[i] = radius * Complex(std::cos(ang), std::sin(ang));
        }
        for (int iter = 0; iter < 500; ++iter) {
            double worst = 0;
            for (int i = 0; i < m; ++i) {
                const Complex p = horner(work, r[i]);
                const Complex dp = horner_deriv(work, r[i]);
                Complex newton;
                if (std::abs(dp) == 0.0) {
                    newton = Complex(1e-8, 1e-8);  // nudge off the stationary point
                } else {
                    newton = p / dp;
                }
                Complex repel = 0;
                for (int j = 0; j < m; ++j)
                    if (j != i) repel += 1.0 / (r[i] - r[j]);
                const Complex denom = 1.0 - newton * repel;
                const Complex step = (std::abs(denom) == 0.0) ? newton : newton / denom;
                r[i] -= step;
                worst = std::max(worst, std::abs(step) / (1.0 + std::abs(r[i])));
            }
            if (worst < 1e-15) break;
        }
        // Newton polish sharpens simple roots to full precision.
        for (int i = 0; i < m; ++i) {
            for (int it = 0; it < 3; ++it) {
                const Complex dp = horner_deriv(work, r[i]);
                if (std::abs(dp) == 0.0) break;
                r[i] -= horner(work, r[i]) / dp;
            }
        }
    }
    for (int i = 0; i < zero_roots; ++i) r.push_back(0.0);
    return r;
}

namespace {

// Coefficients of u^c (1 - z P(u)) as a polynomial in u.
std::vector<Complex> kernel_poly(const StepSet& s, Complex z) {
    std::vector<Complex> coef(static_cast<size_t>(s.c + s.d) + 1, Complex(0));
    coef[s.c] = 1.0;
    for (const Step& st : s.steps) coef[st.jump + s.c] -= z * st.w;
    return coef;
}

struct Classified {
    std::vector<Complex> small, large;
    bool collided = false;
};

// Sort by modulus; first c are the small branches. The gap between
// |small.back()| and |large.front()| is open for |z| < rho and closes at rho.
Classified classify_by_modulus(std::vector<Complex> roots, int c, double gap_rtol) {
    std::sort(roots.begin(), roots.end(),
              [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    Classified out;
    out.small.assign(roots.begin(), roots.begin() + c);
    out.large.assign(roots.begin() + c, roots.end());
    const double lo = std::abs(out.small.back()), hi = std::abs(out.large.front());
    out.collided = (hi - lo) <= gap_rtol * (hi + lo);
    return out;
}

int real_positive_index(const std::vector<Complex>& roots) {
    int best = -1;
    double best_im = 1e300;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (roots[i].real() <= 0) continue;
        const double im = std::abs(roots[i].imag()) / (1.0 + std::abs(roots[i]));
        if (im < best_im) {
            best_im = im;
            best = static_cast<int>(i);
        }
    }
    if (best < 0 || best_im > 1e-8) return -1;
    return best;
}

void check_residuals_and_product(const StepSet& s, Complex z, KernelRoots& kr) {
    kr.residuals.clear();
    double worst = 0;
    Complex prod = 1.0;
    auto visit = [&](Complex r) {
        const double res = std::abs(1.0 - z * eval_P(s, r, 0));
        kr.residuals.push_back(res);
        worst = std::max(worst, res);
        prod *= r;
    };
    for (Complex r : kr.small) visit(r);
    for (Complex r : kr.large) visit(r);
    const double tol = 1e-9 * (1.0 + std::abs(z));
    if (worst > tol) {
        std::ostringstream msg;
        msg << "kernel root residual " << worst << " exceeds " << tol << " at z = " << z;
        throw NumericError(msg.str());
    }
    // Product of all roots must match the coefficient ratio (constant/leading):
    // prod = (-1)^(c+d) * (-z p_{-c}) / (-z p_d) = (-1)^(c+d) p_{-c} / p_d.
    const double sign = ((s.c + s.d) % 2 == 0) ? 1.0 : -1.0;
    const Complex expect = sign * s.weight(-s.c) / s.weight(s.d);
    if (std::abs(prod - expect) > 1e-7 * (1.0 + std::abs(expect)))
        throw NumericError("kernel root product fails the coefficient cross-check");
}

// Match new roots to previous positions greedily by distance; returns the
// permuted copy or nullopt-equivalent empty vector when matching is ambiguous.
bool match_to(const std::vector<Complex>& prev, std::vector<Complex>& cur) {
    const size_t n = prev.size();
    std::vector<bool> used(n, false);
    std::vector<Complex> out(n);
    for (size_t i = 0; i < n; ++i) {
        double best = 1e300, second = 1e300;
        size_t bj = n;
        for (size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double d = std::abs(prev[i] - cur[j]);
            if (d < best) {
                second = best;
                best = d;
                bj = j;
            } else {
                second = std::min(second, d);
            }
        }
        if (bj == n) return false;
        // Ambiguous when the runner-up is about as close as the winner, unless
        // both candidates sit on top of each other (a collided pair: either is fine).
        if (second < 1.5 * best && best > 1e-12 * (1.0 + std::abs(prev[i]))) return false;
        used[bj] = true;
        out[i] = cur[bj];
    }
    cur = std::move(out);
    return true;
}

}  // namespace

KernelRoots kernel_roots(const StepSet& s, const StructuralConstants& k, Complex z,
                         bool label_principal) {
    if (std::abs(z) == 0.0) throw DomainError("kernel roots are undefined at z = 0");
    KernelRoots kr;
    kr.z = z;

    const bool real_z = std::abs(z.imag()) <= 1e-14 * std::abs(z.real());
    const double az = std::abs(z);
    const bool near_rho = std::abs(az - k.rho) <= 1e-9 * k.rho;

    auto roots = polynomial_roots(kernel_poly(s, z));
    Classified cls = classify_by_modulus(std::move(roots), s.c, 1e-9);
    kr.small = std::move(cls.small);
    kr.large = std::move(cls.large);
    kr.collided = cls.collided;
    if (kr.collided && !near_rho && az < k.rho) {
        // A closed gap away from the singular circle means the modulus split is
        // unreliable; fall back to continuation from a point where it is clean.
        const Complex z0 = k.rho * 0.5;
        KernelRoots base = kernel_roots(s, k, z0);
        std::vector<Complex> prev;
        prev.insert(prev.end(), base.small.begin(), base.small.end());
        prev.insert(prev.end(), base.large.begin(), base.large.end());
        for (int steps_n = 16; steps_n <= 64; steps_n *= 2) {
            std::vector<Complex> track = prev;
            bool ok = true;
            for (int t = 1; t <= steps_n && ok; ++t) {
                const Complex zt = z0 + (z - z0) * (double(t) / steps_n);
                auto rt = polynomial_roots(kernel_poly(s, zt));
                ok = match_to(track, rt);
                if (ok) track = std::move(rt);
            }
            if (ok) {
                kr.small.assign(track.begin(), track.begin() + s.c);
                kr.large.assign(track.begin() + s.c, track.end());
                kr.collided = false;
                break;
            }
        }
    }

    check_residuals_and_product(s, z, kr);

    if (!label_principal) return kr;

    if (real_z && z.real() > 0 && az < k.rho * (1.0 + 1e-12)) {
        // Principal branches are the real positive ones on each side of the gap.
        kr.principal_small = real_positive_index(kr.small);
        kr.principal_large = real_positive_index(kr.large);
    } else {
        // Continuation from rho/2 transports the principal labels. A real
        // target beyond rho is reached around the branch point through the
        // upper half-plane.
        const Complex z0 = k.rho * 0.5;
        KernelRoots base = kernel_roots(s, k, z0);
        std::vector<Complex> track;
        track.insert(track.end(), base.small.begin(), base.small.end());
        track.insert(track.end(), base.large.begin(), base.large.end());
        const int ips = base.principal_small, ipl = s.c + base.principal_large;
        std::vector<Complex> waypoints;
        if (real_z && z.real() > k.rho * (1.0 - 1e-9))
            waypoints.push_back(Complex(k.rho * 0.5, k.rho * 0.75));
        waypoints.push_back(z);
        bool ok = false;
        for (int steps_n = 16; steps_n <= 64 && !ok; steps_n *= 2) {
            std::vector<Complex> t2 = track;
            ok = true;
            Complex from = z0;
            for (Complex to : waypoints) {
                for (int t = 1; t <= steps_n && ok; ++t) {
                    const Complex zt = from + (to - from) * (double(t) / steps_n);
                    auto rt = polynomial_roots(kernel_poly(s, zt));
                    ok = match_to(t2, rt);
                    if (ok) t2 = std::move(rt);
                }
                from = to;
            }
            if (ok && kr.collided) {
                // No trustworthy modulus gap at this z: adopt the continued
                // assignment wholesale (t2 is ordered base.small then base.large).
                kr.small.assign(t2.begin(), t2.begin() + s.c);
                kr.large.assign(t2.begin() + s.c, t2.end());
                kr.principal_small = base.principal_small;
                kr.principal_large = base.principal_large;
                check_residuals_and_product(s, z, kr);  // reorder residuals to match
            } else if (ok) {
                // Keep the modulus classification; locate the transported
                // principal roots inside it.
                auto find_in = [](const std::vector<Complex>& v, Complex x) {
                    int arg = -1;
                    double best = 1e300;
                    for (size_t i = 0; i < v.size(); ++i) {
                        const double d = std::abs(v[i] - x);
                        if (d < best) {
                            best = d;
                            arg = static_cast<int>(i);
                        }
                    }
                    return arg;
                };
                kr.principal_small = find_in(kr.small, t2[ips]);
                kr.principal_large = find_in(kr.large, t2[ipl]);
            }
        }
        if (!ok) {
            kr.principal_small = -1;
            kr.principal_large = -1;
        }
    }
    return kr;
}

Complex branch_derivative(const StepSet& s, Complex z, Complex u) {
    const Complex res = 1.0 - z * eval_P(s, u, 0);
    if (std::abs(res) > 1e-6 * (1.0 + std::abs(z)))
        throw DomainError("branch_derivative: u does not satisfy the kernel equation at z");
    const Complex denom = z * eval_P(s, u, 1);
    if (std::abs(denom) < 1e-12 * (1.0 + std::abs(z)))
        throw SingularityError("branch derivative blows up (branch point)");
    return -eval_P(s, u, 0) / denom;
}

SqrtExt branch_derivative(const StepSet& s, Complex z, const SqrtExt& u) {
    const SqrtExt p = eval_jump_poly(s, u, 0);
    const SqrtExt dp = eval_jump_poly(s, u, 1);
    return -(p / (dp * z));
}

std::pair<double, double> branch_frame(const StepSet& s, const StructuralConstants& k, double z) {
    if (!(z > 0) || !(z < k.rho)) throw DomainError("branch_frame needs 0 < z < rho");
    KernelRoots kr = kernel_roots(s, k, z);
    if (kr.principal_small < 0 || kr.principal_large < 0)
        throw NumericError("branch_frame: principal branches not identified");
    const double u1 = kr.small[kr.principal_small].real();
    const double v1 = kr.large[kr.principal_large].real();
    const double s0 = std::sqrt(1.0 - z / k.rho);
    return {0.5 * (u1 + v1), (v1 - u1) / (2.0 * s0)};
}

std::pair<SqrtExt, SqrtExt> principal_pair_ext(const StepSet& s, const StructuralConstants& k, double z) {
    const auto [a, b] = branch_frame(s, k, z);
    const double sigma0 = 1.0 - z / k.rho;
    SqrtExt u1{{a, 0.0}, {-b, 0.0}, sigma0};
    SqrtExt v1{{a, 0.0}, {b, 0.0}, sigma0};
    return {u1, v1};
}

}  // namespace walklab
