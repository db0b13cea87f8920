#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "walklab/sqrt_ext.hpp"
#include "walklab/steps.hpp"

namespace walklab {

using Complex = std::complex<double>;

// Roots of the kernel equation 1 - z P(u) = 0 (cleared of denominators:
// u^c - z u^c P(u) = 0 with the u=0 roots removed), split by modulus into the
// c branches that vanish as z -> 0 and the d branches that blow up.
struct KernelRoots {
    Complex z{};
    std::vector<Complex> small;  // |u| below the gap; small[principal_small] is the dominant one
    std::vector<Complex> large;
    int principal_small = -1;
    int principal_large = -1;
    std::vector<double> residuals;  // |1 - z P(r)| per root, small roots first
    bool collided = false;          // modulus gap too tight to certify the split (|z| ~ rho)
};

// All complex roots of sum_k coeffs[k] x^k, leading coefficient nonzero.
// Aberth-Ehrlich simultaneous iteration; deterministic initial circle.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

// Kernel roots at z (0 < |z|), with residual and product cross-checks.
// Real z in (0, rho) gets principal labels directly (the real positive root on
// each side of the gap); elsewhere labels come from continuation along a path
// from rho/2. Throws NumericError when residuals exceed 1e-9 * (1 + |z|).
// label_principal=false skips the labeling (cheap path for evaluations that
// are symmetric in the branches).
KernelRoots kernel_roots(const StepSet& s, const StructuralConstants& k, Complex z,
                         bool label_principal = true);

// du/dz for a branch u(z) of the kernel: u' = -P(u) / (z P'(u)).
Complex branch_derivative(const StepSet& s, Complex z, Complex u);
SqrtExt branch_derivative(const StepSet& s, Complex z, const SqrtExt& u);

// For real 0 < z < rho: writes the principal conjugate pair as
// u1 = a - b*sqrt(1-z/rho), v1 = a + b*sqrt(1-z/rho) and returns (a, b).
// Both a and b stay finite and nonzero as z -> rho, which is what makes the
// sqrt-extension representation of the pair stable through the singularity.
std::pair<double, double> branch_frame(const StepSet& s, const StructuralConstants& k, double z);

// u1 and v1 as sqrt-extension elements over sigma0 = 1 - z/rho.
std::pair<SqrtExt, SqrtExt> principal_pair_ext(const StepSet& s, const StructuralConstants& k, double z);

}  // namespace walklab
