// SPDX-License-Identifier: Apache-2.0
//
// Inverse problem: embedding parameters for a prescribed modulus.
#pragma once

#include <vector>

#include "origami/moduli.hpp"
#include "origami/torus.hpp"

namespace origami {

struct SolveRequest {
    Planar target;
    int n_min = 5;
    int n_max = 400;
    double tol = 1e-9;
    bool allow_reduction = false;   // move the target into the fundamental domain first
    Tolerances tolerances;
};

enum class SolveKind { torus, doubled };

const char* to_string(SolveKind k);

struct SolveResult {
    SolveKind kind = SolveKind::torus;
    TorusParams torus;     // kind == torus
    DoubleSpec doubled;    // kind == doubled
    Planar target;
    Planar achieved;       // read from the development of the built mesh
    double residual = 0;
    EmbeddingReport embedding;
};

/// Inner twists in the admissible open interval (shrunk by 1e-9) where the
/// real part of the modulus equals x, ascending.
std::vector<double> solve_real_part(int n, int shift, double x, const Tolerances& tol = {});

/// Height giving imaginary part y. Throws "imaginary-part-unreachable" when y
/// does not exceed the h = 0 value.
double solve_height(int n, int shift, double rho, double y, const Tolerances& tol = {});

/// Deterministic search: n ascending, |l| ascending with + before -, roots
/// ascending. Pure imaginary targets go to solve_pure_imaginary. Throws
/// "not-upper-half-plane" or "target-unreached (increase nMax)".
SolveResult solve_modulus(const SolveRequest& req);

/// Default base torus of the doubling construction.
inline TorusParams default_double_base() { return {8, 2, -0.375, 1.0}; }

/// Doubles the lower slab of `base` (height grown if needed) to realize i y.
SolveResult solve_pure_imaginary(double y, TorusParams base = default_double_base(),
                                 const Tolerances& tol = {}, double residual_tol = 1e-9);

}  // namespace origami
