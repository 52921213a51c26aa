// SPDX-License-Identifier: Apache-2.0
//
// Moduli of the paired-band tori: the closed form, an independent value read
// off the unfolded mesh, the large-n limit curves c_theta(rho) with their
// boundary cycloids, and reduction to the standard fundamental domain.
//
// Sign convention: with sigma = rho + l/n and l > 0 the development puts the
// inner band above the common bottom line and the outer band (reflected)
// below it, and the modulus is (Qbar_l - Qlow_0) / Phat_n. The real part then
// has the sign of l; the mirror image (n, -l, -rho - 1/n) has modulus
// -conj(tau).
#pragma once

#include <array>
#include <string>
#include <vector>

#include "origami/geometry.hpp"
#include "origami/torus.hpp"

namespace origami {

struct Modulus {
    Planar value;
    Planar normalized;                       // |Re| <= 1/2, |z| >= 1
    std::array<long, 4> transform{1, 0, 0, 1};  // normalized = (a z + b) / (c z + d)
    std::string chain;                       // applied steps, e.g. "T-1 S T0"
};

/// Translate/invert reduction into the fundamental domain. Throws
/// "not-upper-half-plane" for Im z <= 0 and "reduction-diverged" after 1e4
/// steps.
Modulus reduce_modulus(Planar z);

/// Closed form of the modulus. Throws "invalid-pairing".
Planar torus_modulus_value(const TorusParams& p);
Modulus torus_modulus(const TorusParams& p);

/// The h = 0 boundary curve: the square roots of the closed form replaced by
/// absolute values. Requires an admissible (n, l, rho).
Planar modulus_h0(int n, int shift, double rho);

/// Closed-form development of a paired torus: the shared bottom row, the
/// inner strip above it and the reflected outer strip below it.
struct TorusDevelopment {
    int n = 0;
    int shift = 0;
    std::vector<Planar> bottom;       // Phat_0 .. Phat_n
    std::vector<Planar> upper;        // Qbar_0 .. Qbar_n (inner band)
    std::vector<Planar> lower;        // Qlow_0 .. Qlow_n (outer band)
    Planar period1;                   // Phat_n
    Planar period2;                   // Qbar_l - Qlow_0
};

TorusDevelopment torus_development(const TorusParams& p);

/// Result of unfolding a torus mesh along its cut graph.
struct MeshDevelopment {
    Unfolding unfolding;
    Planar period1;   // translation across the column seam
    Planar period2;   // translation across the seam ring
    Planar anchor;    // image of the seam-ring vertex at lower position 0
    Planar modulus;   // period2 / period1, upper half-plane
};

/// Unfolds the mesh face by face, independent of any closed form. Throws
/// "not-developable" when a vertex is not flat or the periods disagree.
MeshDevelopment develop_torus_mesh(const TorusMesh& torus, const Tolerances& tol = {});
Planar modulus_from_development(const TorusMesh& torus, const Tolerances& tol = {});

//---------------------------------------------------------------------------//
// Limit curves
//---------------------------------------------------------------------------//

/// c_theta(rho) on the closed parameter triangle with vertices
/// (rho, theta) = (-1/2, 0), (0, 0), (-1/2, 1).
/// Throws "outside-parameter-triangle".
Planar limit_curve(double theta, double rho);

/// Same formula without the domain check.
Planar limit_curve_unchecked(double theta, double rho);

struct CurvePartials {
    Planar d_rho;
    Planar d_theta;
};

CurvePartials limit_curve_partials(double rho, double theta);

/// Jacobian determinant of gamma(rho, theta) = c_theta(rho), columns ordered
/// (d/d theta, d/d rho): 4 sin(pi rho) sin(pi (rho + theta)) sin(pi (2 rho + theta)).
double jacobian_gamma(double rho, double theta);

/// Unit direction (sin pi theta, cos pi theta) of every chord of c_theta.
/// Throws "degenerate-direction" unless 0 < theta < 1.
Planar tangent_direction(double theta);

/// |modulus_h0(m n, m l, rho) - c_{l/n}(rho)|.
double convergence_check(int n, int shift, double rho, int multiplier);

struct Tangency {
    double distance = 0;  // minimum distance from the chord line to the cycloid
    double at = 0;        // cycloid parameter where it is attained
};

/// Distance between the line carrying {c_theta(rho)} and the cycloid
/// t -> c_t(-t), t in (0, 1/2], minimized near t = theta.
Tangency chord_line_tangency(double theta);

//---------------------------------------------------------------------------//
// Achievable region
//---------------------------------------------------------------------------//

enum class BoundaryCurve {
    axis_segment,        // i (1 - cos 2 pi rho) / pi, from 0 to 2i/pi
    small_cycloid,       // c_t(-t), t in [0, 1/2]
    left_cusp_cycloid,   // c_t(-1/2), t in [0, 1/2]
    right_cusp_cycloid,  // c_t(-1/2), t in [1/2, 1]
    edge_cycloid,        // c_{-2r}(r), r in [-1/2, 0]
};

/// Point on a boundary curve at normalized parameter s in [0, 1].
Planar boundary_point(BoundaryCurve curve, double s);

/// `samples` + 1 evenly spaced points on a boundary curve.
std::vector<Planar> boundary_polyline(BoundaryCurve curve, int samples = 4096);

enum class Region { domain1, domain2, boundary, outside };

const char* to_string(Region r);

/// Classifies z against the two cycloid-bounded domains. Domain 1 is bounded
/// by the axis segment and the small and left cusp cycloids; domain 2 by the
/// edge, right cusp and small cycloids. Points within `band` of a bounding
/// curve are "boundary"; points in both open domains report domain1.
Region region_contains(Planar z, double band = 1e-9);

/// Sufficient coverage region: 0 < |Re z| < 1/2 with Im z >= sqrt(1 - Re^2),
/// or |Re z| = 1/2 with Im z > sqrt(3)/2.
bool coverage_region_contains(Planar z);

}  // namespace origami
