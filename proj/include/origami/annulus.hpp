// SPDX-License-Identifier: Apache-2.0
//
// The twisted antiprism band between two unit regular n-gons: the bottom
// polygon P_k at height 0, the top polygon Q_k rotated by 2*pi*twist at
// height h, joined by 2n congruent triangles.
#pragma once

#include <utility>
#include <vector>

#include "origami/geometry.hpp"

namespace origami {

struct AnnulusParams {
    int n = 0;
    double twist = 0;   // any real; reduced to [-1/2, 1/2) before use
    double height = 1;
};

enum class TwistClass { embeddable, prism, antiprism, degenerate_lower, degenerate_upper };

const char* to_string(TwistClass c);

/// Representative of twist mod 1 in [-1/2, 1/2).
double canonical_twist(double twist);

/// Classification of a twist for n-gons. Prism at 0 and -1/n, antiprism at
/// -1/(2n), degenerate outside the open interval (-1/2, 1/2 - 1/n).
TwistClass classify_twist(int n, double twist, double tol = 1e-12);

/// Throws "twist-out-of-range" / "n-too-small" / "height-not-positive".
void validate(const AnnulusParams& p);

/// Bottom vertex P_k and top vertex Q_k (indices taken mod n).
Point3 bottom_vertex(int n, int k);
Point3 top_vertex(const AnnulusParams& p, int k);

struct AnnulusMesh {
    AnnulusParams params;   // twist canonical
    TriMesh mesh;           // vertices: P_0..P_{n-1}, then Q_0..Q_{n-1}

    /// Faces 2k and 2k+1 are (P_k, P_{k+1}, Q_{k+1}) and (Q_{k+1}, Q_k, P_k).
    [[nodiscard]] static int column_of(std::uint32_t face) { return static_cast<int>(face / 2); }
};

AnnulusMesh build_annulus(AnnulusParams params, const Tolerances& tol = {});

/// Planar development of a band: a parallelogram of the given width whose
/// bottom and top edges carry the images of the boundary vertices.
struct DevelopmentStrip {
    double width = 0;       // 2n sin(pi/n)
    double height = 0;      // distance between bottom and top lines
    double top_offset = 0;  // horizontal shift of the top-left corner
    std::vector<Planar> bottom;   // left to right, first and last are the seam copies
    std::vector<Planar> top;
};

/// Closed-form development: bottom row 2k sin(pi/n), top row
/// sin(2 pi rho + pi/n) + (2k - 1) sin(pi/n) + i H.
DevelopmentStrip develop_annulus(const AnnulusParams& params);

/// Length of the foot of Q_1 on the line P_0 P_1, measured from P_0.
double projection_foot(const AnnulusParams& params);

/// Height of the development parallelogram.
double development_height(int n, double twist, double height);

struct AnnulusSlab {
    TriMesh mesh;
    DevelopmentStrip development;
    /// Faces are grouped by column: face_column[f] is the strip column.
    std::vector<int> face_column;
};

/// Cuts the band by the plane z = a. Returns the lower slab z in [0, a] and
/// the upper slab z in [a, h]. Quadrilateral pieces are split along their
/// shorter diagonal (ties: the diagonal through the lowest vertex index).
std::pair<AnnulusSlab, AnnulusSlab> cut_annulus(AnnulusParams params, double a,
                                                const Tolerances& tol = {});

}  // namespace origami
