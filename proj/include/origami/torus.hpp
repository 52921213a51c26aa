// SPDX-License-Identifier: Apache-2.0
//
// Closed flat tori made of two coaxial bands sharing both boundary polygons:
// an inner band with twist rho and an outer band with twist
// sigma = rho + shift / n. Also the doubled half-torus used for rectangular
// lattices.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "origami/annulus.hpp"
#include "origami/geometry.hpp"

namespace origami {

/// Paired-band torus. `shift` is the signed integer l with sigma = rho + l/n;
/// keeping it integral makes the boundary coincidence structural.
struct TorusParams {
    int n = 0;
    int shift = 0;
    double twist = 0;    // inner band
    double height = 1;

    [[nodiscard]] double outer_twist() const { return twist + static_cast<double>(shift) / n; }
    [[nodiscard]] AnnulusParams inner() const { return {n, twist, height}; }
    [[nodiscard]] AnnulusParams outer() const { return {n, outer_twist(), height}; }
};

/// Open interval of inner twists admissible for (n, shift); empty (lo >= hi)
/// when the shift is forbidden.
std::pair<double, double> twist_interval(int n, int shift);

/// Throws "n-too-small" or "invalid-pairing".
void validate(const TorusParams& p);

struct PairingCheck {
    bool valid = false;
    int shift = 0;               // round((sigma - rho) n)
    std::string reason;          // "ok" or why not
    bool bullet_form = false;    // per-case projection inequalities
    bool bullet_agrees = false;  // bullet_form == valid
};

/// Decides whether bands rho (inner) and sigma (outer) paste into an
/// embedded torus. The summarized shift/interval condition is normative; the
/// four-case projection inequalities are evaluated alongside and compared.
PairingCheck pairing_valid(int n, double rho, double sigma);

struct GridPair {
    int rho_num = 0, sigma_num = 0, den = 1;
    int shift = 0;
    [[nodiscard]] double rho() const { return static_cast<double>(rho_num) / den; }
    [[nodiscard]] double sigma() const { return static_cast<double>(sigma_num) / den; }
};

/// All valid pairs with rho, sigma in (1/den) Z, sorted by (rho, sigma).
std::vector<GridPair> enumerate_pairs(int n, int den);

enum class Sheet : std::uint8_t { inner, outer, inner_mirror, outer_mirror };

const char* to_string(Sheet s);

struct FaceTag {
    Sheet sheet = Sheet::inner;
    int column = 0;   // strip column k in [0, n)
    int piece = 0;    // index of the triangle inside its column
};

/// Closed torus mesh plus the provenance the development needs: per-face
/// tags, and the cut graph that opens the torus into a disk (the column seam
/// between columns n-1 and 0 of every sheet, and the seam ring separating
/// `upper_sheet` from `lower_sheet`).
struct TorusMesh {
    TriMesh mesh;
    std::vector<FaceTag> tags;
    int n = 0;
    int shift = 0;                       // identification shift across the seam ring
    std::vector<std::uint32_t> seam_ring;
    Sheet upper_sheet = Sheet::inner;
    Sheet lower_sheet = Sheet::outer;
    std::uint32_t root_u = 0, root_v = 1;  // oriented root edge in the inner sheet, column 0
    bool doubled = false;

    /// True when the edge shared by faces f and g belongs to the cut graph.
    [[nodiscard]] bool crosses_cut(std::uint32_t f, std::uint32_t g) const;
    [[nodiscard]] bool in_seam_ring(std::uint32_t v) const;
};

/// Pastes A^rho (inside, orientation reversed) and A^sigma so that all normals
/// point away from the enclosed solid torus. Throws "invalid-pairing".
TorusMesh assemble_torus(const TorusParams& params, const Tolerances& tol = {});

/// Same construction without the pairing check: used to audit arbitrary
/// candidates. The result may be open or non-manifold.
TorusMesh assemble_pair(int n, double inner_twist, double outer_twist, double height,
                        const Tolerances& tol = {});

struct EmbeddingReport {
    bool ok = false;
    bool closed = false;
    bool oriented = false;
    bool nested = true;   // inner sheets enclosed by outer sheets
    long euler = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> violating;
};

/// Face pairs whose closed triangles meet beyond their shared vertices/edge.
std::vector<std::pair<std::uint32_t, std::uint32_t>>
intersecting_face_pairs(const TriMesh& mesh, const Tolerances& tol = {});

/// Throws "not-closed" for meshes with boundary or non-manifold edges.
EmbeddingReport verify_embedding(const TriMesh& mesh, const Tolerances& tol = {});
EmbeddingReport verify_embedding(const TorusMesh& torus, const Tolerances& tol = {});

enum class Half { lower, upper };

struct DoubleSpec {
    TorusParams base;
    double cut = 0.5;     // 0 < cut < h
    Half half = Half::lower;
};

/// Cuts both bands at z = cut, keeps one slab and glues it to its mirror image
/// across the plane z = cut along both cut polygons.
TorusMesh double_torus(const DoubleSpec& spec, const Tolerances& tol = {});

}  // namespace origami
