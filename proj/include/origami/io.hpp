// SPDX-License-Identifier: Apache-2.0
//
// File emitters: meshes (OBJ, binary STL), crease patterns (SVG), moduli
// atlases (CSV). Every file is written to a temporary sibling and renamed.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "origami/annulus.hpp"
#include "origami/geometry.hpp"
#include "origami/moduli.hpp"
#include "origami/torus.hpp"

namespace origami {

/// Writes `content` to a temporary file next to `path`, then renames it.
/// Throws "io-error".
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

//---------------------------------------------------------------------------//
// Meshes
//---------------------------------------------------------------------------//

enum class MeshFormat { obj, stl };

/// Throws "unknown-format".
MeshFormat parse_mesh_format(const std::string& name);

/// ASCII OBJ, 12 significant digits, 1-based indices, winding as stored.
std::string to_obj(const TriMesh& mesh);
/// Binary little-endian STL with a unit normal per face.
std::string to_stl(const TriMesh& mesh);

void export_mesh(const TriMesh& mesh, MeshFormat format, const std::filesystem::path& path);

/// Reads the `v` and `f` records of an OBJ file (polygons fan-triangulated).
TriMesh read_obj(const std::filesystem::path& path, const Tolerances& tol = {});
TriMesh parse_obj(const std::string& text, const Tolerances& tol = {});

//---------------------------------------------------------------------------//
// Crease patterns
//---------------------------------------------------------------------------//

enum class FoldKind { mountain, valley, flat };

const char* to_string(FoldKind k);

/// Mountain when the dihedral angle measured through the front (normal) side
/// is below pi, i.e. the far face bends toward the normal.
FoldKind classify_fold(const TriMesh& mesh, std::size_t edge, const Tolerances& tol = {});

struct FoldSegment {
    Planar a, b;
    FoldKind kind = FoldKind::flat;
    std::size_t edge = 0;   // mesh edge index
    bool on_cut = false;    // lies on the outline (drawn on both copies)
};

struct OutlineSegment {
    Planar a, b;
    std::string label;      // glued copies share a label; empty for free boundary
};

struct CreasePattern {
    std::vector<OutlineSegment> outline;
    std::vector<FoldSegment> folds;   // one per interior mesh edge
    std::vector<Planar> fundamental;  // parallelogram corners, empty if none
    std::string caption;
};

CreasePattern crease_pattern(const AnnulusMesh& annulus, const Tolerances& tol = {});
CreasePattern crease_pattern(const TorusMesh& torus, const Tolerances& tol = {});

struct SvgOptions {
    double scale = 20;          // millimetres per model unit
    bool fundamental = false;   // draw the fundamental parallelogram
};

std::string to_svg(const CreasePattern& cp, const SvgOptions& opt = {});

//---------------------------------------------------------------------------//
// Atlas
//---------------------------------------------------------------------------//

struct AtlasRow {
    int n = 0;
    int shift = 0;
    double rho = 0;
    double h = 0;
    Planar value;
    Planar normalized;
};

/// Parameter grid. Grid tuples: every (rho, sigma) in (1/den) Z with
/// canonical representatives, for each n in `ns`. Explicit tuples are added
/// as given. Every tuple is crossed with every height.
struct AtlasGrid {
    std::vector<int> ns;
    int den = 0;
    struct Tuple {
        int n = 0;
        int shift = 0;
        double rho = 0;
    };
    std::vector<Tuple> explicit_tuples;
    std::vector<double> heights{1.0};
};

struct Atlas {
    std::vector<AtlasRow> rows;   // sorted by n, (rho, sigma), h
    std::size_t invalid = 0;      // skipped tuple/height combinations
};

Atlas compute_atlas(const AtlasGrid& grid);
/// RFC 4180 CSV with CRLF line ends and 17 significant digits.
std::string atlas_csv(const Atlas& atlas);
Atlas emit_atlas(const AtlasGrid& grid, const std::filesystem::path& path);

}  // namespace origami
