// SPDX-License-Identifier: Apache-2.0
//
// Core geometric primitives shared by every construction: points, triangle
// meshes with an edge table, congruence and interior-disjointness predicates,
// and the tolerance record used throughout the library.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace origami {

//---------------------------------------------------------------------------//
// Errors
//---------------------------------------------------------------------------//

/// Every failure the library reports carries a stable, machine-readable code
/// ("twist-out-of-range", "not-closed", ...) next to a human message.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    explicit Error(const std::string& code) : Error(code, code) {}

    [[nodiscard]] const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

//---------------------------------------------------------------------------//
// Tolerances
//---------------------------------------------------------------------------//

struct Tolerances {
    double weld = 1e-9;     // vertex coincidence
    double geom = 1e-9;     // length / angle equality
    double solver = 1e-12;  // root finding
    double area = 1e-12;    // degenerate-triangle floor

    /// Throws "invalid-tolerance" unless every field is strictly positive.
    void validate() const;
};

//---------------------------------------------------------------------------//
// Points
//---------------------------------------------------------------------------//

struct Point3 {
    double x = 0, y = 0, z = 0;

    friend Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Point3 operator*(Point3 a, double s) { return s * a; }
    friend bool operator==(const Point3&, const Point3&) = default;
};

using Vec3 = Point3;

/// Planar points live in the complex plane; development coordinates are
/// naturally complex numbers.
using Planar = std::complex<double>;

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double distance(Point3 a, Point3 b) { return norm(a - b); }
inline bool is_finite(Point3 p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

using TrianglePoints = std::array<Point3, 3>;

double triangle_area(const TrianglePoints& t);

//---------------------------------------------------------------------------//
// Rigid motions
//---------------------------------------------------------------------------//

/// Orthonormal rotation plus translation, p -> R p + t.
struct RigidMotion {
    std::array<double, 9> rotation{1, 0, 0, 0, 1, 0, 0, 0, 1};
    Vec3 translation{};

    [[nodiscard]] Point3 apply(Point3 p) const;

    static RigidMotion rotation_z(double angle);
    /// Rotation by `angle` about the unit `axis` through the origin.
    static RigidMotion axis_angle(Vec3 axis, double angle, Vec3 translation = {});
};

//---------------------------------------------------------------------------//
// Triangle mesh
//---------------------------------------------------------------------------//

using Face = std::array<std::uint32_t, 3>;

struct Edge {
    std::uint32_t a = 0, b = 0;            // a < b
    std::vector<std::uint32_t> faces;      // incident faces
};

/// Indexed triangle mesh. Construction validates indices and rejects
/// degenerate faces; the undirected edge table is derived eagerly so the mesh
/// is an immutable value.
class TriMesh {
  public:
    TriMesh() = default;
    TriMesh(std::vector<Point3> vertices, std::vector<Face> faces,
            const Tolerances& tol = {});

    [[nodiscard]] const std::vector<Point3>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] const std::vector<Face>& faces() const noexcept { return faces_; }
    [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

    [[nodiscard]] TrianglePoints triangle(std::size_t f) const;

    /// Index into edges() of the undirected edge {a, b}; throws "no-such-edge".
    [[nodiscard]] std::size_t edge_index(std::uint32_t a, std::uint32_t b) const;
    /// Faces incident to vertex v, ascending.
    [[nodiscard]] const std::vector<std::uint32_t>& vertex_faces(std::uint32_t v) const;

    [[nodiscard]] bool is_closed() const;
    [[nodiscard]] bool is_manifold() const;  // every edge has 1 or 2 faces
    [[nodiscard]] bool is_consistently_oriented() const;
    [[nodiscard]] long euler_characteristic() const;

    [[nodiscard]] TriMesh flipped() const;
    [[nodiscard]] TriMesh transformed(const std::function<Point3(Point3)>& map,
                                      bool reverse_orientation = false) const;

  private:
    std::vector<Point3> vertices_;
    std::vector<Face> faces_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::uint32_t>> vertex_faces_;
    std::vector<std::vector<std::size_t>> vertex_edges_;
};

/// Accumulates triangles given by coordinates, welding vertices that agree
/// within tol.weld so shared boundaries get identical indices.
class MeshBuilder {
  public:
    explicit MeshBuilder(Tolerances tol = {}) : tol_(tol) {}

    std::uint32_t add_vertex(Point3 p);
    std::size_t add_triangle(Point3 a, Point3 b, Point3 c);
    std::size_t add_face(Face f);

    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertices_.size(); }
    [[nodiscard]] const std::vector<Point3>& vertices() const noexcept { return vertices_; }
    [[nodiscard]] TriMesh build() const;

  private:
    Tolerances tol_;
    std::vector<Point3> vertices_;
    std::vector<Face> faces_;
};

//---------------------------------------------------------------------------//
// Predicates
//---------------------------------------------------------------------------//

/// Sorted edge-length triples agree within tol.geom.
bool triangle_congruent(const TrianglePoints& t1, const TrianglePoints& t2,
                        const Tolerances& tol = {});

/// True iff the closed triangles meet at most in what they share: nothing, a
/// common vertex, or a full common edge. Vertices are matched by coordinates
/// within tol.weld.
bool triangles_interior_disjoint(const TrianglePoints& t1, const TrianglePoints& t2,
                                 const Tolerances& tol = {});

/// Sum of the interior angles at vertex v over all incident faces.
double angle_at_vertex(const TriMesh& mesh, std::uint32_t v);

/// Signed dihedral test for an interior edge: positive when the far vertex of
/// the second face lies on the front (normal) side of the first face, i.e. the
/// fold is concave seen from the normal side. Zero for a flat edge.
double fold_sign(const TriMesh& mesh, std::size_t edge);

//---------------------------------------------------------------------------//
// Planar unfolding
//---------------------------------------------------------------------------//

/// Images of the three corners of one face, in face vertex order.
using FacePlacement = std::array<Planar, 3>;

struct Unfolding {
    std::vector<FacePlacement> placement;  // per face
    std::vector<bool> placed;              // faces reached from the root
};

/// Lays faces into the plane breadth-first across interior edges, starting
/// from `root_face` with vertex `u` at the origin, vertex `v` on the positive
/// real axis and the third corner in the upper half-plane. Edges for which
/// `blocked(f, g)` holds are never crossed. Faces reached twice through
/// unblocked edges must agree within tol.geom, otherwise "not-developable".
Unfolding unfold(const TriMesh& mesh, std::uint32_t root_face, std::uint32_t u, std::uint32_t v,
                 const std::function<bool(std::uint32_t, std::uint32_t)>& blocked,
                 const Tolerances& tol = {});

/// Image of vertex `v` inside the placement of face `f`.
Planar image_of(const TriMesh& mesh, const Unfolding& unf, std::uint32_t f, std::uint32_t v);

}  // namespace origami
