// SPDX-License-Identifier: Apache-2.0
#include "origami/geometry.hpp"

#include <algorithm>
#include <deque>
#include <numbers>
#include <optional>
#include <utility>

namespace origami {

void Tolerances::validate() const
{
    if (!(weld > 0 && geom > 0 && solver > 0 && area > 0))
        throw Error("invalid-tolerance", "all tolerances must be strictly positive");
}

double triangle_area(const TrianglePoints& t)
{
    return 0.5 * norm(cross(t[1] - t[0], t[2] - t[0]));
}

//---------------------------------------------------------------------------//
// RigidMotion
//---------------------------------------------------------------------------//

Point3 RigidMotion::apply(Point3 p) const
{
    const auto& r = rotation;
    return Point3{r[0] * p.x + r[1] * p.y + r[2] * p.z,
                  r[3] * p.x + r[4] * p.y + r[5] * p.z,
                  r[6] * p.x + r[7] * p.y + r[8] * p.z}
           + translation;
}

RigidMotion RigidMotion::rotation_z(double angle)
{
    return axis_angle({0, 0, 1}, angle);
}

RigidMotion RigidMotion::axis_angle(Vec3 axis, double angle, Vec3 translation)
{
    const double len = norm(axis);
    const Vec3 k = (1.0 / len) * axis;
    const double c = std::cos(angle), s = std::sin(angle), t = 1 - c;
    RigidMotion m;
    m.rotation = {t * k.x * k.x + c,       t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y,
                  t * k.x * k.y + s * k.z, t * k.y * k.y + c,       t * k.y * k.z - s * k.x,
                  t * k.x * k.z - s * k.y, t * k.y * k.z + s * k.x, t * k.z * k.z + c};
    m.translation = translation;
    return m;
}

//---------------------------------------------------------------------------//
// TriMesh
//---------------------------------------------------------------------------//

TriMesh::TriMesh(std::vector<Point3> vertices, std::vector<Face> faces, const Tolerances& tol)
    : vertices_(std::move(vertices)), faces_(std::move(faces))
{
    for (const auto& p : vertices_) {
        if (!is_finite(p))
            throw Error("non-finite-vertex", "mesh vertex has a non-finite coordinate");
    }
    vertex_faces_.resize(vertices_.size());
    vertex_edges_.resize(vertices_.size());
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        const Face& face = faces_[f];
        for (auto idx : face) {
            if (idx >= vertices_.size())
                throw Error("bad-index", "face references a missing vertex");
        }
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2])
            throw Error("degenerate-triangle", "face repeats a vertex index");
        if (triangle_area(triangle(f)) <= tol.area)
            throw Error("degenerate-triangle", "face has (near) zero area");

        for (int i = 0; i < 3; ++i) {
            vertex_faces_[face[i]].push_back(static_cast<std::uint32_t>(f));
            std::uint32_t a = face[i], b = face[(i + 1) % 3];
            if (a > b)
                std::swap(a, b);
            std::size_t e = edges_.size();
            for (auto cand : vertex_edges_[a]) {
                if (edges_[cand].b == b) {
                    e = cand;
                    break;
                }
            }
            if (e == edges_.size()) {
                edges_.push_back(Edge{a, b, {}});
                vertex_edges_[a].push_back(e);
                vertex_edges_[b].push_back(e);
            }
            edges_[e].faces.push_back(static_cast<std::uint32_t>(f));
        }
    }
}

TrianglePoints TriMesh::triangle(std::size_t f) const
{
    const Face& face = faces_.at(f);
    return {vertices_[face[0]], vertices_[face[1]], vertices_[face[2]]};
}

std::size_t TriMesh::edge_index(std::uint32_t a, std::uint32_t b) const
{
    if (a > b)
        std::swap(a, b);
    if (a < vertex_edges_.size()) {
        for (auto e : vertex_edges_[a]) {
            if (edges_[e].b == b)
                return e;
        }
    }
    throw Error("no-such-edge", "edge is not part of the mesh");
}

const std::vector<std::uint32_t>& TriMesh::vertex_faces(std::uint32_t v) const
{
    return vertex_faces_.at(v);
}

bool TriMesh::is_closed() const
{
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return e.faces.size() == 2; });
}

bool TriMesh::is_manifold() const
{
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) {
        return e.faces.size() == 1 || e.faces.size() == 2;
    });
}

bool TriMesh::is_consistently_oriented() const
{
    // A directed edge may appear at most once; the two faces on an interior
    // edge then traverse it in opposite directions.
    for (const Edge& e : edges_) {
        int forward = 0;
        for (auto f : e.faces) {
            const Face& face = faces_[f];
            for (int i = 0; i < 3; ++i) {
                if (face[i] == e.a && face[(i + 1) % 3] == e.b)
                    ++forward;
            }
        }
        const int backward = static_cast<int>(e.faces.size()) - forward;
        if (forward > 1 || backward > 1)
            return false;
    }
    return true;
}

long TriMesh::euler_characteristic() const
{
    return static_cast<long>(vertices_.size()) - static_cast<long>(edges_.size())
           + static_cast<long>(faces_.size());
}

TriMesh TriMesh::flipped() const
{
    return transformed([](Point3 p) { return p; }, true);
}

TriMesh TriMesh::transformed(const std::function<Point3(Point3)>& map,
                             bool reverse_orientation) const
{
    std::vector<Point3> verts;
    verts.reserve(vertices_.size());
    for (const auto& p : vertices_)
        verts.push_back(map(p));
    std::vector<Face> faces = faces_;
    if (reverse_orientation) {
        for (auto& f : faces)
            std::swap(f[1], f[2]);
    }
    return TriMesh(std::move(verts), std::move(faces));
}

//---------------------------------------------------------------------------//
// MeshBuilder
//---------------------------------------------------------------------------//

std::uint32_t MeshBuilder::add_vertex(Point3 p)
{
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (distance(vertices_[i], p) <= tol_.weld)
            return static_cast<std::uint32_t>(i);
    }
    vertices_.push_back(p);
    return static_cast<std::uint32_t>(vertices_.size() - 1);
}

std::size_t MeshBuilder::add_triangle(Point3 a, Point3 b, Point3 c)
{
    return add_face({add_vertex(a), add_vertex(b), add_vertex(c)});
}

std::size_t MeshBuilder::add_face(Face f)
{
    faces_.push_back(f);
    return faces_.size() - 1;
}

TriMesh MeshBuilder::build() const
{
    return TriMesh(vertices_, faces_, tol_);
}

//---------------------------------------------------------------------------//
// Predicates
//---------------------------------------------------------------------------//

namespace {

std::array<double, 3> sorted_lengths(const TrianglePoints& t)
{
    std::array<double, 3> l{distance(t[0], t[1]), distance(t[1], t[2]), distance(t[2], t[0])};
    std::sort(l.begin(), l.end());
    return l;
}

void require_nondegenerate(const TrianglePoints& t, const Tolerances& tol)
{
    if (!(triangle_area(t) > tol.area))
        throw Error("degenerate-triangle", "triangle has (near) zero area");
}

struct PlaneFrame {
    TrianglePoints corners;
    Vec3 normal;                       // unit
    std::array<Vec3, 3> edge_inward;   // unit, in-plane, pointing into the triangle
};

PlaneFrame make_frame(const TrianglePoints& t)
{
    PlaneFrame fr;
    fr.corners = t;
    Vec3 n = cross(t[1] - t[0], t[2] - t[0]);
    fr.normal = (1.0 / norm(n)) * n;
    for (int i = 0; i < 3; ++i) {
        Vec3 m = cross(fr.normal, t[(i + 1) % 3] - t[i]);
        fr.edge_inward[i] = (1.0 / norm(m)) * m;
    }
    return fr;
}

bool inside_closed(const PlaneFrame& fr, Point3 p, double eps)
{
    for (int i = 0; i < 3; ++i) {
        if (dot(fr.edge_inward[i], p - fr.corners[i]) < -eps)
            return false;
    }
    return true;
}

/// Points where segment [s0, s1] meets the closed triangle. Returns 0, 1 or 2
/// points; two points describe a collinear sub-segment (coplanar case).
std::vector<Point3> segment_hits(Point3 s0, Point3 s1, const PlaneFrame& fr, double eps)
{
    const double d0 = dot(fr.normal, s0 - fr.corners[0]);
    const double d1 = dot(fr.normal, s1 - fr.corners[0]);
    const Vec3 dir = s1 - s0;

    if (std::abs(d0) <= eps && std::abs(d1) <= eps) {
        double tmin = 0, tmax = 1;
        for (int i = 0; i < 3; ++i) {
            const double c0 = dot(fr.edge_inward[i], s0 - fr.corners[i]);
            const double dc = dot(fr.edge_inward[i], dir);
            if (std::abs(dc) < 1e-300) {
                if (c0 < 0)
                    return {};
                continue;
            }
            const double t = -c0 / dc;
            if (dc > 0)
                tmin = std::max(tmin, t);
            else
                tmax = std::min(tmax, t);
        }
        if (tmin > tmax + 1e-12)
            return {};
        tmax = std::max(tmin, tmax);
        return {s0 + tmin * dir, s0 + tmax * dir};
    }
    if ((d0 > eps && d1 > eps) || (d0 < -eps && d1 < -eps))
        return {};

    Point3 p;
    if (std::abs(d0) <= eps)
        p = s0;
    else if (std::abs(d1) <= eps)
        p = s1;
    else
        p = s0 + (d0 / (d0 - d1)) * dir;
    if (inside_closed(fr, p, eps))
        return {p};
    return {};
}

double point_segment_distance(Point3 p, Point3 a, Point3 b)
{
    const Vec3 ab = b - a;
    const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
    return distance(p, a + t * ab);
}

}  // namespace

bool triangle_congruent(const TrianglePoints& t1, const TrianglePoints& t2, const Tolerances& tol)
{
    require_nondegenerate(t1, tol);
    require_nondegenerate(t2, tol);
    const auto l1 = sorted_lengths(t1);
    const auto l2 = sorted_lengths(t2);
    for (int i = 0; i < 3; ++i) {
        if (std::abs(l1[i] - l2[i]) > tol.geom)
            return false;
    }
    return true;
}

bool triangles_interior_disjoint(const TrianglePoints& t1, const TrianglePoints& t2,
                                 const Tolerances& tol)
{
    require_nondegenerate(t1, tol);
    require_nondegenerate(t2, tol);

    // Quick reject on bounding boxes.
    const double eps = tol.geom;
    auto lo = [](const TrianglePoints& t, auto get) {
        return std::min({get(t[0]), get(t[1]), get(t[2])});
    };
    auto hi = [](const TrianglePoints& t, auto get) {
        return std::max({get(t[0]), get(t[1]), get(t[2])});
    };
    auto gx = [](Point3 p) { return p.x; };
    auto gy = [](Point3 p) { return p.y; };
    auto gz = [](Point3 p) { return p.z; };
    if (lo(t1, gx) > hi(t2, gx) + eps || lo(t2, gx) > hi(t1, gx) + eps
        || lo(t1, gy) > hi(t2, gy) + eps || lo(t2, gy) > hi(t1, gy) + eps
        || lo(t1, gz) > hi(t2, gz) + eps || lo(t2, gz) > hi(t1, gz) + eps)
        return true;

    std::vector<Point3> shared;
    for (const auto& p : t1) {
        for (const auto& q : t2) {
            if (distance(p, q) <= tol.weld) {
                shared.push_back(p);
                break;
            }
        }
    }
    if (shared.size() == 3)
        return false;

    const double contact = 10 * std::max(tol.weld, tol.geom);
    auto in_shared = [&](Point3 p) {
        switch (shared.size()) {
        case 0:
            return false;
        case 1:
            return distance(p, shared[0]) <= contact;
        default:
            return point_segment_distance(p, shared[0], shared[1]) <= contact;
        }
    };

    // The intersection of two triangles is convex; if it reaches beyond the
    // shared simplex, one of its extreme points lies on an edge of one
    // triangle inside the other.
    const PlaneFrame f1 = make_frame(t1), f2 = make_frame(t2);
    auto edges_hit = [&](const TrianglePoints& edges_of, const PlaneFrame& against) {
        for (int i = 0; i < 3; ++i) {
            for (const Point3& p : segment_hits(edges_of[i], edges_of[(i + 1) % 3], against, eps)) {
                if (!in_shared(p))
                    return true;
            }
        }
        return false;
    };
    return !(edges_hit(t1, f2) || edges_hit(t2, f1));
}

double angle_at_vertex(const TriMesh& mesh, std::uint32_t v)
{
    if (v >= mesh.vertices().size() || mesh.vertex_faces(v).empty())
        throw Error("unused-vertex", "vertex belongs to no face");
    double sum = 0;
    for (auto f : mesh.vertex_faces(v)) {
        const Face& face = mesh.faces()[f];
        int i = 0;
        while (face[i] != v)
            ++i;
        const Point3 p = mesh.vertices()[v];
        const Vec3 a = mesh.vertices()[face[(i + 1) % 3]] - p;
        const Vec3 b = mesh.vertices()[face[(i + 2) % 3]] - p;
        sum += std::atan2(norm(cross(a, b)), dot(a, b));
    }
    return sum;
}

double fold_sign(const TriMesh& mesh, std::size_t edge)
{
    const Edge& e = mesh.edges().at(edge);
    if (e.faces.size() != 2)
        throw Error("not-interior-edge", "fold sign needs an edge with two faces");
    const auto t = mesh.triangle(e.faces[0]);
    Vec3 n = cross(t[1] - t[0], t[2] - t[0]);
    n = (1.0 / norm(n)) * n;
    const Face& g = mesh.faces()[e.faces[1]];
    std::uint32_t w = g[0];
    for (auto idx : g) {
        if (idx != e.a && idx != e.b)
            w = idx;
    }
    const Vec3 d = mesh.vertices()[w] - mesh.vertices()[e.a];
    return dot(n, d) / norm(d);
}

//---------------------------------------------------------------------------//
// Unfolding
//---------------------------------------------------------------------------//

namespace {

int local_index(const Face& f, std::uint32_t v)
{
    for (int i = 0; i < 3; ++i) {
        if (f[i] == v)
            return i;
    }
    return -1;
}

/// Third corner of a triangle with base a->b and side lengths da = |aw|,
/// db = |bw|, placed on the side given by `side` (+1 left, -1 right).
Planar place_apex(Planar a, Planar b, double da, double db, double side)
{
    const Planar e = b - a;
    const double len = std::abs(e);
    const double x = (da * da - db * db + len * len) / (2 * len);
    const double y = std::sqrt(std::max(0.0, da * da - x * x));
    const Planar ex = e / len;
    const Planar ey = ex * Planar(0, 1);
    return a + x * ex + side * y * ey;
}

double cross2(Planar a, Planar b)
{
    return a.real() * b.imag() - a.imag() * b.real();
}

}  // namespace

Unfolding unfold(const TriMesh& mesh, std::uint32_t root_face, std::uint32_t u, std::uint32_t v,
                 const std::function<bool(std::uint32_t, std::uint32_t)>& blocked,
                 const Tolerances& tol)
{
    const auto& faces = mesh.faces();
    const auto& verts = mesh.vertices();
    Unfolding out;
    out.placement.resize(faces.size());
    out.placed.assign(faces.size(), false);

    const Face& rf = faces.at(root_face);
    const int iu = local_index(rf, u), iv = local_index(rf, v);
    if (iu < 0 || iv < 0 || iu == iv)
        throw Error("bad-root", "root vertices must be two corners of the root face");
    const int iw = 3 - iu - iv;
    const Point3 pu = verts[u], pv = verts[v], pw = verts[rf[iw]];
    out.placement[root_face][iu] = 0.0;
    out.placement[root_face][iv] = distance(pu, pv);
    out.placement[root_face][iw] = place_apex(0.0, distance(pu, pv), distance(pu, pw),
                                              distance(pv, pw), +1);
    out.placed[root_face] = true;

    // Rounding accumulates along long breadth-first chains.
    const double agree = 1e3 * tol.geom;

    std::deque<std::uint32_t> queue{root_face};
    while (!queue.empty()) {
        const std::uint32_t f = queue.front();
        queue.pop_front();
        const Face& face = faces[f];
        for (int i = 0; i < 3; ++i) {
            const std::uint32_t a = face[i], b = face[(i + 1) % 3];
            const Edge& e = mesh.edges()[mesh.edge_index(a, b)];
            if (e.faces.size() != 2)
                continue;
            const std::uint32_t g = e.faces[0] == f ? e.faces[1] : e.faces[0];
            if (blocked && blocked(f, g))
                continue;
            const Planar A = out.placement[f][i];
            const Planar B = out.placement[f][(i + 1) % 3];
            const Planar C = out.placement[f][(i + 2) % 3];
            const double side = cross2(B - A, C - A) > 0 ? -1.0 : 1.0;
            const Face& gf = faces[g];
            const int ga = local_index(gf, a), gb = local_index(gf, b);
            const int gw = 3 - ga - gb;
            const Point3 w = verts[gf[gw]];
            FacePlacement pl;
            pl[ga] = A;
            pl[gb] = B;
            pl[gw] = place_apex(A, B, distance(verts[a], w), distance(verts[b], w), side);
            if (!out.placed[g]) {
                out.placement[g] = pl;
                out.placed[g] = true;
                queue.push_back(g);
            } else {
                for (int k = 0; k < 3; ++k) {
                    if (std::abs(out.placement[g][k] - pl[k]) > agree)
                        throw Error("not-developable",
                                    "unfolding is inconsistent around a closed face cycle");
                }
            }
        }
    }
    return out;
}

Planar image_of(const TriMesh& mesh, const Unfolding& unf, std::uint32_t f, std::uint32_t v)
{
    const int i = local_index(mesh.faces().at(f), v);
    if (i < 0 || !unf.placed.at(f))
        throw Error("not-placed", "vertex is not a corner of a placed face");
    return unf.placement[f][i];
}

}  // namespace origami
