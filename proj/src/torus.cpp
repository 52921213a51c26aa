// SPDX-License-Identifier: Apache-2.0
#include "origami/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace origami {

namespace {

// Points this close to an interval endpoint count as the (excluded) endpoint.
constexpr double boundary_eps = 1e-12;

bool strictly_inside(double x, double lo, double hi)
{
    return x > lo + boundary_eps && x < hi - boundary_eps;
}

bool annulus_twist_ok(int n, double r)
{
    return strictly_inside(r, -0.5, 0.5 - 1.0 / n);
}

}  // namespace

std::pair<double, double> twist_interval(int n, int shift)
{
    const int l = std::abs(shift);
    if (n < 5 || l < 2 || l > n - 3)
        return {0.0, 0.0};
    if (shift > 0)
        return {-0.5, -static_cast<double>(l) / (2 * n) - 1.0 / n};
    return {static_cast<double>(l) / (2 * n), 0.5 - 1.0 / n};
}

void validate(const TorusParams& p)
{
    if (p.n < 5)
        throw Error("n-too-small", "tori need n >= 5");
    if (!(p.height > 0) || !std::isfinite(p.height))
        throw Error("invalid-pairing", "torus height must be positive");
    const auto [lo, hi] = twist_interval(p.n, p.shift);
    if (!(lo < hi))
        throw Error("invalid-pairing", "shift must satisfy 2 <= |l| <= n - 3");
    if (!strictly_inside(p.twist, lo, hi))
        throw Error("invalid-pairing", "inner twist outside the admissible interval for this shift");
}

PairingCheck pairing_valid(int n, double rho, double sigma)
{
    if (n < 5)
        throw Error("n-too-small", "tori need n >= 5");
    rho = canonical_twist(rho);
    sigma = canonical_twist(sigma);
    PairingCheck out;

    // Four-case form: which edge of each band is nearest the axis depends on
    // the side of -1/(2n) its twist lies on.
    {
        const double mid = -0.5 / n;
        const bool r_lo = rho > -0.5 && rho <= mid, r_hi = rho >= mid && rho < 0.5 - 1.0 / n;
        const bool s_lo = sigma > -0.5 && sigma <= mid, s_hi = sigma >= mid && sigma < 0.5 - 1.0 / n;
        bool any = false, all = true;
        auto need = [&](bool applies, bool holds) {
            if (applies) {
                any = true;
                all = all && holds;
            }
        };
        auto less = [](double a, double b) { return a < b - boundary_eps; };
        need(r_lo && s_lo, less(std::abs(sigma), std::abs(rho + 1.0 / n)));
        need(r_lo && s_hi, less(sigma + 1.0 / n, std::abs(rho + 1.0 / n)));
        need(r_hi && s_lo, less(std::abs(sigma), std::abs(rho)));
        need(r_hi && s_hi, less(sigma + 1.0 / n, std::abs(rho)));
        out.bullet_form = any && all;
    }

    const double scaled = (sigma - rho) * n;
    out.shift = static_cast<int>(std::lround(scaled));
    if (!annulus_twist_ok(n, rho) || !annulus_twist_ok(n, sigma)) {
        out.reason = "twist-out-of-range";
    } else if (std::abs(scaled - out.shift) > 1e-9) {
        out.reason = "boundaries-differ";
    } else {
        const auto [lo, hi] = twist_interval(n, out.shift);
        if (!(lo < hi))
            out.reason = "shift-forbidden";
        else if (!strictly_inside(rho, lo, hi))
            out.reason = "twist-outside-interval";
        else {
            out.valid = true;
            out.reason = "ok";
        }
    }
    out.bullet_agrees = out.bullet_form == out.valid;
    return out;
}

std::vector<GridPair> enumerate_pairs(int n, int den)
{
    if (n < 5)
        throw Error("n-too-small", "tori need n >= 5");
    if (den < n)
        throw Error("grid-too-coarse", "denominator must be at least n");
    // Exact integer form of the admissible intervals, scaled by 2 n den.
    std::vector<GridPair> out;
    for (int kr = -den; kr <= den; ++kr) {
        // canonical twist strictly inside (-1/2, 1/2 - 1/n): 2n kr in (-n den, n den - 2 den)
        if (!(2 * n * kr > -n * den && 2 * n * kr < n * den - 2 * den))
            continue;
        for (int ks = -den; ks <= den; ++ks) {
            if (!(2 * n * ks > -n * den && 2 * n * ks < n * den - 2 * den))
                continue;
            const int diff = (ks - kr) * n;
            if (diff % den != 0)
                continue;
            const int l = diff / den;
            const int a = std::abs(l);
            if (a < 2 || a > n - 3)
                continue;
            const long lhs = 2L * n * kr;
            const bool inside = l > 0 ? (lhs > -1L * n * den && lhs < -1L * a * den - 2L * den)
                                      : (lhs > 1L * a * den && lhs < 1L * n * den - 2L * den);
            if (inside)
                out.push_back({kr, ks, den, l});
        }
    }
    std::sort(out.begin(), out.end(), [](const GridPair& x, const GridPair& y) {
        return std::pair(x.rho_num, x.sigma_num) < std::pair(y.rho_num, y.sigma_num);
    });
    return out;
}

const char* to_string(Sheet s)
{
    switch (s) {
    case Sheet::inner: return "inner";
    case Sheet::outer: return "outer";
    case Sheet::inner_mirror: return "inner-mirror";
    case Sheet::outer_mirror: return "outer-mirror";
    }
    return "unknown";
}

//---------------------------------------------------------------------------//
// TorusMesh
//---------------------------------------------------------------------------//

bool TorusMesh::in_seam_ring(std::uint32_t v) const
{
    return std::find(seam_ring.begin(), seam_ring.end(), v) != seam_ring.end();
}

bool TorusMesh::crosses_cut(std::uint32_t f, std::uint32_t g) const
{
    const FaceTag& a = tags.at(f);
    const FaceTag& b = tags.at(g);
    if (a.sheet == b.sheet) {
        const int lo = std::min(a.column, b.column), hi = std::max(a.column, b.column);
        return lo == 0 && hi == n - 1;
    }
    const bool across = (a.sheet == upper_sheet && b.sheet == lower_sheet)
                        || (a.sheet == lower_sheet && b.sheet == upper_sheet);
    if (!across)
        return false;
    int shared_on_ring = 0;
    for (auto v : mesh.faces()[f]) {
        const auto& gf = mesh.faces()[g];
        if (std::find(gf.begin(), gf.end(), v) != gf.end() && in_seam_ring(v))
            ++shared_on_ring;
    }
    return shared_on_ring == 2;
}

namespace {

void add_reversed(MeshBuilder& b, const TrianglePoints& t)
{
    b.add_triangle(t[0], t[2], t[1]);
}

}  // namespace

TorusMesh assemble_pair(int n, double inner_twist, double outer_twist, double height,
                        const Tolerances& tol)
{
    if (n < 3)
        throw Error("n-too-small", "bands need n >= 3");
    if (!(height > 0))
        throw Error("height-not-positive", "height must be positive");
    // Raw band coordinates: the twist range is not checked here.
    const AnnulusParams inner{n, canonical_twist(inner_twist), height};
    const AnnulusParams outer{n, canonical_twist(outer_twist), height};
    auto band = [n](const AnnulusParams& p, int f) -> TrianglePoints {
        const int k = f / 2;
        if (f % 2 == 0)
            return {bottom_vertex(n, k), bottom_vertex(n, k + 1), top_vertex(p, k + 1)};
        return {top_vertex(p, k + 1), top_vertex(p, k), bottom_vertex(n, k)};
    };

    MeshBuilder b(tol);
    TorusMesh t;
    t.n = n;
    t.shift = static_cast<int>(std::lround((outer.twist - inner.twist) * n));
    // Inner band faces point toward the axis, i.e. away from the solid torus.
    for (int f = 0; f < 2 * n; ++f) {
        add_reversed(b, band(inner, f));
        t.tags.push_back({Sheet::inner, f / 2, f % 2});
    }
    for (int f = 0; f < 2 * n; ++f) {
        const auto tri = band(outer, f);
        b.add_triangle(tri[0], tri[1], tri[2]);
        t.tags.push_back({Sheet::outer, f / 2, f % 2});
    }
    for (int k = 0; k < n; ++k)
        t.seam_ring.push_back(b.add_vertex(top_vertex(inner, k)));
    t.root_u = b.add_vertex(bottom_vertex(n, 0));
    t.root_v = b.add_vertex(bottom_vertex(n, 1));
    t.upper_sheet = Sheet::inner;
    t.lower_sheet = Sheet::outer;
    t.mesh = b.build();
    return t;
}

TorusMesh assemble_torus(const TorusParams& params, const Tolerances& tol)
{
    validate(params);
    TorusMesh t = assemble_pair(params.n, params.twist, params.outer_twist(), params.height, tol);
    if (t.mesh.vertices().size() != static_cast<std::size_t>(2 * params.n))
        throw Error("weld-failed", "band boundaries did not coincide within the weld tolerance");
    t.shift = params.shift;
    return t;
}

//---------------------------------------------------------------------------//
// Verification
//---------------------------------------------------------------------------//

std::vector<std::pair<std::uint32_t, std::uint32_t>>
intersecting_face_pairs(const TriMesh& mesh, const Tolerances& tol)
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    const auto nf = static_cast<std::uint32_t>(mesh.faces().size());
    std::vector<TrianglePoints> tris;
    tris.reserve(nf);
    for (std::uint32_t f = 0; f < nf; ++f)
        tris.push_back(mesh.triangle(f));
    for (std::uint32_t i = 0; i < nf; ++i) {
        for (std::uint32_t j = i + 1; j < nf; ++j) {
            if (!triangles_interior_disjoint(tris[i], tris[j], tol))
                out.emplace_back(i, j);
        }
    }
    return out;
}

EmbeddingReport verify_embedding(const TriMesh& mesh, const Tolerances& tol)
{
    if (!mesh.is_closed())
        throw Error("not-closed", "mesh has boundary or non-manifold edges");
    EmbeddingReport r;
    r.closed = true;
    r.oriented = mesh.is_consistently_oriented();
    r.euler = mesh.euler_characteristic();
    r.violating = intersecting_face_pairs(mesh, tol);
    r.ok = r.violating.empty() && r.oriented;
    return r;
}

namespace {

/// Ray/triangle crossing count (Moller-Trumbore), t > 0.
bool ray_hits(Point3 origin, Vec3 dir, const TrianglePoints& t)
{
    const Vec3 e1 = t[1] - t[0], e2 = t[2] - t[0];
    const Vec3 p = cross(dir, e2);
    const double det = dot(e1, p);
    if (std::abs(det) < 1e-14)
        return false;
    const double inv = 1.0 / det;
    const Vec3 s = origin - t[0];
    const double u = dot(s, p) * inv;
    if (u < 0 || u > 1)
        return false;
    const Vec3 q = cross(s, e1);
    const double v = dot(dir, q) * inv;
    if (v < 0 || u + v > 1)
        return false;
    return dot(e2, q) * inv > 0;
}

bool is_inner(Sheet s) { return s == Sheet::inner || s == Sheet::inner_mirror; }

}  // namespace

EmbeddingReport verify_embedding(const TorusMesh& torus, const Tolerances& tol)
{
    EmbeddingReport r = verify_embedding(torus.mesh, tol);

    // Nesting: a horizontal ray leaving an inner face away from the axis must
    // cross the outer sheets an odd number of times.
    std::uint32_t probe = 0;
    while (probe < torus.tags.size() && !is_inner(torus.tags[probe].sheet))
        ++probe;
    const auto tri = torus.mesh.triangle(probe);
    const Point3 c = (1.0 / 3) * (tri[0] + tri[1] + tri[2]);
    const double skew = 0.0123456789;
    const double ang = std::atan2(c.y, c.x) + skew;
    const Vec3 dir{std::cos(ang), std::sin(ang), 0};
    int crossings = 0;
    for (std::uint32_t f = 0; f < torus.tags.size(); ++f) {
        if (!is_inner(torus.tags[f].sheet) && ray_hits(c, dir, torus.mesh.triangle(f)))
            ++crossings;
    }
    r.nested = crossings % 2 == 1;
    r.ok = r.ok && r.nested;
    return r;
}

//---------------------------------------------------------------------------//
// Doubling
//---------------------------------------------------------------------------//

TorusMesh double_torus(const DoubleSpec& spec, const Tolerances& tol)
{
    validate(spec.base);
    const double h = spec.base.height;
    if (!(spec.cut > 0 && spec.cut < h))
        throw Error("cut-out-of-range", "cut height must lie strictly between 0 and h");
    const int n = spec.base.n;
    const double a = spec.cut;

    auto [in_lo, in_hi] = cut_annulus(spec.base.inner(), a, tol);
    auto [out_lo, out_hi] = cut_annulus(spec.base.outer(), a, tol);
    const AnnulusSlab& inner = spec.half == Half::lower ? in_lo : in_hi;
    const AnnulusSlab& outer = spec.half == Half::lower ? out_lo : out_hi;

    auto mirror = [a](Point3 p) { return Point3{p.x, p.y, 2 * a - p.z}; };

    MeshBuilder b(tol);
    TorusMesh t;
    t.n = n;
    t.shift = 0;
    t.doubled = true;

    // Columns are indexed by position on the ring shared by the kept slabs, so
    // every column seam starts at the same vertex. For the upper slab the outer
    // band meets that ring shifted by l.
    const int outer_offset = spec.half == Half::upper ? spec.base.shift : 0;
    auto add_sheet = [&](const AnnulusSlab& slab, Sheet sheet, bool reverse, bool reflect,
                         int offset) {
        std::vector<int> seen(n, 0);
        for (std::uint32_t f = 0; f < slab.mesh.faces().size(); ++f) {
            auto tri = slab.mesh.triangle(f);
            if (reflect) {
                for (auto& p : tri)
                    p = mirror(p);
            }
            if (reverse)
                add_reversed(b, tri);
            else
                b.add_triangle(tri[0], tri[1], tri[2]);
            const int col = ((slab.face_column[f] + offset) % n + n) % n;
            t.tags.push_back({sheet, col, seen[col]++});
        }
    };
    add_sheet(inner, Sheet::inner, true, false, 0);
    add_sheet(outer, Sheet::outer, false, false, outer_offset);
    add_sheet(inner, Sheet::inner_mirror, false, true, 0);
    add_sheet(outer, Sheet::outer_mirror, true, true, outer_offset);

    // The ring shared by the two bands is mirrored into the seam ring.
    const AnnulusParams in_params{n, canonical_twist(spec.base.twist), h};
    for (int k = 0; k < n; ++k) {
        const Point3 ring = spec.half == Half::lower ? bottom_vertex(n, k) : top_vertex(in_params, k);
        t.seam_ring.push_back(b.add_vertex(mirror(ring)));
    }
    if (spec.half == Half::lower) {
        t.root_u = b.add_vertex(bottom_vertex(n, 0));
        t.root_v = b.add_vertex(bottom_vertex(n, 1));
    } else {
        t.root_u = b.add_vertex(top_vertex(in_params, 1));
        t.root_v = b.add_vertex(top_vertex(in_params, 0));
    }
    t.upper_sheet = Sheet::inner_mirror;
    t.lower_sheet = Sheet::outer_mirror;
    t.mesh = b.build();
    if (!t.mesh.is_closed())
        throw Error("weld-failed", "doubled slabs did not close up");
    return t;
}

}  // namespace origami
