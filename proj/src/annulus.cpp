// SPDX-License-Identifier: Apache-2.0
#include "origami/annulus.hpp"

#include <algorithm>
#include <array>
#include <numbers>

namespace origami {

namespace {
constexpr double pi = std::numbers::pi;
}

const char* to_string(TwistClass c)
{
    switch (c) {
    case TwistClass::embeddable: return "embeddable";
    case TwistClass::prism: return "prism";
    case TwistClass::antiprism: return "antiprism";
    case TwistClass::degenerate_lower: return "degenerate-lower";
    case TwistClass::degenerate_upper: return "degenerate-upper";
    }
    return "unknown";
}

double canonical_twist(double twist)
{
    double r = twist - std::floor(twist + 0.5);
    if (r >= 0.5)
        r -= 1;
    return r;
}

TwistClass classify_twist(int n, double twist, double tol)
{
    if (n < 3)
        throw Error("n-too-small", "annuli need n >= 3");
    const double r = canonical_twist(twist);
    if (r <= -0.5 + tol)
        return TwistClass::degenerate_lower;
    if (r >= 0.5 - 1.0 / n - tol)
        return TwistClass::degenerate_upper;
    if (std::abs(r) <= tol || std::abs(r + 1.0 / n) <= tol)
        return TwistClass::prism;
    if (std::abs(r + 0.5 / n) <= tol)
        return TwistClass::antiprism;
    return TwistClass::embeddable;
}

void validate(const AnnulusParams& p)
{
    if (p.n < 3)
        throw Error("n-too-small", "annuli need n >= 3");
    if (!(p.height > 0) || !std::isfinite(p.height))
        throw Error("height-not-positive", "annulus height must be positive");
    if (!std::isfinite(p.twist))
        throw Error("twist-out-of-range", "twist must be finite");
    const double r = canonical_twist(p.twist);
    if (!(r > -0.5 && r < 0.5 - 1.0 / p.n))
        throw Error("twist-out-of-range",
                    "twist must lie strictly between -1/2 and 1/2 - 1/n");
}

Point3 bottom_vertex(int n, int k)
{
    const double t = 2 * pi * static_cast<double>(k) / n;
    return {std::cos(t), std::sin(t), 0};
}

Point3 top_vertex(const AnnulusParams& p, int k)
{
    const double t = 2 * pi * p.twist + 2 * pi * static_cast<double>(k) / p.n;
    return {std::cos(t), std::sin(t), p.height};
}

AnnulusMesh build_annulus(AnnulusParams params, const Tolerances& tol)
{
    validate(params);
    params.twist = canonical_twist(params.twist);
    const int n = params.n;
    std::vector<Point3> verts;
    verts.reserve(2 * n);
    for (int k = 0; k < n; ++k)
        verts.push_back(bottom_vertex(n, k));
    for (int k = 0; k < n; ++k)
        verts.push_back(top_vertex(params, k));

    auto P = [n](int k) { return static_cast<std::uint32_t>(k % n); };
    auto Q = [n](int k) { return static_cast<std::uint32_t>(n + k % n); };
    std::vector<Face> faces;
    faces.reserve(2 * n);
    for (int k = 0; k < n; ++k) {
        faces.push_back({P(k), P(k + 1), Q(k + 1)});
        faces.push_back({Q(k + 1), Q(k), P(k)});
    }
    return {params, TriMesh(std::move(verts), std::move(faces), tol)};
}

double development_height(int n, double twist, double height)
{
    const double c = std::cos(2 * pi * twist + pi / n) - std::cos(pi / n);
    return std::sqrt(height * height + c * c);
}

double projection_foot(const AnnulusParams& params)
{
    validate(params);
    return std::sin(2 * pi * params.twist + pi / params.n) + std::sin(pi / params.n);
}

DevelopmentStrip develop_annulus(const AnnulusParams& params)
{
    validate(params);
    const int n = params.n;
    const double s = std::sin(pi / n);
    const double lead = std::sin(2 * pi * params.twist + pi / n);
    DevelopmentStrip d;
    d.width = 2 * n * s;
    d.height = development_height(n, params.twist, params.height);
    d.top_offset = lead - s;
    for (int k = 0; k <= n; ++k) {
        d.bottom.emplace_back(2 * k * s, 0.0);
        d.top.emplace_back(lead + (2 * k - 1) * s, d.height);
    }
    return d;
}

namespace {

/// Splits quad (v0, v1, v2, v3) into two triangles with the same orientation.
void add_quad(std::vector<Face>& out, const std::vector<Point3>& verts,
              std::array<std::uint32_t, 4> q, double tol)
{
    const double d02 = distance(verts[q[0]], verts[q[2]]);
    const double d13 = distance(verts[q[1]], verts[q[3]]);
    bool use02;
    if (std::abs(d02 - d13) <= tol) {
        const auto lowest = *std::min_element(q.begin(), q.end());
        use02 = (lowest == q[0] || lowest == q[2]);
    } else {
        use02 = d02 < d13;
    }
    if (use02) {
        out.push_back({q[0], q[1], q[2]});
        out.push_back({q[0], q[2], q[3]});
    } else {
        out.push_back({q[1], q[2], q[3]});
        out.push_back({q[1], q[3], q[0]});
    }
}

}  // namespace

std::pair<AnnulusSlab, AnnulusSlab> cut_annulus(AnnulusParams params, double a,
                                                const Tolerances& tol)
{
    validate(params);
    if (!(a > 0 && a < params.height))
        throw Error("cut-out-of-range", "cut height must lie strictly between 0 and h");
    params.twist = canonical_twist(params.twist);
    const int n = params.n;
    const double t = a / params.height;

    // Cut points: C_k on edge P_k Q_k, D_k on diagonal P_k Q_{k+1}.
    std::vector<Point3> P, Q, C, D;
    for (int k = 0; k < n; ++k) {
        P.push_back(bottom_vertex(n, k));
        Q.push_back(top_vertex(params, k));
    }
    for (int k = 0; k < n; ++k) {
        C.push_back(P[k] + t * (Q[k] - P[k]));
        D.push_back(P[k] + t * (Q[(k + 1) % n] - P[k]));
    }

    // Lower slab vertex layout: P (n), C (n), D (n).
    // Upper slab vertex layout: C (n), D (n), Q (n).
    auto idx = [n](int block, int k) { return static_cast<std::uint32_t>(block * n + (k % n)); };

    AnnulusSlab lower, upper;
    {
        std::vector<Point3> verts = P;
        verts.insert(verts.end(), C.begin(), C.end());
        verts.insert(verts.end(), D.begin(), D.end());
        std::vector<Face> faces;
        for (int k = 0; k < n; ++k) {
            const std::size_t before = faces.size();
            add_quad(faces, verts, {idx(0, k), idx(0, k + 1), idx(1, k + 1), idx(2, k)}, tol.geom);
            faces.push_back({idx(2, k), idx(1, k), idx(0, k)});
            for (std::size_t f = before; f < faces.size(); ++f)
                lower.face_column.push_back(k);
        }
        lower.mesh = TriMesh(std::move(verts), std::move(faces), tol);
    }
    {
        std::vector<Point3> verts = C;
        verts.insert(verts.end(), D.begin(), D.end());
        verts.insert(verts.end(), Q.begin(), Q.end());
        std::vector<Face> faces;
        for (int k = 0; k < n; ++k) {
            const std::size_t before = faces.size();
            faces.push_back({idx(1, k), idx(0, k + 1), idx(2, k + 1)});
            add_quad(faces, verts, {idx(2, k + 1), idx(2, k), idx(0, k), idx(1, k)}, tol.geom);
            for (std::size_t f = before; f < faces.size(); ++f)
                upper.face_column.push_back(k);
        }
        upper.mesh = TriMesh(std::move(verts), std::move(faces), tol);
    }

    // Developments are the pieces of the full strip below and above the line
    // at fraction t of its height.
    const DevelopmentStrip full = develop_annulus(params);
    std::vector<Planar> cut_row;
    for (int k = 0; k <= n; ++k) {
        cut_row.push_back(full.bottom[k] + t * (full.top[k] - full.bottom[k]));
        if (k < n)
            cut_row.push_back(full.bottom[k] + t * (full.top[k + 1] - full.bottom[k]));
    }
    lower.development = {full.width, t * full.height, t * full.top_offset, full.bottom, cut_row};
    upper.development = {full.width, (1 - t) * full.height, (1 - t) * full.top_offset, cut_row,
                         full.top};
    return {std::move(lower), std::move(upper)};
}

}  // namespace origami
