// SPDX-License-Identifier: Apache-2.0
#include "origami/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace origami {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double domain_eps = 1e-12;

template <class F>
double golden_min(F&& f, double lo, double hi, int iters = 200)
{
    const double g = (std::sqrt(5.0) - 1) / 2;
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters && b - a > 1e-15; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

}  // namespace

//---------------------------------------------------------------------------//
// Reduction
//---------------------------------------------------------------------------//

Modulus reduce_modulus(Planar z)
{
    if (!(z.imag() > 0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error("not-upper-half-plane", "modulus must have positive imaginary part");
    Modulus m;
    m.value = z;
    long a = 1, b = 0, c = 0, d = 1;
    std::ostringstream chain;
    for (int step = 0; step < 10000; ++step) {
        const long k = std::lround(z.real());
        if (k != 0) {
            z -= static_cast<double>(k);
            a -= k * c;
            b -= k * d;
            chain << (chain.tellp() > 0 ? " " : "") << "T" << -k;
        }
        if (std::norm(z) < 1.0) {
            z = -1.0 / z;
            const long na = -c, nb = -d;
            c = a;
            d = b;
            a = na;
            b = nb;
            chain << (chain.tellp() > 0 ? " " : "") << "S";
            continue;
        }
        m.normalized = z;
        m.transform = {a, b, c, d};
        m.chain = chain.str();
        return m;
    }
    throw Error("reduction-diverged", "fundamental-domain reduction did not terminate");
}

//---------------------------------------------------------------------------//
// Closed forms
//---------------------------------------------------------------------------//

Planar torus_modulus_value(const TorusParams& p)
{
    validate(p);
    const int n = p.n;
    const double s = std::sin(pi / n);
    const double sigma = p.outer_twist();
    const double re = std::sin(2 * pi * p.twist + pi / n) - std::sin(2 * pi * sigma + pi / n)
                      + 2 * p.shift * s;
    const double im = development_height(n, p.twist, p.height)
                      + development_height(n, sigma, p.height);
    return Planar(re, im) / (2 * n * s);
}

Modulus torus_modulus(const TorusParams& p)
{
    return reduce_modulus(torus_modulus_value(p));
}

Planar modulus_h0(int n, int shift, double rho)
{
    validate(TorusParams{n, shift, rho, 1.0});
    const double s = std::sin(pi / n);
    const double sigma = rho + static_cast<double>(shift) / n;
    const double re = std::sin(2 * pi * rho + pi / n) - std::sin(2 * pi * sigma + pi / n)
                      + 2 * shift * s;
    const double im = std::abs(std::cos(2 * pi * rho + pi / n) - std::cos(pi / n))
                      + std::abs(std::cos(2 * pi * sigma + pi / n) - std::cos(pi / n));
    return Planar(re, im) / (2 * n * s);
}

TorusDevelopment torus_development(const TorusParams& p)
{
    validate(p);
    const int n = p.n;
    const double s = std::sin(pi / n);
    const double lead_in = std::sin(2 * pi * p.twist + pi / n);
    const double lead_out = std::sin(2 * pi * p.outer_twist() + pi / n);
    const double h_in = development_height(n, p.twist, p.height);
    const double h_out = development_height(n, p.outer_twist(), p.height);
    TorusDevelopment d;
    d.n = n;
    d.shift = p.shift;
    for (int k = 0; k <= n; ++k) {
        d.bottom.emplace_back(2 * k * s, 0.0);
        d.upper.emplace_back(lead_in + (2 * k - 1) * s, h_in);
        d.lower.emplace_back(lead_out + (2 * k - 1) * s, -h_out);
    }
    d.period1 = d.bottom[n];
    d.period2 = Planar(lead_in + (2 * p.shift - 1) * s, h_in) - d.lower[0];
    return d;
}

//---------------------------------------------------------------------------//
// Development of a mesh
//---------------------------------------------------------------------------//

namespace {

bool has_vertex(const Face& f, std::uint32_t v)
{
    return f[0] == v || f[1] == v || f[2] == v;
}

/// Position of ring vertex `ring` inside a face of column `col`: col or col+1.
int ring_position(int col, int ring, int n)
{
    return ((col - ring) % n + n) % n == 0 ? col : col + 1;
}

}  // namespace

MeshDevelopment develop_torus_mesh(const TorusMesh& t, const Tolerances& tol)
{
    const TriMesh& m = t.mesh;
    const int n = t.n;
    const double flat_tol = 100 * tol.geom;
    for (std::uint32_t v = 0; v < m.vertices().size(); ++v) {
        if (std::abs(angle_at_vertex(m, v) - 2 * pi) > flat_tol)
            throw Error("not-developable", "vertex " + std::to_string(v) + " is not flat");
    }

    std::uint32_t root = 0;
    bool found = false;
    for (std::uint32_t f = 0; f < m.faces().size() && !found; ++f) {
        if (t.tags[f].sheet == Sheet::inner && t.tags[f].column == 0
            && has_vertex(m.faces()[f], t.root_u) && has_vertex(m.faces()[f], t.root_v)) {
            root = f;
            found = true;
        }
    }
    if (!found)
        throw Error("not-developable", "root edge not found in the inner sheet");

    MeshDevelopment dev;
    dev.unfolding = unfold(
        m, root, t.root_u, t.root_v,
        [&t](std::uint32_t f, std::uint32_t g) { return t.crosses_cut(f, g); }, tol);
    const Unfolding& unf = dev.unfolding;
    if (std::find(unf.placed.begin(), unf.placed.end(), false) != unf.placed.end())
        throw Error("not-developable", "cut graph disconnects the surface");

    const double agree = 1e3 * tol.geom;

    // Period across the column seam: image in column n-1 minus image in column 0.
    bool have1 = false;
    for (const Edge& e : m.edges()) {
        if (e.faces.size() != 2)
            continue;
        std::uint32_t f = e.faces[0], g = e.faces[1];
        if (t.tags[f].sheet != t.tags[g].sheet || !t.crosses_cut(f, g))
            continue;
        if (t.tags[f].column != 0)
            std::swap(f, g);
        for (std::uint32_t w : {e.a, e.b}) {
            const Planar cand = image_of(m, unf, g, w) - image_of(m, unf, f, w);
            if (!have1) {
                dev.period1 = cand;
                have1 = true;
            } else if (std::abs(cand - dev.period1) > agree) {
                throw Error("not-developable", "column seam translations disagree");
            }
        }
    }
    if (!have1)
        throw Error("not-developable", "no column seam found");

    // Period across the seam ring, normalized to the ring vertex at lower
    // position 0 through the linear spacing period1 / n of ring positions.
    const Planar step = dev.period1 / static_cast<double>(n);
    bool have2 = false;
    for (int r = 0; r < n; ++r) {
        const std::uint32_t v = t.seam_ring[r];
        for (std::uint32_t fl : m.vertex_faces(v)) {
            if (t.tags[fl].sheet != t.lower_sheet)
                continue;
            for (std::uint32_t fu : m.vertex_faces(v)) {
                if (t.tags[fu].sheet != t.upper_sheet)
                    continue;
                const int p = ring_position(t.tags[fl].column, r - t.shift, n);
                const int q = ring_position(t.tags[fu].column, r, n);
                const Planar cand = image_of(m, unf, fu, v) - image_of(m, unf, fl, v)
                                    - static_cast<double>(q - p - t.shift) * step;
                if (!have2) {
                    dev.period2 = cand;
                    dev.anchor = image_of(m, unf, fl, v) - static_cast<double>(p) * step;
                    have2 = true;
                } else if (std::abs(cand - dev.period2) > agree) {
                    throw Error("not-developable", "seam ring translations disagree");
                }
            }
        }
    }
    if (!have2)
        throw Error("not-developable", "seam ring not found");

    dev.modulus = dev.period2 / dev.period1;
    if (dev.modulus.imag() < 0)
        dev.modulus = -dev.modulus;
    return dev;
}

Planar modulus_from_development(const TorusMesh& torus, const Tolerances& tol)
{
    return develop_torus_mesh(torus, tol).modulus;
}

//---------------------------------------------------------------------------//
// Limit curves
//---------------------------------------------------------------------------//

Planar limit_curve_unchecked(double theta, double rho)
{
    const double a = 2 * pi * rho, b = 2 * pi * (rho + theta);
    return Planar(std::sin(a) - std::sin(b) + 2 * pi * theta, 2 - std::cos(a) - std::cos(b))
           / (2 * pi);
}

Planar limit_curve(double theta, double rho)
{
    const bool inside = std::isfinite(theta) && std::isfinite(rho) && rho >= -0.5 - domain_eps
                        && theta >= -domain_eps && rho <= -theta / 2 + domain_eps;
    if (!inside)
        throw Error("outside-parameter-triangle", "(rho, theta) must lie in the parameter triangle");
    return limit_curve_unchecked(theta, rho);
}

CurvePartials limit_curve_partials(double rho, double theta)
{
    const double a = 2 * pi * rho, b = 2 * pi * (rho + theta);
    return {Planar(std::cos(a) - std::cos(b), std::sin(a) + std::sin(b)),
            Planar(1 - std::cos(b), std::sin(b))};
}

double jacobian_gamma(double rho, double theta)
{
    return 4 * std::sin(pi * rho) * std::sin(pi * (rho + theta)) * std::sin(pi * (2 * rho + theta));
}

Planar tangent_direction(double theta)
{
    if (!(theta > 0 && theta < 1))
        throw Error("degenerate-direction", "theta must lie strictly between 0 and 1");
    return {std::sin(pi * theta), std::cos(pi * theta)};
}

double convergence_check(int n, int shift, double rho, int multiplier)
{
    if (multiplier < 1)
        throw Error("invalid-multiplier", "multiplier must be positive");
    const Planar approx = modulus_h0(multiplier * n, multiplier * shift, rho);
    return std::abs(approx - limit_curve(static_cast<double>(shift) / n, rho));
}

Tangency chord_line_tangency(double theta)
{
    if (!(theta > 0 && theta <= 0.5))
        throw Error("outside-parameter-triangle", "tangency is defined for 0 < theta <= 1/2");
    const Planar dir = tangent_direction(theta);
    const Planar base = limit_curve(theta, (-0.5 - theta / 2) / 2);
    auto dist = [&](double t) {
        const Planar q = limit_curve_unchecked(t, -t) - base;
        return std::abs(dir.real() * q.imag() - dir.imag() * q.real());
    };
    const double lo = std::max(1e-9, theta - 0.05), hi = std::min(0.5, theta + 0.05);
    constexpr int samples = 2000;
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        const double d = dist(lo + (hi - lo) * i / samples);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    const double a = lo + (hi - lo) * std::max(0, best - 1) / samples;
    const double b = lo + (hi - lo) * std::min(samples, best + 1) / samples;
    const double t = golden_min(dist, a, b);
    return {dist(t), t};
}

//---------------------------------------------------------------------------//
// Region
//---------------------------------------------------------------------------//

Planar boundary_point(BoundaryCurve curve, double s)
{
    switch (curve) {
    case BoundaryCurve::axis_segment: return {0.0, 2 * s / pi};
    case BoundaryCurve::small_cycloid: return limit_curve_unchecked(s / 2, -s / 2);
    case BoundaryCurve::left_cusp_cycloid: return limit_curve_unchecked(s / 2, -0.5);
    case BoundaryCurve::right_cusp_cycloid: return limit_curve_unchecked(0.5 + s / 2, -0.5);
    case BoundaryCurve::edge_cycloid: return limit_curve_unchecked(s, -s / 2);
    }
    return {};
}

std::vector<Planar> boundary_polyline(BoundaryCurve curve, int samples)
{
    std::vector<Planar> out;
    out.reserve(samples + 1);
    for (int i = 0; i <= samples; ++i)
        out.push_back(boundary_point(curve, static_cast<double>(i) / samples));
    return out;
}

const char* to_string(Region r)
{
    switch (r) {
    case Region::domain1: return "domain1";
    case Region::domain2: return "domain2";
    case Region::boundary: return "boundary";
    case Region::outside: return "outside";
    }
    return "unknown";
}

namespace {

constexpr int region_samples = 4096;

struct RegionTables {
    std::array<std::vector<Planar>, 5> curves;
    std::vector<Planar> domain1, domain2;

    RegionTables()
    {
        for (int c = 0; c < 5; ++c)
            curves[c] = boundary_polyline(static_cast<BoundaryCurve>(c), region_samples);
        auto append = [](std::vector<Planar>& loop, const std::vector<Planar>& part, bool reverse) {
            if (reverse)
                loop.insert(loop.end(), part.rbegin(), part.rend());
            else
                loop.insert(loop.end(), part.begin(), part.end());
        };
        const auto& axis = curves[0];
        const auto& small = curves[1];
        const auto& left = curves[2];
        const auto& right = curves[3];
        const auto& edge = curves[4];
        append(domain1, axis, false);
        append(domain1, left, false);
        append(domain1, small, true);
        append(domain2, edge, false);
        append(domain2, right, true);
        append(domain2, small, true);
    }
};

const RegionTables& region_tables()
{
    static const RegionTables tables;
    return tables;
}

bool inside_loop(const std::vector<Planar>& loop, Planar z)
{
    bool in = false;
    for (std::size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
        const Planar a = loop[i], b = loop[j];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real())
                                            / (b.imag() - a.imag());
            if (z.real() < x)
                in = !in;
        }
    }
    return in;
}

double segment_distance(Planar z, Planar a, Planar b)
{
    const Planar ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0 ? ((z - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

double curve_distance(BoundaryCurve curve, const std::vector<Planar>& poly, Planar z)
{
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const double d = segment_distance(z, poly[i], poly[i + 1]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    const double n = static_cast<double>(poly.size() - 1);
    const double lo = std::max(0.0, (static_cast<double>(best) - 1) / n);
    const double hi = std::min(1.0, (static_cast<double>(best) + 2) / n);
    const double s = golden_min([&](double u) { return std::abs(boundary_point(curve, u) - z); },
                                lo, hi);
    return std::min(best_d, std::abs(boundary_point(curve, s) - z));
}

}  // namespace

Region region_contains(Planar z, double band)
{
    const RegionTables& tab = region_tables();
    double d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < 5; ++c)
        d = std::min(d, curve_distance(static_cast<BoundaryCurve>(c), tab.curves[c], z));
    if (d <= band)
        return Region::boundary;
    if (inside_loop(tab.domain1, z))
        return Region::domain1;
    if (inside_loop(tab.domain2, z))
        return Region::domain2;
    return Region::outside;
}

bool coverage_region_contains(Planar z)
{
    const double x = std::abs(z.real()), y = z.imag();
    if (x > 0 && x < 0.5)
        return y >= std::sqrt(1 - x * x);
    if (x == 0.5)
        return y > std::sqrt(3.0) / 2;
    return false;
}

}  // namespace origami
