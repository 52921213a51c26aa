// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "origami/io.hpp"
#include "origami/report.hpp"
#include "origami/solver.hpp"

using namespace origami;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "origami_tori_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t interior_edges(const TriMesh& m)
{
    return static_cast<std::size_t>(std::count_if(
        m.edges().begin(), m.edges().end(), [](const Edge& e) { return e.faces.size() == 2; }));
}

bool is_vertical(const TriMesh& m, const Edge& e)
{
    const Point3 a = m.vertices()[e.a], b = m.vertices()[e.b];
    return std::abs(a.x - b.x) < 1e-12 && std::abs(a.y - b.y) < 1e-12;
}

}  // namespace

TEST(Obj, PrismAnnulusCounts)
{
    const AnnulusMesh a = build_annulus({4, 0, 1});
    const std::string obj = to_obj(a.mesh);
    std::size_t v = 0, f = 0;
    std::istringstream in(obj);
    std::string line;
    while (std::getline(in, line)) {
        v += line.rfind("v ", 0) == 0;
        f += line.rfind("f ", 0) == 0;
    }
    EXPECT_EQ(v, 8u);
    EXPECT_EQ(f, 8u);
}

TEST(Obj, TorusCountsAndWatertightReimport)
{
    const TorusMesh t = assemble_torus({8, 2, -6.0 / 16, 1});
    const fs::path p = temp_path("torus.obj");
    export_mesh(t.mesh, MeshFormat::obj, p);
    const TriMesh back = read_obj(p);
    EXPECT_EQ(back.vertices().size(), 16u);
    EXPECT_EQ(back.faces().size(), 32u);
    EXPECT_TRUE(back.is_closed());
    EXPECT_TRUE(back.is_consistently_oriented());
    EXPECT_EQ(back.euler_characteristic(), 0);
    for (std::size_t i = 0; i < back.vertices().size(); ++i)
        EXPECT_LT(distance(back.vertices()[i], t.mesh.vertices()[i]), 1e-10);
    EXPECT_EQ(back.faces(), t.mesh.faces());
}

TEST(Obj, DoubledTorusWatertight)
{
    const TorusMesh t = double_torus({{8, 2, -0.375, 1}, 0.3, Half::upper});
    const TriMesh back = parse_obj(to_obj(t.mesh));
    EXPECT_TRUE(back.is_closed());
    EXPECT_EQ(back.euler_characteristic(), 0);
}

TEST(Obj, ParsesPolygonsAndNegativeIndices)
{
    const TriMesh m = parse_obj("# square\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1/1 2/2 -2 -1\n");
    EXPECT_EQ(m.faces().size(), 2u);
    EXPECT_EQ(m.faces()[1], (Face{0, 2, 3}));
}

TEST(Obj, Errors)
{
    try {
        (void)parse_obj("v 0 0\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "parse-error");
    }
    try {
        (void)read_obj(temp_path("does-not-exist.obj"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "io-error");
    }
    try {
        (void)parse_mesh_format("ply");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "unknown-format");
    }
}

TEST(Io, UnwritableTargetIsIoError)
{
    try {
        write_file_atomic("/nonexistent-dir/x/y.obj", "x");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "io-error");
    }
}

TEST(Stl, BinaryLayoutAndUnitNormals)
{
    const TorusMesh t = assemble_torus({8, 2, -6.0 / 16, 1});
    const std::string stl = to_stl(t.mesh);
    ASSERT_EQ(stl.size(), 84u + 50u * 32u);
    std::uint32_t count = 0;
    std::memcpy(&count, stl.data() + 80, 4);
    EXPECT_EQ(count, 32u);
    for (std::size_t f = 0; f < 32; ++f) {
        float n[3];
        std::memcpy(n, stl.data() + 84 + 50 * f, 12);
        EXPECT_NEAR(std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]), 1.0, 1e-6);
        const TrianglePoints tri = t.mesh.triangle(f);
        const Vec3 c = cross(tri[1] - tri[0], tri[2] - tri[0]);
        EXPECT_GT(n[0] * c.x + n[1] * c.y + n[2] * c.z, 0);
    }
}

TEST(CreasePattern, PrismAnnulus)
{
    const int n = 4;
    const AnnulusMesh a = build_annulus({n, 0, 1});
    const CreasePattern cp = crease_pattern(a);
    EXPECT_EQ(cp.folds.size(), interior_edges(a.mesh));
    std::size_t off_cut = 0, vertical_valleys = 0, flat = 0;
    for (const FoldSegment& f : cp.folds) {
        EXPECT_EQ(f.kind, classify_fold(a.mesh, f.edge));
        if (f.on_cut)
            continue;
        ++off_cut;
        const Edge& e = a.mesh.edges()[f.edge];
        if (is_vertical(a.mesh, e))
            vertical_valleys += f.kind == FoldKind::valley;
        else
            flat += f.kind == FoldKind::flat;
    }
    EXPECT_EQ(off_cut, static_cast<std::size_t>(2 * n - 1));
    EXPECT_EQ(vertical_valleys, static_cast<std::size_t>(n - 1));
    EXPECT_EQ(flat, static_cast<std::size_t>(n));
}

TEST(CreasePattern, AntiprismMatchesDihedralSigns)
{
    const AnnulusMesh a = build_annulus({8, -1.0 / 16, 1});
    const CreasePattern cp = crease_pattern(a);
    EXPECT_EQ(cp.folds.size(), 16u);
    for (const FoldSegment& f : cp.folds) {
        const double s = fold_sign(a.mesh, f.edge);
        EXPECT_EQ(f.kind, s > 0 ? FoldKind::mountain : FoldKind::valley);
    }
    // Folds zigzag: ordered along the strip, the lateral creases lean
    // alternately left and right.
    std::vector<std::pair<double, double>> lean;  // (midpoint x, top x - bottom x)
    for (const FoldSegment& f : cp.folds) {
        if (f.on_cut)
            continue;
        const Planar lo = f.a.imag() < f.b.imag() ? f.a : f.b;
        const Planar hi = f.a.imag() < f.b.imag() ? f.b : f.a;
        lean.emplace_back((lo.real() + hi.real()) / 2, hi.real() - lo.real());
    }
    std::sort(lean.begin(), lean.end());
    ASSERT_EQ(lean.size(), 15u);
    for (std::size_t i = 0; i + 1 < lean.size(); ++i)
        EXPECT_LT(lean[i].second * lean[i + 1].second, 0) << i;
}

TEST(CreasePattern, FoldCountEqualsInteriorEdgesAndFlips)
{
    for (const auto& p : enumerate_pairs(8, 16)) {
        const TorusMesh t = assemble_torus({8, p.shift, p.rho(), 1});
        const CreasePattern cp = crease_pattern(t);
        EXPECT_EQ(cp.folds.size(), interior_edges(t.mesh));
        EXPECT_EQ(cp.fundamental.size(), 4u);
        const TriMesh flipped = t.mesh.flipped();
        for (const FoldSegment& f : cp.folds) {
            const Edge& e = t.mesh.edges()[f.edge];
            const FoldKind k = classify_fold(flipped, flipped.edge_index(e.a, e.b));
            if (f.kind == FoldKind::flat)
                EXPECT_EQ(k, FoldKind::flat);
            else
                EXPECT_NE(k, f.kind);
        }
    }
}

TEST(CreasePattern, TorusDevelopmentCombinatorics)
{
    const TorusMesh t = assemble_torus({8, 2, -6.0 / 16, 1});
    const CreasePattern cp = crease_pattern(t);
    // Cut edges: two column seams (one per band) plus the n seam-ring edges,
    // each drawn on both copies with a shared label.
    std::map<std::string, int> labels;
    for (const OutlineSegment& o : cp.outline)
        if (!o.label.empty())
            ++labels[o.label];
    EXPECT_EQ(labels.size(), 2u + 8u);
    for (const auto& [label, count] : labels)
        EXPECT_EQ(count, 2) << label;
    EXPECT_NE(cp.caption.find("l=2"), std::string::npos);
    // Fundamental parallelogram spans the two periods.
    const Planar w1 = cp.fundamental[1] - cp.fundamental[0];
    const Planar w2 = cp.fundamental[3] - cp.fundamental[0];
    EXPECT_NEAR(std::abs(w2 / w1 - torus_modulus_value({8, 2, -6.0 / 16, 1})), 0, 1e-9);
}

TEST(Svg, StylesAndUnits)
{
    const TorusMesh t = assemble_torus({8, 2, -6.0 / 16, 1});
    const std::string svg = to_svg(crease_pattern(t), {10, true});
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("mm\""), std::string::npos);
    EXPECT_NE(svg.find("class=\"outline\" "), std::string::npos);
    EXPECT_NE(svg.find("stroke=\"black\""), std::string::npos);
    EXPECT_NE(svg.find("stroke=\"red\""), std::string::npos);
    EXPECT_NE(svg.find("<text"), std::string::npos);
    EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
    const std::string plain = to_svg(crease_pattern(t), {10, false});
    EXPECT_LT(plain.size(), svg.size());
}

TEST(Atlas, EightBySixteenGridHasTwelveRows)
{
    AtlasGrid g;
    g.ns = {8};
    g.den = 16;
    const Atlas a = compute_atlas(g);
    EXPECT_EQ(a.rows.size(), 12u);
    for (const AtlasRow& r : a.rows) {
        const Planar z = torus_modulus_value({r.n, r.shift, r.rho, r.h});
        EXPECT_EQ(z, r.value);
        EXPECT_NEAR(std::abs(reduce_modulus(z).normalized - r.normalized), 0, 1e-15);
    }
}

TEST(Atlas, EmptyIntersection)
{
    AtlasGrid g;
    g.explicit_tuples.push_back({8, 1, -0.3});
    const Atlas a = compute_atlas(g);
    EXPECT_TRUE(a.rows.empty());
    EXPECT_EQ(a.invalid, 1u);
    EXPECT_EQ(atlas_csv(a), "n,l,rho,h,re,im,norm_re,norm_im\r\n");
}

TEST(Atlas, HeightSweepKeepsRealPart)
{
    AtlasGrid g;
    g.explicit_tuples.push_back({8, 2, -0.375});
    g.heights = {0.5, 1, 2};
    const Atlas a = compute_atlas(g);
    ASSERT_EQ(a.rows.size(), 3u);
    EXPECT_NEAR(a.rows[0].value.real(), a.rows[1].value.real(), 1e-12);
    EXPECT_NEAR(a.rows[1].value.real(), a.rows[2].value.real(), 1e-12);
    EXPECT_LT(a.rows[0].h, a.rows[2].h);
}

TEST(Atlas, DeterministicBytes)
{
    AtlasGrid g;
    g.ns = {5, 6, 7, 8};
    g.den = 24;
    g.heights = {0.5, 1};
    const fs::path p1 = temp_path("atlas1.csv"), p2 = temp_path("atlas2.csv");
    const Atlas a = emit_atlas(g, p1);
    emit_atlas(g, p2);
    EXPECT_FALSE(a.rows.empty());
    EXPECT_EQ(slurp(p1), slurp(p2));
    EXPECT_EQ(slurp(p1), atlas_csv(a));
    EXPECT_FALSE(fs::exists(p1.string() + ".tmp"));
}

TEST(Report, JsonRoundTripsDoubles)
{
    const Planar z = torus_modulus_value({8, 2, -0.375, 1});
    const Json j = to_json(z);
    const Json back = Json::parse(j.dump());
    EXPECT_EQ(back["re"].get<double>(), z.real());
    EXPECT_EQ(back["im"].get<double>(), z.imag());
}
