// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "origami/moduli.hpp"
#include "origami/torus.hpp"

using namespace origami;
using std::numbers::pi;

namespace {

std::string code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

/// Independent embeddedness audit of a forced assembly.
bool brute_force_valid(int n, double rho, double sigma)
{
    TorusMesh t;
    try {
        t = assemble_pair(n, rho, sigma, 1.0);
    } catch (const Error&) {
        return false;
    }
    if (!t.mesh.is_closed())
        return false;
    return verify_embedding(t).ok;
}

using Key = std::array<long long, 3>;

Key key_of(Point3 p)
{
    return {std::llround(p.x * 1e7), std::llround(p.y * 1e7), std::llround(p.z * 1e7)};
}

std::multiset<std::array<Key, 3>> face_set(const TriMesh& m, bool mirror)
{
    std::multiset<std::array<Key, 3>> out;
    for (std::size_t f = 0; f < m.faces().size(); ++f) {
        auto t = m.triangle(f);
        std::array<Key, 3> k;
        for (int i = 0; i < 3; ++i) {
            Point3 p = t[i];
            if (mirror)
                p.y = -p.y;
            k[i] = key_of(p);
        }
        std::sort(k.begin(), k.end());
        out.insert(k);
    }
    return out;
}

TorusParams random_valid(std::mt19937_64& rng, int n_max = 12)
{
    std::uniform_int_distribution<int> un(5, n_max);
    const int n = un(rng);
    std::uniform_int_distribution<int> ul(2, n - 3);
    const int l = ul(rng) * (rng() % 2 ? 1 : -1);
    const auto [lo, hi] = twist_interval(n, l);
    std::uniform_real_distribution<double> ur(lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo));
    std::uniform_real_distribution<double> uh(0.2, 3);
    return {n, l, ur(rng), uh(rng)};
}

}  // namespace

TEST(Pairing, ReferenceExamples)
{
    const PairingCheck a = pairing_valid(8, -7.0 / 16, -3.0 / 16);
    EXPECT_TRUE(a.valid);
    EXPECT_EQ(a.shift, 2);
    EXPECT_TRUE(a.bullet_agrees);

    const PairingCheck b = pairing_valid(8, -5.0 / 16, 1.0 / 16);
    EXPECT_FALSE(b.valid);
    EXPECT_EQ(b.shift, 3);
    EXPECT_FALSE(brute_force_valid(8, -5.0 / 16, 1.0 / 16));

    const PairingCheck c = pairing_valid(8, 0, 1.0 / 8);
    EXPECT_FALSE(c.valid);
    EXPECT_EQ(c.reason, "shift-forbidden");
}

TEST(Pairing, NTooSmall)
{
    EXPECT_EQ(code_of([] { (void)pairing_valid(4, -0.4, -0.1); }), "n-too-small");
}

TEST(Pairing, BoundariesMustCoincide)
{
    const PairingCheck c = pairing_valid(8, -0.4, -0.1);
    EXPECT_FALSE(c.valid);
    EXPECT_EQ(c.reason, "boundaries-differ");
}

TEST(Pairing, IntervalsMatchSummary)
{
    for (int n = 5; n <= 14; ++n) {
        for (int l = 2; l <= n - 3; ++l) {
            auto [lo, hi] = twist_interval(n, l);
            EXPECT_DOUBLE_EQ(lo, -0.5);
            EXPECT_NEAR(hi, -static_cast<double>(l) / (2 * n) - 1.0 / n, 1e-15);
            std::tie(lo, hi) = twist_interval(n, -l);
            EXPECT_NEAR(lo, static_cast<double>(l) / (2 * n), 1e-15);
            EXPECT_NEAR(hi, 0.5 - 1.0 / n, 1e-15);
        }
        auto [lo, hi] = twist_interval(n, 1);
        EXPECT_GE(lo, hi);
    }
}

TEST(Pairing, BulletFormAgreesOnDenseGrid)
{
    for (int n = 5; n <= 12; ++n) {
        const int den = 8 * n;
        for (int r = -den / 2 + 1; r < den / 2; ++r) {
            for (int l = -(n - 3); l <= n - 3; ++l) {
                const double rho = static_cast<double>(r) / den;
                const PairingCheck c = pairing_valid(n, rho, rho + static_cast<double>(l) / n);
                if (c.reason == "twist-out-of-range")
                    continue;
                EXPECT_TRUE(c.bullet_agrees) << n << " " << rho << " " << l;
            }
        }
    }
}

TEST(EnumeratePairs, TwelvePairs)
{
    const auto pairs = enumerate_pairs(8, 16);
    const std::set<std::pair<int, int>> expected{{5, -3}, {4, -2}, {5, -1}, {3, -1},
                                                 {4, 0},  {5, 1},  {-7, -3}, {-6, -2},
                                                 {-5, -1}, {-7, -1}, {-6, 0}, {-7, 1}};
    std::set<std::pair<int, int>> got;
    for (const auto& p : pairs) {
        EXPECT_EQ(p.den, 16);
        got.insert({p.rho_num, p.sigma_num});
    }
    EXPECT_EQ(pairs.size(), 12u);
    EXPECT_EQ(got, expected);
    EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end(), [](const GridPair& a, const GridPair& b) {
        return std::tie(a.rho_num, a.sigma_num) < std::tie(b.rho_num, b.sigma_num);
    }));
}

TEST(EnumeratePairs, FiveOnlyHasShiftTwo)
{
    // On the grid (1/5) Z no twist falls inside (-1/2, -2/5) or (1/5, 3/10),
    // so the d = 5 list is empty; finer grids show the |l| = 2 restriction.
    for (int den : {5, 20, 40}) {
        const auto pairs = enumerate_pairs(5, den);
        for (const auto& p : pairs) {
            EXPECT_EQ(std::abs(p.shift), 2);
            EXPECT_TRUE(pairing_valid(5, p.rho(), p.sigma()).valid);
        }
        // Oracle: direct scan of the summarized inequalities.
        std::size_t count = 0;
        for (int r = -den / 2; r < den; ++r) {
            for (int l : {-2, 2}) {
                const auto [lo, hi] = twist_interval(5, l);
                const double rho = static_cast<double>(r) / den;
                if (rho > lo + 1e-12 && rho < hi - 1e-12 && rho < 0.3)
                    ++count;
            }
        }
        EXPECT_EQ(pairs.size(), count) << den;
        if (den == 5)
            EXPECT_TRUE(pairs.empty());
        else
            EXPECT_FALSE(pairs.empty());
    }
}

TEST(EnumeratePairs, CoarseGridIsSubset)
{
    const auto fine = enumerate_pairs(8, 16);
    const auto coarse = enumerate_pairs(8, 8);
    for (const auto& c : coarse) {
        const bool found = std::any_of(fine.begin(), fine.end(), [&](const GridPair& f) {
            return f.rho_num == 2 * c.rho_num && f.sigma_num == 2 * c.sigma_num;
        });
        EXPECT_TRUE(found);
    }
    for (const auto& f : fine) {
        if (f.rho_num % 2 == 0 && f.sigma_num % 2 == 0) {
            const bool found = std::any_of(coarse.begin(), coarse.end(), [&](const GridPair& c) {
                return f.rho_num == 2 * c.rho_num && f.sigma_num == 2 * c.sigma_num;
            });
            EXPECT_TRUE(found);
        }
    }
}

TEST(EnumeratePairs, GridTooCoarse)
{
    EXPECT_EQ(code_of([] { (void)enumerate_pairs(8, 7); }), "grid-too-coarse");
}

TEST(AssembleTorus, CountsAndEuler)
{
    const TorusMesh t = assemble_torus({8, 2, -6.0 / 16, 1});
    EXPECT_EQ(t.mesh.vertices().size(), 16u);
    EXPECT_EQ(t.mesh.edges().size(), 48u);
    EXPECT_EQ(t.mesh.faces().size(), 32u);
    EXPECT_EQ(t.mesh.euler_characteristic(), 0);
    EXPECT_TRUE(t.mesh.is_closed());
    EXPECT_TRUE(t.mesh.is_consistently_oriented());
    EXPECT_EQ(t.tags.size(), 32u);
}

TEST(AssembleTorus, NegativeShift)
{
    const TorusMesh t = assemble_torus({8, -4, 5.0 / 16, 1});
    EXPECT_TRUE(verify_embedding(t).ok);
}

TEST(AssembleTorus, InvalidPairing)
{
    EXPECT_EQ(code_of([] { (void)assemble_torus({8, 1, -0.3, 1}); }), "invalid-pairing");
    EXPECT_EQ(code_of([] { (void)assemble_torus({8, 2, -0.2, 1}); }), "invalid-pairing");
    EXPECT_EQ(code_of([] { (void)assemble_torus({4, 2, -0.45, 1}); }), "n-too-small");
}

TEST(VerifyEmbedding, AllTwelveGridToriEmbedded)
{
    for (const auto& p : enumerate_pairs(8, 16)) {
        const TorusMesh t = assemble_torus({8, p.shift, p.rho(), 1});
        const EmbeddingReport r = verify_embedding(t);
        EXPECT_TRUE(r.ok) << p.rho_num << "/" << p.sigma_num;
        EXPECT_TRUE(r.nested);
        EXPECT_TRUE(r.violating.empty());
        EXPECT_EQ(r.euler, 0);
    }
}

TEST(VerifyEmbedding, SwappedPairFails)
{
    const TorusMesh t = assemble_pair(8, -3.0 / 16, -7.0 / 16, 1);
    ASSERT_TRUE(t.mesh.is_closed());
    EXPECT_FALSE(verify_embedding(t).ok);
}

TEST(VerifyEmbedding, SingleAnnulusIsNotClosed)
{
    const AnnulusMesh a = build_annulus({8, -0.3, 1});
    EXPECT_EQ(code_of([&] { (void)verify_embedding(a.mesh); }), "not-closed");
}

TEST(VerifyEmbedding, ClosedFormMatchesBruteForceSmallN)
{
    for (int n = 5; n <= 7; ++n) {
        const int d = 2 * n;
        for (int r = -d / 2; r < d / 2; ++r) {
            for (int s = -d / 2; s < d / 2; ++s) {
                const double rho = static_cast<double>(r) / d, sigma = static_cast<double>(s) / d;
                bool closed_form = false;
                try {
                    closed_form = pairing_valid(n, rho, sigma).valid;
                } catch (const Error&) {
                }
                EXPECT_EQ(closed_form, brute_force_valid(n, rho, sigma))
                    << "n=" << n << " rho=" << r << "/" << d << " sigma=" << s << "/" << d;
            }
        }
    }
}

TEST(AssembleTorus, RotationalSymmetry)
{
    const TorusMesh t = assemble_torus({9, 3, -0.4, 1.3});
    const RigidMotion r = RigidMotion::rotation_z(2 * pi / 9);
    const TriMesh rotated = t.mesh.transformed([&](Point3 p) { return r.apply(p); });
    EXPECT_EQ(face_set(t.mesh, false), face_set(rotated, false));
}

TEST(AssembleTorus, MirrorImage)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        TorusParams p = random_valid(rng);
        if (p.shift < 0)
            p.shift = -p.shift;
        const auto [lo, hi] = twist_interval(p.n, p.shift);
        p.twist = std::clamp(p.twist, lo + 1e-6, hi - 1e-6);
        const TorusParams m{p.n, -p.shift, -p.twist - 1.0 / p.n, p.height};
        ASSERT_TRUE(pairing_valid(m.n, m.twist, m.outer_twist()).valid);
        const TorusMesh a = assemble_torus(p), b = assemble_torus(m);
        EXPECT_EQ(face_set(a.mesh, true), face_set(b.mesh, false));
        const Planar za = torus_modulus_value(p), zb = torus_modulus_value(m);
        EXPECT_NEAR(std::abs(zb + std::conj(za)), 0, 1e-12);
    }
}

TEST(DoubleTorus, LowerSlabClosedAndEmbedded)
{
    const TorusMesh t = double_torus({{8, 2, -6.0 / 16, 1}, 0.5, Half::lower});
    EXPECT_TRUE(t.doubled);
    EXPECT_TRUE(t.mesh.is_closed());
    EXPECT_EQ(t.mesh.euler_characteristic(), 0);
    for (const Point3& v : t.mesh.vertices()) {
        EXPECT_GE(v.z, -1e-12);
        EXPECT_LE(v.z, 1 + 1e-12);
    }
    EXPECT_TRUE(verify_embedding(t).ok);
}

TEST(DoubleTorus, ReflectionSymmetricAcrossCut)
{
    for (Half half : {Half::lower, Half::upper}) {
        const double a = 0.37;
        const TorusMesh t = double_torus({{8, 2, -6.0 / 16, 1}, a, half});
        const TriMesh r = t.mesh.transformed([&](Point3 p) { return Point3{p.x, p.y, 2 * a - p.z}; },
                                             true);
        EXPECT_EQ(face_set(t.mesh, false), face_set(r, false));
        EXPECT_TRUE(verify_embedding(t).ok);
    }
}

TEST(DoubleTorus, HalfHeightIntrinsicHeight)
{
    const TorusParams base{8, 2, -6.0 / 16, 1};
    const TorusMesh t = double_torus({base, 0.5, Half::lower});
    const MeshDevelopment d = develop_torus_mesh(t);
    const double hr = development_height(8, base.twist, 1);
    const double hs = development_height(8, base.outer_twist(), 1);
    EXPECT_NEAR(std::abs(d.period2), hr + hs, 1e-9);
    EXPECT_NEAR(d.modulus.real(), 0, 1e-9);
    EXPECT_NEAR(d.modulus.imag(), torus_modulus_value(base).imag(), 1e-9);
}

TEST(DoubleTorus, CutOutOfRange)
{
    EXPECT_EQ(code_of([] { (void)double_torus({{8, 2, -0.375, 1}, 1.0, Half::lower}); }),
              "cut-out-of-range");
    EXPECT_EQ(code_of([] { (void)double_torus({{8, 2, -0.375, 1}, 0.0, Half::upper}); }),
              "cut-out-of-range");
}
