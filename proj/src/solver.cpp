// SPDX-License-Identifier: Apache-2.0
#include "origami/solver.hpp"

#include <cmath>
#include <numbers>

namespace origami {

namespace {

constexpr int real_samples = 1024;
constexpr double endpoint_margin = 1e-9;

double real_part(int n, int shift, double rho)
{
    constexpr double pi = std::numbers::pi;
    const double s = std::sin(pi / n);
    const double sigma = rho + static_cast<double>(shift) / n;
    return (std::sin(2 * pi * rho + pi / n) - std::sin(2 * pi * sigma + pi / n) + 2 * shift * s)
           / (2 * n * s);
}

double imag_part(int n, int shift, double rho, double h)
{
    const double s = std::sin(std::numbers::pi / n);
    const double sigma = rho + static_cast<double>(shift) / n;
    return (development_height(n, rho, h) + development_height(n, sigma, h)) / (2 * n * s);
}

}  // namespace

const char* to_string(SolveKind k)
{
    return k == SolveKind::torus ? "torus" : "double";
}

std::vector<double> solve_real_part(int n, int shift, double x, const Tolerances& tol)
{
    std::vector<double> roots;
    const auto [lo0, hi0] = twist_interval(n, shift);
    const double lo = lo0 + endpoint_margin, hi = hi0 - endpoint_margin;
    if (!(lo < hi))
        return roots;
    auto f = [&](double r) { return real_part(n, shift, r) - x; };
    double a = lo, fa = f(a);
    for (int i = 1; i <= real_samples; ++i) {
        const double b = lo + (hi - lo) * i / real_samples;
        const double fb = f(b);
        if (fa == 0) {
            roots.push_back(a);
        } else if ((fa < 0) != (fb < 0) && fb != 0) {
            double l = a, r = b, fl = fa;
            for (int it = 0; it < 200 && r - l > tol.solver * std::max(1.0, std::abs(l)); ++it) {
                const double m = 0.5 * (l + r);
                const double fm = f(m);
                if ((fm < 0) == (fl < 0)) {
                    l = m;
                    fl = fm;
                } else {
                    r = m;
                }
            }
            roots.push_back(0.5 * (l + r));
        }
        a = b;
        fa = fb;
    }
    if (fa == 0)
        roots.push_back(a);
    return roots;
}

double solve_height(int n, int shift, double rho, double y, const Tolerances& tol)
{
    validate(TorusParams{n, shift, rho, 1.0});
    const double floor = modulus_h0(n, shift, rho).imag();
    if (!(y > floor))
        throw Error("imaginary-part-unreachable",
                    "imaginary part must exceed the h = 0 value " + std::to_string(floor));
    double lo = 0, hi = 1;
    for (int i = 0; imag_part(n, shift, rho, hi) < y; ++i) {
        if (i > 2000)
            throw Error("imaginary-part-unreachable", "height bracket did not close");
        lo = hi;
        hi *= 2;
    }
    for (int it = 0; it < 400 && hi - lo > tol.solver * std::max(1.0, hi); ++it) {
        const double m = 0.5 * (lo + hi);
        if (imag_part(n, shift, rho, m) < y)
            lo = m;
        else
            hi = m;
    }
    return 0.5 * (lo + hi);
}

SolveResult solve_pure_imaginary(double y, TorusParams base, const Tolerances& tol,
                                 double residual_tol)
{
    if (!(y > 0) || !std::isfinite(y))
        throw Error("not-upper-half-plane", "target must have positive imaginary part");
    validate(base);
    const double L = 2 * base.n * std::sin(std::numbers::pi / base.n);
    auto full = [&](double h) {
        return 2 * (development_height(base.n, base.twist, h)
                    + development_height(base.n, base.outer_twist(), h)) / L;
    };
    while (!(y < full(base.height)))
        base.height *= 2;
    const double h = base.height;
    const double a = y * h / full(h);

    SolveResult res;
    res.kind = SolveKind::doubled;
    res.doubled = DoubleSpec{base, a, Half::lower};
    res.torus = base;
    res.target = Planar(0, y);
    const TorusMesh mesh = double_torus(res.doubled, tol);
    res.embedding = verify_embedding(mesh, tol);
    res.achieved = modulus_from_development(mesh, tol);
    res.residual = std::abs(res.achieved - res.target);
    if (!res.embedding.ok || !(res.residual <= residual_tol))
        throw Error("target-unreached", "doubled torus failed verification");
    return res;
}

SolveResult solve_modulus(const SolveRequest& req)
{
    Planar target = req.target;
    if (!(target.imag() > 0) || !std::isfinite(target.real()) || !std::isfinite(target.imag()))
        throw Error("not-upper-half-plane", "target must have positive imaginary part");
    if (req.n_min < 5 || req.n_max < req.n_min)
        throw Error("invalid-request", "need 5 <= nMin <= nMax");
    if (req.allow_reduction)
        target = reduce_modulus(target).normalized;
    if (std::abs(target.real()) <= req.tol)
        return solve_pure_imaginary(target.imag(), default_double_base(), req.tolerances, req.tol);

    for (int n = req.n_min; n <= req.n_max; ++n) {
        for (int a = 2; a <= n - 3; ++a) {
            for (int shift : {a, -a}) {
                for (double rho : solve_real_part(n, shift, target.real(), req.tolerances)) {
                    double h = 0;
                    try {
                        h = solve_height(n, shift, rho, target.imag(), req.tolerances);
                    } catch (const Error&) {
                        continue;
                    }
                    SolveResult res;
                    res.kind = SolveKind::torus;
                    res.torus = TorusParams{n, shift, rho, h};
                    res.target = target;
                    try {
                        const TorusMesh mesh = assemble_torus(res.torus, req.tolerances);
                        res.embedding = verify_embedding(mesh, req.tolerances);
                        res.achieved = modulus_from_development(mesh, req.tolerances);
                    } catch (const Error&) {
                        continue;
                    }
                    res.residual = std::abs(res.achieved - target);
                    if (res.embedding.ok && res.residual <= req.tol)
                        return res;
                }
            }
        }
    }
    throw Error("target-unreached", "target-unreached (increase nMax)");
}

}  // namespace origami
