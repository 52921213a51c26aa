// SPDX-License-Identifier: Apache-2.0
//
// origami-tori: build, verify, export and solve for flat tori made of
// antiprism bands.
//
// Exit status: 0 success, 1 validation failure, 2 usage error.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "origami/annulus.hpp"
#include "origami/io.hpp"
#include "origami/moduli.hpp"
#include "origami/report.hpp"
#include "origami/solver.hpp"
#include "origami/torus.hpp"

using namespace origami;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Global {
    double tol = 1e-9;
    std::string out;
    std::string format;
    bool json = false;
    double scale = 20;
    bool fundamental = false;

    [[nodiscard]] Tolerances tolerances() const
    {
        Tolerances t;
        t.weld = tol;
        t.geom = tol;
        return t;
    }
};

/// Accepts decimals, fractions "p/q" and angles "k pi/m" (read as 2 pi rho).
double parse_number(std::string text, bool twist)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    }
    const auto pos = s.find("pi");
    if (pos != std::string::npos) {
        if (!twist)
            throw Usage("unexpected angle '" + text + "'");
        std::string num = s.substr(0, pos);
        std::string rest = s.substr(pos + 2);
        double k = num.empty() || num == "+" ? 1 : num == "-" ? -1 : parse_number(num, false);
        double den = 1;
        if (!rest.empty()) {
            if (rest[0] != '/')
                throw Usage("cannot parse angle '" + text + "'");
            den = parse_number(rest.substr(1), false);
        }
        const double rho = k / (2 * den);
        std::cerr << "note: twist '" << text << "' read as the angle 2*pi*rho, rho = " << rho
                  << "\n";
        return rho;
    }
    const auto slash = s.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const double v = std::stod(s, &used);
            if (used != s.size())
                throw Usage("");
            return v;
        }
        const double p = std::stod(s.substr(0, slash), &used);
        if (used != slash)
            throw Usage("");
        const std::string qs = s.substr(slash + 1);
        const double q = std::stod(qs, &used);
        if (used != qs.size() || q == 0)
            throw Usage("");
        return p / q;
    } catch (const std::exception&) {
        throw Usage("cannot parse number '" + text + "'");
    }
}

/// Torus parameters from --params key=value lists and individual flags.
struct ParamFlags {
    std::string params;
    std::optional<int> n;
    std::optional<int> l;
    std::string rho;
    std::string sigma;
    std::string h;

    void add(CLI::App* cmd)
    {
        cmd->add_option("--params", params, "key=value list, e.g. n=8,l=2,rho=-3/8,h=1");
        cmd->add_option("--n", n, "polygon size");
        cmd->add_option("--l", l, "signed shift l (sigma = rho + l/n)");
        cmd->add_option("--rho", rho, "inner twist (decimal, p/q or k pi/m)");
        cmd->add_option("--sigma", sigma, "outer twist, alternative to --l");
        cmd->add_option("--h", h, "height");
    }

    [[nodiscard]] std::map<std::string, std::string> merged() const
    {
        std::map<std::string, std::string> kv;
        std::stringstream ss(params);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty())
                continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw Usage("--params entries must look like key=value, got '" + item + "'");
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
        if (n)
            kv["n"] = std::to_string(*n);
        if (l)
            kv["l"] = std::to_string(*l);
        if (!rho.empty())
            kv["rho"] = rho;
        if (!sigma.empty())
            kv["sigma"] = sigma;
        if (!h.empty())
            kv["h"] = h;
        for (const auto& [k, v] : kv) {
            if (k != "n" && k != "l" && k != "rho" && k != "sigma" && k != "h")
                throw Usage("unknown parameter '" + k + "'");
        }
        return kv;
    }

    [[nodiscard]] AnnulusParams annulus() const
    {
        auto kv = merged();
        if (!kv.count("n") || !kv.count("rho"))
            throw Usage("annulus needs n and rho");
        AnnulusParams p;
        p.n = static_cast<int>(parse_number(kv["n"], false));
        p.twist = parse_number(kv["rho"], true);
        p.height = kv.count("h") ? parse_number(kv["h"], false) : 1.0;
        return p;
    }

    [[nodiscard]] TorusParams torus() const
    {
        auto kv = merged();
        if (!kv.count("n") || !kv.count("rho") || (!kv.count("l") && !kv.count("sigma")))
            throw Usage("torus needs n, rho and l (or sigma)");
        TorusParams p;
        p.n = static_cast<int>(parse_number(kv["n"], false));
        p.twist = parse_number(kv["rho"], true);
        p.height = kv.count("h") ? parse_number(kv["h"], false) : 1.0;
        if (kv.count("l")) {
            p.shift = static_cast<int>(parse_number(kv["l"], false));
        } else {
            const double sigma = parse_number(kv["sigma"], true);
            const PairingCheck c = pairing_valid(p.n, p.twist, sigma);
            p.shift = c.shift;
            if (c.reason == "boundaries-differ")
                throw Error("invalid-pairing", "sigma - rho is not a multiple of 1/n");
        }
        return p;
    }
};

void print(const Global& g, const Json& j)
{
    if (g.json) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) {
        if (v.is_string())
            std::cout << k << ": " << v.get<std::string>() << "\n";
        else
            std::cout << k << ": " << v.dump() << "\n";
    }
}

std::string format_for(const Global& g, const std::string& fallback)
{
    if (!g.format.empty())
        return g.format;
    const auto dot = g.out.rfind('.');
    if (dot != std::string::npos)
        return g.out.substr(dot + 1);
    return fallback;
}

void write_geometry(const Global& g, const TriMesh& mesh, const std::function<CreasePattern()>& cp,
                    Json& report)
{
    if (g.out.empty())
        return;
    const std::string fmt = format_for(g, "obj");
    if (fmt == "svg") {
        write_file_atomic(g.out, to_svg(cp(), {g.scale, g.fundamental}));
    } else if (fmt == "obj" || fmt == "stl") {
        export_mesh(mesh, parse_mesh_format(fmt), g.out);
    } else {
        throw Usage("unsupported --format '" + fmt + "' (obj, stl, svg)");
    }
    report["written"] = g.out;
}

double max_flatness_defect(const TriMesh& mesh)
{
    double worst = 0;
    for (std::uint32_t v = 0; v < mesh.vertices().size(); ++v)
        worst = std::max(worst, std::abs(angle_at_vertex(mesh, v) - 2 * std::numbers::pi));
    return worst;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Origami embeddings of flat tori built from antiprism bands"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    if (const char* env = std::getenv("ORIGAMI_TORI_TOL")) {
        try {
            g.tol = parse_number(env, false);
        } catch (const Usage&) {
            std::cerr << "error: ORIGAMI_TORI_TOL is not a number\n";
            return 2;
        }
    }
    app.add_option("--tol", g.tol, "geometric tolerance (default 1e-9 or $ORIGAMI_TORI_TOL)");
    app.add_option("--out", g.out, "output file");
    app.add_option("--format", g.format, "output format: obj, stl, svg, csv");
    app.add_flag("--json", g.json, "machine-readable report");
    app.add_option("--scale", g.scale, "SVG millimetres per unit");
    app.add_flag("--fundamental", g.fundamental, "draw the fundamental parallelogram in SVG");

    // annulus
    ParamFlags annulus_flags;
    std::optional<double> cut_at;
    auto* annulus_cmd = app.add_subcommand("annulus", "build one band and export it");
    annulus_flags.add(annulus_cmd);
    annulus_cmd->add_option("--cut", cut_at, "report the slabs cut at this height");

    // torus
    ParamFlags torus_flags;
    auto* torus_cmd = app.add_subcommand("torus", "assemble a paired-band torus and export it");
    torus_flags.add(torus_cmd);

    // enumerate-pairs
    int en_n = 8, en_den = 16;
    auto* enum_cmd = app.add_subcommand("enumerate-pairs", "list valid (rho, sigma) grid pairs");
    enum_cmd->add_option("--n", en_n, "polygon size")->required();
    enum_cmd->add_option("--den", en_den, "grid denominator")->required();

    // modulus
    ParamFlags mod_flags;
    auto* mod_cmd = app.add_subcommand("modulus", "closed-form and developed modulus");
    mod_flags.add(mod_cmd);

    // solve
    double re = 0, im = 0;
    int nmax = 400, nmin = 5;
    bool reduce = false;
    auto* solve_cmd = app.add_subcommand("solve", "find parameters for a target modulus");
    solve_cmd->add_option("--re", re, "target real part")->required();
    solve_cmd->add_option("--im", im, "target imaginary part")->required();
    solve_cmd->add_option("--nmax", nmax, "largest n to try");
    solve_cmd->add_option("--nmin", nmin, "smallest n to try");
    solve_cmd->add_flag("--reduce", reduce, "move the target into the fundamental domain first");

    // double
    ParamFlags dbl_flags;
    double dbl_cut = 0.5;
    std::string dbl_half = "lower";
    auto* dbl_cmd = app.add_subcommand("double", "double the slab of a torus cut at height a");
    dbl_flags.add(dbl_cmd);
    dbl_cmd->add_option("--cut", dbl_cut, "cut height a, 0 < a < h");
    dbl_cmd->add_option("--half", dbl_half, "lower or upper slab")
        ->check(CLI::IsMember({"lower", "upper"}));

    // atlas
    std::vector<int> at_n;
    int at_den = 0;
    std::vector<double> at_h{1.0};
    std::vector<std::string> at_tuples;
    auto* atlas_cmd = app.add_subcommand("atlas", "tabulate moduli over a parameter grid (CSV)");
    atlas_cmd->add_option("--n", at_n, "polygon sizes")->delimiter(',');
    atlas_cmd->add_option("--den", at_den, "grid denominator for rho and sigma");
    atlas_cmd->add_option("--h", at_h, "heights")->delimiter(',');
    atlas_cmd->add_option("--tuple", at_tuples, "explicit n:l:rho tuple (repeatable)");

    // verify
    ParamFlags ver_flags;
    std::string ver_mesh;
    auto* verify_cmd = app.add_subcommand("verify", "check closedness, flatness and embedding");
    ver_flags.add(verify_cmd);
    verify_cmd->add_option("--mesh", ver_mesh, "verify an OBJ file instead of parameters");

    // limit-curves
    int lc_samples = 512;
    auto* lc_cmd = app.add_subcommand("limit-curves", "emit the boundary cycloids (CSV or SVG)");
    lc_cmd->add_option("--samples", lc_samples, "segments per curve");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        const Tolerances tol = g.tolerances();
        tol.validate();

        if (*annulus_cmd) {
            const AnnulusParams p = annulus_flags.annulus();
            const AnnulusMesh a = build_annulus(p, tol);
            const DevelopmentStrip d = develop_annulus(a.params);
            Json r{{"n", p.n},
                   {"rho", a.params.twist},
                   {"h", p.height},
                   {"class", to_string(classify_twist(p.n, p.twist))},
                   {"faces", a.mesh.faces().size()},
                   {"vertices", a.mesh.vertices().size()},
                   {"width", d.width},
                   {"height", d.height},
                   {"top_offset", d.top_offset}};
            if (cut_at) {
                const auto [lo, hi] = cut_annulus(a.params, *cut_at, tol);
                r["lower_height"] = lo.development.height;
                r["upper_height"] = hi.development.height;
            }
            write_geometry(g, a.mesh, [&] { return crease_pattern(a, tol); }, r);
            print(g, r);
            return 0;
        }

        if (*torus_cmd) {
            const TorusParams p = torus_flags.torus();
            const TorusMesh t = assemble_torus(p, tol);
            Json r{{"params", to_json(p)},
                   {"faces", t.mesh.faces().size()},
                   {"vertices", t.mesh.vertices().size()},
                   {"edges", t.mesh.edges().size()},
                   {"euler", t.mesh.euler_characteristic()}};
            write_geometry(g, t.mesh, [&] { return crease_pattern(t, tol); }, r);
            print(g, r);
            return 0;
        }

        if (*enum_cmd) {
            const auto pairs = enumerate_pairs(en_n, en_den);
            if (g.json) {
                Json arr = Json::array();
                for (const auto& p : pairs)
                    arr.push_back(to_json(p));
                std::cout << arr.dump(2) << "\n";
            } else {
                for (const auto& p : pairs) {
                    std::cout << "(" << p.rho_num << "/" << p.den << ", " << p.sigma_num << "/"
                              << p.den << ")  l=" << p.shift << "\n";
                }
                std::cout << pairs.size() << " pairs\n";
            }
            return 0;
        }

        if (*mod_cmd) {
            const TorusParams p = mod_flags.torus();
            const Modulus m = torus_modulus(p);
            const Planar dev = modulus_from_development(assemble_torus(p, tol), tol);
            Json r{{"params", to_json(p)},
                   {"modulus", to_json(m)},
                   {"development", to_json(dev)},
                   {"agreement", std::abs(dev - m.value)}};
            print(g, r);
            return 0;
        }

        if (*solve_cmd) {
            SolveRequest req;
            req.target = Planar(re, im);
            req.n_min = nmin;
            req.n_max = nmax;
            req.tol = g.tol;
            req.allow_reduction = reduce;
            req.tolerances = tol;
            const SolveResult res = solve_modulus(req);
            Json r = to_json(res);
            if (!g.out.empty()) {
                const TorusMesh mesh = res.kind == SolveKind::doubled
                                           ? double_torus(res.doubled, tol)
                                           : assemble_torus(res.torus, tol);
                write_geometry(g, mesh.mesh, [&] { return crease_pattern(mesh, tol); }, r);
            }
            print(g, r);
            return 0;
        }

        if (*dbl_cmd) {
            const TorusParams p = dbl_flags.torus();
            const DoubleSpec spec{p, dbl_cut, dbl_half == "upper" ? Half::upper : Half::lower};
            const TorusMesh t = double_torus(spec, tol);
            const EmbeddingReport rep = verify_embedding(t, tol);
            Json r{{"params", to_json(p)},
                   {"cut", dbl_cut},
                   {"half", dbl_half},
                   {"faces", t.mesh.faces().size()},
                   {"vertices", t.mesh.vertices().size()},
                   {"modulus", to_json(modulus_from_development(t, tol))},
                   {"embedding", to_json(rep)}};
            write_geometry(g, t.mesh, [&] { return crease_pattern(t, tol); }, r);
            print(g, r);
            return rep.ok ? 0 : 1;
        }

        if (*atlas_cmd) {
            AtlasGrid grid;
            grid.ns = at_n;
            grid.den = at_den;
            grid.heights = at_h;
            for (const std::string& t : at_tuples) {
                std::stringstream ss(t);
                std::string a, b, c;
                if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
                    throw Usage("--tuple must look like n:l:rho");
                grid.explicit_tuples.push_back({static_cast<int>(parse_number(a, false)),
                                                static_cast<int>(parse_number(b, false)),
                                                parse_number(c, true)});
            }
            if (grid.ns.empty() && grid.explicit_tuples.empty())
                throw Usage("atlas needs --n/--den or --tuple");
            const Atlas atlas = g.out.empty() ? compute_atlas(grid) : emit_atlas(grid, g.out);
            if (g.out.empty() && !g.json)
                std::cout << atlas_csv(atlas);
            Json r = to_json(atlas);
            if (!g.out.empty())
                r["written"] = g.out;
            if (g.json || !g.out.empty())
                print(g, r);
            else
                std::cerr << atlas.rows.size() << " rows, " << atlas.invalid << " invalid skipped\n";
            return 0;
        }

        if (*verify_cmd) {
            TriMesh mesh;
            std::optional<TorusMesh> torus;
            if (!ver_mesh.empty()) {
                mesh = read_obj(ver_mesh, tol);
            } else {
                torus = assemble_torus(ver_flags.torus(), tol);
                mesh = torus->mesh;
            }
            Json r;
            r["closed"] = mesh.is_closed();
            if (!mesh.is_closed()) {
                r["ok"] = false;
                print(g, r);
                return 1;
            }
            const double defect = max_flatness_defect(mesh);
            const EmbeddingReport rep = torus ? verify_embedding(*torus, tol)
                                              : verify_embedding(mesh, tol);
            r["euler"] = mesh.euler_characteristic();
            r["flat"] = defect <= tol.geom;
            r["max_angle_defect"] = defect;
            r["embedded"] = rep.ok;
            r["embedding"] = to_json(rep);
            r["ok"] = rep.ok && defect <= tol.geom;
            print(g, r);
            return r["ok"].get<bool>() ? 0 : 1;
        }

        if (*lc_cmd) {
            if (lc_samples < 2)
                throw Usage("--samples must be at least 2");
            const std::pair<BoundaryCurve, const char*> curves[] = {
                {BoundaryCurve::axis_segment, "axis_segment"},
                {BoundaryCurve::small_cycloid, "small_cycloid"},
                {BoundaryCurve::left_cusp_cycloid, "left_cusp_cycloid"},
                {BoundaryCurve::right_cusp_cycloid, "right_cusp_cycloid"},
                {BoundaryCurve::edge_cycloid, "edge_cycloid"},
            };
            const std::string fmt = format_for(g, "csv");
            std::string text;
            if (fmt == "csv") {
                text = "curve,s,re,im\r\n";
                char buf[256];
                for (const auto& [c, name] : curves) {
                    for (int i = 0; i <= lc_samples; ++i) {
                        const double s = static_cast<double>(i) / lc_samples;
                        const Planar z = boundary_point(c, s);
                        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g\r\n", name, s,
                                      z.real(), z.imag());
                        text += buf;
                    }
                }
            } else if (fmt == "svg") {
                CreasePattern cp;
                cp.caption = "boundary cycloids of the limit-curve image";
                for (const auto& [c, name] : curves) {
                    const auto poly = boundary_polyline(c, lc_samples);
                    for (std::size_t i = 0; i + 1 < poly.size(); ++i)
                        cp.outline.push_back({poly[i], poly[i + 1], ""});
                }
                text = to_svg(cp, {g.scale * 5, false});
            } else {
                throw Usage("limit-curves supports csv or svg");
            }
            if (g.out.empty()) {
                std::cout << text;
            } else {
                write_file_atomic(g.out, text);
                print(g, Json{{"written", g.out}});
            }
            return 0;
        }
    } catch (const Usage& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const Error& e) {
        if (g.json)
            std::cout << Json{{"error", e.code()}, {"message", e.what()}}.dump(2) << "\n";
        else
            std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help();
    return 2;
}
