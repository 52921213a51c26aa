// SPDX-License-Identifier: Apache-2.0
#include "origami/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

namespace origami {

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("io-error", "cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.close();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error("io-error", "failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("io-error", "cannot rename onto " + path.string());
    }
}

//---------------------------------------------------------------------------//
// Meshes
//---------------------------------------------------------------------------//

MeshFormat parse_mesh_format(const std::string& name)
{
    if (name == "obj")
        return MeshFormat::obj;
    if (name == "stl")
        return MeshFormat::stl;
    throw Error("unknown-format", "mesh format must be obj or stl, got '" + name + "'");
}

std::string to_obj(const TriMesh& mesh)
{
    std::string out;
    char buf[128];
    for (const Point3& p : mesh.vertices()) {
        std::snprintf(buf, sizeof buf, "v %.12g %.12g %.12g\n", p.x, p.y, p.z);
        out += buf;
    }
    for (const Face& f : mesh.faces()) {
        std::snprintf(buf, sizeof buf, "f %u %u %u\n", f[0] + 1, f[1] + 1, f[2] + 1);
        out += buf;
    }
    return out;
}

namespace {

template <class T>
void append_le(std::string& out, T value)
{
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(std::begin(bytes), std::end(bytes));
    out.append(bytes, sizeof(T));
}

}  // namespace

std::string to_stl(const TriMesh& mesh)
{
    std::string out(80, '\0');
    const char header[] = "origami-tori binary STL";
    std::memcpy(out.data(), header, sizeof header - 1);
    append_le<std::uint32_t>(out, static_cast<std::uint32_t>(mesh.faces().size()));
    for (std::size_t f = 0; f < mesh.faces().size(); ++f) {
        const auto t = mesh.triangle(f);
        Vec3 n = cross(t[1] - t[0], t[2] - t[0]);
        n = (1.0 / norm(n)) * n;
        for (double c : {n.x, n.y, n.z})
            append_le<float>(out, static_cast<float>(c));
        for (const Point3& p : t) {
            for (double c : {p.x, p.y, p.z})
                append_le<float>(out, static_cast<float>(c));
        }
        append_le<std::uint16_t>(out, 0);
    }
    return out;
}

void export_mesh(const TriMesh& mesh, MeshFormat format, const std::filesystem::path& path)
{
    write_file_atomic(path, format == MeshFormat::obj ? to_obj(mesh) : to_stl(mesh));
}

TriMesh parse_obj(const std::string& text, const Tolerances& tol)
{
    std::vector<Point3> verts;
    std::vector<Face> faces;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Point3 p;
            if (!(ls >> p.x >> p.y >> p.z))
                throw Error("parse-error", "malformed vertex record: " + line);
            verts.push_back(p);
        } else if (tag == "f") {
            std::vector<std::uint32_t> idx;
            std::string tok;
            while (ls >> tok) {
                const long i = std::stol(tok.substr(0, tok.find('/')));
                const long resolved = i < 0 ? static_cast<long>(verts.size()) + i : i - 1;
                if (resolved < 0)
                    throw Error("parse-error", "bad face index: " + line);
                idx.push_back(static_cast<std::uint32_t>(resolved));
            }
            if (idx.size() < 3)
                throw Error("parse-error", "face with fewer than three corners: " + line);
            for (std::size_t k = 1; k + 1 < idx.size(); ++k)
                faces.push_back({idx[0], idx[k], idx[k + 1]});
        }
    }
    return TriMesh(std::move(verts), std::move(faces), tol);
}

TriMesh read_obj(const std::filesystem::path& path, const Tolerances& tol)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("io-error", "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_obj(ss.str(), tol);
}

//---------------------------------------------------------------------------//
// Crease patterns
//---------------------------------------------------------------------------//

const char* to_string(FoldKind k)
{
    switch (k) {
    case FoldKind::mountain: return "mountain";
    case FoldKind::valley: return "valley";
    case FoldKind::flat: return "flat";
    }
    return "unknown";
}

FoldKind classify_fold(const TriMesh& mesh, std::size_t edge, const Tolerances& tol)
{
    const double s = fold_sign(mesh, edge);
    if (std::abs(s) <= tol.geom)
        return FoldKind::flat;
    return s > 0 ? FoldKind::mountain : FoldKind::valley;
}

namespace {

CreasePattern build_pattern(const TriMesh& mesh, const Unfolding& unf,
                            const std::function<bool(std::uint32_t, std::uint32_t)>& cut,
                            const Tolerances& tol)
{
    CreasePattern cp;
    for (std::size_t i = 0; i < mesh.edges().size(); ++i) {
        const Edge& e = mesh.edges()[i];
        const std::uint32_t f = e.faces[0];
        const Planar a = image_of(mesh, unf, f, e.a), b = image_of(mesh, unf, f, e.b);
        if (e.faces.size() == 1) {
            cp.outline.push_back({a, b, ""});
            continue;
        }
        const std::uint32_t g = e.faces[1];
        FoldSegment fold{a, b, classify_fold(mesh, i, tol), i, cut(f, g)};
        if (fold.on_cut) {
            const std::string label = "e" + std::to_string(i);
            cp.outline.push_back({a, b, label});
            cp.outline.push_back({image_of(mesh, unf, g, e.a), image_of(mesh, unf, g, e.b), label});
        }
        cp.folds.push_back(fold);
    }
    return cp;
}

}  // namespace

CreasePattern crease_pattern(const AnnulusMesh& annulus, const Tolerances& tol)
{
    const int n = annulus.params.n;
    auto seam = [n](std::uint32_t f, std::uint32_t g) {
        const int a = AnnulusMesh::column_of(f), b = AnnulusMesh::column_of(g);
        return std::min(a, b) == 0 && std::max(a, b) == n - 1;
    };
    const Unfolding unf = unfold(annulus.mesh, 0, 0, 1, seam, tol);
    CreasePattern cp = build_pattern(annulus.mesh, unf, seam, tol);
    std::ostringstream cap;
    cap << "annulus n=" << n << " rho=" << annulus.params.twist << " h=" << annulus.params.height;
    cp.caption = cap.str();
    return cp;
}

CreasePattern crease_pattern(const TorusMesh& torus, const Tolerances& tol)
{
    const MeshDevelopment dev = develop_torus_mesh(torus, tol);
    CreasePattern cp = build_pattern(
        torus.mesh, dev.unfolding,
        [&torus](std::uint32_t f, std::uint32_t g) { return torus.crosses_cut(f, g); }, tol);
    cp.fundamental = {dev.anchor, dev.anchor + dev.period1, dev.anchor + dev.period1 + dev.period2,
                      dev.anchor + dev.period2};
    std::ostringstream cap;
    cap << (torus.doubled ? "doubled torus" : "torus") << " n=" << torus.n
        << " identification shift l=" << torus.shift;
    cp.caption = cap.str();
    return cp;
}

std::string to_svg(const CreasePattern& cp, const SvgOptions& opt)
{
    double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
    double xmax = -xmin, ymax = -xmin;
    auto grow = [&](Planar p) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    };
    for (const auto& s : cp.outline) {
        grow(s.a);
        grow(s.b);
    }
    for (const auto& s : cp.folds) {
        grow(s.a);
        grow(s.b);
    }
    if (opt.fundamental) {
        for (Planar p : cp.fundamental)
            grow(p);
    }
    if (!std::isfinite(xmin))
        xmin = xmax = ymin = ymax = 0;

    const double margin = 10;   // mm
    const double k = opt.scale;
    const double width = (xmax - xmin) * k + 2 * margin;
    const double height = (ymax - ymin) * k + 2 * margin + 8;
    auto X = [&](Planar p) { return (p.real() - xmin) * k + margin; };
    auto Y = [&](Planar p) { return (ymax - p.imag()) * k + margin; };

    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(4);
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "mm\" height=\"" << height << "mm\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<!-- scale " << k << " mm per unit -->\n";
    auto line = [&](Planar a, Planar b, const char* cls, const char* stroke, double w,
                    const char* dash) {
        s << "<line class=\"" << cls << "\" x1=\"" << X(a) << "\" y1=\"" << Y(a) << "\" x2=\""
          << X(b) << "\" y2=\"" << Y(b) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << w
          << '"';
        if (dash)
            s << " stroke-dasharray=\"" << dash << '"';
        s << "/>\n";
    };
    for (const auto& f : cp.folds) {
        if (f.on_cut)
            continue;
        switch (f.kind) {
        case FoldKind::mountain: line(f.a, f.b, "mountain", "red", 0.3, nullptr); break;
        case FoldKind::valley: line(f.a, f.b, "valley", "blue", 0.3, nullptr); break;
        case FoldKind::flat: line(f.a, f.b, "flat", "gray", 0.15, "1,1"); break;
        }
    }
    for (const auto& o : cp.outline) {
        line(o.a, o.b, "outline", "black", 0.4, nullptr);
        if (!o.label.empty()) {
            const Planar m = 0.5 * (o.a + o.b);
            s << "<text class=\"label\" x=\"" << X(m) << "\" y=\"" << Y(m)
              << "\" font-size=\"2.5\" text-anchor=\"middle\">" << o.label << "</text>\n";
        }
    }
    if (opt.fundamental && cp.fundamental.size() == 4) {
        s << "<polygon class=\"fundamental\" fill=\"none\" stroke=\"red\" stroke-width=\"0.3\" "
             "stroke-dasharray=\"2,1\" points=\"";
        for (Planar p : cp.fundamental)
            s << X(p) << ',' << Y(p) << ' ';
        s << "\"/>\n";
    }
    s << "<text class=\"caption\" x=\"" << margin << "\" y=\"" << height - 4
      << "\" font-size=\"3\">" << cp.caption << "</text>\n</svg>\n";
    return s.str();
}

//---------------------------------------------------------------------------//
// Atlas
//---------------------------------------------------------------------------//

Atlas compute_atlas(const AtlasGrid& grid)
{
    Atlas atlas;
    std::vector<double> heights;
    std::size_t bad_heights = 0;
    for (double h : grid.heights) {
        if (h > 0 && std::isfinite(h))
            heights.push_back(h);
        else
            ++bad_heights;
    }

    auto add = [&](int n, int shift, double rho) {
        for (double h : heights) {
            const TorusParams p{n, shift, rho, h};
            const Planar z = torus_modulus_value(p);
            atlas.rows.push_back({n, shift, rho, h, z, reduce_modulus(z).normalized});
        }
    };

    const std::set<int> ns(grid.ns.begin(), grid.ns.end());
    if (grid.den > 0) {
        for (int n : ns) {
            // Canonical representatives k/den in [-1/2, 1/2).
            const int k0 = -(grid.den / 2), k1 = (grid.den - 1) / 2;
            const std::size_t total = static_cast<std::size_t>(k1 - k0 + 1) * (k1 - k0 + 1);
            std::size_t valid = 0;
            if (n >= 5 && grid.den >= n) {
                const auto pairs = enumerate_pairs(n, grid.den);
                valid = pairs.size();
                for (const GridPair& gp : pairs)
                    add(n, gp.shift, gp.rho());
            }
            atlas.invalid += (total - valid) * heights.size() + total * bad_heights;
        }
    }
    for (const auto& t : grid.explicit_tuples) {
        bool ok = true;
        try {
            validate(TorusParams{t.n, t.shift, t.rho, 1.0});
        } catch (const Error&) {
            ok = false;
        }
        if (ok)
            add(t.n, t.shift, t.rho);
        else
            atlas.invalid += heights.size();
        atlas.invalid += bad_heights;
    }

    std::stable_sort(atlas.rows.begin(), atlas.rows.end(), [](const AtlasRow& a, const AtlasRow& b) {
        const double sa = a.rho + static_cast<double>(a.shift) / a.n;
        const double sb = b.rho + static_cast<double>(b.shift) / b.n;
        return std::tie(a.n, a.rho, sa, a.h) < std::tie(b.n, b.rho, sb, b.h);
    });
    return atlas;
}

std::string atlas_csv(const Atlas& atlas)
{
    std::string out = "n,l,rho,h,re,im,norm_re,norm_im\r\n";
    char buf[512];
    for (const AtlasRow& r : atlas.rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\r\n", r.n, r.shift,
                      r.rho, r.h, r.value.real(), r.value.imag(), r.normalized.real(),
                      r.normalized.imag());
        out += buf;
    }
    return out;
}

Atlas emit_atlas(const AtlasGrid& grid, const std::filesystem::path& path)
{
    Atlas atlas = compute_atlas(grid);
    write_file_atomic(path, atlas_csv(atlas));
    return atlas;
}

}  // namespace origami
