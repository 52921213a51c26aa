// SPDX-License-Identifier: Apache-2.0
#include "origami/report.hpp"

namespace origami {

Json to_json(Planar z)
{
    return Json{{"re", z.real()}, {"im", z.imag()}};
}

Json to_json(const TorusParams& p)
{
    return Json{{"n", p.n},         {"l", p.shift},          {"rho", p.twist},
                {"sigma", p.outer_twist()}, {"h", p.height}};
}

Json to_json(const GridPair& p)
{
    return Json{{"rho", p.rho()},
                {"sigma", p.sigma()},
                {"rho_frac", std::to_string(p.rho_num) + "/" + std::to_string(p.den)},
                {"sigma_frac", std::to_string(p.sigma_num) + "/" + std::to_string(p.den)},
                {"l", p.shift}};
}

Json to_json(const PairingCheck& c)
{
    return Json{{"valid", c.valid},
                {"l", c.shift},
                {"reason", c.reason},
                {"case_form", c.bullet_form},
                {"case_form_agrees", c.bullet_agrees}};
}

Json to_json(const Modulus& m)
{
    return Json{{"value", to_json(m.value)},
                {"normalized", to_json(m.normalized)},
                {"transform", m.transform},
                {"chain", m.chain}};
}

Json to_json(const EmbeddingReport& r)
{
    Json pairs = Json::array();
    for (const auto& [f, g] : r.violating)
        pairs.push_back({f, g});
    return Json{{"ok", r.ok},           {"closed", r.closed},
                {"oriented", r.oriented}, {"nested", r.nested},
                {"euler", r.euler},     {"violating_face_pairs", pairs}};
}

Json to_json(const SolveResult& r)
{
    Json j{{"kind", to_string(r.kind)}, {"params", to_json(r.torus)}};
    if (r.kind == SolveKind::doubled) {
        j["cut"] = r.doubled.cut;
        j["half"] = r.doubled.half == Half::lower ? "lower" : "upper";
    }
    j["target"] = to_json(r.target);
    j["achieved"] = to_json(r.achieved);
    j["residual"] = r.residual;
    j["embedded"] = r.embedding.ok;
    return j;
}

Json to_json(const Atlas& a)
{
    Json rows = Json::array();
    for (const AtlasRow& r : a.rows)
        rows.push_back({{"n", r.n},
                        {"l", r.shift},
                        {"rho", r.rho},
                        {"h", r.h},
                        {"re", r.value.real()},
                        {"im", r.value.imag()},
                        {"norm_re", r.normalized.real()},
                        {"norm_im", r.normalized.imag()}});
    return Json{{"rows", rows}, {"count", a.rows.size()}, {"invalid", a.invalid}};
}

}  // namespace origami
