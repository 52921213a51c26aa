// SPDX-License-Identifier: Apache-2.0
//
// JSON renderings of library results for machine-readable CLI output.
#pragma once

#include "json.hpp"

#include "origami/io.hpp"
#include "origami/moduli.hpp"
#include "origami/solver.hpp"
#include "origami/torus.hpp"

namespace origami {

using Json = nlohmann::ordered_json;

Json to_json(Planar z);
Json to_json(const TorusParams& p);
Json to_json(const GridPair& p);
Json to_json(const PairingCheck& c);
Json to_json(const Modulus& m);
Json to_json(const EmbeddingReport& r);
Json to_json(const SolveResult& r);
Json to_json(const Atlas& a);

}  // namespace origami
