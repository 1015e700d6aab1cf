#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "orthotree/contexts.hpp"
#include "orthotree/measurement_tree.hpp"
#include "orthotree/ortho_algebra.hpp"
#include "orthotree/quantum_state.hpp"
#include "orthotree/spectral.hpp"

namespace orthotree::io {

using json = nlohmann::json;

// Matrix interchange: {"n": rows, "entries": [[re, im], ...]} row-major.
// The column count is entries.size() / n, so square matrices and the
// rectangular bases inside decompositions share one format.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

// Vector: {"n": length, "components": [[re, im], ...]}.
json wave_vector_to_json(const WaveVector& v);
WaveVector wave_vector_from_json(const json& j);

// Decomposition: {"n": dim, "parts": [{"lambda": id, "basis": matrix}]}.
json decomposition_to_json(const NumDecomposition& d);
NumDecomposition decomposition_from_json(const json& j);

// Density state: matrix fields plus {"validated": true}. Reading always
// re-validates, marker or not.
json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j, double tau_cluster = -1.0);

// Event: {"cells": [indices], "residual": bool}.
json event_to_json(const OrthoEvent& e);
OrthoEvent event_from_json(const json& j, PartitionRef partition);

// Extended Borel set: {"intervals": [[lo, hi, lo_closed, hi_closed]],
// "star": bool}; infinite endpoints use the sentinels "inf" / "-inf".
json borel_to_json(const ExtendedBorelSet& s);
ExtendedBorelSet borel_from_json(const json& j);

json consistency_report_to_json(const ConsistencyReport& report,
                                const ContextFamily& family);

json metaspace_to_json(const Metaspace& m);

// Experiment description: {"contexts": [{"id": string,
// "observable": matrix, "rho": matrix}]}.
std::vector<ExperimentalContext> contexts_from_json(const json& j,
                                                    double tau_cluster = -1.0);

// Probability mass function over context ids: {"id": weight, ...}.
std::vector<double> pmf_from_json(const json& j,
                                  const std::vector<ExperimentalContext>& contexts);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace orthotree::io
