#include "orthotree/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "orthotree/error.hpp"

namespace orthotree::io {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error("complex entry must be a [re, im] pair");
    }
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

json endpoint_to_json(double v) {
    if (v == kInf) {
        return "inf";
    }
    if (v == -kInf) {
        return "-inf";
    }
    return v;
}

double endpoint_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") {
            return kInf;
        }
        if (s == "-inf") {
            return -kInf;
        }
        throw Error("unknown endpoint sentinel: " + s);
    }
    if (!j.is_number()) {
        throw Error("interval endpoint must be a number or inf sentinel");
    }
    return j.get<double>();
}

} // namespace

json matrix_to_json(const CMatrix& m) {
    json entries = json::array();
    for (const Complex& z : m.entries()) {
        entries.push_back(complex_to_json(z));
    }
    return json{{"n", m.rows()}, {"entries", std::move(entries)}};
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries")) {
        throw Error("matrix json needs fields \"n\" and \"entries\"");
    }
    const int n = j.at("n").get<int>();
    const json& entries = j.at("entries");
    if (n < 1 || !entries.is_array() || entries.empty() ||
        entries.size() % static_cast<std::size_t>(n) != 0) {
        throw Error("matrix entry count is not a multiple of n");
    }
    const int cols = static_cast<int>(entries.size()) / n;
    std::vector<Complex> data;
    data.reserve(entries.size());
    for (const json& e : entries) {
        data.push_back(complex_from_json(e));
    }
    return CMatrix(n, cols, std::move(data));
}

json wave_vector_to_json(const WaveVector& v) {
    json comps = json::array();
    for (const Complex& z : v.components()) {
        comps.push_back(complex_to_json(z));
    }
    return json{{"n", v.dim()}, {"components", std::move(comps)}};
}

WaveVector wave_vector_from_json(const json& j) {
    if (!j.is_object() || !j.contains("components")) {
        throw Error("vector json needs field \"components\"");
    }
    std::vector<Complex> comps;
    for (const json& e : j.at("components")) {
        comps.push_back(complex_from_json(e));
    }
    if (j.contains("n") &&
        j.at("n").get<std::size_t>() != comps.size()) {
        throw Error("vector length disagrees with \"n\"");
    }
    return WaveVector(std::move(comps));
}

json decomposition_to_json(const NumDecomposition& d) {
    json parts = json::array();
    for (const DecompositionPart& p : d.parts()) {
        parts.push_back(json{{"lambda", p.identifier},
                             {"basis", matrix_to_json(p.subspace.basis())}});
    }
    return json{{"n", d.ambient_dim()}, {"parts", std::move(parts)}};
}

NumDecomposition decomposition_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("parts")) {
        throw Error("decomposition json needs fields \"n\" and \"parts\"");
    }
    const int n = j.at("n").get<int>();
    std::vector<DecompositionPart> parts;
    for (const json& pj : j.at("parts")) {
        if (!pj.contains("lambda") || !pj.contains("basis")) {
            throw Error("decomposition part needs \"lambda\" and \"basis\"");
        }
        parts.push_back({pj.at("lambda").get<double>(),
                         Subspace(matrix_from_json(pj.at("basis")))});
    }
    return NumDecomposition(n, std::move(parts));
}

json density_to_json(const DensityMatrix& rho) {
    json j = matrix_to_json(rho.matrix());
    j["validated"] = true;
    return j;
}

DensityMatrix density_from_json(const json& j, double tau_cluster) {
    return DensityMatrix::validate(matrix_from_json(j), tau_cluster);
}

json event_to_json(const OrthoEvent& e) {
    json cells = json::array();
    for (std::size_t c : e.cell_indices()) {
        cells.push_back(c);
    }
    return json{{"cells", std::move(cells)}, {"residual", e.residual_bit()}};
}

OrthoEvent event_from_json(const json& j, PartitionRef partition) {
    if (!j.is_object() || !j.contains("cells") || !j.contains("residual")) {
        throw Error("event json needs fields \"cells\" and \"residual\"");
    }
    std::vector<std::size_t> cells;
    for (const json& c : j.at("cells")) {
        cells.push_back(c.get<std::size_t>());
    }
    return OrthoEvent(std::move(partition), std::move(cells),
                      j.at("residual").get<bool>());
}

json borel_to_json(const ExtendedBorelSet& s) {
    json intervals = json::array();
    for (const Interval& iv : s.intervals()) {
        intervals.push_back(json::array({endpoint_to_json(iv.lo),
                                         endpoint_to_json(iv.hi), iv.lo_closed,
                                         iv.hi_closed}));
    }
    return json{{"intervals", std::move(intervals)}, {"star", s.contains_star()}};
}

ExtendedBorelSet borel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("intervals") || !j.contains("star")) {
        throw Error("borel json needs fields \"intervals\" and \"star\"");
    }
    std::vector<Interval> intervals;
    for (const json& e : j.at("intervals")) {
        if (!e.is_array() || e.size() != 4) {
            throw Error("interval must be [lo, hi, lo_closed, hi_closed]");
        }
        intervals.push_back(Interval{endpoint_from_json(e[0]),
                                     endpoint_from_json(e[1]),
                                     e[2].get<bool>(), e[3].get<bool>()});
    }
    return ExtendedBorelSet::from_intervals(std::move(intervals),
                                            j.at("star").get<bool>());
}

json consistency_report_to_json(const ConsistencyReport& report,
                                const ContextFamily& family) {
    json violations = json::array();
    for (const ConsistencyViolation& v : report.violations) {
        violations.push_back(json{{"context1", family.context(v.context1).id},
                                  {"cells1", v.cells1},
                                  {"context2", family.context(v.context2).id},
                                  {"cells2", v.cells2},
                                  {"p1", v.prob1},
                                  {"p2", v.prob2},
                                  {"delta", v.delta}});
    }
    return json{{"consistent", report.consistent},
                {"violations", std::move(violations)}};
}

json metaspace_to_json(const Metaspace& m) {
    json cells = json::array();
    for (const MetaspaceCell& cell : m.cells()) {
        json c{{"context", m.tree().context(cell.context_index).id},
               {"residual", cell.residual},
               {"prob", cell.probability}};
        if (!cell.residual) {
            c["lambda"] = cell.lambda;
            c["multiplicity"] = cell.multiplicity;
        }
        cells.push_back(std::move(c));
    }
    return json{{"cells", std::move(cells)},
                {"total_prob", m.total_probability()}};
}

std::vector<ExperimentalContext> contexts_from_json(const json& j,
                                                    double tau_cluster) {
    if (!j.is_object() || !j.contains("contexts") || !j.at("contexts").is_array()) {
        throw Error("experiment json needs an array field \"contexts\"");
    }
    std::vector<ExperimentalContext> out;
    for (const json& cj : j.at("contexts")) {
        if (!cj.contains("id") || !cj.contains("observable") || !cj.contains("rho")) {
            throw Error("context needs \"id\", \"observable\" and \"rho\"");
        }
        out.push_back({cj.at("id").get<std::string>(),
                       decompose(matrix_from_json(cj.at("observable")), tau_cluster),
                       DensityMatrix::validate(matrix_from_json(cj.at("rho")),
                                               tau_cluster)});
    }
    return out;
}

std::vector<double> pmf_from_json(const json& j,
                                  const std::vector<ExperimentalContext>& contexts) {
    if (!j.is_object()) {
        throw Error("pmf json must be an object mapping context id to weight");
    }
    std::vector<double> q;
    q.reserve(contexts.size());
    for (const ExperimentalContext& c : contexts) {
        if (!j.contains(c.id)) {
            throw InvalidPmfError("pmf is missing context " + c.id);
        }
        q.push_back(j.at(c.id).get<double>());
    }
    if (j.size() != contexts.size()) {
        throw InvalidPmfError("pmf names a context not in the experiment");
    }
    return q;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open " + path + " for writing");
    }
    out << text;
    if (!out) {
        throw Error("write to " + path + " failed");
    }
}

} // namespace orthotree::io
