#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "orthotree/error.hpp"
#include "orthotree/io.hpp"
#include "orthotree/log.hpp"
#include "orthotree/rng.hpp"
#include "orthotree/tolerances.hpp"

namespace {

using orthotree::io::json;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
    } else {
        orthotree::io::write_text_file(out_path, text);
    }
}

void emit_json(const json& j, const std::string& out_path) {
    emit(j.dump(2) + "\n", out_path);
}

int run_decompose(const std::string& in, const std::string& out,
                  double tol_cluster) {
    const orthotree::CMatrix a =
        orthotree::io::matrix_from_json(orthotree::io::read_json_file(in));
    const orthotree::HermitianObservable obs = orthotree::decompose(a, tol_cluster);
    if (obs.cluster_ambiguity()) {
        orthotree::log::diag("decompose: cluster merge chained beyond threshold");
    }
    emit_json(orthotree::io::decomposition_to_json(obs.decomposition()), out);
    return 0;
}

int run_synthesize(const std::string& in, const std::string& out) {
    const orthotree::NumDecomposition d =
        orthotree::io::decomposition_from_json(orthotree::io::read_json_file(in));
    emit_json(orthotree::io::matrix_to_json(orthotree::synthesize(d)), out);
    return 0;
}

int run_classify(const std::string& decomposition_path,
                 const std::string& obs_path, const std::string& vector_path,
                 const std::string& out, double tol_member, double tol_cluster) {
    std::optional<orthotree::NumDecomposition> d;
    if (!decomposition_path.empty()) {
        d = orthotree::io::decomposition_from_json(
            orthotree::io::read_json_file(decomposition_path));
    } else {
        const orthotree::CMatrix a = orthotree::io::matrix_from_json(
            orthotree::io::read_json_file(obs_path));
        d = orthotree::decompose(a, tol_cluster).decomposition();
    }
    const orthotree::WaveVector x = orthotree::io::wave_vector_from_json(
        orthotree::io::read_json_file(vector_path));
    const orthotree::OrthoPartition partition(*d);
    const orthotree::CellRef cell =
        orthotree::classify(partition, x.components(), tol_member);
    json result;
    if (cell.residual) {
        result = json{{"cell", "residual"}};
    } else {
        result = json{{"cell", cell.index},
                      {"lambda", d->part(cell.index).identifier}};
    }
    emit_json(result, out);
    return 0;
}

int run_measure(const std::string& obs_path, const std::string& rho_path,
                const std::string& psi_path, const std::string& out,
                double tol_cluster) {
    const orthotree::HermitianObservable obs = orthotree::decompose(
        orthotree::io::matrix_from_json(orthotree::io::read_json_file(obs_path)),
        tol_cluster);
    std::optional<orthotree::DensityMatrix> rho;
    std::optional<orthotree::WaveVector> psi;
    if (!rho_path.empty()) {
        rho = orthotree::DensityMatrix::validate(
            orthotree::io::matrix_from_json(orthotree::io::read_json_file(rho_path)),
            tol_cluster);
    } else {
        psi = orthotree::io::wave_vector_from_json(
            orthotree::io::read_json_file(psi_path));
    }
    std::ostringstream csv;
    csv << "lambda,multiplicity,probability\n";
    for (const orthotree::DecompositionPart& p : obs.decomposition().parts()) {
        const double prob = rho.has_value() ? orthotree::trace_rule(*rho, p.subspace)
                                            : orthotree::born_prob(*psi, p.subspace);
        csv << json(p.identifier).dump() << ',' << p.subspace.dim() << ','
            << json(prob).dump() << '\n';
    }
    emit(csv.str(), out);
    return 0;
}

int run_cdf(const std::string& obs_path, const std::string& rho_path,
            const std::string& psi_path, std::optional<double> r,
            const std::string& out, double tol_cluster) {
    const orthotree::HermitianObservable obs = orthotree::decompose(
        orthotree::io::matrix_from_json(orthotree::io::read_json_file(obs_path)),
        tol_cluster);
    std::optional<orthotree::ObservableCDF> dist;
    if (!rho_path.empty()) {
        dist = orthotree::cdf(obs, orthotree::DensityMatrix::validate(
                                       orthotree::io::matrix_from_json(
                                           orthotree::io::read_json_file(rho_path)),
                                       tol_cluster));
    } else {
        dist = orthotree::cdf(obs, orthotree::io::wave_vector_from_json(
                                       orthotree::io::read_json_file(psi_path)));
    }
    json atoms = json::array();
    for (const orthotree::ObservableCDF::Atom& a : dist->atoms()) {
        atoms.push_back(json{{"lambda", a.lambda}, {"prob", a.prob}});
    }
    json result{{"atoms", std::move(atoms)}};
    if (r.has_value()) {
        result["r"] = *r;
        result["F"] = (*dist)(*r);
    }
    emit_json(result, out);
    return 0;
}

int run_check_consistency(const std::string& in, const std::string& out,
                          double tol, double tol_cluster) {
    const json j = orthotree::io::read_json_file(in);
    if (!j.contains("contexts") || !j.at("contexts").is_array() ||
        j.at("contexts").empty()) {
        throw orthotree::Error("input needs a nonempty \"contexts\" array");
    }
    std::vector<orthotree::ContextEntry> entries;
    std::size_t index = 0;
    for (const json& cj : j.at("contexts")) {
        std::string id = cj.contains("id") ? cj.at("id").get<std::string>()
                                           : "context-" + std::to_string(index);
        entries.push_back(
            {std::move(id), orthotree::io::decomposition_from_json(cj)});
        ++index;
    }
    orthotree::ContextFamily family(std::move(entries));

    // With a state present the measures come from the trace rule; otherwise
    // the decompositions' own identifiers are read as probability labels.
    std::optional<orthotree::MultiProbabilitySpace> mps;
    if (j.contains("rho")) {
        const orthotree::DensityMatrix rho = orthotree::DensityMatrix::validate(
            orthotree::io::matrix_from_json(j.at("rho")), tol_cluster);
        mps = orthotree::from_density(family, rho);
    } else {
        mps = orthotree::MultiProbabilitySpace::from_probability_identified(family);
    }
    const orthotree::ConsistencyReport report =
        orthotree::check_consistency(*mps, tol);
    emit_json(orthotree::io::consistency_report_to_json(report, family), out);
    return report.consistent ? 0 : 2;
}

int run_tree_run(const std::string& contexts_path, const std::string& q_path,
                 std::uint64_t seed, std::size_t samples,
                 const std::string& out, double tol_cluster) {
    std::vector<orthotree::ExperimentalContext> contexts =
        orthotree::io::contexts_from_json(
            orthotree::io::read_json_file(contexts_path), tol_cluster);
    const std::vector<double> q = orthotree::io::pmf_from_json(
        orthotree::io::read_json_file(q_path), contexts);
    const orthotree::MeasurementTree tree = orthotree::build_tree(std::move(contexts));
    const std::vector<orthotree::SampleRecord> records =
        orthotree::sample(tree, q, seed, samples);

    std::ostringstream csv;
    csv << "# rng=" << orthotree::kRngName << " seed=" << seed << '\n';
    csv << "sample_index,context_id,lambda\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        csv << i << ',' << tree.context(records[i].context_index).id << ','
            << json(records[i].lambda).dump() << '\n';
    }
    emit(csv.str(), out);
    return 0;
}

int run_metaspace(const std::string& contexts_path, const std::string& q_path,
                  const std::string& out, double tol_cluster) {
    std::vector<orthotree::ExperimentalContext> contexts =
        orthotree::io::contexts_from_json(
            orthotree::io::read_json_file(contexts_path), tol_cluster);
    const std::vector<double> q = orthotree::io::pmf_from_json(
        orthotree::io::read_json_file(q_path), contexts);
    const orthotree::Metaspace meta =
        orthotree::reduce_to_metaspace(std::move(contexts), q);
    emit_json(orthotree::io::metaspace_to_json(meta), out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-dimensional quantum measurement toolkit: spectral "
                 "decompositions, contextual probability measures, and "
                 "measurement-tree sampling over a JSON interchange format"};
    app.require_subcommand(1);

    std::string in_path, out_path, obs_path, rho_path, psi_path;
    std::string decomposition_path, vector_path, contexts_path, q_path;
    double tol_cluster = -1.0;
    double tol_member = orthotree::tol::member;
    double tol_consistency = orthotree::tol::consistency;
    std::optional<double> cdf_r;
    std::uint64_t seed = 0;
    std::size_t samples = 0;

    CLI::App* dec = app.add_subcommand("decompose",
                                       "Eigenspace decomposition of a Hermitian matrix");
    dec->add_option("--in", in_path, "Matrix JSON file")->required();
    dec->add_option("--out", out_path, "Output path (stdout if omitted)");
    dec->add_option("--tol-cluster", tol_cluster, "Eigenvalue merge threshold");

    CLI::App* syn = app.add_subcommand("synthesize",
                                       "Rebuild the matrix of a decomposition");
    syn->add_option("--in", in_path, "Decomposition JSON file")->required();
    syn->add_option("--out", out_path, "Output path (stdout if omitted)");

    CLI::App* cls = app.add_subcommand("classify",
                                       "Locate a vector in an ortho-partition");
    cls->add_option("--decomposition", decomposition_path, "Decomposition JSON file");
    cls->add_option("--obs", obs_path, "Hermitian matrix JSON file (decomposed first)");
    cls->add_option("--vector", vector_path, "Vector JSON file")->required();
    cls->add_option("--out", out_path, "Output path (stdout if omitted)");
    cls->add_option("--tol-member", tol_member, "Membership tolerance");
    cls->add_option("--tol-cluster", tol_cluster, "Eigenvalue merge threshold");

    CLI::App* mea = app.add_subcommand("measure",
                                       "Per-eigenvalue probability table (CSV)");
    mea->add_option("--obs", obs_path, "Observable matrix JSON file")->required();
    mea->add_option("--rho", rho_path, "Density matrix JSON file");
    mea->add_option("--psi", psi_path, "Wave vector JSON file");
    mea->add_option("--out", out_path, "Output path (stdout if omitted)");
    mea->add_option("--tol-cluster", tol_cluster, "Eigenvalue merge threshold");

    CLI::App* cdf_cmd = app.add_subcommand("cdf",
                                           "Outcome distribution of an observable");
    cdf_cmd->add_option("--obs", obs_path, "Observable matrix JSON file")->required();
    cdf_cmd->add_option("--rho", rho_path, "Density matrix JSON file");
    cdf_cmd->add_option("--psi", psi_path, "Wave vector JSON file");
    cdf_cmd->add_option("--r", cdf_r, "Evaluate the CDF at r");
    cdf_cmd->add_option("--out", out_path, "Output path (stdout if omitted)");
    cdf_cmd->add_option("--tol-cluster", tol_cluster, "Eigenvalue merge threshold");

    CLI::App* chk = app.add_subcommand("check-consistency",
                                       "Audit cross-context probability agreement");
    chk->add_option("--in", in_path, "Multi-context JSON file")->required();
    chk->add_option("--out", out_path, "Output path (stdout if omitted)");
    chk->add_option("--tol", tol_consistency, "Agreement tolerance");
    chk->add_option("--tol-cluster", tol_cluster, "Eigenvalue merge threshold");

    CLI::App* run = app.add_subcommand("tree-run",
                                       "Sample a measurement tree (CSV)");
    run->add_option("--contexts", contexts_path, "Experiment JSON file")->required();
    run->add_option("--q", q_path, "Context pmf JSON file")->required();
    run->add_option("--seed", seed, "RNG seed")->required();
    run->add_option("--samples", samples, "Sample count")->required();
    run->add_option("--out", out_path, "Output path (stdout if omitted)");
    run->add_option("--tol-cluster", tol_cluster, "Eigenvalue merge threshold");

    CLI::App* met = app.add_subcommand("metaspace",
                                       "Cell probability table of the experiment");
    met->add_option("--contexts", contexts_path, "Experiment JSON file")->required();
    met->add_option("--q", q_path, "Context pmf JSON file")->required();
    met->add_option("--out", out_path, "Output path (stdout if omitted)");
    met->add_option("--tol-cluster", tol_cluster, "Eigenvalue merge threshold");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dec->parsed()) {
            return run_decompose(in_path, out_path, tol_cluster);
        }
        if (syn->parsed()) {
            return run_synthesize(in_path, out_path);
        }
        if (cls->parsed()) {
            if (decomposition_path.empty() == obs_path.empty()) {
                throw orthotree::Error(
                    "classify needs exactly one of --decomposition / --obs");
            }
            return run_classify(decomposition_path, obs_path, vector_path,
                                out_path, tol_member, tol_cluster);
        }
        if (mea->parsed()) {
            if (rho_path.empty() == psi_path.empty()) {
                throw orthotree::Error("measure needs exactly one of --rho / --psi");
            }
            return run_measure(obs_path, rho_path, psi_path, out_path, tol_cluster);
        }
        if (cdf_cmd->parsed()) {
            if (rho_path.empty() == psi_path.empty()) {
                throw orthotree::Error("cdf needs exactly one of --rho / --psi");
            }
            return run_cdf(obs_path, rho_path, psi_path, cdf_r, out_path,
                           tol_cluster);
        }
        if (chk->parsed()) {
            return run_check_consistency(in_path, out_path, tol_consistency,
                                         tol_cluster);
        }
        if (run->parsed()) {
            return run_tree_run(contexts_path, q_path, seed, samples, out_path,
                                tol_cluster);
        }
        if (met->parsed()) {
            return run_metaspace(contexts_path, q_path, out_path, tol_cluster);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
