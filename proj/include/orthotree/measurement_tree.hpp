#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orthotree/contexts.hpp"
#include "orthotree/quantum_state.hpp"
#include "orthotree/spectral.hpp"

namespace orthotree {

/// One experimental configuration: an observable to measure and the state
/// it is measured in.
struct ExperimentalContext {
    std::string id;
    HermitianObservable observable;
    DensityMatrix state;
};

/// Terminal node of the tree: one potential outcome of one context's
/// measurement. Whether an outcome is actually registered by a device is
/// tracked as a bare flag with no further semantics here.
struct TerminalNode {
    double lambda;
    double probability;
    int multiplicity;
    bool observed = true;
};

/// Chance node holding one context's outcome lottery.
struct MeasurementNode {
    std::string context_id;
    std::vector<TerminalNode> terminals; // ascending lambda
};

/// Three-level tree: a preparation root, one measurement chance node per
/// context, and one terminal node per spectrum point of that context's
/// observable. Each lottery assigns tr(rho * P_lambda) to the lambda
/// terminal and sums to one.
class MeasurementTree {
public:
    explicit MeasurementTree(std::vector<ExperimentalContext> contexts);

    std::size_t context_count() const { return contexts_.size(); }
    const ExperimentalContext& context(std::size_t i) const { return contexts_[i]; }
    const MeasurementNode& node(std::size_t i) const { return nodes_[i]; }
    int ambient_dim() const;

private:
    std::vector<ExperimentalContext> contexts_;
    std::vector<MeasurementNode> nodes_;
};

MeasurementTree build_tree(std::vector<ExperimentalContext> contexts);

struct SampleRecord {
    std::size_t context_index;
    double lambda;
};

/// Draws `count` outcomes: context by q, then eigenvalue by the context's
/// lottery. Sampling is organized in fixed-size batches, one derived RNG
/// stream per batch, so results are identical whether batches run serially
/// or in parallel and depend only on (seed, count).
std::vector<SampleRecord> sample(const MeasurementTree& tree,
                                 const std::vector<double>& q,
                                 std::uint64_t seed, std::size_t count);

struct MetaspaceCell {
    std::size_t context_index;
    bool residual;
    double lambda;       // unset for residual cells
    int multiplicity;    // 0 for residual cells
    double probability;  // exactly 0 for residual cells
};

/// Flattened single-space view of the tree: one cell per (partition cell,
/// context) pair weighted by q_c times the contextual cell probability,
/// plus one zero-probability residual cell per context.
class Metaspace {
public:
    Metaspace(MeasurementTree tree, std::vector<double> q);

    const MeasurementTree& tree() const { return tree_; }
    const std::vector<double>& q() const { return q_; }
    const std::vector<MetaspaceCell>& cells() const { return cells_; }
    double total_probability() const;

private:
    MeasurementTree tree_;
    std::vector<double> q_;
    std::vector<MetaspaceCell> cells_;
};

Metaspace reduce_to_metaspace(std::vector<ExperimentalContext> contexts,
                              const std::vector<double>& q);

/// Validates a probability mass function over the tree's contexts.
void validate_pmf(const std::vector<double>& q, std::size_t context_count);

} // namespace orthotree
