#include "orthotree/measurement_tree.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "orthotree/error.hpp"
#include "orthotree/rng.hpp"
#include "orthotree/tolerances.hpp"

namespace orthotree {

namespace {

// Batch size for stream-per-batch sampling. Part of the reproducibility
// contract: changing it changes sampled sequences.
constexpr std::size_t kSampleBatch = 4096;

} // namespace

MeasurementTree::MeasurementTree(std::vector<ExperimentalContext> contexts)
    : contexts_(std::move(contexts)) {
    if (contexts_.empty()) {
        throw EmptyContextsError("measurement tree needs at least one context");
    }
    const int n = contexts_.front().observable.dim();
    std::set<std::string> ids;
    for (const ExperimentalContext& c : contexts_) {
        if (c.observable.dim() != n || c.state.dim() != n) {
            throw DimensionMismatchError(
                "context " + c.id + " has mismatched dimensions");
        }
        if (!ids.insert(c.id).second) {
            throw Error("duplicate context id: " + c.id);
        }
    }
    nodes_.reserve(contexts_.size());
    for (const ExperimentalContext& c : contexts_) {
        MeasurementNode node;
        node.context_id = c.id;
        double total = 0.0;
        for (const DecompositionPart& p : c.observable.decomposition().parts()) {
            const double prob = trace_rule(c.state, p.subspace);
            node.terminals.push_back({p.identifier, prob, p.subspace.dim(), true});
            total += prob;
        }
        if (std::abs(total - 1.0) > tol::trace_one) {
            throw Error("lottery for context " + c.id + " sums to " +
                        std::to_string(total));
        }
        nodes_.push_back(std::move(node));
    }
}

int MeasurementTree::ambient_dim() const {
    return contexts_.front().observable.dim();
}

MeasurementTree build_tree(std::vector<ExperimentalContext> contexts) {
    return MeasurementTree(std::move(contexts));
}

void validate_pmf(const std::vector<double>& q, std::size_t context_count) {
    if (q.size() != context_count) {
        throw InvalidPmfError("pmf length differs from context count");
    }
    double total = 0.0;
    for (double p : q) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw InvalidPmfError("pmf entries must be finite and nonnegative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > tol::trace_one) {
        throw InvalidPmfError("pmf sums to " + std::to_string(total));
    }
}

namespace {

// Index of the outcome drawn by u in [0, 1) against cumulative weights;
// zero-probability entries can never be selected.
template <typename Weight>
std::size_t pick(const std::vector<Weight>& items, double u,
                 double (*weight_of)(const Weight&)) {
    double cum = 0.0;
    std::size_t last_positive = items.size();
    for (std::size_t i = 0; i < items.size(); ++i) {
        const double w = weight_of(items[i]);
        if (w > 0.0) {
            cum += w;
            last_positive = i;
            if (u < cum) {
                return i;
            }
        }
    }
    // u landed in the rounding sliver above the final cumulative value.
    return last_positive;
}

double pmf_weight(const double& w) { return w; }
double terminal_weight(const TerminalNode& t) { return t.probability; }

} // namespace

std::vector<SampleRecord> sample(const MeasurementTree& tree,
                                 const std::vector<double>& q,
                                 std::uint64_t seed, std::size_t count) {
    validate_pmf(q, tree.context_count());
    std::vector<SampleRecord> out(count);
    const std::size_t batches = (count + kSampleBatch - 1) / kSampleBatch;
    const long long batch_count = static_cast<long long>(batches);

    #pragma omp parallel for schedule(static)
    for (long long b = 0; b < batch_count; ++b) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(b));
        const std::size_t begin = static_cast<std::size_t>(b) * kSampleBatch;
        const std::size_t end = std::min(begin + kSampleBatch, count);
        for (std::size_t i = begin; i < end; ++i) {
            const double u = rng.next_double();
            const double v = rng.next_double();
            const std::size_t c = pick(q, u, pmf_weight);
            const MeasurementNode& node = tree.node(c);
            const std::size_t t = pick(node.terminals, v, terminal_weight);
            out[i] = {c, node.terminals[t].lambda};
        }
    }
    return out;
}

Metaspace::Metaspace(MeasurementTree tree, std::vector<double> q)
    : tree_(std::move(tree)), q_(std::move(q)) {
    validate_pmf(q_, tree_.context_count());
    for (std::size_t c = 0; c < tree_.context_count(); ++c) {
        const MeasurementNode& node = tree_.node(c);
        for (const TerminalNode& t : node.terminals) {
            cells_.push_back({c, false, t.lambda, t.multiplicity,
                              q_[c] * t.probability});
        }
        cells_.push_back({c, true, 0.0, 0, 0.0});
    }
    if (std::abs(total_probability() - 1.0) > tol::trace_one) {
        throw std::logic_error("metaspace cells sum to " +
                               std::to_string(total_probability()));
    }
}

double Metaspace::total_probability() const {
    double total = 0.0;
    for (const MetaspaceCell& cell : cells_) {
        total += cell.probability;
    }
    return total;
}

Metaspace reduce_to_metaspace(std::vector<ExperimentalContext> contexts,
                              const std::vector<double>& q) {
    return Metaspace(build_tree(std::move(contexts)), q);
}

} // namespace orthotree
