#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "orthotree/spectral.hpp"

namespace orthotree {

/// Partition of the ambient space induced by an orthogonal decomposition:
/// one cell per punctured subspace plus the implicit residual cell holding
/// everything else (including the zero vector).
class OrthoPartition {
public:
    explicit OrthoPartition(NumDecomposition decomposition)
        : decomposition_(std::move(decomposition)) {}

    const NumDecomposition& decomposition() const { return decomposition_; }
    std::size_t cell_count() const { return decomposition_.part_count(); }
    int ambient_dim() const { return decomposition_.ambient_dim(); }

private:
    NumDecomposition decomposition_;
};

using PartitionRef = std::shared_ptr<const OrthoPartition>;

PartitionRef make_partition(NumDecomposition decomposition);

/// Result of classifying a vector against a partition: either the index of
/// the subspace cell that contains it, or the residual cell.
struct CellRef {
    bool residual;
    std::size_t index; // valid when !residual

    static CellRef cell(std::size_t i) { return {false, i}; }
    static CellRef residual_cell() { return {true, 0}; }

    bool operator==(const CellRef& other) const {
        return residual == other.residual && (residual || index == other.index);
    }
};

CellRef classify(const OrthoPartition& p, const std::vector<Complex>& x,
                 double eps_member);
CellRef classify(const OrthoPartition& p, const std::vector<Complex>& x);

/// Member of the finite event algebra over an ortho-partition: a union of
/// subspace cells plus optionally the residual cell, held as bits. The
/// representation is exact, so Boolean structure holds with no tolerance.
class OrthoEvent {
public:
    OrthoEvent(PartitionRef partition, std::vector<std::size_t> cells,
               bool residual);

    static OrthoEvent empty(PartitionRef partition);
    static OrthoEvent full(PartitionRef partition);
    static OrthoEvent single_cell(PartitionRef partition, std::size_t index);
    static OrthoEvent residual_only(PartitionRef partition);

    const PartitionRef& partition() const { return partition_; }
    bool residual_bit() const { return residual_; }
    bool has_cell(std::size_t index) const;
    std::vector<std::size_t> cell_indices() const;
    std::size_t cell_count() const { return partition_->cell_count(); }

    bool is_empty() const;
    bool operator==(const OrthoEvent& other) const;

private:
    friend OrthoEvent event_union(const OrthoEvent&, const OrthoEvent&);
    friend OrthoEvent event_intersect(const OrthoEvent&, const OrthoEvent&);
    friend OrthoEvent event_complement(const OrthoEvent&);

    PartitionRef partition_;
    std::vector<std::uint64_t> mask_;
    bool residual_;
};

OrthoEvent event_union(const OrthoEvent& a, const OrthoEvent& b);
OrthoEvent event_intersect(const OrthoEvent& a, const OrthoEvent& b);
OrthoEvent event_complement(const OrthoEvent& a);

/// Half-open/closed real interval; infinite endpoints are always open.
struct Interval {
    double lo;
    double hi;
    bool lo_closed;
    bool hi_closed;
};

/// Finite union of disjoint sorted intervals, optionally extended with the
/// Star point. Sufficient codomain machinery for finite spectra.
class ExtendedBorelSet {
public:
    ExtendedBorelSet() = default;

    static ExtendedBorelSet empty();
    static ExtendedBorelSet real_line();
    static ExtendedBorelSet whole(); // real line plus Star
    static ExtendedBorelSet interval(double lo, double hi, bool lo_closed,
                                     bool hi_closed);
    static ExtendedBorelSet point(double v);
    static ExtendedBorelSet at_most(double r); // (-inf, r]
    static ExtendedBorelSet from_intervals(std::vector<Interval> intervals,
                                           bool star);

    ExtendedBorelSet with_star() const;

    bool contains(double v) const;
    bool contains_star() const { return star_; }
    const std::vector<Interval>& intervals() const { return intervals_; }
    bool is_empty() const { return intervals_.empty() && !star_; }

private:
    std::vector<Interval> intervals_; // disjoint, ascending
    bool star_ = false;
};

ExtendedBorelSet set_union(const ExtendedBorelSet& a, const ExtendedBorelSet& b);
ExtendedBorelSet set_intersect(const ExtendedBorelSet& a, const ExtendedBorelSet& b);
/// Complement within the extended real line (real line plus Star).
ExtendedBorelSet set_complement(const ExtendedBorelSet& a);

/// Event whose cells are the level sets with value inside s; the residual
/// bit is set exactly when s contains Star.
OrthoEvent preimage(const OrthoMeasurableFunction& f, const ExtendedBorelSet& s,
                    const PartitionRef& partition);
OrthoEvent preimage(const OrthoMeasurableFunction& f, const ExtendedBorelSet& s);

} // namespace orthotree
