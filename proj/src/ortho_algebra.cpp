#include "orthotree/ortho_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orthotree/error.hpp"
#include "orthotree/tolerances.hpp"

namespace orthotree {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t word_count(std::size_t cells) { return (cells + 63) / 64; }

// Two events combine when they reference the same partition object, or two
// partitions with identical structure (same ambient space and identifiers).
bool same_partition(const PartitionRef& a, const PartitionRef& b) {
    if (a == b) {
        return true;
    }
    if (!a || !b) {
        return false;
    }
    if (a->ambient_dim() != b->ambient_dim() ||
        a->cell_count() != b->cell_count()) {
        return false;
    }
    for (std::size_t i = 0; i < a->cell_count(); ++i) {
        if (a->decomposition().part(i).identifier !=
            b->decomposition().part(i).identifier) {
            return false;
        }
    }
    return true;
}

void require_same_partition(const OrthoEvent& a, const OrthoEvent& b) {
    if (!same_partition(a.partition(), b.partition())) {
        throw PartitionMismatchError("events belong to different partitions");
    }
}

} // namespace

PartitionRef make_partition(NumDecomposition decomposition) {
    return std::make_shared<const OrthoPartition>(std::move(decomposition));
}

CellRef classify(const OrthoPartition& p, const std::vector<Complex>& x,
                 double eps_member) {
    if (static_cast<int>(x.size()) != p.ambient_dim()) {
        throw DimensionMismatchError("vector length differs from ambient dimension");
    }
    for (std::size_t i = 0; i < p.cell_count(); ++i) {
        if (p.decomposition().part(i).subspace.contains(x, eps_member)) {
            return CellRef::cell(i);
        }
    }
    return CellRef::residual_cell();
}

CellRef classify(const OrthoPartition& p, const std::vector<Complex>& x) {
    return classify(p, x, tol::member);
}

OrthoEvent::OrthoEvent(PartitionRef partition, std::vector<std::size_t> cells,
                       bool residual)
    : partition_(std::move(partition)),
      mask_(word_count(partition_->cell_count()), 0),
      residual_(residual) {
    for (std::size_t c : cells) {
        if (c >= partition_->cell_count()) {
            throw PartitionMismatchError("cell index out of range");
        }
        mask_[c / 64] |= (std::uint64_t{1} << (c % 64));
    }
}

OrthoEvent OrthoEvent::empty(PartitionRef partition) {
    return OrthoEvent(std::move(partition), {}, false);
}

OrthoEvent OrthoEvent::full(PartitionRef partition) {
    std::vector<std::size_t> all(partition->cell_count());
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    return OrthoEvent(std::move(partition), std::move(all), true);
}

OrthoEvent OrthoEvent::single_cell(PartitionRef partition, std::size_t index) {
    return OrthoEvent(std::move(partition), {index}, false);
}

OrthoEvent OrthoEvent::residual_only(PartitionRef partition) {
    return OrthoEvent(std::move(partition), {}, true);
}

bool OrthoEvent::has_cell(std::size_t index) const {
    if (index >= partition_->cell_count()) {
        return false;
    }
    return (mask_[index / 64] >> (index % 64)) & 1;
}

std::vector<std::size_t> OrthoEvent::cell_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < partition_->cell_count(); ++i) {
        if (has_cell(i)) {
            out.push_back(i);
        }
    }
    return out;
}

bool OrthoEvent::is_empty() const {
    if (residual_) {
        return false;
    }
    for (std::uint64_t w : mask_) {
        if (w != 0) {
            return false;
        }
    }
    return true;
}

bool OrthoEvent::operator==(const OrthoEvent& other) const {
    return same_partition(partition_, other.partition_) &&
           residual_ == other.residual_ && mask_ == other.mask_;
}

OrthoEvent event_union(const OrthoEvent& a, const OrthoEvent& b) {
    require_same_partition(a, b);
    OrthoEvent out = a;
    for (std::size_t i = 0; i < out.mask_.size(); ++i) {
        out.mask_[i] |= b.mask_[i];
    }
    out.residual_ = a.residual_ || b.residual_;
    return out;
}

OrthoEvent event_intersect(const OrthoEvent& a, const OrthoEvent& b) {
    require_same_partition(a, b);
    OrthoEvent out = a;
    for (std::size_t i = 0; i < out.mask_.size(); ++i) {
        out.mask_[i] &= b.mask_[i];
    }
    out.residual_ = a.residual_ && b.residual_;
    return out;
}

OrthoEvent event_complement(const OrthoEvent& a) {
    OrthoEvent out = a;
    const std::size_t cells = a.partition()->cell_count();
    for (std::size_t i = 0; i < out.mask_.size(); ++i) {
        out.mask_[i] = ~out.mask_[i];
    }
    // Clear the unused high bits of the last word.
    const std::size_t used = cells % 64;
    if (!out.mask_.empty() && used != 0) {
        out.mask_.back() &= (std::uint64_t{1} << used) - 1;
    }
    out.residual_ = !a.residual_;
    return out;
}

namespace {

// True when the interval holds no point.
bool interval_empty(const Interval& iv) {
    if (iv.lo > iv.hi) {
        return true;
    }
    if (iv.lo == iv.hi) {
        return !(iv.lo_closed && iv.hi_closed) || std::isinf(iv.lo);
    }
    return false;
}

void validate_interval(const Interval& iv) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi)) {
        throw NonFiniteError("interval endpoint is NaN");
    }
}

// Intervals touch or overlap, so their union is one interval.
bool mergeable(const Interval& a, const Interval& b) {
    // Precondition: a.lo <= b.lo (sorted).
    if (b.lo < a.hi) {
        return true;
    }
    if (b.lo == a.hi) {
        return a.hi_closed || b.lo_closed;
    }
    return false;
}

std::vector<Interval> normalize(std::vector<Interval> ivs) {
    std::vector<Interval> kept;
    for (const Interval& iv : ivs) {
        validate_interval(iv);
        if (!interval_empty(iv)) {
            Interval c = iv;
            if (std::isinf(c.lo)) {
                c.lo_closed = false;
            }
            if (std::isinf(c.hi)) {
                c.hi_closed = false;
            }
            kept.push_back(c);
        }
    }
    std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) {
            return a.lo < b.lo;
        }
        return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval> merged;
    for (const Interval& iv : kept) {
        if (!merged.empty() && mergeable(merged.back(), iv)) {
            Interval& last = merged.back();
            if (iv.hi > last.hi) {
                last.hi = iv.hi;
                last.hi_closed = iv.hi_closed;
            } else if (iv.hi == last.hi) {
                last.hi_closed = last.hi_closed || iv.hi_closed;
            }
        } else {
            merged.push_back(iv);
        }
    }
    return merged;
}

} // namespace

ExtendedBorelSet ExtendedBorelSet::empty() { return ExtendedBorelSet(); }

ExtendedBorelSet ExtendedBorelSet::real_line() {
    return interval(-kInf, kInf, false, false);
}

ExtendedBorelSet ExtendedBorelSet::whole() { return real_line().with_star(); }

ExtendedBorelSet ExtendedBorelSet::interval(double lo, double hi, bool lo_closed,
                                            bool hi_closed) {
    return from_intervals({Interval{lo, hi, lo_closed, hi_closed}}, false);
}

ExtendedBorelSet ExtendedBorelSet::point(double v) {
    return interval(v, v, true, true);
}

ExtendedBorelSet ExtendedBorelSet::at_most(double r) {
    return interval(-kInf, r, false, true);
}

ExtendedBorelSet ExtendedBorelSet::from_intervals(std::vector<Interval> intervals,
                                                  bool star) {
    ExtendedBorelSet out;
    out.intervals_ = normalize(std::move(intervals));
    out.star_ = star;
    return out;
}

ExtendedBorelSet ExtendedBorelSet::with_star() const {
    ExtendedBorelSet out = *this;
    out.star_ = true;
    return out;
}

bool ExtendedBorelSet::contains(double v) const {
    for (const Interval& iv : intervals_) {
        const bool above_lo = v > iv.lo || (v == iv.lo && iv.lo_closed);
        const bool below_hi = v < iv.hi || (v == iv.hi && iv.hi_closed);
        if (above_lo && below_hi) {
            return true;
        }
    }
    return false;
}

ExtendedBorelSet set_union(const ExtendedBorelSet& a, const ExtendedBorelSet& b) {
    std::vector<Interval> all = a.intervals();
    all.insert(all.end(), b.intervals().begin(), b.intervals().end());
    return ExtendedBorelSet::from_intervals(std::move(all),
                                            a.contains_star() || b.contains_star());
}

ExtendedBorelSet set_intersect(const ExtendedBorelSet& a, const ExtendedBorelSet& b) {
    std::vector<Interval> out;
    for (const Interval& x : a.intervals()) {
        for (const Interval& y : b.intervals()) {
            Interval iv{};
            if (x.lo > y.lo) {
                iv.lo = x.lo;
                iv.lo_closed = x.lo_closed;
            } else if (y.lo > x.lo) {
                iv.lo = y.lo;
                iv.lo_closed = y.lo_closed;
            } else {
                iv.lo = x.lo;
                iv.lo_closed = x.lo_closed && y.lo_closed;
            }
            if (x.hi < y.hi) {
                iv.hi = x.hi;
                iv.hi_closed = x.hi_closed;
            } else if (y.hi < x.hi) {
                iv.hi = y.hi;
                iv.hi_closed = y.hi_closed;
            } else {
                iv.hi = x.hi;
                iv.hi_closed = x.hi_closed && y.hi_closed;
            }
            out.push_back(iv);
        }
    }
    return ExtendedBorelSet::from_intervals(std::move(out),
                                            a.contains_star() && b.contains_star());
}

ExtendedBorelSet set_complement(const ExtendedBorelSet& a) {
    // Walk the gaps between sorted disjoint intervals; endpoint closedness
    // flips across each boundary.
    std::vector<Interval> out;
    double cursor = -kInf;
    bool cursor_closed = false;
    for (const Interval& iv : a.intervals()) {
        out.push_back(Interval{cursor, iv.lo, cursor_closed, !iv.lo_closed});
        cursor = iv.hi;
        cursor_closed = !iv.hi_closed;
    }
    out.push_back(Interval{cursor, kInf, cursor_closed, false});
    return ExtendedBorelSet::from_intervals(std::move(out), !a.contains_star());
}

OrthoEvent preimage(const OrthoMeasurableFunction& f, const ExtendedBorelSet& s,
                    const PartitionRef& partition) {
    if (partition->ambient_dim() != f.decomposition().ambient_dim() ||
        partition->cell_count() != f.graph_size()) {
        throw PartitionMismatchError("partition does not match the function");
    }
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; i < f.graph_size(); ++i) {
        if (s.contains(f.value_at(i))) {
            cells.push_back(i);
        }
    }
    return OrthoEvent(partition, std::move(cells), s.contains_star());
}

OrthoEvent preimage(const OrthoMeasurableFunction& f, const ExtendedBorelSet& s) {
    return preimage(f, s, make_partition(f.decomposition()));
}

} // namespace orthotree
