#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "folmet/types.hpp"

namespace folmet::geo {

/// Uniform node grid over a real box: node coordinates lo[a] + i*h per axis.
/// The last real axis is the fastest-varying one and is packed into 64-bit
/// words by BitGrid.
struct GridSpec {
    RBox box;
    double h = 0;
    std::vector<int> n;  // nodes per axis

    GridSpec() = default;
    GridSpec(RBox b, double pitch) : box(std::move(b)), h(pitch) {
        if (!(h > 0)) throw input_error("GridSpec: pitch must be positive");
        for (int a = 0; a < box.raxes(); ++a) {
            int cnt = static_cast<int>(std::floor((box.hi[a] - box.lo[a]) / h + 1e-9)) + 1;
            n.push_back(std::max(cnt, 1));
        }
    }

    int raxes() const { return static_cast<int>(n.size()); }
    int cdim() const { return raxes() / 2; }
    int last() const { return raxes() - 1; }

    double coord(int axis, int i) const { return box.lo[axis] + i * h; }

    std::int64_t row_count() const {
        std::int64_t r = 1;
        for (int a = 0; a + 1 < raxes(); ++a) r *= n[a];
        return r;
    }
    std::int64_t node_count() const { return row_count() * n[last()]; }

    /// Multi-index of a row (all axes except the last) from its linear id.
    void decode_row(std::int64_t row, int* idx) const {
        for (int a = raxes() - 2; a >= 0; --a) {
            idx[a] = static_cast<int>(row % n[a]);
            row /= n[a];
        }
    }
    std::int64_t encode_row(const int* idx) const {
        std::int64_t row = 0;
        for (int a = 0; a + 1 < raxes(); ++a) row = row * n[a] + idx[a];
        return row;
    }

    CPoint point(const int* idx, int j) const {
        std::vector<cplx> z(cdim());
        for (int i = 0; i < cdim(); ++i) {
            double re = (2 * i == last()) ? coord(2 * i, j) : coord(2 * i, idx[2 * i]);
            double im = (2 * i + 1 == last()) ? coord(2 * i + 1, j) : coord(2 * i + 1, idx[2 * i + 1]);
            z[i] = cplx(re, im);
        }
        return CPoint(std::move(z));
    }

    /// Node from a full per-axis index vector (length raxes()).
    CPoint point_full(const std::vector<int>& all) const {
        std::vector<cplx> z(cdim());
        for (int i = 0; i < cdim(); ++i)
            z[i] = cplx(coord(2 * i, all[2 * i]), coord(2 * i + 1, all[2 * i + 1]));
        return CPoint(std::move(z));
    }

    /// Allocation-free variants for hot loops; `out.z` must be sized cdim().
    void point_into(const int* idx, int j, CPoint& out) const {
        for (int i = 0; i < cdim(); ++i) {
            double re = (2 * i == last()) ? coord(2 * i, j) : coord(2 * i, idx[2 * i]);
            double im = (2 * i + 1 == last()) ? coord(2 * i + 1, j) : coord(2 * i + 1, idx[2 * i + 1]);
            out.z[i] = cplx(re, im);
        }
    }
    void point_full_into(const std::vector<int>& all, CPoint& out) const {
        for (int i = 0; i < cdim(); ++i)
            out.z[i] = cplx(coord(2 * i, all[2 * i]), coord(2 * i + 1, all[2 * i + 1]));
    }

    /// Nearest node to p; returns false if p is outside the box.
    bool locate(const CPoint& p, std::vector<int>& idx, int& j) const {
        idx.assign(raxes() - 1, 0);
        std::vector<double> flat(raxes());
        for (int i = 0; i < cdim(); ++i) {
            flat[2 * i] = p.z[i].real();
            flat[2 * i + 1] = p.z[i].imag();
        }
        for (int a = 0; a < raxes(); ++a) {
            int i = static_cast<int>(std::lround((flat[a] - box.lo[a]) / h));
            if (i < 0 || i >= n[a]) return false;
            if (a == last())
                j = i;
            else
                idx[a] = i;
        }
        return true;
    }
};

/// Bit array over a GridSpec with one word-padded row per combination of the
/// leading axes. Designed so erosion and row scans are word-parallel.
class BitGrid {
public:
    BitGrid() = default;
    explicit BitGrid(const GridSpec& g)
        : rows_(g.row_count()), cols_(g.n[g.last()]),
          row_words_((cols_ + 63) / 64), bits_(rows_ * row_words_, 0) {}

    std::int64_t rows() const { return rows_; }
    int cols() const { return cols_; }
    std::int64_t words() const { return static_cast<std::int64_t>(bits_.size()); }
    std::int64_t row_words() const { return row_words_; }

    bool get(std::int64_t row, int j) const {
        return (bits_[row * row_words_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    void set(std::int64_t row, int j) {
        bits_[row * row_words_ + (j >> 6)] |= (std::uint64_t{1} << (j & 63));
    }

    const std::uint64_t* row_ptr(std::int64_t row) const { return bits_.data() + row * row_words_; }
    std::uint64_t* row_ptr(std::int64_t row) { return bits_.data() + row * row_words_; }

    std::int64_t popcount() const;

    /// Visit every set bit as (row, j).
    void for_each_set(const std::function<void(std::int64_t, int)>& fn) const;

    std::vector<std::uint64_t>& raw() { return bits_; }
    const std::vector<std::uint64_t>& raw() const { return bits_; }

private:
    std::int64_t rows_ = 0;
    int cols_ = 0;
    std::int64_t row_words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// cell survives iff it is set and all 2A axis neighbors are set (grid edge
/// counts as unset). Word-parallel along the last axis.
BitGrid erode(const GridSpec& g, const BitGrid& in);

/// Set bits of `in` having at least one unset/off-grid axis neighbor.
BitGrid boundary_layer(const GridSpec& g, const BitGrid& in);

/// Scanline flood fill of the connected component (2A-neighbor adjacency) of
/// the seed node over a lazily evaluated membership oracle. The oracle is
/// called once per probed node. Returns the component; `probed`/`value`
/// record every evaluation (useful to re-use membership answers).
BitGrid flood_fill(const GridSpec& g,
                   const std::function<bool(const int* row_idx, int j)>& oracle,
                   const std::vector<int>& seed_idx, int seed_j,
                   BitGrid* probed_out = nullptr, BitGrid* value_out = nullptr);

/// Flood fill where membership is a precomputed BitGrid.
BitGrid flood_fill_bits(const GridSpec& g, const BitGrid& value,
                        const std::vector<int>& seed_idx, int seed_j);

} // namespace folmet::geo
