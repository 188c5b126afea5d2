#include "folmet/grid.hpp"

#include <bit>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace folmet::geo {

std::int64_t BitGrid::popcount() const {
    std::int64_t c = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : c) schedule(static)
#endif
    for (std::int64_t w = 0; w < static_cast<std::int64_t>(bits_.size()); ++w)
        c += std::popcount(bits_[w]);
    return c;
}

void BitGrid::for_each_set(const std::function<void(std::int64_t, int)>& fn) const {
    for (std::int64_t row = 0; row < rows_; ++row) {
        const std::uint64_t* rp = row_ptr(row);
        for (std::int64_t w = 0; w < row_words_; ++w) {
            std::uint64_t bits = rp[w];
            while (bits) {
                int b = std::countr_zero(bits);
                fn(row, static_cast<int>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }
}

BitGrid erode(const GridSpec& g, const BitGrid& in) {
    BitGrid out(g);
    const int axes = g.raxes();
    const std::int64_t rows = in.rows();
    const std::int64_t rw = in.row_words();
    const int cols = in.cols();

    // strides (in rows) of each leading axis
    std::vector<std::int64_t> stride(axes - 1, 1);
    for (int a = axes - 3; a >= 0; --a) stride[a] = stride[a + 1] * g.n[a + 1];

    // mask of valid trailing bits in the final word of a row
    const int tail = cols & 63;
    const std::uint64_t tail_mask = tail ? ((std::uint64_t{1} << tail) - 1) : ~std::uint64_t{0};

#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<int> idx(axes - 1);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t row = 0; row < rows; ++row) {
            g.decode_row(row, idx.data());
            const std::uint64_t* src = in.row_ptr(row);
            std::uint64_t* dst = out.row_ptr(row);

            for (std::int64_t w = 0; w < rw; ++w) {
                std::uint64_t v = src[w];
                if (!v) { dst[w] = 0; continue; }
                // neighbors along the packed axis
                std::uint64_t left = (v << 1) | (w > 0 ? (src[w - 1] >> 63) : 0);
                std::uint64_t right = (v >> 1);
                if (w + 1 < rw) right |= (src[w + 1] << 63);
                std::uint64_t acc = v & left & right;
                // neighbors along every leading axis
                for (int a = 0; a < axes - 1 && acc; ++a) {
                    acc &= (idx[a] > 0) ? in.row_ptr(row - stride[a])[w] : 0;
                    if (!acc) break;
                    acc &= (idx[a] + 1 < g.n[a]) ? in.row_ptr(row + stride[a])[w] : 0;
                }
                if (w + 1 == rw) {
                    acc &= tail_mask;
                    // the last valid cell has an off-grid right neighbor
                    if (tail)
                        acc &= ~(std::uint64_t{1} << (tail - 1));
                    else
                        acc &= ~(std::uint64_t{1} << 63);
                }
                if (w == 0) acc &= ~std::uint64_t{1};
                dst[w] = acc;
            }
        }
    }
    return out;
}

BitGrid boundary_layer(const GridSpec& g, const BitGrid& in) {
    BitGrid inner = erode(g, in);
    BitGrid out(g);
    const std::int64_t nw = in.words();
    auto& o = out.raw();
    const auto& a = in.raw();
    const auto& b = inner.raw();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t w = 0; w < nw; ++w) o[w] = a[w] & ~b[w];
    return out;
}

namespace {

struct Span {
    std::int64_t row;
    int jlo, jhi;  // inclusive
};

} // namespace

BitGrid flood_fill(const GridSpec& g,
                   const std::function<bool(const int*, int)>& oracle,
                   const std::vector<int>& seed_idx, int seed_j,
                   BitGrid* probed_out, BitGrid* value_out) {
    BitGrid comp(g);
    BitGrid probed(g);
    BitGrid value(g);
    const int axes = g.raxes();
    const int cols = g.n[g.last()];

    std::vector<std::int64_t> stride(axes - 1, 1);
    for (int a = axes - 3; a >= 0; --a) stride[a] = stride[a + 1] * g.n[a + 1];

    std::vector<int> idx(axes - 1);

    auto probe = [&](std::int64_t row, const int* ridx, int j) -> bool {
        if (probed.get(row, j)) return value.get(row, j);
        probed.set(row, j);
        bool m = oracle(ridx, j);
        if (m) value.set(row, j);
        return m;
    };

    std::int64_t seed_row = g.encode_row(seed_idx.data());
    if (!probe(seed_row, seed_idx.data(), seed_j)) {
        if (probed_out) *probed_out = std::move(probed);
        if (value_out) *value_out = std::move(value);
        return comp;
    }

    std::vector<Span> stack;
    auto push_runs = [&](std::int64_t row, const int* ridx, int jlo, int jhi) {
        // locate member runs within [jlo, jhi], extend them maximally, mark, push
        int j = jlo;
        while (j <= jhi) {
            if (comp.get(row, j) || !probe(row, ridx, j)) { ++j; continue; }
            int lo = j;
            while (lo > 0 && !comp.get(row, lo - 1) && probe(row, ridx, lo - 1)) --lo;
            int hi = j;
            while (hi + 1 < cols && !comp.get(row, hi + 1) && probe(row, ridx, hi + 1)) ++hi;
            for (int k = lo; k <= hi; ++k) comp.set(row, k);
            stack.push_back({row, lo, hi});
            j = hi + 1;
        }
    };

    push_runs(seed_row, seed_idx.data(), seed_j, seed_j);

    std::vector<int> nidx(axes - 1);
    while (!stack.empty()) {
        Span s = stack.back();
        stack.pop_back();
        g.decode_row(s.row, idx.data());
        for (int a = 0; a < axes - 1; ++a) {
            for (int dir = -1; dir <= 1; dir += 2) {
                int ni = idx[a] + dir;
                if (ni < 0 || ni >= g.n[a]) continue;
                nidx = idx;
                nidx[a] = ni;
                push_runs(s.row + dir * stride[a], nidx.data(), s.jlo, s.jhi);
            }
        }
    }

    if (probed_out) *probed_out = std::move(probed);
    if (value_out) *value_out = std::move(value);
    return comp;
}

BitGrid flood_fill_bits(const GridSpec& g, const BitGrid& value,
                        const std::vector<int>& seed_idx, int seed_j) {
    return flood_fill(
        g,
        [&value, &g](const int* ridx, int j) { return value.get(g.encode_row(ridx), j); },
        seed_idx, seed_j);
}

} // namespace folmet::geo
