#ifndef GRM_LINALG_HPP
#define GRM_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "grm/fields.hpp"

namespace grm {

// Dense matrix over GF(q) in canonical subfield indices.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<u8> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    u8& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    u8 at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
    u8* row(std::size_t r) { return a.data() + r * cols; }
    const u8* row(std::size_t r) const { return a.data() + r * cols; }
};

// In-place reduced row echelon form; returns rank, pivot columns appended
// to *pivots when given.
std::size_t rref(Mat& M, const SubfieldCtx& F, std::vector<u32>* pivots = nullptr);

std::size_t rank(Mat M, const SubfieldCtx& F);

Mat restrict_columns(const Mat& M, std::span<const u32> cols);

std::size_t rank_of_columns(const Mat& M, const SubfieldCtx& F, std::span<const u32> cols);

// Basis of { v : M v = 0 }, one row per basis vector.
Mat kernel_basis(const Mat& M, const SubfieldCtx& F);

bool row_spaces_equal(Mat A, Mat B, const SubfieldCtx& F);

// msg (length rows) * M -> length cols
std::vector<u8> vec_mat_mul(std::span<const u8> msg, const Mat& M, const SubfieldCtx& F);

// Gaussian elimination pivoting on the given columns in order; afterwards
// the restriction of M to those columns is the identity.  Returns false if
// some column yields no pivot (the columns are not an information set).
bool pivot_on_columns(Mat& M, std::span<const u32> cols, const SubfieldCtx& F);

// Streaming row-space builder in reduced echelon form.  Feed rows one at a
// time; memory stays proportional to the rank, not the row count.
class RowSpaceAccumulator {
public:
    RowSpaceAccumulator(std::size_t cols, const SubfieldCtx& F) : cols_(cols), field_(&F) {}

    // returns true if the row increased the rank
    bool add_row(std::span<const u8> row);
    std::size_t rank() const { return rows_.size(); }
    Mat to_matrix() const;

private:
    std::size_t cols_;
    const SubfieldCtx* field_;
    std::vector<std::vector<u8>> rows_;  // kept reduced, sorted by pivot
    std::vector<u32> pivots_;
};

}  // namespace grm

#endif
