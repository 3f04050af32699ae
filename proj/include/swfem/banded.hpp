#pragma once

#include <span>
#include <vector>

namespace swfem {

/// Symmetric positive definite banded matrix with in-place Cholesky
/// factorization. Only the lower band is stored, by row: entry (i, i-d) for
/// d in [0, bandwidth] lives at data[i*(bandwidth+1) + d].
class BandedSPD {
public:
    BandedSPD(int dim, int bandwidth);

    int dim() const { return dim_; }
    int bandwidth() const { return bw_; }

    // Accumulate into the symmetric entry (i, j); |i - j| must be <= bandwidth.
    void add_sym(int i, int j, double v);
    double coeff(int i, int j) const;  // 0 outside the band

    // Cholesky LL^T; throws SingularMatrixError when a pivot is not positive.
    void factorize();
    bool factorized() const { return factorized_; }

    void solve_in_place(std::span<double> b) const;
    std::vector<double> multiply(std::span<const double> x) const;

private:
    int dim_, bw_;
    std::vector<double> a_;  // original entries (lower band by row)
    std::vector<double> l_;  // Cholesky factor, same layout
    bool factorized_ = false;
};

/// Cyclic-banded SPD matrix (periodic Gram matrices): a banded core plus the
/// wrap-around corner coupling, solved through the Woodbury identity on the
/// corner block. Falls back to a dense Cholesky when the dimension is too
/// small for the corner split.
class PeriodicSPD {
public:
    PeriodicSPD(int dim, int bandwidth);

    int dim() const { return dim_; }
    int bandwidth() const { return bw_; }

    // Accumulate into the symmetric entry (i, j); the cyclic distance
    // min((i-j) mod n, (j-i) mod n) must be <= bandwidth.
    void add_sym(int i, int j, double v);
    double coeff(int i, int j) const;

    void factorize();
    void solve_in_place(std::span<double> b) const;
    std::vector<double> multiply(std::span<const double> x) const;

private:
    int dim_, bw_;
    bool dense_;
    // banded route
    BandedSPD core_;
    std::vector<double> corner_;   // C[i][j] = M(i, dim-bw+j), bw x bw
    std::vector<double> ainv_w_;   // A^{-1} W, dim x 2bw, column-major
    std::vector<double> cap_lu_;   // LU of (I + S K), 2bw x 2bw
    std::vector<int> cap_piv_;
    // dense fallback
    std::vector<double> dense_a_;  // row-major symmetric
    std::vector<double> dense_l_;
    bool factorized_ = false;
};

namespace detail {
// Dense LU with partial pivoting; a is n x n row-major, overwritten.
void lu_factor(std::vector<double>& a, std::vector<int>& piv, int n);
void lu_solve(const std::vector<double>& lu, const std::vector<int>& piv, int n,
              std::span<double> b);
} // namespace detail

} // namespace swfem
