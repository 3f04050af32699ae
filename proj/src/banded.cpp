#include "swfem/banded.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "swfem/errors.hpp"

namespace swfem {

namespace detail {

void lu_factor(std::vector<double>& a, std::vector<int>& piv, int n) {
    piv.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a[static_cast<std::size_t>(k * n + k)]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a[static_cast<std::size_t>(i * n + k)]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) throw SingularMatrixError("dense LU: zero pivot");
        piv[static_cast<std::size_t>(k)] = p;
        if (p != k)
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(k * n + j)], a[static_cast<std::size_t>(p * n + j)]);
        const double d = a[static_cast<std::size_t>(k * n + k)];
        for (int i = k + 1; i < n; ++i) {
            const double m = a[static_cast<std::size_t>(i * n + k)] / d;
            a[static_cast<std::size_t>(i * n + k)] = m;
            for (int j = k + 1; j < n; ++j)
                a[static_cast<std::size_t>(i * n + j)] -= m * a[static_cast<std::size_t>(k * n + j)];
        }
    }
}

void lu_solve(const std::vector<double>& lu, const std::vector<int>& piv, int n,
              std::span<double> b) {
    // all row interchanges first; the stored multipliers refer to the final
    // row ordering
    for (int k = 0; k < n; ++k) {
        const int p = piv[static_cast<std::size_t>(k)];
        if (p != k) std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(p)]);
    }
    for (int i = 1; i < n; ++i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j)
            s -= lu[static_cast<std::size_t>(i * n + j)] * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(i)] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            s -= lu[static_cast<std::size_t>(i * n + j)] * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(i)] = s / lu[static_cast<std::size_t>(i * n + i)];
    }
}

} // namespace detail

BandedSPD::BandedSPD(int dim, int bandwidth) : dim_(dim), bw_(bandwidth) {
    if (dim < 1 || bandwidth < 0) throw std::invalid_argument("BandedSPD: bad shape");
    a_.assign(static_cast<std::size_t>(dim) * (bw_ + 1), 0.0);
}

void BandedSPD::add_sym(int i, int j, double v) {
    const int r = std::max(i, j), c = std::min(i, j);
    if (r - c > bw_) throw std::invalid_argument("BandedSPD: entry outside band");
    a_[static_cast<std::size_t>(r) * (bw_ + 1) + (r - c)] += v;
}

double BandedSPD::coeff(int i, int j) const {
    const int r = std::max(i, j), c = std::min(i, j);
    if (r - c > bw_) return 0.0;
    return a_[static_cast<std::size_t>(r) * (bw_ + 1) + (r - c)];
}

void BandedSPD::factorize() {
    l_ = a_;
    auto L = [this](int i, int j) -> double& {
        return l_[static_cast<std::size_t>(i) * (bw_ + 1) + (i - j)];
    };
    for (int j = 0; j < dim_; ++j) {
        double d = L(j, j);
        for (int k = std::max(0, j - bw_); k < j; ++k) d -= L(j, k) * L(j, k);
        if (!(d > 0.0) || !std::isfinite(d))
            throw SingularMatrixError("banded Cholesky: nonpositive pivot at row " + std::to_string(j));
        const double lj = std::sqrt(d);
        L(j, j) = lj;
        for (int i = j + 1; i <= std::min(dim_ - 1, j + bw_); ++i) {
            double s = L(i, j);
            for (int k = std::max(0, i - bw_); k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / lj;
        }
    }
    factorized_ = true;
}

void BandedSPD::solve_in_place(std::span<double> b) const {
    if (!factorized_) throw std::logic_error("BandedSPD: solve before factorize");
    auto L = [this](int i, int j) {
        return l_[static_cast<std::size_t>(i) * (bw_ + 1) + (i - j)];
    };
    for (int i = 0; i < dim_; ++i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int k = std::max(0, i - bw_); k < i; ++k) s -= L(i, k) * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(i)] = s / L(i, i);
    }
    for (int i = dim_ - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int k = i + 1; k <= std::min(dim_ - 1, i + bw_); ++k)
            s -= L(k, i) * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(i)] = s / L(i, i);
    }
}

std::vector<double> BandedSPD::multiply(std::span<const double> x) const {
    std::vector<double> y(static_cast<std::size_t>(dim_), 0.0);
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = std::max(0, i - bw_); j <= std::min(dim_ - 1, i + bw_); ++j)
            s += coeff(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

PeriodicSPD::PeriodicSPD(int dim, int bandwidth)
    : dim_(dim),
      bw_(bandwidth),
      dense_(dim <= 2 * bandwidth || dim < 3),
      core_(dense_ ? 1 : dim, dense_ ? 0 : bandwidth) {
    if (dim < 1 || bandwidth < 0) throw std::invalid_argument("PeriodicSPD: bad shape");
    if (dense_) {
        dense_a_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
    } else {
        corner_.assign(static_cast<std::size_t>(bw_) * bw_, 0.0);
    }
}

void PeriodicSPD::add_sym(int i, int j, double v) {
    if (dense_) {
        dense_a_[static_cast<std::size_t>(i) * dim_ + j] += v;
        if (i != j) dense_a_[static_cast<std::size_t>(j) * dim_ + i] += v;
        return;
    }
    // canonical orientation: walk upward (mod n) from base by off <= bw
    int d = j - i;
    int base = i;
    if (d < 0) {
        d = -d;
        base = j;
    }
    if (d <= bw_) {
        core_.add_sym(base, base + d, v);
        return;
    }
    const int wrap = dim_ - d;  // distance the other way round
    if (wrap > bw_) throw std::invalid_argument("PeriodicSPD: entry outside cyclic band");
    // pair (row, col) with row < bw and col >= dim-bw
    const int row = std::min(i, j);
    const int col = std::max(i, j);
    corner_[static_cast<std::size_t>(row) * bw_ + (col - (dim_ - bw_))] += v;
}

double PeriodicSPD::coeff(int i, int j) const {
    if (dense_) return dense_a_[static_cast<std::size_t>(i) * dim_ + j];
    int d = std::abs(j - i);
    if (d <= bw_) return core_.coeff(i, j);
    if (dim_ - d > bw_) return 0.0;
    const int row = std::min(i, j);
    const int col = std::max(i, j);
    return corner_[static_cast<std::size_t>(row) * bw_ + (col - (dim_ - bw_))];
}

void PeriodicSPD::factorize() {
    if (dense_) {
        // dense Cholesky, lower triangle
        dense_l_ = dense_a_;
        for (int j = 0; j < dim_; ++j) {
            double d = dense_l_[static_cast<std::size_t>(j) * dim_ + j];
            for (int k = 0; k < j; ++k) {
                const double ljk = dense_l_[static_cast<std::size_t>(j) * dim_ + k];
                d -= ljk * ljk;
            }
            if (!(d > 0.0) || !std::isfinite(d))
                throw SingularMatrixError("dense Cholesky: nonpositive pivot");
            const double lj = std::sqrt(d);
            dense_l_[static_cast<std::size_t>(j) * dim_ + j] = lj;
            for (int i = j + 1; i < dim_; ++i) {
                double s = dense_l_[static_cast<std::size_t>(i) * dim_ + j];
                for (int k = 0; k < j; ++k)
                    s -= dense_l_[static_cast<std::size_t>(i) * dim_ + k] *
                         dense_l_[static_cast<std::size_t>(j) * dim_ + k];
                dense_l_[static_cast<std::size_t>(i) * dim_ + j] = s / lj;
            }
        }
        factorized_ = true;
        return;
    }

    core_.factorize();
    // M = A + W S W^T where W = [e_0..e_{bw-1} | e_{n-bw}..e_{n-1}] and
    // S = [[0, C], [C^T, 0]]. Solve with
    // M^{-1} = A^{-1} - A^{-1} W (I + S K)^{-1} S W^T A^{-1},  K = W^T A^{-1} W.
    const int m = 2 * bw_;
    ainv_w_.assign(static_cast<std::size_t>(dim_) * m, 0.0);
    for (int c = 0; c < m; ++c) {
        std::vector<double> col(static_cast<std::size_t>(dim_), 0.0);
        col[static_cast<std::size_t>(c < bw_ ? c : dim_ - bw_ + (c - bw_))] = 1.0;
        core_.solve_in_place(col);
        for (int i = 0; i < dim_; ++i)
            ainv_w_[static_cast<std::size_t>(c) * dim_ + i] = col[static_cast<std::size_t>(i)];
    }
    // K = W^T A^{-1} W
    std::vector<double> K(static_cast<std::size_t>(m) * m, 0.0);
    for (int r = 0; r < m; ++r) {
        const int row = r < bw_ ? r : dim_ - bw_ + (r - bw_);
        for (int c = 0; c < m; ++c)
            K[static_cast<std::size_t>(r) * m + c] = ainv_w_[static_cast<std::size_t>(c) * dim_ + row];
    }
    // cap = I + S K, with S K = [[C K_lo], [C^T K_hi]] blockwise
    cap_lu_.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int r = 0; r < m; ++r) cap_lu_[static_cast<std::size_t>(r) * m + r] = 1.0;
    for (int r = 0; r < bw_; ++r)
        for (int c = 0; c < m; ++c) {
            double s = 0.0;
            for (int k = 0; k < bw_; ++k)
                s += corner_[static_cast<std::size_t>(r) * bw_ + k] *
                     K[static_cast<std::size_t>(bw_ + k) * m + c];
            cap_lu_[static_cast<std::size_t>(r) * m + c] += s;
        }
    for (int r = 0; r < bw_; ++r)
        for (int c = 0; c < m; ++c) {
            double s = 0.0;
            for (int k = 0; k < bw_; ++k)
                s += corner_[static_cast<std::size_t>(k) * bw_ + r] * K[static_cast<std::size_t>(k) * m + c];
            cap_lu_[static_cast<std::size_t>(bw_ + r) * m + c] += s;
        }
    detail::lu_factor(cap_lu_, cap_piv_, m);
    factorized_ = true;
}

void PeriodicSPD::solve_in_place(std::span<double> b) const {
    if (!factorized_) throw std::logic_error("PeriodicSPD: solve before factorize");
    if (dense_) {
        for (int i = 0; i < dim_; ++i) {
            double s = b[static_cast<std::size_t>(i)];
            for (int k = 0; k < i; ++k)
                s -= dense_l_[static_cast<std::size_t>(i) * dim_ + k] * b[static_cast<std::size_t>(k)];
            b[static_cast<std::size_t>(i)] = s / dense_l_[static_cast<std::size_t>(i) * dim_ + i];
        }
        for (int i = dim_ - 1; i >= 0; --i) {
            double s = b[static_cast<std::size_t>(i)];
            for (int k = i + 1; k < dim_; ++k)
                s -= dense_l_[static_cast<std::size_t>(k) * dim_ + i] * b[static_cast<std::size_t>(k)];
            b[static_cast<std::size_t>(i)] = s / dense_l_[static_cast<std::size_t>(i) * dim_ + i];
        }
        return;
    }
    const int m = 2 * bw_;
    core_.solve_in_place(b);
    // z = S W^T y
    std::vector<double> wty(static_cast<std::size_t>(m), 0.0);
    for (int r = 0; r < m; ++r)
        wty[static_cast<std::size_t>(r)] = b[static_cast<std::size_t>(r < bw_ ? r : dim_ - bw_ + (r - bw_))];
    std::vector<double> z(static_cast<std::size_t>(m), 0.0);
    for (int r = 0; r < bw_; ++r) {
        double s = 0.0;
        for (int k = 0; k < bw_; ++k)
            s += corner_[static_cast<std::size_t>(r) * bw_ + k] * wty[static_cast<std::size_t>(bw_ + k)];
        z[static_cast<std::size_t>(r)] = s;
    }
    for (int r = 0; r < bw_; ++r) {
        double s = 0.0;
        for (int k = 0; k < bw_; ++k)
            s += corner_[static_cast<std::size_t>(k) * bw_ + r] * wty[static_cast<std::size_t>(k)];
        z[static_cast<std::size_t>(bw_ + r)] = s;
    }
    detail::lu_solve(cap_lu_, cap_piv_, m, z);
    for (int c = 0; c < m; ++c) {
        const double q = z[static_cast<std::size_t>(c)];
        if (q == 0.0) continue;
        const double* col = ainv_w_.data() + static_cast<std::size_t>(c) * dim_;
        for (int i = 0; i < dim_; ++i) b[static_cast<std::size_t>(i)] -= col[i] * q;
    }
}

std::vector<double> PeriodicSPD::multiply(std::span<const double> x) const {
    std::vector<double> y(static_cast<std::size_t>(dim_), 0.0);
    if (dense_) {
        for (int i = 0; i < dim_; ++i) {
            double s = 0.0;
            for (int j = 0; j < dim_; ++j)
                s += dense_a_[static_cast<std::size_t>(i) * dim_ + j] * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = s;
        }
        return y;
    }
    y = core_.multiply(x);
    for (int r = 0; r < bw_; ++r)
        for (int c = 0; c < bw_; ++c) {
            const double v = corner_[static_cast<std::size_t>(r) * bw_ + c];
            if (v == 0.0) continue;
            y[static_cast<std::size_t>(r)] += v * x[static_cast<std::size_t>(dim_ - bw_ + c)];
            y[static_cast<std::size_t>(dim_ - bw_ + c)] += v * x[static_cast<std::size_t>(r)];
        }
    return y;
}

} // namespace swfem
