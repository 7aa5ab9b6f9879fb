#include "tdk/snf.hpp"

#include <stdexcept>

namespace tdk {

namespace {

int cmpabs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

class Reducer {
public:
    Reducer(const IntMatrix& m, SmithOptions opts)
        : a_(m), opts_(opts)
    {
        if (opts_.left) {
            u_ = IntMatrix::identity(m.rows());
            u_inv_ = IntMatrix::identity(m.rows());
        }
        if (opts_.right) {
            v_ = IntMatrix::identity(m.cols());
            v_inv_ = IntMatrix::identity(m.cols());
        }
    }

    SmithForm run()
    {
        const std::size_t rows = a_.rows();
        const std::size_t cols = a_.cols();
        std::size_t t = 0;
        while (t < rows && t < cols) {
            if (!move_min_to(t, t, t))
                break;
            while (true) {
                bool clean = true;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    if (a_(i, t) == 0)
                        continue;
                    BigInt q = a_(i, t) / a_(t, t);
                    if (q != 0)
                        row_axpy(i, t, -q);
                    if (a_(i, t) != 0)
                        clean = false;
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (a_(t, j) == 0)
                        continue;
                    BigInt q = a_(t, j) / a_(t, t);
                    if (q != 0)
                        col_axpy(j, t, -q);
                    if (a_(t, j) != 0)
                        clean = false;
                }
                if (!clean) {
                    move_min_in_cross(t);
                    continue;
                }
                // Enforce divisibility of the remaining block by the pivot.
                bool divisible = true;
                for (std::size_t i = t + 1; i < rows && divisible; ++i)
                    for (std::size_t j = t + 1; j < cols; ++j)
                        if (a_(i, j) != 0 && !mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
                            row_axpy(t, i, BigInt(1));
                            divisible = false;
                            break;
                        }
                if (divisible)
                    break;
            }
            if (a_(t, t) < 0)
                row_negate(t);
            ++t;
        }
        SmithForm f;
        f.rank = t;
        f.D = std::move(a_);
        f.U = std::move(u_);
        f.U_inv = std::move(u_inv_);
        f.V = std::move(v_);
        f.V_inv = std::move(v_inv_);
        return f;
    }

private:
    // Finds the nonzero entry of least magnitude in the block [t.., t..]
    // and moves it to (t, t).
    bool move_min_to(std::size_t t, std::size_t r0, std::size_t c0)
    {
        std::size_t best_r = 0, best_c = 0;
        bool found = false;
        BigInt best;
        for (std::size_t i = r0; i < a_.rows(); ++i)
            for (std::size_t j = c0; j < a_.cols(); ++j) {
                const BigInt& x = a_(i, j);
                if (x == 0)
                    continue;
                if (!found || cmpabs(x, best) < 0) {
                    best = x;
                    best_r = i;
                    best_c = j;
                    found = true;
                    if (best == 1 || best == -1)
                        goto done;
                }
            }
    done:
        if (!found)
            return false;
        row_swap(t, best_r);
        col_swap(t, best_c);
        return true;
    }

    // After a partial elimination pass, the smallest nonzero remainder in
    // row t or column t becomes the new pivot.
    void move_min_in_cross(std::size_t t)
    {
        std::size_t best_r = t, best_c = t;
        BigInt best = a_(t, t);
        for (std::size_t i = t + 1; i < a_.rows(); ++i)
            if (a_(i, t) != 0 && cmpabs(a_(i, t), best) < 0) {
                best = a_(i, t);
                best_r = i;
                best_c = t;
            }
        for (std::size_t j = t + 1; j < a_.cols(); ++j)
            if (a_(t, j) != 0 && cmpabs(a_(t, j), best) < 0) {
                best = a_(t, j);
                best_r = t;
                best_c = j;
            }
        row_swap(t, best_r);
        col_swap(t, best_c);
    }

    // row_i += q * row_j
    void row_axpy(std::size_t i, std::size_t j, const BigInt& q)
    {
        for (std::size_t c = 0; c < a_.cols(); ++c)
            if (a_(j, c) != 0)
                a_(i, c) += q * a_(j, c);
        if (opts_.left) {
            for (std::size_t c = 0; c < u_.cols(); ++c)
                if (u_(j, c) != 0)
                    u_(i, c) += q * u_(j, c);
            // U^{-1} <- U^{-1} E^{-1}: col_j -= q * col_i
            for (std::size_t r = 0; r < u_inv_.rows(); ++r)
                if (u_inv_(r, i) != 0)
                    u_inv_(r, j) -= q * u_inv_(r, i);
        }
    }

    // col_i += q * col_j
    void col_axpy(std::size_t i, std::size_t j, const BigInt& q)
    {
        for (std::size_t r = 0; r < a_.rows(); ++r)
            if (a_(r, j) != 0)
                a_(r, i) += q * a_(r, j);
        if (opts_.right) {
            for (std::size_t r = 0; r < v_.rows(); ++r)
                if (v_(r, j) != 0)
                    v_(r, i) += q * v_(r, j);
            // V^{-1} <- E^{-1} V^{-1}: row_j -= q * row_i
            for (std::size_t c = 0; c < v_inv_.cols(); ++c)
                if (v_inv_(i, c) != 0)
                    v_inv_(j, c) -= q * v_inv_(i, c);
        }
    }

    void row_swap(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t c = 0; c < a_.cols(); ++c)
            std::swap(a_(i, c), a_(j, c));
        if (opts_.left) {
            for (std::size_t c = 0; c < u_.cols(); ++c)
                std::swap(u_(i, c), u_(j, c));
            for (std::size_t r = 0; r < u_inv_.rows(); ++r)
                std::swap(u_inv_(r, i), u_inv_(r, j));
        }
    }

    void col_swap(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t r = 0; r < a_.rows(); ++r)
            std::swap(a_(r, i), a_(r, j));
        if (opts_.right) {
            for (std::size_t r = 0; r < v_.rows(); ++r)
                std::swap(v_(r, i), v_(r, j));
            for (std::size_t c = 0; c < v_inv_.cols(); ++c)
                std::swap(v_inv_(i, c), v_inv_(j, c));
        }
    }

    void row_negate(std::size_t i)
    {
        for (std::size_t c = 0; c < a_.cols(); ++c)
            a_(i, c) = -a_(i, c);
        if (opts_.left) {
            for (std::size_t c = 0; c < u_.cols(); ++c)
                u_(i, c) = -u_(i, c);
            for (std::size_t r = 0; r < u_inv_.rows(); ++r)
                u_inv_(r, i) = -u_inv_(r, i);
        }
    }

    IntMatrix a_;
    IntMatrix u_, u_inv_, v_, v_inv_;
    SmithOptions opts_;
};

}  // namespace

std::vector<BigInt> SmithForm::diagonal() const
{
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i)
        d.push_back(D(i, i));
    return d;
}

SmithForm smith_normal_form(const IntMatrix& m, SmithOptions opts)
{
    return Reducer(m, opts).run();
}

std::size_t rank(const IntMatrix& m)
{
    return smith_normal_form(m, {false, false}).rank;
}

IntMatrix kernel_basis(const IntMatrix& m)
{
    SmithForm f = smith_normal_form(m, {false, true});
    return f.V.col_range(f.rank, m.cols());
}

IntMatrix image_basis(const IntMatrix& m)
{
    SmithForm f = smith_normal_form(m, {true, false});
    IntMatrix out(m.rows(), f.rank);
    for (std::size_t i = 0; i < f.rank; ++i)
        for (std::size_t r = 0; r < m.rows(); ++r)
            out(r, i) = f.U_inv(r, i) * f.D(i, i);
    return out;
}

std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: right-hand side has length " + std::to_string(b.size()) +
                                    ", matrix has " + std::to_string(m.rows()) + " rows");
    SmithForm f = smith_normal_form(m);
    IntVector y = f.U * b;
    IntVector x(m.cols(), BigInt(0));
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < f.rank) {
            if (!mpz_divisible_p(y[i].get_mpz_t(), f.D(i, i).get_mpz_t()))
                return std::nullopt;
            mpz_divexact(x[i].get_mpz_t(), y[i].get_mpz_t(), f.D(i, i).get_mpz_t());
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return f.V * x;
}

}  // namespace tdk
