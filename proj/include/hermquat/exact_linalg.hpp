#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

// Exact integer/rational arithmetic and the dense linear algebra used by every
// other module. Matrices are small (at most 8x8) and stored densely, row-major.

namespace hermquat
{
    using Int = mpz_class;
    using Rat = mpq_class; // gmpxx keeps results canonical (lowest terms, den > 0)

    inline constexpr long kValuationInfinity = std::numeric_limits<long>::max();

    // ---------------------------------------------------------------------
    // Scalars
    // ---------------------------------------------------------------------

    inline Rat make_rat(const Int &num, const Int &den = 1)
    {
        if (den == 0)
            throw InputError("rational with zero denominator");
        Rat r(num, den);
        r.canonicalize();
        return r;
    }

    inline bool is_integer(const Rat &x) { return x.get_den() == 1; }

    inline int sign(const Rat &x) { return sgn(x); }
    inline int sign(const Int &x) { return sgn(x); }

    // "num/den", always with an explicit denominator.
    inline std::string to_string(const Rat &x)
    {
        return x.get_num().get_str() + "/" + x.get_den().get_str();
    }

    inline Rat parse_rat(const std::string &text)
    {
        auto slash = text.find('/');
        try
        {
            if (slash == std::string::npos)
                return make_rat(Int(text));
            return make_rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
        }
        catch (const std::invalid_argument &)
        {
            throw InputError("malformed rational '" + text + "'");
        }
    }

    inline bool is_prime(const Int &p)
    {
        if (p < 2)
            return false;
        return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
    }

    inline void require_prime(const Int &p)
    {
        if (!is_prime(p))
            throw InputError(p.get_str() + " is not prime");
    }

    inline long valuation(const Int &x, const Int &p)
    {
        require_prime(p);
        if (x == 0)
            return kValuationInfinity;
        Int rest = x;
        long v = 0;
        while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t()))
        {
            rest /= p;
            ++v;
        }
        return v;
    }

    // p-adic valuation; kValuationInfinity for zero.
    inline long valuation(const Rat &x, const Int &p)
    {
        if (x == 0)
        {
            require_prime(p);
            return kValuationInfinity;
        }
        return valuation(x.get_num(), p) - valuation(x.get_den(), p);
    }

    // Integer expression templates would otherwise be ambiguous.
    template <class U>
    long valuation(const __gmp_expr<mpz_t, U> &x, const Int &p)
    {
        return valuation(Int(x), p);
    }

    inline Int mod_floor(const Int &a, const Int &m)
    {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        return r;
    }

    inline Int pow_int(const Int &base, unsigned long e)
    {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
        return r;
    }

    inline std::optional<Int> inverse_mod(const Int &a, const Int &m)
    {
        Int r;
        if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
            return std::nullopt;
        return mod_floor(r, m);
    }

    // Image of a rational with denominator prime to m in Z/mZ.
    inline Int reduce_mod(const Rat &x, const Int &m)
    {
        auto inv = inverse_mod(x.get_den(), m);
        if (!inv)
            throw InputError("denominator of " + to_string(x) + " not invertible mod " + m.get_str());
        return mod_floor(x.get_num() * *inv, m);
    }

    // Square root modulo an odd prime (Tonelli-Shanks); nullopt for non-residues.
    inline std::optional<Int> sqrt_mod_prime(const Int &a_in, const Int &p)
    {
        Int a = mod_floor(a_in, p);
        if (a == 0)
            return Int(0);
        if (p == 2)
            return a;
        if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
            return std::nullopt;
        Int q = p - 1;
        unsigned long s = 0;
        while (mpz_even_p(q.get_mpz_t()))
        {
            q /= 2;
            ++s;
        }
        Int z = 2;
        while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1)
            ++z;
        auto powm = [&](const Int &b, const Int &e)
        {
            Int r;
            mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
            return r;
        };
        Int c = powm(z, q);
        Int x = powm(a, (q + 1) / 2);
        Int t = powm(a, q);
        unsigned long m = s;
        while (t != 1)
        {
            unsigned long i = 0;
            Int tt = t;
            while (tt != 1)
            {
                tt = mod_floor(tt * tt, p);
                ++i;
            }
            Int b = c;
            for (unsigned long j = 0; j + i + 1 < m; ++j)
                b = mod_floor(b * b, p);
            x = mod_floor(x * b, p);
            c = mod_floor(b * b, p);
            t = mod_floor(t * c, p);
            m = i;
        }
        return x;
    }

    // Distinct prime divisors of |n| in increasing order (trial division).
    inline std::vector<Int> prime_divisors(Int n)
    {
        if (n < 0)
            n = -n;
        std::vector<Int> out;
        if (n == 0)
            throw InputError("prime divisors of zero");
        for (Int p = 2; p * p <= n; ++p)
        {
            if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()))
            {
                out.push_back(p);
                while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()))
                    n /= p;
            }
        }
        if (n > 1)
            out.push_back(n);
        return out;
    }

    inline bool is_squarefree(const Int &n)
    {
        if (n == 0)
            return false;
        for (const Int &p : prime_divisors(n))
            if (valuation(n, p) > 1)
                return false;
        return true;
    }

    // Exact square root of a non-negative rational square.
    inline std::optional<Rat> rational_sqrt(const Rat &x)
    {
        if (x < 0)
            return std::nullopt;
        const Int &num = x.get_num();
        const Int &den = x.get_den();
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
            return std::nullopt;
        return make_rat(sqrt(num), sqrt(den));
    }

    // ---------------------------------------------------------------------
    // Dense matrices
    // ---------------------------------------------------------------------

    template <class T>
    class Matrix
    {
    public:
        Matrix() = default;
        Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
        Matrix(std::initializer_list<std::initializer_list<T>> init)
        {
            rows_ = init.size();
            cols_ = rows_ ? init.begin()->size() : 0;
            data_.reserve(rows_ * cols_);
            for (const auto &row : init)
            {
                if (row.size() != cols_)
                    throw InputError("ragged matrix literal");
                for (const auto &x : row)
                    data_.push_back(x);
            }
        }

        static Matrix identity(std::size_t n)
        {
            Matrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                m(i, i) = T(1);
            return m;
        }

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        bool is_square() const noexcept { return rows_ == cols_; }

        T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
        const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

        std::vector<T> row(std::size_t i) const
        {
            return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
        }
        std::vector<T> col(std::size_t j) const
        {
            std::vector<T> out(rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                out[i] = (*this)(i, j);
            return out;
        }
        void set_row(std::size_t i, const std::vector<T> &v)
        {
            for (std::size_t j = 0; j < cols_; ++j)
                (*this)(i, j) = v[j];
        }

        Matrix transpose() const
        {
            Matrix t(cols_, rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t j = 0; j < cols_; ++j)
                    t(j, i) = (*this)(i, j);
            return t;
        }

        bool is_symmetric() const
        {
            if (!is_square())
                return false;
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t j = i + 1; j < cols_; ++j)
                    if ((*this)(i, j) != (*this)(j, i))
                        return false;
            return true;
        }

        friend bool operator==(const Matrix &a, const Matrix &b)
        {
            return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
        }
        friend bool operator!=(const Matrix &a, const Matrix &b) { return !(a == b); }

        friend Matrix operator*(const Matrix &a, const Matrix &b)
        {
            if (a.cols_ != b.rows_)
                throw InputError("matrix product dimension mismatch");
            Matrix c(a.rows_, b.cols_);
            for (std::size_t i = 0; i < a.rows_; ++i)
                for (std::size_t k = 0; k < a.cols_; ++k)
                {
                    if (a(i, k) == 0)
                        continue;
                    for (std::size_t j = 0; j < b.cols_; ++j)
                        c(i, j) += a(i, k) * b(k, j);
                }
            return c;
        }
        friend Matrix operator+(Matrix a, const Matrix &b)
        {
            if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
                throw InputError("matrix sum dimension mismatch");
            for (std::size_t i = 0; i < a.data_.size(); ++i)
                a.data_[i] += b.data_[i];
            return a;
        }
        friend Matrix operator-(Matrix a, const Matrix &b)
        {
            if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
                throw InputError("matrix difference dimension mismatch");
            for (std::size_t i = 0; i < a.data_.size(); ++i)
                a.data_[i] -= b.data_[i];
            return a;
        }
        friend Matrix operator*(const T &s, Matrix a)
        {
            for (auto &x : a.data_)
                x *= s;
            return a;
        }

        friend std::ostream &operator<<(std::ostream &os, const Matrix &m)
        {
            os << '[';
            for (std::size_t i = 0; i < m.rows_; ++i)
            {
                os << (i ? ", [" : "[");
                for (std::size_t j = 0; j < m.cols_; ++j)
                    os << (j ? ", " : "") << m(i, j);
                os << ']';
            }
            return os << ']';
        }

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<T> data_;
    };

    using IntMat = Matrix<Int>;
    using RatMat = Matrix<Rat>;
    using RatVec = std::vector<Rat>;
    using IntVec = std::vector<Int>;

    inline RatMat to_rat(const IntMat &m)
    {
        RatMat r(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                r(i, j) = Rat(m(i, j));
        return r;
    }

    inline bool is_integral(const RatMat &m)
    {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!is_integer(m(i, j)))
                    return false;
        return true;
    }

    inline IntMat to_int(const RatMat &m)
    {
        IntMat r(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
            {
                if (!is_integer(m(i, j)))
                    throw InputError("matrix entry " + to_string(m(i, j)) + " is not an integer");
                r(i, j) = m(i, j).get_num();
            }
        return r;
    }

    // Least common denominator of all entries.
    inline Int common_denominator(const RatMat &m)
    {
        Int l = 1;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den().get_mpz_t());
        return l;
    }

    inline RatVec row_times(const RatVec &x, const RatMat &m)
    {
        if (x.size() != m.rows())
            throw InputError("vector-matrix dimension mismatch");
        RatVec out(m.cols(), Rat(0));
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            if (x[i] == 0)
                continue;
            for (std::size_t j = 0; j < m.cols(); ++j)
                out[j] += x[i] * m(i, j);
        }
        return out;
    }

    inline Rat dot(const RatVec &a, const RatVec &b)
    {
        Rat s = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += a[i] * b[i];
        return s;
    }

    // x^T G x for row vector x.
    inline Rat quadratic_value(const RatMat &gram, const RatVec &x)
    {
        return dot(row_times(x, gram), x);
    }

    namespace detail
    {
        struct Echelon
        {
            RatMat reduced;
            std::vector<std::size_t> pivots;
            Rat det = 1; // meaningful only for square input
        };

        // Gauss-Jordan elimination to reduced row echelon form.
        inline Echelon echelon(RatMat a)
        {
            Echelon e;
            std::size_t r = 0;
            for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c)
            {
                std::size_t piv = r;
                while (piv < a.rows() && a(piv, c) == 0)
                    ++piv;
                if (piv == a.rows())
                {
                    e.det = 0;
                    continue;
                }
                if (piv != r)
                {
                    for (std::size_t j = 0; j < a.cols(); ++j)
                        std::swap(a(piv, j), a(r, j));
                    e.det = -e.det;
                }
                Rat pv = a(r, c);
                e.det *= pv;
                for (std::size_t j = 0; j < a.cols(); ++j)
                    a(r, j) /= pv;
                for (std::size_t i = 0; i < a.rows(); ++i)
                {
                    if (i == r || a(i, c) == 0)
                        continue;
                    Rat f = a(i, c);
                    for (std::size_t j = 0; j < a.cols(); ++j)
                        a(i, j) -= f * a(r, j);
                }
                e.pivots.push_back(c);
                ++r;
            }
            if (r < a.rows())
                e.det = 0;
            e.reduced = std::move(a);
            return e;
        }
    } // namespace detail

    inline Rat determinant(const RatMat &m)
    {
        if (!m.is_square())
            throw InputError("determinant of non-square matrix");
        if (m.rows() == 0)
            return 1;
        return detail::echelon(m).det;
    }

    inline Int determinant(const IntMat &m) { return determinant(to_rat(m)).get_num(); }

    inline std::size_t rank(const RatMat &m) { return detail::echelon(m).pivots.size(); }

    inline RatMat inverse(const RatMat &m)
    {
        if (!m.is_square())
            throw InputError("inverse of non-square matrix");
        const std::size_t n = m.rows();
        RatMat aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i)
        {
            for (std::size_t j = 0; j < n; ++j)
                aug(i, j) = m(i, j);
            aug(i, n + i) = 1;
        }
        auto e = detail::echelon(aug);
        if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
            throw RankError("matrix is singular");
        RatMat inv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                inv(i, j) = e.reduced(i, n + j);
        return inv;
    }

    // Coordinates c with c * basis = x (basis rows independent); nullopt if x
    // is outside the row span.
    inline std::optional<RatVec> solve_row(const RatMat &basis, const RatVec &x)
    {
        const std::size_t k = basis.rows(), n = basis.cols();
        RatMat aug(n, k + 1);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j)
                aug(j, i) = basis(i, j);
        for (std::size_t j = 0; j < n; ++j)
            aug(j, k) = x[j];
        auto e = detail::echelon(aug);
        if (!e.pivots.empty() && e.pivots.back() == k)
            return std::nullopt;
        if (e.pivots.size() != k)
            throw RankError("basis rows are dependent");
        RatVec c(k);
        for (std::size_t i = 0; i < k; ++i)
            c[i] = e.reduced(i, k);
        return c;
    }

    // ---------------------------------------------------------------------
    // Hermite normal form
    // ---------------------------------------------------------------------

    struct HnfResult
    {
        IntMat H; // row Hermite normal form (zero rows last)
        IntMat U; // unimodular, U * M = H
        std::size_t rank = 0;
        std::vector<std::size_t> pivots;
    };

    // Row-style HNF of an arbitrary integer matrix: pivots positive, entries
    // above each pivot reduced into [0, pivot).
    inline HnfResult hnf_general(const IntMat &m)
    {
        HnfResult res;
        res.H = m;
        res.U = IntMat::identity(m.rows());
        IntMat &H = res.H;
        IntMat &U = res.U;
        const std::size_t rows = m.rows(), cols = m.cols();

        auto combine = [&](IntMat &A, std::size_t r1, std::size_t r2, const Int &a, const Int &b, const Int &c, const Int &d)
        {
            // (row r1, row r2) <- (a*r1 + b*r2, c*r1 + d*r2)
            for (std::size_t j = 0; j < A.cols(); ++j)
            {
                Int x = A(r1, j), y = A(r2, j);
                A(r1, j) = a * x + b * y;
                A(r2, j) = c * x + d * y;
            }
        };

        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c)
        {
            for (std::size_t i = r + 1; i < rows; ++i)
            {
                if (H(i, c) == 0)
                    continue;
                Int a = H(r, c), b = H(i, c), g, x, y;
                mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                Int p = -b / g, q = a / g;
                combine(H, r, i, x, y, p, q);
                combine(U, r, i, x, y, p, q);
            }
            if (H(r, c) == 0)
                continue;
            res.pivots.push_back(c);
            ++r;
        }
        for (std::size_t k = 0; k < res.pivots.size(); ++k)
        {
            std::size_t c = res.pivots[k];
            if (H(k, c) < 0)
            {
                for (std::size_t j = 0; j < cols; ++j)
                    H(k, j) = -H(k, j);
                for (std::size_t j = 0; j < U.cols(); ++j)
                    U(k, j) = -U(k, j);
            }
        }
        for (std::size_t k = 0; k < res.pivots.size(); ++k)
        {
            std::size_t c = res.pivots[k];
            for (std::size_t i = 0; i < k; ++i)
            {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), H(i, c).get_mpz_t(), H(k, c).get_mpz_t());
                if (q == 0)
                    continue;
                for (std::size_t j = 0; j < cols; ++j)
                    H(i, j) -= q * H(k, j);
                for (std::size_t j = 0; j < U.cols(); ++j)
                    U(i, j) -= q * U(k, j);
            }
        }
        res.rank = r;
        return res;
    }

    // HNF of a full-row-rank integer matrix.
    inline std::pair<IntMat, IntMat> hnf(const IntMat &m)
    {
        auto res = hnf_general(m);
        if (res.rank < m.rows())
            throw RankError("hnf: matrix is not of full row rank (rank " + std::to_string(res.rank) +
                            " < " + std::to_string(m.rows()) + ")");
        return {res.H, res.U};
    }

    // Z-basis (HNF rows) of the lattice spanned by the rows of a rational matrix.
    inline RatMat lattice_basis(const RatMat &generators)
    {
        Int den = common_denominator(generators);
        IntMat scaled = to_int(Rat(den) * generators);
        auto res = hnf_general(scaled);
        RatMat out(res.rank, generators.cols());
        for (std::size_t i = 0; i < res.rank; ++i)
            for (std::size_t j = 0; j < generators.cols(); ++j)
                out(i, j) = make_rat(res.H(i, j), den);
        return out;
    }

    // Rows spanning {y in Z^n : y * M^T = 0}, i.e. integer vectors orthogonal to
    // every row of M.
    inline IntMat integer_kernel(const IntMat &m)
    {
        // HNF of M^T: U * M^T = H, zero rows of H give kernel rows of U.
        auto res = hnf_general(m.transpose());
        const std::size_t n = m.cols();
        IntMat k(n - res.rank, n);
        for (std::size_t i = res.rank; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                k(i - res.rank, j) = res.U(i, j);
        return k;
    }

    // (row span of M over Q) intersected with Z^n, as HNF rows.
    inline IntMat saturation(const IntMat &m)
    {
        IntMat ker = integer_kernel(m);
        if (ker.rows() == 0)
            return IntMat::identity(m.cols());
        IntMat sat = integer_kernel(ker);
        auto res = hnf_general(sat);
        IntMat out(res.rank, m.cols());
        for (std::size_t i = 0; i < res.rank; ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                out(i, j) = res.H(i, j);
        return out;
    }

    // ---------------------------------------------------------------------
    // Congruence diagonalisation and signature
    // ---------------------------------------------------------------------

    struct Diagonalization
    {
        RatMat D; // diagonal, P^T S P = D
        RatMat P; // invertible; columns are the new basis vectors
    };

    namespace detail
    {
        // New basis vector b_dst <- b_dst + coef * b_src.
        inline void add_basis(RatMat &A, RatMat &P, std::size_t dst, std::size_t src, const Rat &coef)
        {
            const std::size_t n = A.rows();
            for (std::size_t i = 0; i < n; ++i)
                P(i, dst) += coef * P(i, src);
            for (std::size_t j = 0; j < n; ++j)
                A(dst, j) += coef * A(src, j);
            for (std::size_t i = 0; i < n; ++i)
                A(i, dst) += coef * A(i, src);
        }

        inline void swap_basis(RatMat &A, RatMat &P, std::size_t i, std::size_t j)
        {
            if (i == j)
                return;
            const std::size_t n = A.rows();
            for (std::size_t k = 0; k < n; ++k)
                std::swap(P(k, i), P(k, j));
            for (std::size_t k = 0; k < n; ++k)
                std::swap(A(i, k), A(j, k));
            for (std::size_t k = 0; k < n; ++k)
                std::swap(A(k, i), A(k, j));
        }
    } // namespace detail

    // Symmetric Gaussian elimination. With a prime, pivots are chosen of minimal
    // p-adic valuation so that P stays in GL_n(Z_(p)) for p-integral odd-p input.
    inline Diagonalization congruence_diagonalize(const RatMat &S, const std::optional<Int> &prime = std::nullopt)
    {
        if (!S.is_symmetric())
            throw InputError("congruence_diagonalize: matrix is not symmetric");
        if (prime)
            require_prime(*prime);
        const std::size_t n = S.rows();
        RatMat A = S;
        RatMat P = RatMat::identity(n);

        for (std::size_t k = 0; k < n; ++k)
        {
            std::optional<std::size_t> pivot;
            std::optional<std::pair<std::size_t, std::size_t>> offdiag;
            if (prime)
            {
                long best = kValuationInfinity;
                for (std::size_t i = k; i < n; ++i)
                    for (std::size_t j = i; j < n; ++j)
                    {
                        if (A(i, j) == 0)
                            continue;
                        long v = valuation(A(i, j), *prime);
                        bool diag = i == j;
                        // diagonal entries win ties
                        if (v < best || (v == best && diag && !pivot))
                        {
                            best = v;
                            if (diag)
                            {
                                pivot = i;
                                offdiag.reset();
                            }
                            else
                            {
                                pivot.reset();
                                offdiag = std::make_pair(i, j);
                            }
                        }
                    }
            }
            else
            {
                for (std::size_t i = k; i < n && !pivot; ++i)
                    if (A(i, i) != 0)
                        pivot = i;
                for (std::size_t i = k; i < n && !pivot && !offdiag; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (A(i, j) != 0)
                        {
                            offdiag = std::make_pair(i, j);
                            break;
                        }
            }
            if (!pivot && !offdiag)
                break; // trailing block is zero
            if (!pivot)
            {
                auto [i, j] = *offdiag;
                // A(i,i) + 2c A(i,j) + c^2 A(j,j) vanishes for at most two values of c
                Rat c = 1;
                while (A(i, i) + 2 * c * A(i, j) + c * c * A(j, j) == 0)
                    c += 1;
                detail::add_basis(A, P, i, j, c);
                pivot = i;
            }
            detail::swap_basis(A, P, k, *pivot);
            for (std::size_t r = k + 1; r < n; ++r)
            {
                if (A(k, r) == 0)
                    continue;
                Rat c = A(k, r) / A(k, k);
                detail::add_basis(A, P, r, k, -c);
            }
        }
        return {A, P};
    }

    struct Signature
    {
        int pos = 0;
        int neg = 0;
        int zero = 0;
        friend bool operator==(const Signature &, const Signature &) = default;
    };

    inline Signature signature(const RatMat &S)
    {
        auto diag = congruence_diagonalize(S);
        Signature sig;
        for (std::size_t i = 0; i < S.rows(); ++i)
        {
            int s = sgn(diag.D(i, i));
            (s > 0 ? sig.pos : s < 0 ? sig.neg : sig.zero)++;
        }
        return sig;
    }

} // namespace hermquat
