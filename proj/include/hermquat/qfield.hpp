#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>

#include "exact_linalg.hpp"

// Imaginary quadratic field L = Q(sqrt d) with ring of integers B = Z + Z*omega,
// omega = (1 + sqrt d)/2 for d = 1 mod 4 and omega = sqrt d otherwise.
// Elements are stored in the omega basis so integrality is coefficient-wise.

namespace hermquat
{

    // omega^2 = trace * omega - norm
    inline std::int64_t omega_trace(std::int64_t d) { return (((d % 4) + 4) % 4 == 1) ? 1 : 0; }
    inline std::int64_t omega_norm(std::int64_t d) { return omega_trace(d) ? (1 - d) / 4 : -d; }

    // a + b*omega. Carries the field's d so products know the minimal polynomial;
    // d == 0 marks a field-agnostic rational (b == 0).
    class QElem
    {
    public:
        QElem() = default;
        QElem(const Rat &a) : a_(a) {}
        QElem(long a) : a_(a) {}
        QElem(std::int64_t d, const Rat &a, const Rat &b) : d_(d), a_(a), b_(b)
        {
            if (d == 0 && b != 0)
                throw InputError("irrational QElem without a field");
        }

        const Rat &a() const noexcept { return a_; }
        const Rat &b() const noexcept { return b_; }
        std::int64_t d() const noexcept { return d_; }

        bool is_rational() const { return b_ == 0; }
        bool is_integral() const { return is_integer(a_) && is_integer(b_); }
        bool is_zero() const { return a_ == 0 && b_ == 0; }

        QElem conj() const
        {
            if (b_ == 0)
                return *this;
            return QElem(d_, a_ + b_ * omega_trace(d_), -b_);
        }
        Rat trace() const { return 2 * a_ + b_ * omega_trace(d_); }
        Rat norm() const
        {
            return a_ * a_ + a_ * b_ * omega_trace(d_) + b_ * b_ * omega_norm(d_);
        }

        friend bool operator==(const QElem &x, const QElem &y)
        {
            return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
        }
        friend bool operator!=(const QElem &x, const QElem &y) { return !(x == y); }

        friend QElem operator+(const QElem &x, const QElem &y)
        {
            return QElem(common_d(x, y), x.a_ + y.a_, x.b_ + y.b_);
        }
        friend QElem operator-(const QElem &x, const QElem &y)
        {
            return QElem(common_d(x, y), x.a_ - y.a_, x.b_ - y.b_);
        }
        friend QElem operator-(const QElem &x) { return QElem(x.d_, -x.a_, -x.b_); }
        friend QElem operator*(const QElem &x, const QElem &y)
        {
            std::int64_t d = common_d(x, y);
            Rat bb = x.b_ * y.b_;
            Rat a = x.a_ * y.a_;
            Rat b = x.a_ * y.b_ + x.b_ * y.a_;
            if (bb != 0)
            {
                a -= bb * omega_norm(d);
                b += bb * omega_trace(d);
            }
            return QElem(d, a, b);
        }
        friend QElem operator/(const QElem &x, const QElem &y)
        {
            Rat n = y.norm();
            if (n == 0)
                throw std::domain_error("division by zero in quadratic field");
            QElem num = x * y.conj();
            return QElem(num.d_, num.a_ / n, num.b_ / n);
        }
        QElem &operator+=(const QElem &y) { return *this = *this + y; }
        QElem &operator-=(const QElem &y) { return *this = *this - y; }
        QElem &operator*=(const QElem &y) { return *this = *this * y; }

        friend std::ostream &operator<<(std::ostream &os, const QElem &x)
        {
            return os << '(' << x.a_ << ")+(" << x.b_ << ")w";
        }

    private:
        static std::int64_t common_d(const QElem &x, const QElem &y)
        {
            if (x.d_ != 0 && y.d_ != 0 && x.d_ != y.d_)
                throw InputError("mixing elements of different quadratic fields");
            return x.d_ != 0 ? x.d_ : y.d_;
        }

        std::int64_t d_ = 0;
        Rat a_ = 0;
        Rat b_ = 0;
    };

    inline QElem conj(const QElem &x) { return x.conj(); }
    inline Rat norm_L(const QElem &x) { return x.norm(); }
    inline Rat trace_L(const QElem &x) { return x.trace(); }

    // Vectors of V = L^2.
    using LVec = std::array<QElem, 2>;

    inline LVec operator*(const QElem &l, const LVec &v) { return {l * v[0], l * v[1]}; }
    inline LVec operator+(const LVec &x, const LVec &y) { return {x[0] + y[0], x[1] + y[1]}; }
    inline LVec operator-(const LVec &x, const LVec &y) { return {x[0] - y[0], x[1] - y[1]}; }

    enum class SplitType
    {
        Split,
        Inert,
        Ramified
    };

    inline const char *to_string(SplitType s)
    {
        switch (s)
        {
        case SplitType::Split:
            return "Split";
        case SplitType::Inert:
            return "Inert";
        case SplitType::Ramified:
            return "Ramified";
        }
        return "?";
    }

    enum class OmegaKind
    {
        HalfIntegral, // (1 + sqrt d)/2
        SqrtD         // sqrt d
    };

    struct RamifiedUniformizer
    {
        QElem pi;  // sqrt d, so conj(pi) = -pi
        Int unit;  // pi * conj(pi) = p * unit
    };

    class QuadField
    {
    public:
        explicit QuadField(std::int64_t d) : d_(d)
        {
            if (d >= 0)
                throw InputError("field parameter d must be negative, got " + std::to_string(d));
            if (!is_squarefree(Int(static_cast<long>(d))))
                throw InputError("field parameter d must be square-free, got " + std::to_string(d));
        }

        std::int64_t d() const noexcept { return d_; }
        // Field discriminant D = d or 4d.
        std::int64_t disc() const noexcept { return omega_trace(d_) ? d_ : 4 * d_; }
        OmegaKind omega_kind() const noexcept { return omega_trace(d_) ? OmegaKind::HalfIntegral : OmegaKind::SqrtD; }
        // (a, b) with omega^2 + a*omega + b = 0.
        std::pair<std::int64_t, std::int64_t> min_poly() const { return {-omega_trace(d_), omega_norm(d_)}; }
        std::int64_t omega_tr() const noexcept { return omega_trace(d_); }
        std::int64_t omega_n() const noexcept { return omega_norm(d_); }

        QElem elem(const Rat &a, const Rat &b) const { return QElem(d_, a, b); }
        QElem omega() const { return elem(0, 1); }
        QElem sqrt_d() const { return omega_trace(d_) ? elem(-1, 2) : elem(0, 1); }
        // 1/sqrt d, a generator of the inverse different.
        QElem inv_sqrt_d() const
        {
            QElem s = sqrt_d();
            return QElem(d_, s.a() / Rat(d_), s.b() / Rat(d_));
        }
        // x + y*sqrt d expressed in the omega basis.
        QElem from_sqrt_basis(const Rat &x, const Rat &y) const { return elem(x, 0) + elem(y, 0) * sqrt_d(); }

        SplitType splitting(const Int &p) const
        {
            require_prime(p);
            Int D = Int(static_cast<long>(disc()));
            if (mpz_divisible_p(D.get_mpz_t(), p.get_mpz_t()))
                return SplitType::Ramified;
            int k = mpz_kronecker(D.get_mpz_t(), p.get_mpz_t());
            return k == 1 ? SplitType::Split : SplitType::Inert;
        }

        RamifiedUniformizer ramified_uniformizer(const Int &p) const
        {
            require_prime(p);
            Int D = Int(static_cast<long>(disc()));
            if (p == 2)
                throw UnsupportedError("ramified uniformizer at 2 is not supported");
            if (!mpz_divisible_p(D.get_mpz_t(), p.get_mpz_t()))
                throw UnsupportedError(p.get_str() + " does not ramify in Q(sqrt " + std::to_string(d_) + ")");
            return {sqrt_d(), Int(static_cast<long>(-d_)) / p};
        }

        // Gate for results that need tame ramification (odd discriminant).
        void require_odd_discriminant(const std::string &what) const
        {
            if (disc() % 2 == 0)
                throw UnsupportedError(what + " requires an odd field discriminant; D = " + std::to_string(disc()));
        }

        friend bool operator==(const QuadField &a, const QuadField &b) { return a.d_ == b.d_; }

    private:
        std::int64_t d_;
    };

    // 2x2 rational matrix of multiplication by l on L in the basis (1, omega),
    // row convention: coords(l*x) = coords(x) * M.
    inline RatMat mult_matrix(const QElem &l)
    {
        if (l.d() == 0)
            return RatMat{{l.a(), 0}, {0, l.a()}};
        QElem r0 = l, r1 = l * QElem(l.d(), 0, 1);
        return RatMat{{r0.a(), r0.b()}, {r1.a(), r1.b()}};
    }

    // Q^4 coordinates of v in L^2 with respect to (e1, w e1, e2, w e2).
    inline RatVec to_q4(const LVec &v) { return {v[0].a(), v[0].b(), v[1].a(), v[1].b()}; }
    inline LVec from_q4(std::int64_t d, const RatVec &c) { return {QElem(d, c[0], c[1]), QElem(d, c[2], c[3])}; }

    // 4x4 multiplication-by-l matrix on Q^4 = L^2, row convention.
    inline RatMat mult_matrix4(const QElem &l)
    {
        RatMat m2 = mult_matrix(l);
        RatMat m(4, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
            {
                m(i, j) = m2(i, j);
                m(i + 2, j + 2) = m2(i, j);
            }
        return m;
    }

} // namespace hermquat
