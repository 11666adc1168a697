#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hermitian.hpp"
#include "quaternion.hpp"

// Seeded generators for property suites.

namespace hermquat::gen
{

    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : eng_(seed) {}

        long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
        long nonzero(long lo, long hi)
        {
            long x;
            do
                x = uniform(lo, hi);
            while (x == 0);
            return x;
        }
        template <class T>
        const T &pick(const std::vector<T> &v) { return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))]; }

        Rat rat(long h, long max_den) { return make_rat(Int(uniform(-h, h)), Int(uniform(1, max_den))); }

        std::mt19937_64 &engine() { return eng_; }

    private:
        std::mt19937_64 eng_;
    };

    inline QElem qelem(Rng &r, std::int64_t d, long h, long max_den = 1)
    {
        return QElem(d, r.rat(h, max_den), r.rat(h, max_den));
    }

    inline QElem nonzero_qelem(Rng &r, std::int64_t d, long h, long max_den = 1)
    {
        QElem x;
        do
            x = qelem(r, d, h, max_den);
        while (x.is_zero());
        return x;
    }

    inline LVec lvec(Rng &r, std::int64_t d, long h, long max_den = 1)
    {
        return {qelem(r, d, h, max_den), qelem(r, d, h, max_den)};
    }

    inline LVec nonzero_lvec(Rng &r, std::int64_t d, long h, long max_den = 1)
    {
        LVec v;
        do
            v = lvec(r, d, h, max_den);
        while (v[0].is_zero() && v[1].is_zero());
        return v;
    }

    // Rational alpha, beta and gamma in L; nondegenerate.
    inline HermSpace herm_space(Rng &r, const QuadField &F, long h = 5, long max_den = 3)
    {
        for (;;)
        {
            HermSpace S(F, r.rat(h, max_den), r.rat(h, max_den), qelem(r, F.d(), h, max_den));
            if (S.nondegenerate())
                return S;
        }
    }

    // alpha, beta integers; gamma in the inverse different, so h is integral on B^2.
    inline HermSpace integral_form(Rng &r, const QuadField &F, long h = 3)
    {
        for (;;)
        {
            QElem g = QElem(F.d(), r.uniform(-h, h), r.uniform(-h, h)) * F.inv_sqrt_d();
            HermSpace S(F, r.uniform(-h, h), r.uniform(-h, h), g);
            if (S.nondegenerate())
                return S;
        }
    }

    struct PointedSpace
    {
        HermSpace form;
        LVec point;
    };

    // The form with Gram diag(1, -theta) on a random L-basis (v, u); h(v) = 1.
    inline PointedSpace pointed_space(Rng &r, const QuadField &F, long h = 3)
    {
        const std::int64_t d = F.d();
        for (;;)
        {
            LVec v = nonzero_lvec(r, d, h), u = nonzero_lvec(r, d, h);
            QElem det = det_L2(v, u);
            if (det.is_zero())
                continue;
            Rat theta = r.rat(h, 2);
            if (theta == 0)
                continue;
            // rows of P are v, u; S = P^-1 diag(1, -theta) conj(P^-1)^T
            QElem i00 = u[1] / det, i01 = -v[1] / det, i10 = -u[0] / det, i11 = v[0] / det;
            QElem mt(d, -theta, 0);
            QElem alpha = i00 * i00.conj() + mt * i01 * i01.conj();
            QElem beta = i10 * i10.conj() + mt * i11 * i11.conj();
            QElem gamma = i00 * i10.conj() + mt * i01 * i11.conj();
            HermSpace S(F, alpha.a(), beta.a(), gamma);
            if (S.h_value(v) != 1)
                throw InvariantViolation("pointed_space generator produced h(v) != 1");
            return {S, v};
        }
    }

    // B-stable lattice: B-closure of two or three random integral vectors.
    inline Lattice b_lattice(Rng &r, const QuadField &F, long h = 3)
    {
        for (;;)
        {
            std::vector<LVec> gens;
            long n = r.uniform(2, 3);
            for (long i = 0; i < n; ++i)
                gens.push_back(lvec(r, F.d(), h));
            try
            {
                return b_closure(F, gens);
            }
            catch (const RankError &)
            {
            }
        }
    }

    inline RatVec algebra_element(Rng &r, long h = 4, long max_den = 2)
    {
        return {r.rat(h, max_den), r.rat(h, max_den), r.rat(h, max_den), r.rat(h, max_den)};
    }

} // namespace hermquat::gen
