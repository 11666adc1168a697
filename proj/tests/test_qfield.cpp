#include <gtest/gtest.h>

#include <random>

#include "hermquat/qfield.hpp"

using namespace hermquat;

namespace
{
    // x + y sqrt(d), arithmetic written out directly.
    struct Surd
    {
        Rat x, y;
    };
    Surd to_surd(const QElem &e, std::int64_t d)
    {
        if (omega_trace(d))
            return {e.a() + e.b() / 2, e.b() / 2};
        return {e.a(), e.b()};
    }
    Surd mul(const Surd &p, const Surd &q, std::int64_t d) { return {p.x * q.x + Rat(d) * p.y * q.y, p.x * q.y + p.y * q.x}; }
    bool same(const Surd &p, const Surd &q) { return p.x == q.x && p.y == q.y; }

    const std::vector<std::int64_t> kFields{-1, -2, -3, -5, -6, -7, -11, -15, -19, -23};

    QElem random_elem(std::mt19937_64 &g, std::int64_t d)
    {
        std::uniform_int_distribution<long> n(-9, 9), den(1, 4);
        return QElem(d, make_rat(n(g), den(g)), make_rat(n(g), den(g)));
    }
} // namespace

TEST(QuadField, RejectsBadParameters)
{
    EXPECT_THROW(QuadField(5), InputError);
    EXPECT_THROW(QuadField(0), InputError);
    EXPECT_THROW(QuadField(-4), InputError);
    EXPECT_THROW(QuadField(-12), InputError);
    EXPECT_NO_THROW(QuadField(-15));
}

TEST(QuadField, DiscriminantAndMinimalPolynomial)
{
    EXPECT_EQ(QuadField(-3).disc(), -3);
    EXPECT_EQ(QuadField(-7).disc(), -7);
    EXPECT_EQ(QuadField(-1).disc(), -4);
    EXPECT_EQ(QuadField(-2).disc(), -8);
    EXPECT_EQ(QuadField(-5).disc(), -20);
    for (std::int64_t d : kFields)
    {
        QuadField F(d);
        auto [a, b] = F.min_poly();
        QElem w = F.omega();
        EXPECT_TRUE((w * w + QElem(a) * w + QElem(b)).is_zero()) << d;
        // D = t^2 - 4 n
        EXPECT_EQ(F.disc(), F.omega_tr() * F.omega_tr() - 4 * F.omega_n());
        QElem s = F.sqrt_d();
        EXPECT_EQ(s * s, F.elem(d, 0));
        EXPECT_EQ(F.inv_sqrt_d() * s, F.elem(1, 0));
        EXPECT_EQ(F.omega_kind() == OmegaKind::HalfIntegral, ((d % 4) + 4) % 4 == 1);
    }
}

TEST(QElem, ArithmeticMatchesSurdOracle)
{
    std::mt19937_64 g(21);
    for (std::int64_t d : kFields)
        for (int k = 0; k < 40; ++k)
        {
            QElem x = random_elem(g, d), y = random_elem(g, d);
            Surd sx = to_surd(x, d), sy = to_surd(y, d);
            EXPECT_TRUE(same(to_surd(x * y, d), mul(sx, sy, d)));
            EXPECT_EQ(x.norm(), sx.x * sx.x - Rat(d) * sx.y * sx.y);
            EXPECT_EQ(x.trace(), 2 * sx.x);
            Surd cx = to_surd(x.conj(), d);
            EXPECT_TRUE(same(cx, {sx.x, -sx.y}));
            if (!y.is_zero())
            {
                EXPECT_EQ((x / y) * y, x);
            }
        }
}

TEST(QElem, NormIsMultiplicativeAndConjugationAnInvolution)
{
    std::mt19937_64 g(22);
    for (std::int64_t d : kFields)
        for (int k = 0; k < 40; ++k)
        {
            QElem x = random_elem(g, d), y = random_elem(g, d);
            EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
            EXPECT_EQ(x.conj().conj(), x);
            EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
            EXPECT_EQ(x * x.conj(), QElem(d, x.norm(), 0));
            EXPECT_GE(x.norm(), 0);
        }
}

TEST(QElem, MixingFieldsThrows)
{
    EXPECT_THROW(QElem(-3, 0, 1) * QElem(-7, 0, 1), InputError);
    EXPECT_EQ(QElem(-3, 0, 1) * QElem(2), QElem(-3, 0, 2));
    EXPECT_THROW(QElem(0, 1, 1), InputError);
}

TEST(QuadField, SplittingMatchesRootCount)
{
    for (std::int64_t d : kFields)
    {
        QuadField F(d);
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L})
        {
            // roots of the minimal polynomial of omega mod p
            int roots = 0;
            for (long x = 0; x < p; ++x)
                roots += ((x * x - F.omega_tr() * x + F.omega_n()) % p + p) % p == 0;
            SplitType expect = F.disc() % p == 0 ? SplitType::Ramified : roots == 2 ? SplitType::Split : SplitType::Inert;
            EXPECT_EQ(F.splitting(Int(p)), expect) << d << " " << p;
        }
    }
    EXPECT_THROW(QuadField(-7).splitting(Int(9)), InputError);
}

TEST(QuadField, RamifiedUniformizer)
{
    QuadField F(-15);
    auto u3 = F.ramified_uniformizer(Int(3));
    EXPECT_EQ(u3.pi.norm(), 15);
    EXPECT_EQ(u3.unit, 5);
    EXPECT_EQ(u3.pi.conj(), -u3.pi);
    EXPECT_THROW(F.ramified_uniformizer(Int(7)), UnsupportedError);
    EXPECT_THROW(QuadField(-1).ramified_uniformizer(Int(2)), UnsupportedError);
}

TEST(QuadField, MultiplicationMatrixRowConvention)
{
    std::mt19937_64 g(23);
    for (std::int64_t d : {-3, -7, -10})
        for (int k = 0; k < 20; ++k)
        {
            QElem l = random_elem(g, d), x = random_elem(g, d);
            RatVec c = row_times({x.a(), x.b()}, mult_matrix(l));
            EXPECT_EQ(QElem(d, c[0], c[1]), l * x);
            LVec v{x, random_elem(g, d)};
            EXPECT_EQ(from_q4(d, row_times(to_q4(v), mult_matrix4(l))), l * v);
        }
    EXPECT_THROW(QuadField(-1).require_odd_discriminant("x"), UnsupportedError);
    EXPECT_NO_THROW(QuadField(-7).require_odd_discriminant("x"));
}
