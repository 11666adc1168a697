#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "hermquat/verify.hpp"

using namespace hermquat;

namespace
{
    // l1 + l2 u  ->  [[l1, theta l2], [conj(l2), conj(l1)]] inside M_2(L)
    struct M2L
    {
        QElem a, b, c, e;
    };

    M2L to_matrix(const RatVec &x, std::int64_t d, const Rat &theta)
    {
        QElem l1(d, x[0], x[1]), l2(d, x[2], x[3]);
        return {l1, QElem(d, theta, 0) * l2, l2.conj(), l1.conj()};
    }

    M2L mat_mul(const M2L &p, const M2L &q)
    {
        return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.e, p.c * q.a + p.e * q.c, p.c * q.b + p.e * q.e};
    }

    bool same(const M2L &p, const M2L &q) { return p.a == q.a && p.b == q.b && p.c == q.c && p.e == q.e; }

    Rat leibniz(const RatMat &m)
    {
        std::vector<std::size_t> perm(m.rows());
        std::iota(perm.begin(), perm.end(), 0);
        Rat total = 0;
        do
        {
            int inv = 0;
            for (std::size_t i = 0; i < perm.size(); ++i)
                for (std::size_t j = i + 1; j < perm.size(); ++j)
                    inv += perm[i] > perm[j];
            Rat term = inv % 2 ? -1 : 1;
            for (std::size_t i = 0; i < perm.size(); ++i)
                term *= m(i, perm[i]);
            total += term;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return total;
    }

    // integer 2x2 matrices, row major
    using Z22 = std::array<long, 4>;
    Z22 zmul(const Z22 &x, const Z22 &y)
    {
        return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                x[2] * y[1] + x[3] * y[3]};
    }
    long zdet(const Z22 &x) { return x[0] * x[3] - x[1] * x[2]; }
    Z22 zadd(const Z22 &x, const Z22 &y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]}; }
    const Z22 kW{0, -1, 1, 1};
} // namespace

TEST(Algebra, ProductMatchesMatrixModel)
{
    gen::Rng rng(41);
    for (int k = 0; k < 30; ++k)
    {
        QuadField F(rng.pick(std::vector<std::int64_t>{-3, -7, -11, -15}));
        auto P = gen::pointed_space(rng, F);
        QuatAlgebra A = build_algebra(P.form, P.point);
        const Rat theta = A.require_presentation().theta;
        EXPECT_EQ(A.identity(), (RatVec{1, 0, 0, 0}));
        for (int j = 0; j < 20; ++j)
        {
            RatVec x = gen::algebra_element(rng), y = gen::algebra_element(rng);
            EXPECT_TRUE(same(to_matrix(A.mul(x, y), F.d(), theta),
                             mat_mul(to_matrix(x, F.d(), theta), to_matrix(y, F.d(), theta))));
            M2L mx = to_matrix(x, F.d(), theta);
            QElem det = mx.a * mx.e - mx.b * mx.c;
            EXPECT_EQ(det, QElem(F.d(), A.reduced_norm(x), 0));
            EXPECT_EQ(mx.a + mx.e, QElem(F.d(), A.reduced_trace(x), 0));
            EXPECT_EQ(A.mul(x, A.conj(x)), A.scalar(A.reduced_norm(x)));
        }
    }
}

TEST(Algebra, StructureOnRandomPointedSpaces)
{
    gen::Rng rng(42);
    for (int k = 0; k < 20; ++k)
    {
        QuadField F(rng.pick(std::vector<std::int64_t>{-3, -7}));
        auto P = gen::pointed_space(rng, F);
        QuatAlgebra A = build_algebra(P.form, P.point);
        StructureReport st = verify_structure(A);
        EXPECT_TRUE(st.ok());
        EXPECT_EQ(st.associativity_failures, 0);
        RatVec u = unit_vector(2);
        EXPECT_EQ(A.mul(u, u), A.scalar(A.require_presentation().theta));
        // reduced norm restricted to V is h
        for (int j = 0; j < 10; ++j)
        {
            LVec x = gen::lvec(rng, F.d(), 4, 2);
            EXPECT_EQ(A.reduced_norm(A.from_space(x)), P.form.h_value(x));
            EXPECT_EQ(A.to_space(A.from_space(x)), x);
        }
    }
}

TEST(Algebra, BrokenTableIsDetected)
{
    QuatAlgebra A = quadratic_pair_algebra(0, 1, 2);
    MultTable t = A.table();
    t[2][2][0] += 1;
    QuatAlgebra bad(0, t, A.identity());
    EXPECT_FALSE(verify_structure(bad).ok());
    EXPECT_THROW(quadratic_pair_algebra(0, -1, 2), InputError); // x^2 - 1 splits
    EXPECT_THROW(quadratic_pair_algebra(0, 1, 0), DegenerateError);
}

TEST(TraceGram, ClosedFormAndDeterminant)
{
    for (const auto &tr : verify::trace_triples(43, 20))
    {
        QuatAlgebra A = quadratic_pair_algebra(tr.a, tr.b, tr.theta);
        RatMat g = trace_gram(A, RatMat::identity(4));
        const Rat &a = tr.a, &b = tr.b, &th = tr.theta;
        RatMat expect{{2, -a, 0, 0}, {-a, a * a - 2 * b, 0, 0}, {0, 0, 2 * th, -a * th}, {0, 0, -a * th, 2 * b * th}};
        EXPECT_EQ(g, expect);
        Rat disc = a * a - 4 * b;
        EXPECT_EQ(leibniz(g), -disc * disc * th * th);
        EXPECT_EQ(determinant(g), leibniz(g));
    }
}

TEST(Order, ClosureAndIdentitiesOnIntegralLattices)
{
    gen::Rng rng(44);
    for (const auto &P : verify::integral_pointed_lattices(44, 15))
    {
        Embedding e = build_order(P.form, P.lattice, P.point);
        EXPECT_TRUE(e.order().is_closed());
        EXPECT_TRUE(e.b_stable());
        auto tr = e.order().closure_transcript();
        EXPECT_EQ(tr.size(), 16u);
        for (const auto &entry : tr)
        {
            EXPECT_TRUE(entry.integral);
            EXPECT_TRUE(std::all_of(entry.coords.begin(), entry.coords.end(), [](const Rat &r) { return is_integer(r); }));
        }
        for (int k = 0; k < 5; ++k)
        {
            IntVec c{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
            LVec w = P.lattice.vector_at(c);
            ClosureIdentities ci = closure_identities(P.form, e.algebra(), w);
            EXPECT_TRUE(ci.all());
            EXPECT_TRUE(ci.coefficients_integral);
            // w w computed by the matrix model
            const Rat theta = e.algebra().require_presentation().theta;
            RatVec wa = e.algebra().from_space(w);
            M2L m = to_matrix(wa, P.form.d(), theta);
            M2L sq = mat_mul(m, m);
            M2L rhs = to_matrix(add(scale(ci.coeff_v, e.algebra().identity()), scale(ci.coeff_w, wa)), P.form.d(), theta);
            EXPECT_TRUE(same(sq, rhs));
        }
    }
}

TEST(Order, RoundTripThroughPointedLattice)
{
    for (const auto &P : verify::integral_pointed_lattices(45, 15))
    {
        Embedding e = build_order(P.form, P.lattice, P.point);
        PointedLattice back = order_to_pointed(e);
        EXPECT_EQ(pointed_invariants(back.form, back.lattice, back.point),
                  pointed_invariants(P.form, P.lattice, P.point));
        Embedding again = build_order(back.form, back.lattice, back.point);
        EXPECT_EQ(canonicalize(again).algebra().table(), canonicalize(e).algebra().table());
        EXPECT_EQ(canonicalize(canonicalize(e)).algebra().table(), canonicalize(e).algebra().table());
        EXPECT_TRUE(is_optimal(e));
        EXPECT_TRUE(discr_relation_check(e).equal);
    }
}

TEST(Order, RejectsNonIntegralAndMissingPoint)
{
    QuadField F(-7);
    Lattice L = Lattice::standard(F);
    HermSpace half(F, make_rat(1, 2), -1, F.elem(0, 0));
    EXPECT_THROW(build_order(half, L, LVec{F.elem(1, 0), F.elem(0, 0)}), PreconditionError);
    HermSpace S(F, 1, -1, F.elem(0, 0));
    EXPECT_THROW(build_order(S, L, LVec{F.elem(0, 1), F.elem(0, 0)}), PreconditionError); // h = 2
}

TEST(M2Z, MatchesIntegerMatrixOracle)
{
    Embedding e = verify::m2z_embedding();
    const QuatAlgebra &A = e.algebra();
    // basis E11, E12, E21, E22
    std::array<Z22, 4> E{Z22{1, 0, 0, 0}, Z22{0, 1, 0, 0}, Z22{0, 0, 1, 0}, Z22{0, 0, 0, 1}};
    RatMat tr(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
        {
            Z22 p = zmul(E[i], E[j]);
            RatVec c(p.begin(), p.end());
            EXPECT_EQ(A.mul(unit_vector(i), unit_vector(j)), c);
            tr(i, j) = p[0] + p[3];
        }
    // the image of omega is W with W^2 - W + 1 = 0
    Z22 w2 = zmul(kW, kW);
    EXPECT_EQ(zadd(zadd(w2, Z22{0, 1, -1, -1}), Z22{1, 0, 0, 1}), (Z22{0, 0, 0, 0}));
    Rat trdet = leibniz(tr);
    EXPECT_EQ(trdet, -1);
    DiscValue disc = lattice_disc(e.order());
    EXPECT_EQ(disc.value, 1);
    EXPECT_EQ(disc.meaning, SignMeaning::MatrixAlgebra);
    // reduced norm is the determinant
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
        {
            Z22 x{a, b, b - a, a * b};
            EXPECT_EQ(A.reduced_norm(RatVec{a, b, b - a, a * b}), zdet(x));
        }
}

TEST(M2Z, PulledBackFormHasDiscriminantOne)
{
    // M_2(Z) is free over Z[w] (w acting by W on the left) on E11, E12.
    // s from b(x, y) = det(x + y) - det x - det y by polarization with l = w.
    const std::int64_t d = -3;
    QuadField F(d);
    auto b = [](const Z22 &x, const Z22 &y) { return zdet(zadd(x, y)) - zdet(x) - zdet(y); };
    QElem w = F.omega(), wc = w.conj();
    auto s = [&](const Z22 &x, const Z22 &y) {
        return (wc * QElem(d, b(x, y), 0) - QElem(d, b(zmul(kW, x), y), 0)) / (wc - w);
    };
    Z22 x1{1, 0, 0, 0}, x2{0, 1, 0, 0};
    QElem det = s(x1, x1) * s(x2, x2) - s(x1, x2) * s(x2, x1);
    ASSERT_EQ(det.b(), 0);
    Rat oracle = Rat(F.disc()) * det.a();
    EXPECT_EQ(oracle, 1);

    Embedding e = verify::m2z_embedding();
    PointedLattice P = order_to_pointed(e);
    EXPECT_EQ(discriminant_form(P.form, P.lattice).value, oracle);
    EXPECT_EQ(definiteness(P.form), Definiteness::Indefinite);
    EXPECT_EQ(P.form.h_value(P.point), 1);
    EXPECT_TRUE(discr_relation_check(e).equal);

    Embedding back = build_order(P.form, P.lattice, P.point);
    EXPECT_EQ(canonicalize(back).algebra().table(), canonicalize(e).algebra().table());
    EXPECT_EQ(canonicalize(back).omega_image(), e.omega_image());
}

TEST(M2Z, OptimalityAgainstMembershipOracle)
{
    // a I + b W = [[a, -b], [b, a + b]] is integral iff a, b are
    EXPECT_TRUE(is_optimal(verify::m2z_embedding()));

    // Z + 2 M_2(Z) meets i(L) in Z + 2 Z w
    Embedding m = verify::m2z_embedding();
    RatMat zb{{1, 0, 0, 1}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}};
    QuatOrder O(m.algebra(), zb);
    ASSERT_TRUE(O.is_closed());
    Embedding sub(O, RatVec{0, make_rat(-1, 2), make_rat(1, 2), make_rat(1, 2)});
    EXPECT_EQ(sub.omega(), (RatVec{0, -1, 1, 1}));
    EXPECT_FALSE(is_optimal(sub));
    EXPECT_TRUE(is_optimal(sub, 2));
    EXPECT_FALSE(is_optimal(sub, 4));
    EXPECT_FALSE(sub.b_stable());
}

TEST(M2Z, BadEmbeddingRejected)
{
    Embedding m = verify::m2z_embedding();
    EXPECT_THROW(Embedding(m.order(), (RatVec{0, -1, 1, 0})), InputError);
}

TEST(Discriminant, DefiniteOrderOverMinusThree)
{
    QuadField F(-3);
    HermSpace S(F, 1, 1, F.inv_sqrt_d());
    Lattice L = Lattice::standard(F);
    Embedding e = build_order(S, L, LVec{F.elem(1, 0), F.elem(0, 0)});
    DiscValue delta = lattice_disc(e.order());
    EXPECT_EQ(delta.value, -2);
    EXPECT_EQ(delta.meaning, SignMeaning::DivisionAlgebra);
    EXPECT_EQ(leibniz(trace_gram(e.algebra(), e.order().zbasis())), -4);
    EXPECT_TRUE(discr_relation_check(e).equal);
}

TEST(Discriminant, RelationOnRandomSublattices)
{
    gen::Rng rng(46);
    for (int k = 0; k < 5; ++k)
    {
        QuadField F(rng.pick(std::vector<std::int64_t>{-3, -7}));
        auto P = gen::pointed_space(rng, F);
        QuatAlgebra A = build_algebra(P.form, P.point);
        for (int j = 0; j < 6; ++j)
        {
            Lattice L = gen::b_lattice(rng, F);
            RatMat zb(4, 4);
            for (std::size_t i = 0; i < 4; ++i)
                zb.set_row(i, A.from_space(L.zbasis()[i]));
            // trace side via the Leibniz oracle
            Rat tdet = leibniz(trace_gram(A, zb));
            Rat rhs = Rat(F.disc()) * det_form(P.form, L).value;
            EXPECT_EQ(tdet, -rhs * rhs);
            EXPECT_EQ(lattice_disc(A, zb).value, rhs);
        }
    }
}

TEST(ChangePoint, IsometryBetweenPoints)
{
    QuadField F(-7);
    HermSpace S(F, 1, -1, F.elem(0, 0));
    Lattice L = Lattice::standard(F);
    LVec v{F.elem(1, 0), F.elem(0, 0)};
    // h(2, w) = 4 - 2 = 2; h(w, 1) = 2 - 1 = 1
    LVec u{F.elem(0, 1), F.elem(1, 0)};
    ASSERT_EQ(S.h_value(u), 1);
    Isometry iso = change_point(S, L, v, u);
    EXPECT_TRUE(iso.verified());
    EXPECT_EQ(iso.apply(v), u);
    gen::Rng rng(47);
    for (int k = 0; k < 20; ++k)
    {
        LVec x = gen::lvec(rng, -7, 5), y = gen::lvec(rng, -7, 5);
        QElem l = gen::qelem(rng, -7, 4, 2);
        EXPECT_EQ(S.h_value(iso.apply(x)), S.h_value(x));
        EXPECT_EQ(iso.apply(l * x + y), l * iso.apply(x) + iso.apply(y));
        EXPECT_TRUE(L.contains(iso.apply(x)));
    }
    Isometry back = change_point(S, L, u, v);
    Isometry round = compose(iso, back);
    EXPECT_TRUE(round.l_linear && round.preserves_h && round.preserves_lattice);
    EXPECT_THROW(change_point(S, L, v, LVec{F.elem(0, 1), F.elem(0, 0)}), PreconditionError);
}

TEST(ChangePoint, OrdersAtDifferentPointsAreIsomorphic)
{
    for (const auto &P : verify::integral_pointed_lattices(48, 6, 6))
    {
        auto other = global_search(P.form, P.lattice, 6);
        ASSERT_TRUE(other);
        // look for a second point distinct from the first
        std::optional<LVec> u;
        for (long c0 = -3; c0 <= 3 && !u; ++c0)
            for (long c1 = -3; c1 <= 3 && !u; ++c1)
                for (long c2 = -3; c2 <= 3 && !u; ++c2)
                    for (long c3 = -3; c3 <= 3 && !u; ++c3)
                    {
                        LVec x = P.lattice.vector_at(IntVec{c0, c1, c2, c3});
                        if (x != P.point && P.form.h_value(x) == 1)
                            u = x;
                    }
        if (!u)
            continue;
        Isometry iso = change_point(P.form, P.lattice, P.point, *u);
        EXPECT_TRUE(iso.verified());
        Embedding a = build_order(P.form, P.lattice, P.point), b = build_order(P.form, P.lattice, *u);
        EXPECT_EQ(lattice_disc(a.order()).value, lattice_disc(b.order()).value);
    }
}
