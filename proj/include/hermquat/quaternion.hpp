#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "exact_linalg.hpp"
#include "hermitian.hpp"
#include "qfield.hpp"

// Quaternion algebras as structure-constant tables over Q, orders as Z-lattices
// in them, and the passage between pointed hermitian lattices and embeddings
// of B into orders.

namespace hermquat
{

    // table[i][j] = coordinates of e_i * e_j.
    using MultTable = std::array<std::array<RatVec, 4>, 4>;

    // Data retained when an algebra is built from a pointed hermitian space:
    // basis (v, w v, u, w u) with u orthogonal to v, u^2 = theta.
    struct Presentation
    {
        Rat theta;
        QElem gamma; // s(w, v) for the vector w used to build u
        LVec point;  // v
        LVec perp;   // u
        RatMat frame; // rows: Q^4 coordinates of v, w v, u, w u in V
    };

    class QuatAlgebra
    {
    public:
        QuatAlgebra(std::int64_t d, MultTable table, RatVec identity, std::optional<Presentation> pres = std::nullopt)
            : d_(d), table_(std::move(table)), identity_(std::move(identity)), pres_(std::move(pres))
        {
            for (const auto &row : table_)
                for (const auto &c : row)
                    if (c.size() != 4)
                        throw InputError("structure constants must be 4-vectors");
            if (identity_.size() != 4)
                throw InputError("identity must be a 4-vector");
        }

        std::int64_t d() const noexcept { return d_; }
        const MultTable &table() const noexcept { return table_; }
        const RatVec &identity() const noexcept { return identity_; }
        const std::optional<Presentation> &presentation() const noexcept { return pres_; }
        const Presentation &require_presentation() const
        {
            if (!pres_)
                throw PreconditionError("algebra was not built from a pointed hermitian space");
            return *pres_;
        }

        RatVec mul(const RatVec &x, const RatVec &y) const
        {
            RatVec out(4, Rat(0));
            for (std::size_t i = 0; i < 4; ++i)
            {
                if (x[i] == 0)
                    continue;
                for (std::size_t j = 0; j < 4; ++j)
                {
                    if (y[j] == 0)
                        continue;
                    Rat xy = x[i] * y[j];
                    for (std::size_t k = 0; k < 4; ++k)
                        out[k] += xy * table_[i][j][k];
                }
            }
            return out;
        }

        // Matrix of y -> x y, row convention.
        RatMat left_mult(const RatVec &x) const
        {
            RatMat m(4, 4);
            for (std::size_t j = 0; j < 4; ++j)
            {
                RatVec ej(4, Rat(0));
                ej[j] = 1;
                m.set_row(j, mul(x, ej));
            }
            return m;
        }
        // Matrix of y -> y x, row convention.
        RatMat right_mult(const RatVec &x) const
        {
            RatMat m(4, 4);
            for (std::size_t j = 0; j < 4; ++j)
            {
                RatVec ej(4, Rat(0));
                ej[j] = 1;
                m.set_row(j, mul(ej, x));
            }
            return m;
        }

        // Reduced trace: half the trace of left multiplication.
        Rat reduced_trace(const RatVec &x) const
        {
            Rat tr = 0;
            for (std::size_t i = 0; i < 4; ++i)
            {
                if (x[i] == 0)
                    continue;
                for (std::size_t j = 0; j < 4; ++j)
                    tr += x[i] * table_[i][j][j];
            }
            return tr / 2;
        }
        // x^2 - tr(x) x + n(x) = 0, so n(x) = (tr(x)^2 - tr(x^2)) / 2.
        Rat reduced_norm(const RatVec &x) const
        {
            Rat t = reduced_trace(x);
            return (t * t - reduced_trace(mul(x, x))) / 2;
        }
        RatVec conj(const RatVec &x) const
        {
            Rat t = reduced_trace(x);
            RatVec out(4);
            for (std::size_t i = 0; i < 4; ++i)
                out[i] = t * identity_[i] - x[i];
            return out;
        }
        RatVec scalar(const Rat &r) const
        {
            RatVec out(4);
            for (std::size_t i = 0; i < 4; ++i)
                out[i] = r * identity_[i];
            return out;
        }

        // Gram of the reduced norm on the algebra basis.
        RatMat norm_gram() const
        {
            RatMat g(4, 4);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                {
                    RatVec ei(4, Rat(0)), ej(4, Rat(0));
                    ei[i] = 1;
                    ej[j] = 1;
                    // b(x, y) = tr(x conj(y))
                    g(i, j) = reduced_trace(mul(ei, conj(ej))) / 2;
                }
            return g;
        }

        // Algebra coordinates <-> V = L^2 (only for presented algebras).
        LVec to_space(const RatVec &x) const
        {
            return from_q4(d_, row_times(x, require_presentation().frame));
        }
        RatVec from_space(const LVec &x) const
        {
            return row_times(to_q4(x), inverse(require_presentation().frame));
        }

        friend bool operator==(const QuatAlgebra &a, const QuatAlgebra &b)
        {
            return a.d_ == b.d_ && a.table_ == b.table_ && a.identity_ == b.identity_;
        }

    private:
        std::int64_t d_;
        MultTable table_;
        RatVec identity_;
        std::optional<Presentation> pres_;
    };

    inline RatVec unit_vector(std::size_t i)
    {
        RatVec e(4, Rat(0));
        e[i] = 1;
        return e;
    }

    inline RatVec add(const RatVec &a, const RatVec &b)
    {
        RatVec o(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            o[i] = a[i] + b[i];
        return o;
    }
    inline RatVec sub(const RatVec &a, const RatVec &b)
    {
        RatVec o(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            o[i] = a[i] - b[i];
        return o;
    }
    inline RatVec scale(const Rat &s, const RatVec &a)
    {
        RatVec o(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            o[i] = s * a[i];
        return o;
    }

    inline Rat reduced_norm(const QuatAlgebra &A, const RatVec &x) { return A.reduced_norm(x); }
    inline Rat reduced_trace(const QuatAlgebra &A, const RatVec &x) { return A.reduced_trace(x); }
    inline RatVec quat_conj(const QuatAlgebra &A, const RatVec &x) { return A.conj(x); }

    // ---------------------------------------------------------------------
    // Structure checks
    // ---------------------------------------------------------------------

    struct StructureReport
    {
        int associativity_failures = 0; // out of 64 basis triples
        bool identity_ok = false;
        std::vector<std::string> notes;
        bool ok() const { return associativity_failures == 0 && identity_ok; }
    };

    inline StructureReport verify_structure(const QuatAlgebra &A)
    {
        StructureReport r;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 4; ++k)
                {
                    RatVec ei = unit_vector(i), ej = unit_vector(j), ek = unit_vector(k);
                    if (A.mul(A.mul(ei, ej), ek) != A.mul(ei, A.mul(ej, ek)))
                    {
                        ++r.associativity_failures;
                        r.notes.push_back("(e" + std::to_string(i) + " e" + std::to_string(j) + ") e" +
                                          std::to_string(k) + " != e" + std::to_string(i) + " (e" +
                                          std::to_string(j) + " e" + std::to_string(k) + ")");
                    }
                }
        r.identity_ok = true;
        for (std::size_t i = 0; i < 4; ++i)
        {
            RatVec ei = unit_vector(i);
            if (A.mul(A.identity(), ei) != ei || A.mul(ei, A.identity()) != ei)
                r.identity_ok = false;
        }
        if (!r.identity_ok)
            r.notes.push_back("identity element fails e x = x e = x");
        return r;
    }

    namespace detail
    {
        // Table on (1, pi, u, pi u) for L = Q[pi], pi^2 = t pi - n, u^2 = theta,
        // u l = conj(l) u. Products: (l1 + l2 u)(m1 + m2 u)
        //   = (l1 m1 + theta l2 conj(m2)) + (l1 m2 + l2 conj(m1)) u.
        inline MultTable cyclic_table(const Rat &t, const Rat &n, const Rat &theta)
        {
            using Pair = std::array<Rat, 2>;
            auto mul = [&](const Pair &x, const Pair &y) -> Pair
            {
                Rat xy = x[1] * y[1];
                return {x[0] * y[0] - n * xy, x[0] * y[1] + x[1] * y[0] + t * xy};
            };
            auto cj = [&](const Pair &y) -> Pair { return {y[0] + t * y[1], -y[1]}; };
            auto add2 = [](const Pair &x, const Pair &y) -> Pair { return {x[0] + y[0], x[1] + y[1]}; };

            MultTable table;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                {
                    RatVec x = unit_vector(i), y = unit_vector(j);
                    Pair l1{x[0], x[1]}, l2{x[2], x[3]}, m1{y[0], y[1]}, m2{y[2], y[3]};
                    Pair c2 = mul(l2, cj(m2));
                    Pair first = add2(mul(l1, m1), Pair{theta * c2[0], theta * c2[1]});
                    Pair second = add2(mul(l1, m2), mul(l2, cj(m1)));
                    table[i][j] = {first[0], first[1], second[0], second[1]};
                }
            return table;
        }
    } // namespace detail

    // Algebra L + L u with L = Q[x]/(x^2 + a x + b), u^2 = theta, on basis (1, pi, u, pi u).
    inline QuatAlgebra quadratic_pair_algebra(const Rat &a, const Rat &b, const Rat &theta)
    {
        if (theta == 0)
            throw DegenerateError("theta must be nonzero");
        Rat disc = a * a - 4 * b;
        if (rational_sqrt(disc))
            throw InputError("x^2 + a x + b must be irreducible over Q");
        return QuatAlgebra(0, detail::cyclic_table(-a, b, theta), unit_vector(0));
    }

    // Gram (tr(g_i g_j)) of the reduced trace pairing on a list of elements.
    inline RatMat trace_gram(const QuatAlgebra &A, const RatMat &zbasis)
    {
        const std::size_t n = zbasis.rows();
        RatMat t(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                t(i, j) = A.reduced_trace(A.mul(zbasis.row(i), zbasis.row(j)));
        return t;
    }

    // ---------------------------------------------------------------------
    // Pointed hermitian space -> algebra
    // ---------------------------------------------------------------------

    // H_V on V = L^2 with identity v. The complement u = w - s(w, v) v uses the
    // first candidate w that is L-independent of v.
    inline QuatAlgebra build_algebra(const HermSpace &S, const LVec &v_in, const std::array<LVec, 4> &candidates)
    {
        const QuadField &F = S.field();
        if (!S.nondegenerate())
            throw DegenerateError("build_algebra: hermitian form is degenerate (theta would be 0)");
        LVec v{QElem(F.d(), v_in[0].a(), v_in[0].b()), QElem(F.d(), v_in[1].a(), v_in[1].b())};
        if (S.h_value(v) != 1)
            throw PreconditionError("build_algebra: h(v) = " + to_string(S.h_value(v)) + ", expected 1");

        const LVec *w = nullptr;
        for (const LVec &c : candidates)
            if (!det_L2(v, c).is_zero())
            {
                w = &c;
                break;
            }
        if (!w)
            throw RankError("build_algebra: no candidate vector is L-independent of v");

        QElem gamma = S.s_value(*w, v);
        LVec u = *w - gamma * v;
        Rat theta = -S.h_value(u);
        if (theta == 0)
            throw DegenerateError("build_algebra: theta = 0");

        QElem omega = F.omega();
        RatMat frame(4, 4);
        frame.set_row(0, to_q4(v));
        frame.set_row(1, to_q4(omega * v));
        frame.set_row(2, to_q4(u));
        frame.set_row(3, to_q4(omega * u));

        Presentation pres{theta, gamma, v, u, frame};
        QuatAlgebra A(F.d(), detail::cyclic_table(Rat(F.omega_tr()), Rat(F.omega_n()), theta), unit_vector(0), pres);

        // reduced norm of H_V is h
        if (A.norm_gram() != frame * S.gram4() * frame.transpose())
            throw InvariantViolation("build_algebra: reduced norm differs from h");
        return A;
    }

    inline QuatAlgebra build_algebra(const HermSpace &S, const LVec &v)
    {
        return build_algebra(S, v, standard_qbasis(S.d()));
    }

    // ---------------------------------------------------------------------
    // Orders and embeddings
    // ---------------------------------------------------------------------

    struct ProductEntry
    {
        std::size_t i, j;
        RatVec coords; // g_i g_j in the Z-basis
        bool integral;
    };

    class QuatOrder
    {
    public:
        QuatOrder(QuatAlgebra algebra, RatMat zbasis) : algebra_(std::move(algebra)), zbasis_(std::move(zbasis))
        {
            if (zbasis_.rows() != 4 || zbasis_.cols() != 4)
                throw InputError("order Z-basis must be 4x4");
            if (determinant(zbasis_) == 0)
                throw RankError("order Z-basis is not of full rank");
            inverse_ = inverse(zbasis_);
            RatVec one = coords(algebra_.identity());
            for (const Rat &c : one)
                if (!is_integer(c))
                    throw InputError("identity is not in the Z-span of the order basis");
            for (const Rat &c : one)
                identity_coords_.push_back(c.get_num());
        }

        const QuatAlgebra &algebra() const noexcept { return algebra_; }
        const RatMat &zbasis() const noexcept { return zbasis_; }
        const IntVec &identity_coords() const noexcept { return identity_coords_; }

        RatVec element(std::size_t i) const { return zbasis_.row(i); }
        RatVec coords(const RatVec &x) const { return row_times(x, inverse_); }
        RatVec from_coords(const RatVec &c) const { return row_times(c, zbasis_); }
        bool contains(const RatVec &x) const
        {
            for (const Rat &c : coords(x))
                if (!is_integer(c))
                    return false;
            return true;
        }

        std::vector<ProductEntry> closure_transcript() const
        {
            std::vector<ProductEntry> out;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                {
                    RatVec c = coords(algebra_.mul(element(i), element(j)));
                    bool integral = std::all_of(c.begin(), c.end(), [](const Rat &r) { return is_integer(r); });
                    out.push_back({i, j, c, integral});
                }
            return out;
        }
        bool is_closed() const
        {
            for (const auto &e : closure_transcript())
                if (!e.integral)
                    return false;
            return true;
        }

    private:
        QuatAlgebra algebra_;
        RatMat zbasis_;
        RatMat inverse_;
        IntVec identity_coords_;
    };

    // i: B -> O determined by i(omega), stored in Z-basis coordinates.
    class Embedding
    {
    public:
        Embedding(QuatOrder order, RatVec omega_image) : order_(std::move(order)), omega_image_(std::move(omega_image))
        {
            if (omega_image_.size() != 4)
                throw InputError("omega image must be a 4-vector");
            const QuatAlgebra &A = order_.algebra();
            if (A.d() == 0)
                throw InputError("embedding requires the algebra's field parameter d");
            RatVec w = omega();
            // w^2 - t w + n = 0
            RatVec lhs = sub(A.mul(w, w), scale(Rat(omega_trace(A.d())), w));
            lhs = add(lhs, A.scalar(Rat(omega_norm(A.d()))));
            if (std::any_of(lhs.begin(), lhs.end(), [](const Rat &r) { return r != 0; }))
                throw InputError("image of omega does not satisfy its minimal polynomial");
        }

        const QuatOrder &order() const noexcept { return order_; }
        const QuatAlgebra &algebra() const noexcept { return order_.algebra(); }
        std::int64_t d() const noexcept { return order_.algebra().d(); }
        const RatVec &omega_image() const noexcept { return omega_image_; }
        RatVec omega() const { return order_.from_coords(omega_image_); }
        // i(l) in algebra coordinates
        RatVec image(const QElem &l) const
        {
            return add(algebra().scalar(l.a()), scale(l.b(), omega()));
        }

        // The order is a B-module via left multiplication.
        bool b_stable() const
        {
            if (!std::all_of(omega_image_.begin(), omega_image_.end(), [](const Rat &r) { return is_integer(r); }))
                return false;
            for (std::size_t k = 0; k < 4; ++k)
                if (!order_.contains(algebra().mul(omega(), order_.element(k))))
                    return false;
            return true;
        }

    private:
        QuatOrder order_;
        RatVec omega_image_;
    };

    struct BuiltOrder
    {
        QuatOrder order;
        Embedding embedding;
    };

    // Lambda viewed inside H_V; the embedding is b -> b v.
    inline Embedding build_order(const HermSpace &S, const Lattice &L, const LVec &v)
    {
        require_same_field(S, L);
        if (!S.nondegenerate())
            throw DegenerateError("build_order: hermitian form is degenerate");
        L.require_b_stable("build_order");
        if (!is_integral(S, L))
            throw PreconditionError("build_order: form is not integral on the lattice");
        if (!L.contains(v))
            throw PreconditionError("build_order: point is not in the lattice");
        QuatAlgebra A = build_algebra(S, v, L.zbasis());
        RatMat zb(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            zb.set_row(i, A.from_space(L.zbasis()[i]));
        QuatOrder O(A, zb);
        if (!O.is_closed())
            throw InvariantViolation("build_order: integral pointed lattice is not closed under multiplication");
        Embedding emb(O, O.coords(unit_vector(1)));
        return emb;
    }

    // The identities behind closure, for a vector w with gamma = s(w, v):
    //   w w = (theta_w - n(gamma)) v + tr(gamma) w,   theta_w = -h(w - gamma v),
    //   theta_w - n(gamma) = -h(w),   tr(gamma) = h(v + w) - h(v) - h(w).
    struct ClosureIdentities
    {
        QElem gamma;
        Rat theta_w;
        Rat coeff_v; // theta_w - n(gamma)
        Rat coeff_w; // tr(gamma)
        bool product_matches = false;
        bool coeff_v_is_minus_h = false;
        bool trace_matches = false;
        bool coefficients_integral = false;
        bool all() const { return product_matches && coeff_v_is_minus_h && trace_matches; }
    };

    inline ClosureIdentities closure_identities(const HermSpace &S, const QuatAlgebra &A, const LVec &w)
    {
        const Presentation &P = A.require_presentation();
        const LVec &v = P.point;
        ClosureIdentities c;
        c.gamma = S.s_value(w, v);
        c.theta_w = -S.h_value(w - c.gamma * v);
        c.coeff_v = c.theta_w - c.gamma.norm();
        c.coeff_w = c.gamma.trace();
        RatVec wa = A.from_space(w);
        RatVec ww = A.mul(wa, wa);
        RatVec expected = add(scale(c.coeff_v, A.identity()), scale(c.coeff_w, wa));
        c.product_matches = ww == expected;
        c.coeff_v_is_minus_h = c.coeff_v == -S.h_value(w);
        c.trace_matches = c.coeff_w == S.h_value(v + w) - S.h_value(v) - S.h_value(w);
        c.coefficients_integral = is_integer(c.coeff_v) && is_integer(c.coeff_w);
        return c;
    }

    // ---------------------------------------------------------------------
    // Order -> pointed hermitian lattice
    // ---------------------------------------------------------------------

    struct PointedLattice
    {
        HermSpace form;
        Lattice lattice;
        LVec point;
        RatMat frame; // rows: algebra coordinates of 1, i(w), u', i(w) u'
    };

    inline PointedLattice order_to_pointed(const Embedding &emb)
    {
        const QuatOrder &O = emb.order();
        const QuatAlgebra &A = O.algebra();
        QuadField F(A.d());
        if (!emb.b_stable())
            throw NotBModuleError("order_to_pointed: order is not stable under i(B)");

        const RatVec one = A.identity();
        const RatVec w_img = emb.omega();
        RatMat span(2, 4);
        span.set_row(0, one);
        span.set_row(1, w_img);

        std::optional<RatVec> w;
        for (std::size_t k = 0; k < 4 && !w; ++k)
            if (!solve_row(span, O.element(k)))
                w = O.element(k);
        if (!w)
            throw RankError("order_to_pointed: order lies in i(L)");

        // s(w, 1) by polarization of the reduced norm with l = omega
        auto b = [&](const RatVec &x, const RatVec &y) { return A.reduced_trace(A.mul(x, A.conj(y))); };
        QElem om = F.omega();
        QElem s_w1 = (om.conj() * QElem(b(*w, one)) - QElem(b(A.mul(w_img, *w), one))) / (om.conj() - om);
        RatVec u = sub(*w, emb.image(s_w1));

        RatMat frame(4, 4);
        frame.set_row(0, one);
        frame.set_row(1, w_img);
        frame.set_row(2, u);
        frame.set_row(3, A.mul(w_img, u));
        RatMat frame_inv = inverse(frame);

        // Reduced norm in frame coordinates (e1, w e1, e2, w e2) of L^2, then polarize.
        HermSpace S = polarize(frame * A.norm_gram() * frame.transpose(), F);

        std::array<LVec, 4> zb;
        for (std::size_t k = 0; k < 4; ++k)
            zb[k] = from_q4(F.d(), row_times(O.element(k), frame_inv));
        Lattice L(F, zb);
        LVec point{QElem(F.d(), 1, 0), QElem(F.d(), 0, 0)};
        return {S, L, point, frame};
    }

    // ---------------------------------------------------------------------
    // Canonical forms (frame-independent data)
    // ---------------------------------------------------------------------

    // The order re-expressed on its own Z-basis: integer structure constants,
    // zbasis = identity. Two embeddings with equal canonical forms are isomorphic
    // through the basis correspondence.
    inline Embedding canonicalize(const Embedding &emb)
    {
        const QuatOrder &O = emb.order();
        MultTable t;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                t[i][j] = O.coords(O.algebra().mul(O.element(i), O.element(j)));
        RatVec one(4);
        for (std::size_t i = 0; i < 4; ++i)
            one[i] = Rat(O.identity_coords()[i]);
        QuatAlgebra A(emb.d(), t, one);
        return Embedding(QuatOrder(A, RatMat::identity(4)), emb.omega_image());
    }

    struct PointedInvariants
    {
        RatMat gram;         // h on the Z-basis
        IntMat omega_action; // omega g_i = sum_j A(i,j) g_j
        IntVec point;        // coordinates of v
        friend bool operator==(const PointedInvariants &, const PointedInvariants &) = default;
    };

    inline PointedInvariants pointed_invariants(const HermSpace &S, const Lattice &L, const LVec &v)
    {
        auto c = L.coords(v);
        if (!c)
            throw PreconditionError("point is not in the lattice");
        return {lattice_gram(S, L), L.omega_action(), *c};
    }

    // ---------------------------------------------------------------------
    // Discriminants
    // ---------------------------------------------------------------------

    // Delta(Lambda): square root of |det(tr(g_i g_j))|, positive iff the algebra
    // splits over R (norm form indefinite).
    inline DiscValue lattice_disc(const QuatAlgebra &A, const RatMat &zbasis)
    {
        if (zbasis.rows() != 4 || determinant(zbasis) == 0)
            throw RankError("lattice_disc: need a full-rank lattice");
        Rat det = determinant(trace_gram(A, zbasis));
        if (det >= 0)
            throw InvariantViolation("lattice_disc: trace determinant " + to_string(det) + " is not negative");
        auto root = rational_sqrt(-det);
        if (!root)
            throw InvariantViolation("lattice_disc: |det(tr(g_i g_j))| = " + to_string(-det) + " is not a square");
        Definiteness nd = definiteness_of(A.norm_gram());
        if (nd == Definiteness::Degenerate)
            throw InvariantViolation("lattice_disc: degenerate norm form");
        bool split = nd == Definiteness::Indefinite;
        return {split ? *root : -*root, *root, DiscKind::LatticeDiscriminant,
                split ? SignMeaning::MatrixAlgebra : SignMeaning::DivisionAlgebra};
    }

    inline DiscValue lattice_disc(const QuatOrder &O) { return lattice_disc(O.algebra(), O.zbasis()); }

    struct DiscRelation
    {
        DiscValue lhs; // Delta(O) from the trace pairing
        DiscValue rhs; // D * d(O, n) from the pulled-back hermitian structure
        bool equal;
    };

    inline DiscRelation discr_relation_check(const Embedding &emb)
    {
        DiscValue lhs = lattice_disc(emb.order());
        PointedLattice P = order_to_pointed(emb);
        DiscValue d = det_form(P.form, P.lattice);
        Rat rhs_value = Rat(QuadField(emb.d()).disc()) * d.value;
        DiscValue rhs = form_disc_value(rhs_value, DiscKind::FormDiscriminant);
        return {lhs, rhs, lhs.value == rhs.value};
    }

    // i(L) cap O = i(B_f) for B_f = Z + f Z omega (f = 1: B itself).
    inline bool is_optimal(const Embedding &emb, long conductor = 1)
    {
        if (conductor < 1)
            throw InputError("conductor must be positive");
        RatMat gens(2, 4);
        for (std::size_t i = 0; i < 4; ++i)
        {
            gens(0, i) = Rat(emb.order().identity_coords()[i]);
            gens(1, i) = Rat(conductor) * emb.omega_image()[i];
        }
        if (!is_integral(gens))
            return false; // i(B_f) is not even inside O
        IntMat g = to_int(gens);
        IntMat sat = saturation(g);                   // i(L) cap O in Z-basis coordinates
        auto own = hnf_general(g);
        IntMat mine(own.rank, 4);
        for (std::size_t i = 0; i < own.rank; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                mine(i, j) = own.H(i, j);
        return mine == sat;
    }

    // ---------------------------------------------------------------------
    // Change of point
    // ---------------------------------------------------------------------

    struct Isometry
    {
        std::int64_t d = 0;
        std::array<LVec, 2> lmat; // images of e1, e2
        RatMat qmat;              // on Q^4 coordinates, row convention
        bool l_linear = false;
        bool preserves_h = false;
        bool maps_point = false;
        bool preserves_lattice = false;

        LVec apply(const LVec &x) const { return from_q4(d, row_times(to_q4(x), qmat)); }
        bool verified() const { return l_linear && preserves_h && maps_point && preserves_lattice; }
    };

    inline Isometry compose(const Isometry &first, const Isometry &second)
    {
        Isometry out = first;
        out.qmat = first.qmat * second.qmat;
        out.lmat = {second.apply(first.lmat[0]), second.apply(first.lmat[1])};
        out.l_linear = first.l_linear && second.l_linear;
        out.preserves_h = first.preserves_h && second.preserves_h;
        out.preserves_lattice = first.preserves_lattice && second.preserves_lattice;
        out.maps_point = false;
        return out;
    }

    // x -> x u in H_V built at v; an isometry (V, v, h) -> (V, u, h).
    inline Isometry change_point(const HermSpace &S, const Lattice &L, const LVec &v, const LVec &u)
    {
        if (S.h_value(u) != 1)
            throw PreconditionError("change_point: h(u) = " + to_string(S.h_value(u)) + ", expected 1");
        if (!L.contains(u) || !L.contains(v))
            throw PreconditionError("change_point: points must lie in the lattice");
        QuatAlgebra A = build_algebra(S, v, L.zbasis());
        const RatMat &F = A.require_presentation().frame;
        RatMat R = inverse(F) * A.right_mult(A.from_space(u)) * F;

        Isometry iso;
        iso.d = S.d();
        iso.qmat = R;
        QElem one(S.d(), 1, 0), zero(S.d(), 0, 0);
        iso.lmat = {iso.apply(LVec{one, zero}), iso.apply(LVec{zero, one})};
        RatMat M = mult_matrix4(S.field().omega());
        iso.l_linear = M * R == R * M;
        RatMat G = S.gram4();
        iso.preserves_h = R * G * R.transpose() == G;
        iso.maps_point = iso.apply(v) == u;
        const RatMat &Z = L.basis_matrix();
        iso.preserves_lattice = is_integral(Z * R * inverse(Z));
        if (!iso.verified())
            throw InvariantViolation("change_point: right multiplication failed an isometry check");
        return iso;
    }

} // namespace hermquat
