#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "exact_linalg.hpp"
#include "qfield.hpp"

// Binary hermitian spaces over an imaginary quadratic field, their integral
// lattices, and the determinant/discriminant invariants.
//
// Conventions
//   s(x, y) = x S conj(y)^T with S = [[alpha, gamma], [conj(gamma), beta]],
//   L-linear in the first argument; h(x) = s(x, x); b(x, y) = s(x,y) + s(y,x).
//   The fixed Q-structure of V = L^2 is the basis (e1, w e1, e2, w e2), and
//   4x4 Gram matrices G satisfy h(c) = c G c^T (so b(x, y) = 2 x G y^T).

namespace hermquat
{

    enum class Definiteness
    {
        PositiveDefinite,
        NegativeDefinite,
        Indefinite,
        Degenerate
    };

    inline const char *to_string(Definiteness d)
    {
        switch (d)
        {
        case Definiteness::PositiveDefinite:
            return "PositiveDefinite";
        case Definiteness::NegativeDefinite:
            return "NegativeDefinite";
        case Definiteness::Indefinite:
            return "Indefinite";
        case Definiteness::Degenerate:
            return "Degenerate";
        }
        return "?";
    }

    inline Definiteness definiteness_of(const RatMat &gram)
    {
        Signature sig = signature(gram);
        if (sig.zero > 0)
            return Definiteness::Degenerate;
        if (sig.neg == 0)
            return Definiteness::PositiveDefinite;
        if (sig.pos == 0)
            return Definiteness::NegativeDefinite;
        return Definiteness::Indefinite;
    }

    // The standard Q-basis (e1, w e1, e2, w e2) of L^2.
    inline std::array<LVec, 4> standard_qbasis(std::int64_t d)
    {
        QElem one(d, 1, 0), w(d, 0, 1), zero(d, 0, 0);
        return {LVec{one, zero}, LVec{w, zero}, LVec{zero, one}, LVec{zero, w}};
    }

    class HermSpace
    {
    public:
        HermSpace(const QuadField &field, const Rat &alpha, const Rat &beta, const QElem &gamma)
            : field_(field), alpha_(alpha), beta_(beta), gamma_(QElem(field.d(), gamma.a(), gamma.b()))
        {
            if (gamma.d() != 0 && gamma.d() != field.d() && !gamma.is_rational())
                throw InputError("gamma belongs to a different field");
        }

        const QuadField &field() const noexcept { return field_; }
        std::int64_t d() const noexcept { return field_.d(); }
        const Rat &alpha() const noexcept { return alpha_; }
        const Rat &beta() const noexcept { return beta_; }
        const QElem &gamma() const noexcept { return gamma_; }

        // Entry s(e_i, e_j).
        QElem entry(std::size_t i, std::size_t j) const
        {
            if (i == 0 && j == 0)
                return QElem(d(), alpha_, 0);
            if (i == 1 && j == 1)
                return QElem(d(), beta_, 0);
            return i == 0 ? gamma_ : gamma_.conj();
        }

        QElem s_value(const LVec &x, const LVec &y) const
        {
            QElem out(d(), 0, 0);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    out += x[i] * entry(i, j) * y[j].conj();
            return out;
        }
        Rat h_value(const LVec &x) const { return s_value(x, x).a(); }
        Rat b_value(const LVec &x, const LVec &y) const { return s_value(x, y).trace(); }

        // det_L of the Gram matrix in the standard L-basis.
        Rat det_L() const { return alpha_ * beta_ - gamma_.norm(); }
        bool nondegenerate() const { return det_L() != 0; }

        // Gram of h on the Q-basis (e1, w e1, e2, w e2).
        RatMat gram4() const { return gram_on(standard_qbasis(d())); }

        // Gram of h on an arbitrary list of vectors.
        template <std::size_t N>
        RatMat gram_on(const std::array<LVec, N> &vs) const
        {
            RatMat g(N, N);
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = i; j < N; ++j)
                {
                    Rat v = i == j ? h_value(vs[i]) : b_value(vs[i], vs[j]) / 2;
                    g(i, j) = v;
                    g(j, i) = v;
                }
            return g;
        }

        friend bool operator==(const HermSpace &a, const HermSpace &b)
        {
            return a.field_ == b.field_ && a.alpha_ == b.alpha_ && a.beta_ == b.beta_ && a.gamma_ == b.gamma_;
        }

    private:
        QuadField field_;
        Rat alpha_;
        Rat beta_;
        QElem gamma_;
    };

    inline Definiteness definiteness(const HermSpace &S) { return definiteness_of(S.gram4()); }

    // ---------------------------------------------------------------------
    // Polarization
    // ---------------------------------------------------------------------

    namespace detail
    {
        inline std::size_t checked_rank(const RatMat &gram)
        {
            if (!gram.is_square() || gram.rows() % 2 != 0 || gram.rows() == 0)
                throw InputError("hermitian Gram must be 2n x 2n");
            if (!gram.is_symmetric())
                throw InputError("hermitian Gram must be symmetric");
            return gram.rows() / 2;
        }

        // Block-diagonal multiplication-by-l matrix on Q^{2n}, row convention.
        inline RatMat scalar_action(const QElem &l, std::size_t rank)
        {
            RatMat m2 = mult_matrix(l);
            RatMat m(2 * rank, 2 * rank);
            for (std::size_t k = 0; k < rank; ++k)
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j)
                        m(2 * k + i, 2 * k + j) = m2(i, j);
            return m;
        }
    } // namespace detail

    // s_l(g_i, g_j) = (conj(l) b(g_i,g_j) - b(l g_i, g_j)) / (conj(l) - l) on every
    // pair of Q-basis vectors, for a quadratic form given by its Gram matrix.
    inline Matrix<QElem> s_l_table(const RatMat &gram, std::int64_t d, const QElem &l)
    {
        std::size_t rank = detail::checked_rank(gram);
        QElem lq(d, l.a(), l.b());
        QElem denom = lq.conj() - lq;
        if (denom.is_zero())
            throw InputError("polarization sample l must not be rational");
        const std::size_t n = 2 * rank;
        RatMat act = detail::scalar_action(lq, rank);
        RatMat b2 = Rat(2) * gram;       // b(x,y) = x (2G) y^T
        RatMat lb = act * b2;            // b(l g_i, g_j)
        Matrix<QElem> out(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) = (lq.conj() * QElem(b2(i, j)) - QElem(lb(i, j))) / denom;
        return out;
    }

    // Throws NotHermitianError unless h(lx) = n_L(l) h(x) for all l, x. With
    // omega acting by M this is M G M^T = n G together with G M^T + M G = t G.
    inline void require_hermitian(const RatMat &gram, std::int64_t d)
    {
        std::size_t rank = detail::checked_rank(gram);
        RatMat m = detail::scalar_action(QElem(d, 0, 1), rank);
        if (m * gram * m.transpose() != Rat(omega_norm(d)) * gram)
            throw NotHermitianError("h(w x) != n_L(w) h(x) on the given Gram matrix");
        if (gram * m.transpose() + m * gram != Rat(omega_trace(d)) * gram)
            throw NotHermitianError("h((1+w) x) != n_L(1+w) h(x) on the given Gram matrix");
    }

    // The n x n hermitian matrix (s(e_i, e_j)) of a hermitian form of L-rank n.
    inline Matrix<QElem> polarize_matrix(const RatMat &gram, const QuadField &field)
    {
        require_hermitian(gram, field.d());
        std::size_t rank = gram.rows() / 2;
        Matrix<QElem> table = s_l_table(gram, field.d(), field.omega());
        Matrix<QElem> s(rank, rank);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j)
                s(i, j) = table(2 * i, 2 * j);
        return s;
    }

    // Rank-one variant: h on L with s(x, y) = c x conj(y); returns c.
    inline QElem polarize_rank1(const RatMat &gram, const QuadField &field)
    {
        if (gram.rows() != 2)
            throw InputError("rank-one polarization expects a 2x2 Gram matrix");
        return polarize_matrix(gram, field)(0, 0);
    }

    inline HermSpace polarize(const RatMat &gram, const QuadField &field)
    {
        if (gram.rows() != 4)
            throw InputError("binary polarization expects a 4x4 Gram matrix");
        Matrix<QElem> s = polarize_matrix(gram, field);
        if (!s(0, 0).is_rational() || !s(1, 1).is_rational() || s(1, 0) != s(0, 1).conj())
            throw InvariantViolation("polarization produced a non-hermitian matrix");
        return HermSpace(field, s(0, 0).a(), s(1, 1).a(), s(0, 1));
    }

    // True iff s_l agrees on all Q-basis pairs for every supplied l.
    inline bool polarize_independence_check(const RatMat &gram, const QuadField &field, const std::vector<QElem> &samples)
    {
        for (const QElem &l : samples)
            if (QElem(field.d(), l.a(), l.b()).is_rational())
                throw InputError("polarization sample l must satisfy l != conj(l)");
        if (samples.size() < 2)
            return true;
        Matrix<QElem> first = s_l_table(gram, field.d(), samples.front());
        for (std::size_t k = 1; k < samples.size(); ++k)
            if (s_l_table(gram, field.d(), samples[k]) != first)
                return false;
        return true;
    }

    // ---------------------------------------------------------------------
    // Lattices
    // ---------------------------------------------------------------------

    // Rank-4 Z-lattice in L^2, optionally a B-module.
    class Lattice
    {
    public:
        Lattice(const QuadField &field, const std::array<LVec, 4> &zbasis) : field_(field), zbasis_()
        {
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t k = 0; k < 2; ++k)
                    zbasis_[i][k] = QElem(field.d(), zbasis[i][k].a(), zbasis[i][k].b());
            basis_ = RatMat(4, 4);
            for (std::size_t i = 0; i < 4; ++i)
                basis_.set_row(i, to_q4(zbasis_[i]));
            if (determinant(basis_) == 0)
                throw RankError("lattice basis vectors are Z-linearly dependent");
            inverse_ = inverse(basis_);
            RatMat act = basis_ * mult_matrix4(field.omega()) * inverse_;
            b_stable_ = is_integral(act);
            if (b_stable_)
                omega_action_ = to_int(act);
        }

        // B^2.
        static Lattice standard(const QuadField &field) { return Lattice(field, standard_qbasis(field.d())); }

        const QuadField &field() const noexcept { return field_; }
        const std::array<LVec, 4> &zbasis() const noexcept { return zbasis_; }
        const RatMat &basis_matrix() const noexcept { return basis_; }
        bool b_stable() const noexcept { return b_stable_; }

        // omega * g_i = sum_j A(i,j) g_j.
        const IntMat &omega_action() const
        {
            require_b_stable("omega action");
            return omega_action_;
        }

        void require_b_stable(const std::string &what) const
        {
            if (!b_stable_)
                throw NotBModuleError(what + ": lattice is not stable under multiplication by omega");
        }

        RatVec rat_coords(const LVec &x) const { return row_times(to_q4(x), inverse_); }

        std::optional<IntVec> coords(const LVec &x) const
        {
            RatVec c = rat_coords(x);
            IntVec out;
            for (const Rat &r : c)
            {
                if (!is_integer(r))
                    return std::nullopt;
                out.push_back(r.get_num());
            }
            return out;
        }
        bool contains(const LVec &x) const { return coords(x).has_value(); }

        LVec vector_at(const IntVec &c) const
        {
            RatVec q(4, Rat(0));
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    q[j] += Rat(c[i]) * basis_(i, j);
            return from_q4(field_.d(), q);
        }

        Rat covolume() const { return abs(determinant(basis_)); }

    private:
        QuadField field_;
        std::array<LVec, 4> zbasis_;
        RatMat basis_;
        RatMat inverse_;
        bool b_stable_ = false;
        IntMat omega_action_;
    };

    inline bool operator==(const Lattice &a, const Lattice &b)
    {
        return a.field() == b.field() && lattice_basis(a.basis_matrix()) == lattice_basis(b.basis_matrix());
    }

    // Z-index [sup : sub]; throws unless sub is contained in sup.
    inline Rat lattice_index(const Lattice &sup, const Lattice &sub)
    {
        for (const LVec &g : sub.zbasis())
            if (!sup.contains(g))
                throw PreconditionError("lattice_index: not a sublattice");
        return sub.covolume() / sup.covolume();
    }

    inline QElem det_L2(const LVec &v1, const LVec &v2) { return v1[0] * v2[1] - v1[1] * v2[0]; }

    // B v1 + B v2 with Z-basis (v1, w v1, v2, w v2).
    inline Lattice lattice_from_B_basis(const QuadField &field, const LVec &v1, const LVec &v2)
    {
        if (det_L2(v1, v2).is_zero())
            throw RankError("lattice_from_B_basis: vectors are L-linearly dependent");
        QElem w = field.omega();
        return Lattice(field, {v1, w * v1, v2, w * v2});
    }

    // Smallest B-stable lattice containing the given vectors (must span V over Q).
    inline Lattice b_closure(const QuadField &field, const std::vector<LVec> &gens)
    {
        RatMat g(2 * gens.size(), 4);
        for (std::size_t i = 0; i < gens.size(); ++i)
        {
            g.set_row(2 * i, to_q4(gens[i]));
            g.set_row(2 * i + 1, to_q4(field.omega() * gens[i]));
        }
        RatMat basis = lattice_basis(g);
        if (basis.rows() != 4)
            throw RankError("b_closure: generators do not span L^2");
        std::array<LVec, 4> zb;
        for (std::size_t i = 0; i < 4; ++i)
            zb[i] = from_q4(field.d(), basis.row(i));
        return Lattice(field, zb);
    }

    // ---------------------------------------------------------------------
    // Integrality and discriminants
    // ---------------------------------------------------------------------

    inline void require_same_field(const HermSpace &S, const Lattice &L)
    {
        if (!(S.field() == L.field()))
            throw InputError("form and lattice are over different fields");
    }

    // Gram of h on the lattice's Z-basis (the quaternary integral form).
    inline RatMat lattice_gram(const HermSpace &S, const Lattice &L)
    {
        require_same_field(S, L);
        return S.gram_on(L.zbasis());
    }

    inline bool is_integral(const HermSpace &S, const Lattice &L)
    {
        require_same_field(S, L);
        const auto &g = L.zbasis();
        for (std::size_t i = 0; i < 4; ++i)
        {
            if (!is_integer(S.h_value(g[i])))
                return false;
            for (std::size_t j = i + 1; j < 4; ++j)
                if (!is_integer(S.b_value(g[i], g[j])))
                    return false;
        }
        return true;
    }

    enum class DiscKind
    {
        FormDeterminant,    // d(Lambda, h)
        FormDiscriminant,   // Delta(Lambda, h) = D * d(Lambda, h)
        LatticeDiscriminant // Delta(Lambda) of a lattice in a quaternion algebra
    };

    enum class SignMeaning
    {
        DefiniteForm,   // positive value
        IndefiniteForm, // negative d, positive Delta
        MatrixAlgebra,  // positive lattice discriminant
        DivisionAlgebra // negative lattice discriminant
    };

    inline const char *to_string(DiscKind k)
    {
        switch (k)
        {
        case DiscKind::FormDeterminant:
            return "form_determinant";
        case DiscKind::FormDiscriminant:
            return "form_discriminant";
        case DiscKind::LatticeDiscriminant:
            return "lattice_discriminant";
        }
        return "?";
    }

    inline const char *to_string(SignMeaning m)
    {
        switch (m)
        {
        case SignMeaning::DefiniteForm:
            return "definite_form";
        case SignMeaning::IndefiniteForm:
            return "indefinite_form";
        case SignMeaning::MatrixAlgebra:
            return "matrix_algebra";
        case SignMeaning::DivisionAlgebra:
            return "division_algebra";
        }
        return "?";
    }

    struct DiscValue
    {
        Rat value;
        Rat ideal; // |value|, the positive generator
        DiscKind kind;
        SignMeaning meaning;

        friend bool operator==(const DiscValue &a, const DiscValue &b) = default;
    };

    inline DiscValue form_disc_value(const Rat &value, DiscKind kind)
    {
        // d(Lambda, h) carries the sign of det(s(v_i, v_j)): positive exactly for
        // definite forms. Delta = D * d with D < 0 flips it.
        bool definite = kind == DiscKind::FormDeterminant ? value > 0 : value < 0;
        return {value, abs(value), kind, definite ? SignMeaning::DefiniteForm : SignMeaning::IndefiniteForm};
    }

    // d(Lambda, h) from the free sublattice B w1 + B w2 (w1, w2 in Lambda):
    // det(s(w_i, w_j)) / [Lambda : B w1 + B w2].
    inline DiscValue det_form(const HermSpace &S, const Lattice &L, const LVec &w1, const LVec &w2)
    {
        require_same_field(S, L);
        if (!S.nondegenerate())
            throw DegenerateError("det_form: hermitian form is degenerate");
        L.require_b_stable("det_form");
        if (!L.contains(w1) || !L.contains(w2))
            throw PreconditionError("det_form: sublattice generators must lie in the lattice");
        Lattice sub = lattice_from_B_basis(S.field(), w1, w2);
        Rat index = lattice_index(L, sub);
        Rat det = S.h_value(w1) * S.h_value(w2) - S.s_value(w1, w2).norm();
        return form_disc_value(det / index, DiscKind::FormDeterminant);
    }

    inline DiscValue det_form(const HermSpace &S, const Lattice &L)
    {
        const auto &g = L.zbasis();
        for (std::size_t j = 1; j < 4; ++j)
            if (!det_L2(g[0], g[j]).is_zero())
                return det_form(S, L, g[0], g[j]);
        throw InvariantViolation("rank-4 lattice without two L-independent basis vectors");
    }

    // Delta(Lambda, h) = D * d(Lambda, h); integral for integral forms.
    inline DiscValue discriminant_form(const HermSpace &S, const Lattice &L)
    {
        if (!is_integral(S, L))
            throw PreconditionError("discriminant_form: form is not integral on the lattice");
        DiscValue d = det_form(S, L);
        Rat delta = Rat(S.field().disc()) * d.value;
        if (!is_integer(delta))
            throw InvariantViolation("discriminant of an integral form is not an integer: " + to_string(delta));
        return form_disc_value(delta, DiscKind::FormDiscriminant);
    }

} // namespace hermquat
