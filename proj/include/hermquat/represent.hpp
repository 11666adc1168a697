#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exact_linalg.hpp"
#include "hermitian.hpp"
#include "qfield.hpp"

// Does h represent 1? Over Q by signature; over Z by the real condition, local
// solvability at p | 2 D Delta, and a box search in the lattice.

namespace hermquat
{

    enum class LocalMethod
    {
        UnramifiedUnitValue,
        RamifiedTwoUnitDiagonal,
        DirectHensel
    };

    inline const char *to_string(LocalMethod m)
    {
        switch (m)
        {
        case LocalMethod::UnramifiedUnitValue:
            return "UnramifiedUnitValue";
        case LocalMethod::RamifiedTwoUnitDiagonal:
            return "RamifiedTwoUnitDiagonal";
        case LocalMethod::DirectHensel:
            return "DirectHensel";
        }
        return "?";
    }

    // x in lattice coordinates with h(x) = 1 mod p^k, k = 2t+1, gradient valuation <= t.
    struct HenselCertificate
    {
        IntVec x;
        long k = 1;
        long t = 0;
        Int modulus;
    };

    struct LocalReport
    {
        Int prime;
        bool solvable = false;
        LocalMethod method = LocalMethod::DirectHensel;
        std::optional<HenselCertificate> certificate;
        std::vector<long> diagonal_valuations; // ramified case only
        std::string note;
    };

    enum class Verdict
    {
        Represented,
        LocallyRepresentedSearchExhausted,
        LocalObstruction,
        RealObstruction
    };

    inline const char *to_string(Verdict v)
    {
        switch (v)
        {
        case Verdict::Represented:
            return "Represented";
        case Verdict::LocallyRepresentedSearchExhausted:
            return "LocallyRepresentedSearchExhausted";
        case Verdict::LocalObstruction:
            return "LocalObstruction";
        case Verdict::RealObstruction:
            return "RealObstruction";
        }
        return "?";
    }

    struct RepOneReport
    {
        bool real_ok = false;
        Definiteness definiteness = Definiteness::Degenerate;
        Rat delta;
        std::vector<LocalReport> locals;
        std::optional<LVec> witness;
        std::optional<IntVec> witness_coords;
        Verdict verdict = Verdict::LocallyRepresentedSearchExhausted;
        std::optional<Int> obstruction_prime;
        bool contradicts_theorem = false;
        std::vector<std::string> notes;
    };

    struct RepOneConfig
    {
        long search_bound = 50;
        std::optional<std::vector<Int>> primes; // overrides p | 2 D Delta
    };

    // ---------------------------------------------------------------------
    // Integral quadratic form helpers (lattice coordinates)
    // ---------------------------------------------------------------------

    inline Int int_value(const RatMat &G, const IntVec &x)
    {
        RatVec r(x.begin(), x.end());
        Rat v = quadratic_value(G, r);
        if (!is_integer(v))
            throw PreconditionError("form is not integral on the lattice");
        return v.get_num();
    }

    // Partial derivatives of h(x) = x G x^T: 2 (G x)_i.
    inline IntVec gradient(const RatMat &G, const IntVec &x)
    {
        IntVec g(G.rows());
        for (std::size_t i = 0; i < G.rows(); ++i)
        {
            Rat s = 0;
            for (std::size_t j = 0; j < G.cols(); ++j)
                s += G(i, j) * Rat(x[j]);
            s *= 2;
            if (!is_integer(s))
                throw PreconditionError("form is not integral on the lattice");
            g[i] = s.get_num();
        }
        return g;
    }

    inline bool hensel_liftable(const RatMat &G, const IntVec &x, const Int &p, long t)
    {
        require_prime(p);
        if (t < 0 || (p == 2 && t < 1))
            return false;
        if (valuation(int_value(G, x) - 1, p) < 2 * t + 1)
            return false;
        for (const Int &g : gradient(G, x))
            if (valuation(g, p) <= t)
                return true;
        return false;
    }

    // One Newton step in a single coordinate: from h(x) = 1 mod p^(2t+1) to mod p^(2t+2).
    inline IntVec hensel_lift(const RatMat &G, const IntVec &x, const Int &p, long t)
    {
        if (!hensel_liftable(G, x, p, t))
            throw PreconditionError("hensel_lift: certificate does not satisfy the lifting criterion");
        IntVec grad = gradient(G, x);
        std::size_t best = 0;
        long m = kValuationInfinity;
        for (std::size_t i = 0; i < grad.size(); ++i)
        {
            long v = valuation(grad[i], p);
            if (v < m)
            {
                m = v;
                best = i;
            }
        }
        Int f = int_value(G, x) - 1;
        if (f == 0)
            return x;
        Int pm = pow_int(p, static_cast<unsigned long>(m));
        Int modulus = pow_int(p, static_cast<unsigned long>(2 * t + 2));
        auto inv = inverse_mod(Int(grad[best] / pm), modulus);
        if (!inv)
            throw InvariantViolation("hensel_lift: unit part of the gradient is not invertible");
        Int delta = mod_floor(-Int(f / pm) * *inv, modulus);
        IntVec out = x;
        out[best] += delta;
        return out;
    }

    // ---------------------------------------------------------------------
    // Rational case
    // ---------------------------------------------------------------------

    struct RationalRep
    {
        bool represents = false;
        std::optional<LVec> witness;
    };

    inline RationalRep represents_one_rational(const HermSpace &S, long box = 3)
    {
        if (!S.nondegenerate())
            throw PreconditionError("represents_one_rational: form is degenerate");
        RationalRep out;
        if (definiteness(S) == Definiteness::NegativeDefinite)
            return out;
        out.represents = true;

        const RatMat G = S.gram4();
        const std::int64_t d = S.d();
        std::optional<RatVec> isotropic;
        RatVec c(4);
        for (long H = 1; H <= box; ++H)
        {
            std::optional<RatVec> scaled;
            for (long a = H; a >= -H; --a)
                for (long b = H; b >= -H; --b)
                    for (long e = H; e >= -H; --e)
                        for (long f = H; f >= -H; --f)
                    {
                        if (std::max({std::labs(a), std::labs(b), std::labs(e), std::labs(f)}) != H)
                            continue;
                        c = {Rat(a), Rat(b), Rat(e), Rat(f)};
                        Rat v = quadratic_value(G, c);
                        if (v == 1)
                        {
                            out.witness = from_q4(d, c);
                            return out;
                        }
                        if (v > 0 && !scaled)
                            if (auto r = rational_sqrt(v))
                            {
                                Rat inv = 1 / *r;
                                scaled = c;
                                for (Rat &x : *scaled)
                                    x *= inv;
                            }
                        if (v == 0 && !isotropic)
                            isotropic = c;
                    }
            if (scaled)
            {
                out.witness = from_q4(d, *scaled);
                return out;
            }
        }
        if (isotropic)
        {
            // h(y + lambda x) = h(y) + lambda b(x, y) for isotropic x
            for (std::size_t i = 0; i < 4; ++i)
            {
                RatVec y(4, Rat(0));
                y[i] = 1;
                Rat bxy = 2 * dot(row_times(*isotropic, G), y);
                if (bxy == 0)
                    continue;
                Rat lambda = (1 - quadratic_value(G, y)) / bxy;
                for (std::size_t k = 0; k < 4; ++k)
                    y[k] += lambda * (*isotropic)[k];
                out.witness = from_q4(d, y);
                return out;
            }
        }
        return out;
    }

    // ---------------------------------------------------------------------
    // Local tests
    // ---------------------------------------------------------------------

    namespace detail
    {
        inline HenselCertificate make_certificate(IntVec x, const Int &p, long t)
        {
            long k = 2 * t + 1;
            Int mod = pow_int(p, static_cast<unsigned long>(k));
            for (Int &c : x)
                c = mod_floor(c, mod);
            return {std::move(x), k, t, mod};
        }

        // Enumerate Z^4 / m Z^4 until pred holds.
        template <class Pred>
        std::optional<IntVec> search_box(const Int &m, Pred pred)
        {
            long mm = m.get_si();
            IntVec x(4);
            for (long a = 0; a < mm; ++a)
                for (long b = 0; b < mm; ++b)
                    for (long c = 0; c < mm; ++c)
                        for (long e = 0; e < mm; ++e)
                        {
                            x = {Int(a), Int(b), Int(c), Int(e)};
                            if (pred(x))
                                return x;
                        }
            return std::nullopt;
        }

        inline IntVec lattice_coords_of(const Lattice &L, const LVec &v)
        {
            auto c = L.coords(v);
            if (!c)
                throw InvariantViolation("vector expected in the lattice is not");
            return *c;
        }

        inline void check_local_hypotheses(const HermSpace &S, const Lattice &L, const Int &p)
        {
            require_prime(p);
            require_same_field(S, L);
            if (!S.nondegenerate())
                throw PreconditionError("local_test: hermitian form is degenerate");
            L.require_b_stable("local_test");
            if (!is_integral(S, L))
                throw PreconditionError("local_test: form is not integral on the lattice");
            Int D(static_cast<long>(S.field().disc()));
            if (p == 2 && mpz_divisible_p(D.get_mpz_t(), p.get_mpz_t()))
                throw UnsupportedError("local_test: 2 ramifies in B (D = " + D.get_str() + "); the 2-adic theory is not covered");
            Rat delta = discriminant_form(S, L).value;
            long v = valuation(delta, p);
            if (v >= 2)
                throw HypothesisError("local_test: val_" + p.get_str() + "(Delta) = " + std::to_string(v) +
                                          " but the local argument needs |Delta| square-free at " + p.get_str() +
                                          " (Delta = " + to_string(delta) + ")",
                                      p.get_si());
        }
    } // namespace detail

    // p not dividing D: a vector u with h(u) a p-adic unit, then x = l u with
    // n(l) h(u) = 1 to the needed precision (the norm from B_p^x is onto Z_p^x).
    inline LocalReport local_test_unramified(const HermSpace &S, const Lattice &L, const Int &p)
    {
        const RatMat G = lattice_gram(S, L);
        LocalReport rep;
        rep.prime = p;
        rep.method = LocalMethod::UnramifiedUnitValue;

        std::optional<IntVec> u;
        for (std::size_t i = 0; i < 4 && !u; ++i)
        {
            IntVec e(4, Int(0));
            e[i] = 1;
            if (valuation(int_value(G, e), p) == 0)
                u = e;
        }
        for (std::size_t i = 0; i < 4 && !u; ++i)
            for (std::size_t j = i + 1; j < 4 && !u; ++j)
            {
                IntVec e(4, Int(0));
                e[i] = 1;
                e[j] = 1;
                if (valuation(int_value(G, e), p) == 0)
                    u = e;
            }
        if (!u)
        {
            rep.solvable = false;
            rep.note = "h takes no unit value on the lattice mod " + p.get_str();
            return rep;
        }

        const QuadField &F = S.field();
        LVec uvec = L.vector_at(*u);
        Int hu = int_value(G, *u);
        long t = p == 2 ? 1 : 0;
        Int mod = pow_int(p, static_cast<unsigned long>(2 * t + 1));
        auto target = inverse_mod(hu, mod);
        if (!target)
            throw InvariantViolation("unit value is not invertible");

        auto try_l = [&](const Int &a, const Int &b) -> std::optional<IntVec>
        {
            IntVec x = detail::lattice_coords_of(L, F.elem(Rat(a), Rat(b)) * uvec);
            if (hensel_liftable(G, x, p, t))
                return x;
            return std::nullopt;
        };

        std::optional<IntVec> x;
        if (p == 2)
        {
            for (long a = 0; a < 8 && !x; ++a)
                for (long b = 0; b < 8 && !x; ++b)
                    x = try_l(Int(a), Int(b));
            if (!x)
                x = detail::search_box(Int(8), [&](const IntVec &c) { return hensel_liftable(G, c, p, 1); });
        }
        else
        {
            // a^2 + tr(w) a b + n(w) b^2 = target mod p, solved in a for each b
            Int tw(static_cast<long>(F.omega_tr())), nw(static_cast<long>(F.omega_n()));
            Int inv2 = *inverse_mod(Int(2), p);
            for (Int b = 0; b < p && !x; ++b)
            {
                Int disc = mod_floor(tw * tw * b * b - 4 * (nw * b * b - *target), p);
                auto r = sqrt_mod_prime(disc, p);
                if (!r)
                    continue;
                Int a = mod_floor((-tw * b + *r) * inv2, p);
                x = try_l(a, b);
            }
        }
        if (!x)
            throw InvariantViolation("no Hensel certificate at unramified prime " + p.get_str());
        rep.solvable = true;
        rep.certificate = detail::make_certificate(*x, p, t);
        return rep;
    }

    // p | D, p odd: p-adic diagonalization, two unit coefficients a1, a2 and
    // a1 X^2 + a2 Y^2 = 1 mod p.
    inline LocalReport local_test_ramified(const HermSpace &S, const Lattice &L, const Int &p)
    {
        const RatMat G = lattice_gram(S, L);
        LocalReport rep;
        rep.prime = p;
        rep.method = LocalMethod::RamifiedTwoUnitDiagonal;

        Diagonalization dg = congruence_diagonalize(G, p);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (valuation(dg.P(i, j), p) < 0)
                    throw InvariantViolation("p-adic diagonalization left Z_p");
        if (valuation(determinant(dg.P), p) != 0)
            throw InvariantViolation("p-adic diagonalization is not unimodular");

        std::vector<long> vals;
        std::vector<std::size_t> units;
        for (std::size_t i = 0; i < 4; ++i)
        {
            long v = valuation(dg.D(i, i), p);
            vals.push_back(v);
            if (v == 0)
                units.push_back(i);
        }
        rep.diagonal_valuations = vals;
        std::vector<long> sorted = vals;
        std::sort(sorted.begin(), sorted.end());
        long dv = valuation(discriminant_form(S, L).value, p);
        std::vector<long> expect = dv == 1 ? std::vector<long>{0, 0, 1, 1} : std::vector<long>{0, 0, 0, 0};
        if (sorted != expect)
        {
            std::string s;
            for (long v : vals)
                s += (s.empty() ? "" : ",") + std::to_string(v);
            throw InvariantViolation("ramified prime " + p.get_str() + ": diagonal valuations (" + s +
                                     ") do not have the expected shape");
        }

        Int a1 = reduce_mod(dg.D(units[0], units[0]), p);
        Int a2 = reduce_mod(dg.D(units[1], units[1]), p);
        Int inv_a2 = *inverse_mod(a2, p);
        std::optional<IntVec> x;
        for (Int X = 0; X < p && !x; ++X)
        {
            Int rhs = mod_floor((1 - a1 * X * X) * inv_a2, p);
            auto Y = sqrt_mod_prime(rhs, p);
            if (!Y)
                continue;
            RatVec y(4, Rat(0));
            y[units[0]] = Rat(X);
            y[units[1]] = Rat(*Y);
            // columns of P are the new basis vectors
            RatVec xr = row_times(y, dg.P.transpose());
            IntVec xi(4);
            for (std::size_t i = 0; i < 4; ++i)
                xi[i] = reduce_mod(xr[i], p);
            if (!hensel_liftable(G, xi, p, 0))
                throw InvariantViolation("two-unit solution failed to lift at " + p.get_str());
            x = xi;
        }
        if (!x)
            throw InvariantViolation("a1 X^2 + a2 Y^2 = 1 has no solution mod " + p.get_str());
        rep.solvable = true;
        rep.certificate = detail::make_certificate(*x, p, 0);
        return rep;
    }

    inline LocalReport local_test(const HermSpace &S, const Lattice &L, const Int &p)
    {
        detail::check_local_hypotheses(S, L, p);
        Int D(static_cast<long>(S.field().disc()));
        if (mpz_divisible_p(D.get_mpz_t(), p.get_mpz_t()))
            return local_test_ramified(S, L, p);
        return local_test_unramified(S, L, p);
    }

    // Brute force over Lambda / p^(2t+1) Lambda; an independent check of local_test.
    inline LocalReport local_test_direct(const HermSpace &S, const Lattice &L, const Int &p, long t = -1)
    {
        require_prime(p);
        if (t < 0)
            t = p == 2 ? 1 : 0;
        const RatMat G = lattice_gram(S, L);
        Int mod = pow_int(p, static_cast<unsigned long>(2 * t + 1));
        if (mod > 400)
            throw UnsupportedError("local_test_direct: modulus " + mod.get_str() + " too large for exhaustive search");
        LocalReport rep;
        rep.prime = p;
        rep.method = LocalMethod::DirectHensel;
        auto x = detail::search_box(mod, [&](const IntVec &c) { return hensel_liftable(G, c, p, t); });
        rep.solvable = x.has_value();
        if (x)
            rep.certificate = detail::make_certificate(*x, p, t);
        return rep;
    }

    // ---------------------------------------------------------------------
    // Global search
    // ---------------------------------------------------------------------

    namespace detail
    {
        // q[i][j] integer coefficients of h with q_ii c_i^2 + q_ij c_i c_j (i < j).
        template <class T>
        std::optional<IntVec> box_search(const std::array<std::array<T, 4>, 4> &q, long lo_shell, long hi_shell)
        {
            for (long H = lo_shell; H <= hi_shell; ++H)
            {
                for (long c0 = H; c0 >= -H; --c0)
                    for (long c1 = H; c1 >= -H; --c1)
                        for (long c2 = H; c2 >= -H; --c2)
                        {
                            bool on_shell = std::labs(c0) == H || std::labs(c1) == H || std::labs(c2) == H;
                            T c[3] = {T(c0), T(c1), T(c2)};
                            T partial = 0;
                            for (int i = 0; i < 3; ++i)
                                for (int j = i; j < 3; ++j)
                                    partial += q[i][j] * c[i] * c[j];
                            T lin = q[0][3] * c[0] + q[1][3] * c[1] + q[2][3] * c[2];
                            for (long c3 = H; c3 >= -H; --c3)
                            {
                                if (!on_shell && std::labs(c3) != H)
                                    continue;
                                T v3(c3);
                                if (partial + lin * v3 + q[3][3] * v3 * v3 == 1)
                                    return IntVec{Int(c0), Int(c1), Int(c2), Int(c3)};
                            }
                        }
            }
            return std::nullopt;
        }
    } // namespace detail

    // Shells H = 1..bound of the box max |c_i| = H, each coordinate from +H down
    // to -H; first v = sum c_i g_i with h(v) = 1.
    inline std::optional<IntVec> global_search_coords(const HermSpace &S, const Lattice &L, long bound)
    {
        require_same_field(S, L);
        if (!is_integral(S, L))
            throw PreconditionError("global_search: form is not integral on the lattice");
        const RatMat G = lattice_gram(S, L);
        Definiteness def = definiteness_of(G);
        if (def == Definiteness::NegativeDefinite)
            return std::nullopt;
        long hi = bound;
        if (def == Definiteness::PositiveDefinite)
        {
            // x G x^T <= 1 forces x_i^2 <= (G^-1)_ii
            RatMat Gi = inverse(G);
            long m = 0;
            for (std::size_t i = 0; i < 4; ++i)
            {
                Rat r = Gi(i, i);
                Int fl = r.get_num() / r.get_den();
                m = std::max(m, Int(sqrt(fl)).get_si());
            }
            hi = std::min(hi, m);
        }

        std::array<std::array<Int, 4>, 4> qi{};
        Int maxc = 0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i; j < 4; ++j)
            {
                Rat c = i == j ? G(i, i) : 2 * G(i, j);
                qi[i][j] = c.get_num();
                maxc = std::max(maxc, Int(abs(qi[i][j])));
            }
        // 10 terms of size maxc * H^2 must fit comfortably in 64 bits
        Int worst = maxc * 16 * Int(bound) * Int(bound);
        if (worst < Int("1000000000000000000"))
        {
            std::array<std::array<std::int64_t, 4>, 4> q{};
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = i; j < 4; ++j)
                    q[i][j] = qi[i][j].get_si();
            return detail::box_search(q, 1, hi);
        }
        return detail::box_search(qi, 1, hi);
    }

    inline std::optional<LVec> global_search(const HermSpace &S, const Lattice &L, long bound)
    {
        auto c = global_search_coords(S, L, bound);
        if (!c)
            return std::nullopt;
        return L.vector_at(*c);
    }

    // ---------------------------------------------------------------------
    // Assembled decision
    // ---------------------------------------------------------------------

    inline std::vector<Int> relevant_primes(const HermSpace &S, const Rat &delta)
    {
        if (!is_integer(delta))
            throw InvariantViolation("non-integral discriminant");
        Int n = 2 * Int(static_cast<long>(S.field().disc())) * delta.get_num();
        return prime_divisors(abs(n));
    }

    inline RepOneReport represents_one_integral(const HermSpace &S, const Lattice &L, const RepOneConfig &cfg = {})
    {
        require_same_field(S, L);
        S.field().require_odd_discriminant("represents_one_integral");
        if (!S.nondegenerate())
            throw PreconditionError("represents_one_integral: form is degenerate");
        L.require_b_stable("represents_one_integral");
        if (!is_integral(S, L))
            throw PreconditionError("represents_one_integral: form is not integral on the lattice");
        if (cfg.search_bound < 1)
            throw InputError("search bound must be positive");

        RepOneReport rep;
        rep.delta = discriminant_form(S, L).value;
        rep.definiteness = definiteness(S);
        rep.real_ok = rep.definiteness != Definiteness::NegativeDefinite;
        if (!rep.real_ok)
        {
            rep.verdict = Verdict::RealObstruction;
            rep.notes.push_back("h is negative definite and cannot take the value 1 over R");
            return rep;
        }

        std::vector<Int> primes = cfg.primes ? *cfg.primes : relevant_primes(S, rep.delta);
        std::sort(primes.begin(), primes.end());
        for (const Int &p : primes)
        {
            rep.locals.push_back(local_test(S, L, p));
            if (!rep.locals.back().solvable && !rep.obstruction_prime)
                rep.obstruction_prime = p;
        }
        if (rep.obstruction_prime)
        {
            rep.verdict = Verdict::LocalObstruction;
            rep.notes.push_back("no local solution at p = " + rep.obstruction_prime->get_str());
            return rep;
        }

        if (auto c = global_search_coords(S, L, cfg.search_bound))
        {
            rep.witness_coords = *c;
            rep.witness = L.vector_at(*c);
            if (S.h_value(*rep.witness) != 1)
                throw InvariantViolation("search witness does not satisfy h = 1");
            rep.verdict = Verdict::Represented;
            return rep;
        }

        rep.verdict = Verdict::LocallyRepresentedSearchExhausted;
        if (rep.definiteness == Definiteness::Indefinite)
        {
            rep.contradicts_theorem = true;
            rep.notes.push_back("CONTRADICTION: indefinite form with square-free |Delta| is locally represented "
                                "everywhere but no vector with h = 1 was found within height " +
                                std::to_string(cfg.search_bound));
        }
        else
        {
            rep.notes.push_back("definite form: local solvability does not force a global representation "
                                "(other classes in the genus); no vector with h = 1 up to height " +
                                std::to_string(cfg.search_bound));
        }
        return rep;
    }

} // namespace hermquat
