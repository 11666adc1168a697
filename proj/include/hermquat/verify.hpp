#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hermitian.hpp"
#include "json_io.hpp"
#include "quaternion.hpp"
#include "random.hpp"
#include "represent.hpp"
#include "sweep.hpp"

// Property suites shared by the CLI `verify` command and the test binaries.
// Every failure is recorded with enough JSON to replay the case.

namespace hermquat::verify
{
    using json = nlohmann::json;

    struct SuiteResult
    {
        SuiteResult() = default;
        explicit SuiteResult(std::string n) : name(std::move(n)) {}

        std::string name;
        long cases = 0;
        std::vector<json> failures;
        bool ok() const { return failures.empty(); }

        void check(bool cond, const std::string &what, const json &replay)
        {
            ++cases;
            if (!cond)
                failures.push_back({{"check", what}, {"case", replay}});
        }
    };

    inline const std::vector<std::int64_t> kPolarizeFields{-3, -7, -11, -15};
    inline const std::vector<std::int64_t> kTheoremFields{-3, -7};

    // M_2(Z) on E11, E12, E21, E22 with i(w) = [[0, -1], [1, 1]], d = -3.
    inline Embedding m2z_embedding()
    {
        MultTable t;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c)
                    for (int e = 0; e < 2; ++e)
                    {
                        RatVec out(4, Rat(0));
                        if (b == c)
                            out[2 * a + e] = 1;
                        t[2 * a + b][2 * c + e] = out;
                    }
        QuatAlgebra A(-3, t, RatVec{1, 0, 0, 1});
        return Embedding(QuatOrder(A, RatMat::identity(4)), RatVec{0, -1, 1, 1});
    }

    inline std::vector<QElem> polarization_scalars(const QuadField &F)
    {
        return {F.elem(0, 1), F.elem(1, 1), F.elem(-3, 2), F.elem(0, 5), F.elem(-4, 1)};
    }

    // ---------------------------------------------------------------------

    inline SuiteResult polarize_suite(std::uint64_t seed, long n = 200)
    {
        SuiteResult r{"polarize"};
        gen::Rng rng(seed);
        for (long i = 0; i < n; ++i)
        {
            QuadField F(rng.pick(kPolarizeFields));
            HermSpace S = gen::herm_space(rng, F);
            RatMat g = S.gram4();
            json replay = json_io::form(S);
            r.check(polarize(g, F) == S, "polarize(h) == S", replay);
            r.check(polarize_independence_check(g, F, polarization_scalars(F)), "s_l independent of l", replay);
        }
        return r;
    }

    inline SuiteResult algebra_suite(std::uint64_t seed, long n = 50, long pairs = 100)
    {
        SuiteResult r{"algebra"};
        gen::Rng rng(seed);
        for (long i = 0; i < n; ++i)
        {
            QuadField F(rng.pick(kTheoremFields));
            auto P = gen::pointed_space(rng, F);
            json replay = json_io::form(P.form);
            replay["point"] = json_io::lvec(P.point);
            QuatAlgebra A = build_algebra(P.form, P.point);
            StructureReport st = verify_structure(A);
            r.check(st.associativity_failures == 0, "64 associativity triples", replay);
            r.check(st.identity_ok, "identity laws", replay);
            const RatVec u = unit_vector(2);
            r.check(A.mul(u, u) == A.scalar(A.require_presentation().theta), "u^2 = theta", replay);
            for (int k = 0; k < 3; ++k)
            {
                QElem l = gen::nonzero_qelem(rng, F.d(), 5, 3);
                QElem lc = l.conj();
                RatVec la{l.a(), l.b(), 0, 0}, lca{lc.a(), lc.b(), 0, 0};
                r.check(A.mul(u, la) == A.mul(lca, u), "u l = conj(l) u", replay);
            }
            for (long k = 0; k < pairs; ++k)
            {
                RatVec x = gen::algebra_element(rng), y = gen::algebra_element(rng);
                r.check(A.reduced_norm(A.mul(x, y)) == A.reduced_norm(x) * A.reduced_norm(y), "n(xy) = n(x) n(y)",
                        replay);
            }
            r.check(A.norm_gram() == A.require_presentation().frame * P.form.gram4() *
                                         A.require_presentation().frame.transpose(),
                    "reduced norm = h", replay);
        }
        return r;
    }

    struct TraceTriple
    {
        Rat a, b, theta;
    };

    inline std::vector<TraceTriple> trace_triples(std::uint64_t seed, long n = 20)
    {
        gen::Rng rng(seed);
        std::vector<TraceTriple> out;
        while (static_cast<long>(out.size()) < n)
        {
            Rat a = rng.rat(6, 2), b = rng.rat(6, 2), theta = rng.rat(7, 3);
            if (theta == 0 || rational_sqrt(a * a - 4 * b))
                continue;
            out.push_back({a, b, theta});
        }
        return out;
    }

    inline SuiteResult trace_suite(std::uint64_t seed, long n = 20)
    {
        SuiteResult r{"trace"};
        for (const auto &t : trace_triples(seed, n))
        {
            QuatAlgebra A = quadratic_pair_algebra(t.a, t.b, t.theta);
            Rat disc = t.a * t.a - 4 * t.b;
            Rat det = determinant(trace_gram(A, RatMat::identity(4)));
            r.check(det == -disc * disc * t.theta * t.theta, "det(tr) = -(a^2-4b)^2 theta^2",
                    {{"a", json_io::rat(t.a)}, {"b", json_io::rat(t.b)}, {"theta", json_io::rat(t.theta)}});
        }
        return r;
    }

    // Integral pointed lattices: random integral forms on B^2 with a point found by search.
    struct IntegralPointed
    {
        HermSpace form;
        Lattice lattice;
        LVec point;
    };

    inline std::vector<IntegralPointed> integral_pointed_lattices(std::uint64_t seed, long n, long bound = 8)
    {
        gen::Rng rng(seed);
        std::vector<IntegralPointed> out;
        while (static_cast<long>(out.size()) < n)
        {
            QuadField F(rng.pick(kTheoremFields));
            HermSpace S = gen::integral_form(rng, F);
            Lattice L = Lattice::standard(F);
            if (auto v = global_search(S, L, bound))
                out.push_back({S, L, *v});
        }
        return out;
    }

    inline SuiteResult order_suite(std::uint64_t seed, long n = 50)
    {
        SuiteResult r{"order"};
        gen::Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
        for (const auto &P : integral_pointed_lattices(seed, n))
        {
            json replay = json_io::form_output(P.form, P.lattice, P.point);
            Embedding e = build_order(P.form, P.lattice, P.point);
            for (const auto &entry : e.order().closure_transcript())
                r.check(entry.integral, "Z-basis product in the lattice", replay);
            std::vector<LVec> ws(P.lattice.zbasis().begin(), P.lattice.zbasis().end());
            for (int k = 0; k < 3; ++k)
            {
                IntVec c{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
                ws.push_back(P.lattice.vector_at(c));
            }
            for (const LVec &w : ws)
            {
                ClosureIdentities ci = closure_identities(P.form, e.algebra(), w);
                r.check(ci.product_matches, "w w = (theta - n(gamma)) v + tr(gamma) w", replay);
                r.check(ci.coeff_v_is_minus_h, "theta - n(gamma) = -h(w)", replay);
                r.check(ci.trace_matches, "tr(gamma) = h(v+w) - h(v) - h(w)", replay);
                r.check(ci.coefficients_integral, "closure coefficients integral", replay);
            }
            PointedLattice back = order_to_pointed(e);
            r.check(pointed_invariants(back.form, back.lattice, back.point) ==
                        pointed_invariants(P.form, P.lattice, P.point),
                    "order_to_pointed inverts build_order", replay);
            r.check(is_optimal(e), "embedding optimal", replay);
        }
        return r;
    }

    struct M2Check
    {
        Rat order_disc;
        Rat form_disc;
        bool table_round_trip = false;
        bool optimal = false;
        bool relation = false;
    };

    inline M2Check m2z_check()
    {
        Embedding e = m2z_embedding();
        M2Check c;
        c.order_disc = lattice_disc(e.order()).value;
        PointedLattice P = order_to_pointed(e);
        c.form_disc = discriminant_form(P.form, P.lattice).value;
        Embedding back = build_order(P.form, P.lattice, P.point);
        c.table_round_trip = canonicalize(back).algebra().table() == canonicalize(e).algebra().table() &&
                             canonicalize(back).omega_image() == e.omega_image();
        c.optimal = is_optimal(e);
        c.relation = discr_relation_check(e).equal;
        return c;
    }

    inline SuiteResult m2z_suite()
    {
        SuiteResult r{"m2z"};
        M2Check c = m2z_check();
        json replay = json_io::order(m2z_embedding());
        r.check(c.order_disc == 1, "Delta(M2(Z)) = +1", replay);
        r.check(c.form_disc == 1, "Delta(Lambda, h) = +1", replay);
        r.check(c.table_round_trip, "round trip reproduces the table", replay);
        r.check(c.optimal, "optimal", replay);
        r.check(c.relation, "discriminant relation", replay);
        return r;
    }

    // Random B-stable lattices in random algebras H_V; trace side vs hermitian side.
    inline SuiteResult disc_suite(std::uint64_t seed, long algebras = 10, long lattices = 100)
    {
        SuiteResult r{"disc"};
        gen::Rng rng(seed);
        for (long k = 0; k < algebras; ++k)
        {
            QuadField F(rng.pick(kTheoremFields));
            auto P = gen::pointed_space(rng, F);
            QuatAlgebra A = build_algebra(P.form, P.point);
            for (long j = 0; j < lattices / algebras; ++j)
            {
                Lattice L = gen::b_lattice(rng, F);
                RatMat zb(4, 4);
                for (std::size_t i = 0; i < 4; ++i)
                    zb.set_row(i, A.from_space(L.zbasis()[i]));
                json replay = json_io::form(P.form);
                replay["point"] = json_io::lvec(P.point);
                replay["lattice"] = json_io::lattice(L);
                Rat lhs = lattice_disc(A, zb).value;
                Rat rhs = Rat(F.disc()) * det_form(P.form, L).value;
                r.check(lhs == rhs, "Delta(Lambda) = D d(Lambda, n)", replay);
            }
        }
        return r;
    }

    struct SweepSummary
    {
        long rows = 0;
        long indefinite = 0;
        long positive_delta = 0;
        long sign_mismatches = 0;
        long theorem_rows = 0; // indefinite, square-free
        long theorem_failures = 0;
    };

    inline SweepSummary check_sweep(const std::vector<SweepRow> &rows, SuiteResult &r, const QuadField &F)
    {
        SweepSummary s;
        Lattice L = Lattice::standard(F);
        for (const SweepRow &row : rows)
        {
            ++s.rows;
            json replay = json_io::form(row.form);
            bool indef = row.definiteness == Definiteness::Indefinite;
            s.indefinite += indef;
            s.positive_delta += row.delta > 0;
            bool sign_ok = (row.delta > 0) == indef;
            s.sign_mismatches += !sign_ok;
            r.check(sign_ok, "Delta > 0 iff indefinite", replay);
            if (!indef)
                continue;
            ++s.theorem_rows;
            bool ok = row.locals_ok && row.verdict == Verdict::Represented && row.witness &&
                      row.form.h_value(*row.witness) == 1 && L.contains(*row.witness) && row.order_closed.value_or(false) &&
                      row.discs_equal.value_or(false);
            s.theorem_failures += !ok;
            r.check(ok, "indefinite square-free form: local, global, closed order, equal discriminants", replay);
        }
        return s;
    }

    inline SuiteResult represent_suite(std::uint64_t seed, long height = 3)
    {
        SuiteResult r{"represent"};
        for (std::int64_t d : kTheoremFields)
        {
            SweepConfig cfg;
            cfg.d = d;
            cfg.height = height;
            check_sweep(sweep(cfg), r, QuadField(d));
        }

        // primes outside 2 D Delta never obstruct
        gen::Rng rng(seed);
        const std::vector<long> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
        for (int k = 0; k < 10; ++k)
        {
            QuadField F(rng.pick(kTheoremFields));
            HermSpace S = gen::integral_form(rng, F);
            Lattice L = Lattice::standard(F);
            Rat delta = discriminant_form(S, L).value;
            Int bad = 2 * Int(static_cast<long>(F.disc())) * delta.get_num();
            int used = 0;
            for (long p : primes)
            {
                if (used == 5)
                    break;
                if (mpz_divisible_ui_p(bad.get_mpz_t(), static_cast<unsigned long>(p)))
                    continue;
                ++used;
                LocalReport lr = local_test(S, L, Int(p));
                r.check(lr.solvable && lr.method == LocalMethod::UnramifiedUnitValue,
                        "prime outside 2 D Delta is unobstructed", json_io::form(S));
            }
        }
        return r;
    }

    // Negative controls; each check passes when the expected rejection happens.
    inline SuiteResult negative_suite()
    {
        SuiteResult r{"negative"};
        QuadField F(-7);
        Lattice L = Lattice::standard(F);
        for (auto [a, b] : std::vector<std::pair<long, long>>{{-1, -3}, {-1, -1}, {-2, -5}})
        {
            HermSpace S(F, a, b, F.elem(0, 0));
            RepOneReport rep = represents_one_integral(S, L);
            r.check(rep.verdict == Verdict::RealObstruction && !rep.real_ok, "negative definite -> RealObstruction",
                    json_io::form(S));
        }
        {
            HermSpace S(F, 7, -1, F.elem(0, 0)); // Delta = 7^2
            bool raised = false;
            try
            {
                local_test(S, L, Int(7));
            }
            catch (const HypothesisError &e)
            {
                raised = e.prime() == 7;
            }
            r.check(raised, "val_7(Delta) = 2 -> hypothesis error at 7", json_io::form(S));
        }
        {
            QuadField F3(-3);
            HermSpace S(F3, 3, -1, F3.elem(0, 0)); // Delta = 9
            Lattice L3 = Lattice::standard(F3);
            Rat delta = discriminant_form(S, L3).value;
            bool raised = false;
            try
            {
                local_test(S, L3, Int(3));
            }
            catch (const HypothesisError &e)
            {
                raised = e.prime() == 3 && valuation(delta, Int(3)) == 2;
            }
            r.check(raised, "val_3(Delta) = 2 -> hypothesis error at 3", json_io::form(S));
        }
        for (std::int64_t d : {-1, -2, -5, -6})
        {
            QuadField Fe(d);
            HermSpace S(Fe, 1, -1, Fe.elem(0, 0));
            bool rejected = false;
            try
            {
                represents_one_integral(S, Lattice::standard(Fe));
            }
            catch (const UnsupportedError &)
            {
                rejected = true;
            }
            r.check(rejected, "even D rejected by represents_one_integral", json_io::form(S));
            bool sweep_rejected = false;
            try
            {
                SweepConfig cfg;
                cfg.d = d;
                cfg.height = 1;
                sweep(cfg);
            }
            catch (const UnsupportedError &)
            {
                sweep_rejected = true;
            }
            r.check(sweep_rejected, "even D rejected by sweep", json_io::form(S));
            bool local_rejected = false;
            try
            {
                local_test(S, Lattice::standard(Fe), Int(2));
            }
            catch (const UnsupportedError &)
            {
                local_rejected = true;
            }
            r.check(local_rejected, "local test at ramified 2 rejected", json_io::form(S));
        }
        return r;
    }

    inline const std::vector<std::string> &suite_names()
    {
        static const std::vector<std::string> names{"polarize", "algebra", "order", "disc", "represent"};
        return names;
    }

    // The CLI groups: algebra includes the trace formula, order includes M2(Z),
    // represent includes the negative controls.
    inline std::vector<SuiteResult> run_suite(const std::string &name, std::uint64_t seed)
    {
        std::vector<SuiteResult> out;
        auto want = [&](const char *s) { return name == "all" || name == s; };
        if (want("polarize"))
            out.push_back(polarize_suite(seed));
        if (want("algebra"))
        {
            out.push_back(algebra_suite(seed));
            out.push_back(trace_suite(seed));
        }
        if (want("order"))
        {
            out.push_back(order_suite(seed));
            out.push_back(m2z_suite());
        }
        if (want("disc"))
            out.push_back(disc_suite(seed));
        if (want("represent"))
        {
            out.push_back(represent_suite(seed));
            out.push_back(negative_suite());
        }
        if (out.empty())
            throw InputError("unknown suite '" + name + "'");
        return out;
    }

} // namespace hermquat::verify
