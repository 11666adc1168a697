// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "hermquat/verify.hpp"

using namespace hermquat;

namespace
{
    constexpr std::uint64_t kSeed = 20240501;

    struct Outcome
    {
        bool ok = true;
        std::string detail;
    };

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

    std::string suite_detail(const verify::SuiteResult &r)
    {
        std::ostringstream os;
        os << r.cases << " checks, " << r.failures.size() << " failures";
        if (!r.ok())
            os << "; first: " << r.failures.front().dump();
        return os.str();
    }

    // s(x, y) recovered from b = 2 x G y^T with the scalar l, written out directly.
    QElem polarized_entry(const RatMat &G, std::int64_t d, const QElem &l, const LVec &x, const LVec &y)
    {
        auto b = [&](const LVec &p, const LVec &q) {
            RatVec a = to_q4(p), c = to_q4(q);
            Rat s = 0;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    s += a[i] * G(i, j) * c[j];
            return QElem(d, 2 * s, 0);
        };
        QElem lc = l.conj();
        return (lc * b(x, y) - b(l * x, y)) / (lc - l);
    }

    Outcome criterion1()
    {
        verify::SuiteResult r = verify::polarize_suite(kSeed, 200);
        Outcome o{r.ok(), suite_detail(r)};
        gen::Rng rng(kSeed);
        long oracle_fail = 0;
        for (int k = 0; k < 200; ++k)
        {
            QuadField F(rng.pick(verify::kPolarizeFields));
            HermSpace S = gen::herm_space(rng, F);
            const RatMat G = S.gram4();
            std::array<LVec, 2> e{LVec{F.elem(1, 0), F.elem(0, 0)}, LVec{F.elem(0, 0), F.elem(1, 0)}};
            for (const QElem &l : verify::polarization_scalars(F))
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j)
                        oracle_fail += polarized_entry(G, F.d(), l, e[i], e[j]) != S.s_value(e[i], e[j]);
        }
        o.ok = o.ok && oracle_fail == 0;
        o.detail += "; direct polarization mismatches: " + std::to_string(oracle_fail);
        return o;
    }

    Outcome criterion2()
    {
        verify::SuiteResult r = verify::algebra_suite(kSeed, 50, 100);
        Outcome o{r.ok(), suite_detail(r)};
        // products against l1 + l2 u -> [[l1, theta l2], [conj l2, conj l1]]
        gen::Rng rng(kSeed + 2);
        long bad = 0;
        for (int k = 0; k < 50; ++k)
        {
            QuadField F(rng.pick(verify::kTheoremFields));
            auto P = gen::pointed_space(rng, F);
            QuatAlgebra A = build_algebra(P.form, P.point);
            const Rat th = A.require_presentation().theta;
            auto mat = [&](const RatVec &x) {
                QElem l1(F.d(), x[0], x[1]), l2(F.d(), x[2], x[3]);
                return std::array<QElem, 4>{l1, QElem(F.d(), th, 0) * l2, l2.conj(), l1.conj()};
            };
            for (int j = 0; j < 20; ++j)
            {
                RatVec x = gen::algebra_element(rng), y = gen::algebra_element(rng);
                auto p = mat(x), q = mat(y), xy = mat(A.mul(x, y));
                std::array<QElem, 4> pq{p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3],
                                        p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]};
                bad += pq != xy;
                bad += p[0] * p[3] - p[1] * p[2] != QElem(F.d(), A.reduced_norm(x), 0);
            }
        }
        o.ok = o.ok && bad == 0;
        o.detail += "; matrix-model mismatches: " + std::to_string(bad);
        return o;
    }

    Outcome criterion3()
    {
        verify::SuiteResult r = verify::order_suite(kSeed, 50);
        return {r.ok(), suite_detail(r)};
    }

    Outcome criterion4()
    {
        long bad = 0, n = 0;
        for (const auto &t : verify::trace_triples(kSeed, 20))
        {
            ++n;
            QuatAlgebra A = quadratic_pair_algebra(t.a, t.b, t.theta);
            RatMat g = trace_gram(A, RatMat::identity(4));
            Rat disc = t.a * t.a - 4 * t.b;
            Rat expect = -disc * disc * t.theta * t.theta;
            bad += leibniz(g) != expect;
            bad += determinant(g) != expect;
        }
        return {bad == 0 && n == 20, std::to_string(n) + " triples, " + std::to_string(bad) + " mismatches (Leibniz and elimination)"};
    }

    Outcome criterion5()
    {
        verify::SuiteResult r = verify::disc_suite(kSeed, 10, 100);
        return {r.ok() && r.cases == 100, suite_detail(r)};
    }

    Outcome criterion6()
    {
        using Z22 = std::array<long, 4>;
        auto zmul = [](const Z22 &x, const Z22 &y) {
            return Z22{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                       x[2] * y[1] + x[3] * y[3]};
        };
        auto zdet = [](const Z22 &x) { return x[0] * x[3] - x[1] * x[2]; };
        auto zadd = [](const Z22 &x, const Z22 &y) { return Z22{x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]}; };
        const Z22 W{0, -1, 1, 1};

        // oracle values
        std::array<Z22, 4> E{Z22{1, 0, 0, 0}, Z22{0, 1, 0, 0}, Z22{0, 0, 1, 0}, Z22{0, 0, 0, 1}};
        RatMat tr(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
            {
                Z22 p = zmul(E[i], E[j]);
                tr(i, j) = p[0] + p[3];
            }
        Rat tdet = leibniz(tr);
        auto root = rational_sqrt(-tdet);
        Rat oracle_order = root ? *root : Rat(0); // split algebra: positive sign
        QuadField F(-3);
        auto b = [&](const Z22 &x, const Z22 &y) { return zdet(zadd(x, y)) - zdet(x) - zdet(y); };
        QElem w = F.omega(), wc = w.conj();
        auto s = [&](const Z22 &x, const Z22 &y) {
            return (wc * QElem(-3, b(x, y), 0) - QElem(-3, b(zmul(W, x), y), 0)) / (wc - w);
        };
        QElem dd = s(E[0], E[0]) * s(E[1], E[1]) - s(E[0], E[1]) * s(E[1], E[0]);
        Rat oracle_form = Rat(F.disc()) * dd.a();

        verify::M2Check c = verify::m2z_check();
        Embedding e = verify::m2z_embedding();
        bool table_ok = true;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
            {
                Z22 p = zmul(E[i], E[j]);
                table_ok = table_ok && e.algebra().mul(unit_vector(i), unit_vector(j)) == RatVec(p.begin(), p.end());
            }
        bool ok = dd.b() == 0 && oracle_order == 1 && oracle_form == 1 && c.order_disc == oracle_order &&
                  c.form_disc == oracle_form && c.table_round_trip && c.optimal && c.relation && table_ok &&
                  lattice_disc(e.order()).meaning == SignMeaning::MatrixAlgebra;
        std::ostringstream os;
        os << "Delta(order) = " << to_string(c.order_disc) << " (oracle " << to_string(oracle_order)
           << "), Delta(Lambda,h) = " << to_string(c.form_disc) << " (oracle " << to_string(oracle_form)
           << "), round trip " << (c.table_round_trip ? "ok" : "FAILED") << ", optimal "
           << (c.optimal ? "true" : "false");
        return {ok, os.str()};
    }

    struct SweepData
    {
        QuadField field;
        std::vector<SweepRow> rows;
    };

    std::vector<SweepData> &sweeps()
    {
        static std::vector<SweepData> data = [] {
            std::vector<SweepData> out;
            for (std::int64_t d : verify::kTheoremFields)
            {
                SweepConfig cfg;
                cfg.d = d;
                cfg.height = 3;
                cfg.search_bound = 50;
                out.push_back({QuadField(d), sweep(cfg)});
            }
            return out;
        }();
        return data;
    }

    Outcome criterion7()
    {
        long theorem_rows = 0, failures = 0;
        std::string first;
        for (const auto &s : sweeps())
        {
            Lattice L = Lattice::standard(s.field);
            for (const auto &row : s.rows)
            {
                if (row.definiteness != Definiteness::Indefinite)
                    continue;
                ++theorem_rows;
                bool ok = row.locals_ok && row.verdict == Verdict::Represented && row.witness.has_value();
                if (ok)
                {
                    // recheck from scratch
                    const LVec &v = *row.witness;
                    Rat delta = discriminant_form(row.form, L).value;
                    ok = ok && is_squarefree(abs(delta.get_num())) && delta == row.delta;
                    ok = ok && L.contains(v) && row.form.h_value(v) == 1;
                    for (const Int &p : relevant_primes(row.form, delta))
                        ok = ok && local_test(row.form, L, p).solvable;
                    Embedding e = build_order(row.form, L, v);
                    ok = ok && e.order().is_closed();
                    ok = ok && lattice_disc(e.order()).value == delta;
                }
                if (!ok)
                {
                    ++failures;
                    if (first.empty())
                        first = json_io::form(row.form).dump();
                }
            }
        }
        std::string detail = std::to_string(theorem_rows) + " indefinite square-free forms over d in {-3,-7} at height 3, " +
                             std::to_string(failures) + " failures";
        if (!first.empty())
            detail += "; first: " + first;
        return {failures == 0 && theorem_rows > 0, detail};
    }

    Outcome criterion8()
    {
        long rows = 0, positive = 0, indefinite = 0, mismatches = 0;
        for (const auto &s : sweeps())
            for (const auto &row : s.rows)
            {
                ++rows;
                bool pos = row.delta > 0, ind = row.definiteness == Definiteness::Indefinite;
                positive += pos;
                indefinite += ind;
                mismatches += pos != ind;
            }
        std::ostringstream os;
        os << rows << " rows, Delta > 0 in " << positive << ", indefinite in " << indefinite << ", row mismatches "
           << mismatches;
        return {mismatches == 0 && rows > 0, os.str()};
    }

    Outcome criterion9()
    {
        verify::SuiteResult r = verify::negative_suite();
        Outcome o{r.ok(), suite_detail(r)};
        // a form whose Delta has p-adic valuation exactly 2
        QuadField F(-7);
        Lattice L = Lattice::standard(F);
        HermSpace S(F, 7, -1, F.elem(0, 0));
        bool val2 = valuation(discriminant_form(S, L).value, Int(7)) == 2;
        bool raised = false;
        try
        {
            represents_one_integral(S, L);
        }
        catch (const HypothesisError &e)
        {
            raised = e.prime() == 7;
        }
        o.ok = o.ok && val2 && raised;
        o.detail += raised ? "; val_7(Delta) = 2 rejected at p = 7" : "; val_7(Delta) = 2 NOT rejected";
        return o;
    }

} // namespace

int main()
{
    using clock = std::chrono::steady_clock;
    const std::vector<std::pair<std::string, Outcome (*)()>> criteria{
        {"polarization recovers S and s_l is independent of l", criterion1},
        {"quaternion structure of H_V", criterion2},
        {"order closure and closure identities", criterion3},
        {"trace-matrix determinant", criterion4},
        {"Delta(Lambda) = D d(Lambda, n)", criterion5},
        {"M_2(Z) end to end", criterion6},
        {"indefinite square-free forms represent 1 with matching discriminants", criterion7},
        {"Delta > 0 iff indefinite", criterion8},
        {"negative controls", criterion9},
    };
    bool all = true;
    int n = 0;
    for (const auto &[name, fn] : criteria)
    {
        ++n;
        auto t0 = clock::now();
        Outcome o;
        try
        {
            o = fn();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        all = all && o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << name << " [" << o.detail << "] ("
                  << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
    }
    return all ? 0 : 1;
}
