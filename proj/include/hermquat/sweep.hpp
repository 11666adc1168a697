#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hermitian.hpp"
#include "quaternion.hpp"
#include "represent.hpp"

// Enumerate integral forms on B^2 and push each through the whole pipeline.

namespace hermquat
{

    struct SweepConfig
    {
        std::int64_t d = -7;
        long height = 3;
        long search_bound = 50;
        std::optional<Int> target_disc;
    };

    struct SweepRow
    {
        Int c0, c1; // gamma = (c0 + c1 w) / sqrt d
        HermSpace form;
        Rat delta;
        Definiteness definiteness;
        Verdict verdict;
        std::optional<LVec> witness;
        bool locals_ok = false;
        std::optional<bool> order_closed;
        std::optional<DiscValue> order_disc;
        std::optional<bool> discs_equal;
        std::vector<std::string> notes;
    };

    inline SweepRow sweep_row(const HermSpace &S, const Lattice &L, long search_bound)
    {
        SweepRow row{0, 0, S, 0, definiteness(S), Verdict::LocallyRepresentedSearchExhausted, std::nullopt, false,
                     std::nullopt, std::nullopt, std::nullopt, {}};
        RepOneConfig cfg;
        cfg.search_bound = search_bound;
        RepOneReport rep = represents_one_integral(S, L, cfg);
        row.delta = rep.delta;
        row.verdict = rep.verdict;
        row.witness = rep.witness;
        row.notes = rep.notes;
        row.locals_ok = std::all_of(rep.locals.begin(), rep.locals.end(), [](const LocalReport &l) { return l.solvable; });
        if (rep.witness)
        {
            Embedding e = build_order(S, L, *rep.witness);
            row.order_closed = e.order().is_closed();
            row.order_disc = lattice_disc(e.order());
            row.discs_equal = row.order_disc->value == rep.delta;
        }
        return row;
    }

    // alpha, beta in [-H, H]; gamma = (c0 + c1 w)/sqrt d with |c0|, |c1| <= H.
    // Keeps integral nondegenerate forms with |Delta| square-free, ordered by
    // (alpha, beta, c0, c1).
    inline std::vector<SweepRow> sweep(const SweepConfig &cfg)
    {
        QuadField F(cfg.d);
        F.require_odd_discriminant("sweep");
        if (cfg.height < 0 || cfg.search_bound < 1)
            throw InputError("sweep bounds must be positive");
        Lattice L = Lattice::standard(F);
        std::vector<SweepRow> rows;
        const long H = cfg.height;
        for (long a = -H; a <= H; ++a)
            for (long b = -H; b <= H; ++b)
                for (long c0 = -H; c0 <= H; ++c0)
                    for (long c1 = -H; c1 <= H; ++c1)
                    {
                        QElem g = F.elem(c0, c1) * F.inv_sqrt_d();
                        HermSpace S(F, a, b, g);
                        if (!S.nondegenerate() || !is_integral(S, L))
                            continue;
                        Rat delta = discriminant_form(S, L).value;
                        if (!is_squarefree(delta.get_num()))
                            continue;
                        if (cfg.target_disc && delta != Rat(*cfg.target_disc))
                            continue;
                        SweepRow row = sweep_row(S, L, cfg.search_bound);
                        row.c0 = c0;
                        row.c1 = c1;
                        rows.push_back(std::move(row));
                    }
        return rows;
    }

} // namespace hermquat
