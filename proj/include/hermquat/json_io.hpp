#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "hermitian.hpp"
#include "quaternion.hpp"
#include "represent.hpp"

// JSON encodings. Rationals are "num/den" strings; a + b w is {"a": .., "b": ..}.

namespace hermquat::json_io
{
    using json = nlohmann::json;

    inline json rat(const Rat &r) { return to_string(r); }

    inline Rat rat_from(const json &j)
    {
        if (j.is_string())
            return parse_rat(j.get<std::string>());
        if (j.is_number_integer())
            return Rat(Int(j.dump()));
        throw InputError("expected a rational as \"num/den\", got " + j.dump());
    }

    inline std::int64_t d_from(const json &j)
    {
        if (!j.is_object() || !j.contains("d") || !j["d"].is_number_integer())
            throw InputError("missing integer field \"d\"");
        return j["d"].get<std::int64_t>();
    }

    inline const json &field(const json &j, const char *key)
    {
        if (!j.is_object() || !j.contains(key))
            throw InputError(std::string("missing field \"") + key + "\"");
        return j.at(key);
    }

    inline json qelem(const QElem &x) { return {{"a", rat(x.a())}, {"b", rat(x.b())}}; }

    inline QElem qelem_from(const json &j, std::int64_t d)
    {
        if (j.is_object())
            return QElem(d, rat_from(field(j, "a")), rat_from(field(j, "b")));
        return QElem(d, rat_from(j), 0);
    }

    inline json lvec(const LVec &v) { return json::array({qelem(v[0]), qelem(v[1])}); }

    inline LVec lvec_from(const json &j, std::int64_t d)
    {
        if (!j.is_array() || j.size() != 2)
            throw InputError("a vector of L^2 is a pair of field elements");
        return {qelem_from(j[0], d), qelem_from(j[1], d)};
    }

    inline json ratvec(const RatVec &v)
    {
        json a = json::array();
        for (const Rat &r : v)
            a.push_back(rat(r));
        return a;
    }

    inline RatVec ratvec_from(const json &j, std::size_t n)
    {
        if (!j.is_array() || j.size() != n)
            throw InputError("expected an array of " + std::to_string(n) + " rationals");
        RatVec v;
        for (const auto &x : j)
            v.push_back(rat_from(x));
        return v;
    }

    inline json intvec(const IntVec &v)
    {
        json a = json::array();
        for (const Int &r : v)
            a.push_back(json::parse(r.get_str()));
        return a;
    }

    inline json ratmat(const RatMat &m)
    {
        json a = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i)
            a.push_back(ratvec(m.row(i)));
        return a;
    }

    inline RatMat ratmat_from(const json &j, std::size_t r, std::size_t c)
    {
        if (!j.is_array() || j.size() != r)
            throw InputError("expected a " + std::to_string(r) + "x" + std::to_string(c) + " matrix");
        RatMat m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            m.set_row(i, ratvec_from(j[i], c));
        return m;
    }

    // --- forms and lattices ---

    inline json form(const HermSpace &S)
    {
        return {{"d", S.d()}, {"alpha", rat(S.alpha())}, {"beta", rat(S.beta())}, {"gamma", qelem(S.gamma())}};
    }

    inline json lattice(const Lattice &L)
    {
        json zb = json::array();
        for (const LVec &g : L.zbasis())
            zb.push_back(lvec(g));
        return {{"d", L.field().d()}, {"zbasis", zb}};
    }

    inline Lattice lattice_from(const json &j, std::int64_t d)
    {
        if (j.contains("d") && d_from(j) != d)
            throw InputError("lattice and form live over different fields");
        const json &zb = field(j, "zbasis");
        if (!zb.is_array() || zb.size() != 4)
            throw InputError("lattice zbasis must list 4 vectors");
        std::array<LVec, 4> g;
        for (std::size_t i = 0; i < 4; ++i)
            g[i] = lvec_from(zb[i], d);
        return Lattice(QuadField(d), g);
    }

    struct FormInput
    {
        HermSpace form;
        Lattice lattice;
        std::optional<LVec> point;
    };

    inline FormInput form_input(const json &j)
    {
        std::int64_t d = d_from(j);
        QuadField F(d);
        HermSpace S(F, rat_from(field(j, "alpha")), rat_from(field(j, "beta")), qelem_from(field(j, "gamma"), d));
        Lattice L = j.contains("lattice") ? lattice_from(j["lattice"], d) : Lattice::standard(F);
        std::optional<LVec> point;
        if (j.contains("point") && !j["point"].is_null())
            point = lvec_from(j["point"], d);
        return {S, L, point};
    }

    inline json form_output(const HermSpace &S, const Lattice &L, const std::optional<LVec> &point)
    {
        json j = form(S);
        j["lattice"] = lattice(L);
        if (point)
            j["point"] = lvec(*point);
        return j;
    }

    // --- orders ---

    inline json order(const Embedding &e)
    {
        const QuatOrder &O = e.order();
        const QuatAlgebra &A = O.algebra();
        json table = json::array();
        for (std::size_t i = 0; i < 4; ++i)
        {
            json row = json::array();
            for (std::size_t k = 0; k < 4; ++k)
                row.push_back(ratvec(A.table()[i][k]));
            table.push_back(row);
        }
        return {{"d", e.d()},
                {"mult_table", table},
                {"zbasis", ratmat(O.zbasis())},
                {"one", intvec(O.identity_coords())},
                {"omega_image", ratvec(e.omega_image())}};
    }

    // "one" and "omega_image" are coordinates in the Z-basis; the algebra's own
    // identity is one * zbasis.
    inline Embedding order_from(const json &j)
    {
        std::int64_t d = d_from(j);
        QuadField F(d);
        (void)F;
        const json &mt = field(j, "mult_table");
        if (!mt.is_array() || mt.size() != 4)
            throw InputError("mult_table must be 4x4x4");
        MultTable t;
        for (std::size_t i = 0; i < 4; ++i)
        {
            if (!mt[i].is_array() || mt[i].size() != 4)
                throw InputError("mult_table must be 4x4x4");
            for (std::size_t k = 0; k < 4; ++k)
                t[i][k] = ratvec_from(mt[i][k], 4);
        }
        RatMat zb = j.contains("zbasis") ? ratmat_from(j["zbasis"], 4, 4) : RatMat::identity(4);
        RatVec one_c = ratvec_from(field(j, "one"), 4);
        RatVec identity = row_times(one_c, zb);
        QuatAlgebra A(d, t, identity);
        auto st = verify_structure(A);
        if (!st.ok())
            throw InputError("mult_table is not an associative unital algebra: " +
                             (st.notes.empty() ? std::string("identity") : st.notes.front()));
        QuatOrder O(A, zb);
        if (!O.is_closed())
            throw InputError("zbasis is not closed under multiplication");
        return Embedding(O, ratvec_from(field(j, "omega_image"), 4));
    }

    inline json closure_transcript(const QuatOrder &O)
    {
        json a = json::array();
        for (const auto &e : O.closure_transcript())
            a.push_back({{"i", e.i}, {"j", e.j}, {"coords", ratvec(e.coords)}, {"integral", e.integral}});
        return a;
    }

    // --- reports ---

    inline json disc_value(const DiscValue &v)
    {
        return {{"value", rat(v.value)}, {"ideal", rat(v.ideal)}, {"kind", to_string(v.kind)},
                {"convention", to_string(v.meaning)}};
    }

    inline json local_report(const LocalReport &r)
    {
        json j = {{"p", json::parse(r.prime.get_str())},
                  {"solvable", r.solvable},
                  {"method", to_string(r.method)}};
        if (r.certificate)
        {
            j["certificate"] = intvec(r.certificate->x);
            j["hensel"] = {{"k", r.certificate->k},
                           {"t", r.certificate->t},
                           {"modulus", json::parse(r.certificate->modulus.get_str())}};
        }
        else
            j["certificate"] = nullptr;
        if (!r.diagonal_valuations.empty())
            j["diagonal_valuations"] = r.diagonal_valuations;
        if (!r.note.empty())
            j["note"] = r.note;
        return j;
    }

    inline json rep_one(const RepOneReport &r)
    {
        json locals = json::array();
        for (const auto &l : r.locals)
            locals.push_back(local_report(l));
        json j = {{"real_ok", r.real_ok},
                  {"definiteness", to_string(r.definiteness)},
                  {"Delta", rat(r.delta)},
                  {"locals", locals},
                  {"witness", r.witness ? lvec(*r.witness) : json(nullptr)},
                  {"verdict", to_string(r.verdict)}};
        if (r.witness_coords)
            j["witness_coords"] = intvec(*r.witness_coords);
        if (r.obstruction_prime)
            j["obstruction_prime"] = json::parse(r.obstruction_prime->get_str());
        if (r.contradicts_theorem)
            j["contradicts_theorem"] = true;
        if (!r.notes.empty())
            j["notes"] = r.notes;
        return j;
    }

} // namespace hermquat::json_io
