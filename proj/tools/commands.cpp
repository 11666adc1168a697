#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hermquat/json_io.hpp"
#include "hermquat/verify.hpp"

namespace hermquat::cli
{
    namespace
    {
        using json = nlohmann::json;

        struct Options
        {
            std::string input = "-";
            std::string format = "json";
            std::string out;
            std::string point;
            bool find_point = false;
            bool canonical = false;
            long search_bound = 50;
            long height = 3;
            std::int64_t d = -7;
            std::string target_disc;
            std::string suite = "all";
            std::uint64_t seed = 1;
        };

        struct Result
        {
            int code = kOk;
            json body;
            std::string raw; // preformatted (CSV)
        };

        json read_json(const std::string &path)
        {
            std::stringstream buf;
            if (path == "-")
                buf << std::cin.rdbuf();
            else
            {
                std::ifstream f(path);
                if (!f)
                    throw InputError("cannot open '" + path + "'");
                buf << f.rdbuf();
            }
            try
            {
                return json::parse(buf.str());
            }
            catch (const json::parse_error &e)
            {
                throw InputError(std::string("malformed JSON: ") + e.what());
            }
        }

        std::string qelem_text(const QElem &x) { return to_string(x.a()) + ":" + to_string(x.b()); }
        std::string lvec_text(const LVec &v) { return qelem_text(v[0]) + ";" + qelem_text(v[1]); }

        // "a0:b0;a1:b1"
        LVec parse_point(const std::string &text, std::int64_t d)
        {
            auto semi = text.find(';');
            if (semi == std::string::npos)
                throw InputError("point must look like a0:b0;a1:b1");
            auto elem = [&](const std::string &s)
            {
                auto colon = s.find(':');
                if (colon == std::string::npos)
                    throw InputError("field element must look like a:b, got '" + s + "'");
                return QElem(d, parse_rat(s.substr(0, colon)), parse_rat(s.substr(colon + 1)));
            };
            return {elem(text.substr(0, semi)), elem(text.substr(semi + 1))};
        }

        // Flattened "key: value" lines mirroring the JSON.
        void text_lines(const json &j, const std::string &prefix, std::ostream &os)
        {
            if (j.is_object())
            {
                for (auto it = j.begin(); it != j.end(); ++it)
                    text_lines(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
            }
            else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array()))
            {
                for (std::size_t i = 0; i < j.size(); ++i)
                    text_lines(j[i], prefix + "[" + std::to_string(i) + "]", os);
            }
            else
                os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
        }

        // ------------------------------------------------------------------

        Result analyze(const Options &o)
        {
            auto in = json_io::form_input(read_json(o.input));
            const HermSpace &S = in.form;
            const Lattice &L = in.lattice;
            json j;
            j["d"] = S.d();
            j["D"] = S.field().disc();
            j["form"] = json_io::form(S);
            j["nondegenerate"] = S.nondegenerate();
            j["b_stable"] = L.b_stable();
            j["definiteness"] = to_string(definiteness(S));
            bool integral = is_integral(S, L);
            j["integral"] = integral;
            if (S.nondegenerate() && L.b_stable())
            {
                j["det"] = json_io::disc_value(det_form(S, L));
                if (integral)
                {
                    DiscValue delta = discriminant_form(S, L);
                    j["Delta"] = json_io::disc_value(delta);
                    j["Delta_squarefree"] = is_squarefree(delta.value.get_num());
                }
            }
            if (in.point)
                j["h_point"] = json_io::rat(S.h_value(*in.point));
            return {kOk, j, {}};
        }

        Result build_order_cmd(const Options &o)
        {
            auto in = json_io::form_input(read_json(o.input));
            std::optional<LVec> point = in.point;
            if (!o.point.empty())
                point = parse_point(o.point, in.form.d());
            json extra;
            if (o.find_point || !point)
            {
                if (!o.find_point)
                    throw InputError("build-order needs --point, a \"point\" in the form, or --find-point");
                RepOneConfig cfg;
                cfg.search_bound = o.search_bound;
                RepOneReport rep = represents_one_integral(in.form, in.lattice, cfg);
                if (!rep.witness)
                {
                    json j = {{"error", "no vector with h = 1 found"}, {"report", json_io::rep_one(rep)}};
                    return {kNoPoint, j, {}};
                }
                point = rep.witness;
                extra = json_io::rep_one(rep);
            }
            if (!in.lattice.contains(*point))
                throw PreconditionError("build-order: point is not in the lattice");
            if (in.form.h_value(*point) != 1)
                throw PreconditionError("build-order: h(point) = " + to_string(in.form.h_value(*point)) + ", expected 1");
            Embedding e = build_order(in.form, in.lattice, *point);
            Embedding shown = o.canonical ? canonicalize(e) : e;
            json j = json_io::order(shown);
            j["closure"] = json_io::closure_transcript(shown.order());
            j["closure_all_integral"] = shown.order().is_closed();
            j["point"] = json_io::lvec(*point);
            j["Delta"] = json_io::rat(lattice_disc(e.order()).value);
            j["optimal"] = is_optimal(e);
            if (!extra.is_null())
                j["point_search"] = extra;
            return {kOk, j, {}};
        }

        Result from_order_cmd(const Options &o)
        {
            Embedding e = json_io::order_from(read_json(o.input));
            PointedLattice P = order_to_pointed(e);
            json j = json_io::form_output(P.form, P.lattice, P.point);
            j["Delta"] = json_io::rat(discriminant_form(P.form, P.lattice).value);
            j["order_Delta"] = json_io::rat(lattice_disc(e.order()).value);
            j["optimal"] = is_optimal(e);
            if (o.canonical)
            {
                PointedInvariants inv = pointed_invariants(P.form, P.lattice, P.point);
                json am = json::array();
                for (std::size_t i = 0; i < 4; ++i)
                {
                    IntVec row(4);
                    for (std::size_t k = 0; k < 4; ++k)
                        row[k] = inv.omega_action(i, k);
                    am.push_back(json_io::intvec(row));
                }
                j["invariants"] = {{"gram", json_io::ratmat(inv.gram)},
                                   {"omega_action", am},
                                   {"point", json_io::intvec(inv.point)}};
            }
            return {kOk, j, {}};
        }

        Result represent_one_cmd(const Options &o)
        {
            auto in = json_io::form_input(read_json(o.input));
            RepOneConfig cfg;
            cfg.search_bound = o.search_bound;
            RepOneReport rep = represents_one_integral(in.form, in.lattice, cfg);
            int code = kOk;
            switch (rep.verdict)
            {
            case Verdict::Represented:
                code = kOk;
                break;
            case Verdict::RealObstruction:
            case Verdict::LocalObstruction:
                code = kObstruction;
                break;
            case Verdict::LocallyRepresentedSearchExhausted:
                code = kExhausted;
                break;
            }
            return {code, json_io::rep_one(rep), {}};
        }

        std::string csv_cell_disc(const std::optional<DiscValue> &v) { return v ? to_string(v->value) : ""; }

        Result sweep_cmd(const Options &o)
        {
            SweepConfig cfg;
            cfg.d = o.d;
            cfg.height = o.height;
            cfg.search_bound = o.search_bound;
            if (!o.target_disc.empty())
            {
                Rat t = parse_rat(o.target_disc);
                if (!is_integer(t))
                    throw InputError("target discriminant must be an integer");
                cfg.target_disc = t.get_num();
            }
            auto rows = sweep(cfg);
            if (o.format == "json")
            {
                json a = json::array();
                for (const auto &r : rows)
                {
                    json j = json_io::form(r.form);
                    j["Delta"] = json_io::rat(r.delta);
                    j["definiteness"] = to_string(r.definiteness);
                    j["verdict"] = to_string(r.verdict);
                    j["witness"] = r.witness ? json_io::lvec(*r.witness) : json(nullptr);
                    j["order_disc"] = r.order_disc ? json(json_io::rat(r.order_disc->value)) : json(nullptr);
                    j["discs_equal"] = r.discs_equal ? json(*r.discs_equal) : json(nullptr);
                    a.push_back(j);
                }
                return {kOk, a, {}};
            }
            std::ostringstream os;
            os << "alpha,beta,gamma,Delta,definiteness,verdict,witness,order_disc,discs_equal\n";
            for (const auto &r : rows)
            {
                os << to_string(r.form.alpha()) << ',' << to_string(r.form.beta()) << ','
                   << qelem_text(r.form.gamma()) << ',' << to_string(r.delta) << ',' << to_string(r.definiteness)
                   << ',' << to_string(r.verdict) << ',' << (r.witness ? lvec_text(*r.witness) : "") << ','
                   << csv_cell_disc(r.order_disc) << ','
                   << (r.discs_equal ? (*r.discs_equal ? "true" : "false") : "") << '\n';
            }
            return {kOk, json(), os.str()};
        }

        Result verify_cmd(const Options &o)
        {
            auto results = verify::run_suite(o.suite, o.seed);
            json j = json::array();
            bool ok = true;
            for (const auto &r : results)
            {
                json s = {{"suite", r.name}, {"cases", r.cases}, {"failures", r.failures.size()}, {"ok", r.ok()}};
                if (!r.ok())
                    s["failing"] = r.failures;
                ok = ok && r.ok();
                j.push_back(s);
            }
            if (o.format == "text")
            {
                std::ostringstream os;
                for (const auto &r : results)
                {
                    os << (r.ok() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " checks, "
                       << r.failures.size() << " failures)\n";
                    for (const auto &f : r.failures)
                        os << "  replay: " << f.dump() << "\n";
                }
                return {ok ? kOk : kVerifyFail, json(), os.str()};
            }
            return {ok ? kOk : kVerifyFail, json{{"seed", o.seed}, {"suites", j}, {"ok", ok}}, {}};
        }

        void emit(const Result &r, const Options &o, std::ostream &out)
        {
            std::ostringstream os;
            if (!r.raw.empty() || r.body.is_null())
                os << r.raw;
            else if (o.format == "text")
                text_lines(r.body, "", os);
            else
                os << r.body.dump(2) << "\n";
            if (o.out.empty())
                out << os.str();
            else
            {
                std::ofstream f(o.out);
                if (!f)
                    throw InputError("cannot write '" + o.out + "'");
                f << os.str();
            }
        }
    } // namespace

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        Options o;
        CLI::App app{"Binary hermitian forms over imaginary quadratic fields and quaternion orders"};
        app.require_subcommand(1);
        app.add_option("--format", o.format, "json, text or csv")
            ->check(CLI::IsMember({"json", "text", "csv"}));
        app.add_option("--out", o.out, "write output to this file");

        auto *an = app.add_subcommand("analyze", "integrality, definiteness and discriminants of a form");
        an->add_option("input", o.input, "form JSON (- for stdin)");

        auto *bo = app.add_subcommand("build-order", "order and embedding from a pointed integral lattice");
        bo->add_option("input", o.input, "form JSON (- for stdin)");
        bo->add_option("--point", o.point, "point as a0:b0;a1:b1");
        bo->add_flag("--find-point", o.find_point, "search for a point with h = 1");
        bo->add_option("--search-bound", o.search_bound, "height bound for the point search")->check(CLI::PositiveNumber);
        bo->add_flag("--canonical", o.canonical, "emit the order on its own Z-basis");

        auto *fo = app.add_subcommand("from-order", "pointed hermitian lattice from an order with embedding");
        fo->add_option("input", o.input, "order JSON (- for stdin)");
        fo->add_flag("--canonical", o.canonical, "include frame-independent invariants");

        auto *ro = app.add_subcommand("represent-one", "decide whether h represents 1 on the lattice");
        ro->add_option("input", o.input, "form JSON (- for stdin)");
        ro->add_option("--search-bound", o.search_bound, "height bound for the global search")->check(CLI::PositiveNumber);

        auto *sw = app.add_subcommand("sweep", "enumerate integral forms on B^2 and run the pipeline");
        sw->add_option("--d", o.d, "field parameter (negative, square-free)");
        sw->add_option("--height", o.height, "coefficient height")->check(CLI::NonNegativeNumber);
        sw->add_option("--search-bound", o.search_bound, "height bound for the global search")->check(CLI::PositiveNumber);
        sw->add_option("--target-disc", o.target_disc, "keep only this discriminant");

        auto *ve = app.add_subcommand("verify", "run property suites");
        ve->add_option("--suite", o.suite, "all|polarize|algebra|order|disc|represent")
            ->check(CLI::IsMember({"all", "polarize", "algebra", "order", "disc", "represent"}));
        ve->add_option("--seed", o.seed, "random seed");

        std::vector<std::string> rev(args.rbegin(), args.rend());
        try
        {
            app.parse(rev);
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return kOk;
        }
        catch (const CLI::ParseError &e)
        {
            err << "error: " << e.what() << "\n";
            return kInputError;
        }

        bool is_sweep = sw->parsed();
        if (o.format == "csv" && !is_sweep)
        {
            err << "error: --format csv is only available for sweep\n";
            return kInputError;
        }
        if (is_sweep && o.format == "json" && !app.get_option("--format")->count())
            o.format = "csv";
        if (o.format == "text" && is_sweep)
            o.format = "csv";

        try
        {
            Result r;
            if (an->parsed())
                r = analyze(o);
            else if (bo->parsed())
                r = build_order_cmd(o);
            else if (fo->parsed())
                r = from_order_cmd(o);
            else if (ro->parsed())
                r = represent_one_cmd(o);
            else if (is_sweep)
                r = sweep_cmd(o);
            else
                r = verify_cmd(o);
            emit(r, o, out);
            return r.code;
        }
        catch (const HypothesisError &e)
        {
            err << "hypothesis error at p = " << e.prime() << ": " << e.what() << "\n";
            return kInputError;
        }
        catch (const InvariantViolation &e)
        {
            err << "invariant violated: " << e.what() << "\n";
            return kVerifyFail;
        }
        catch (const std::invalid_argument &e)
        {
            err << "input error: " << e.what() << "\n";
            return kInputError;
        }
        catch (const std::domain_error &e)
        {
            err << "unsupported: " << e.what() << "\n";
            return kInputError;
        }
        catch (const nlohmann::json::exception &e)
        {
            err << "input error: " << e.what() << "\n";
            return kInputError;
        }
    }

} // namespace hermquat::cli
