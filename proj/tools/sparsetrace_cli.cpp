// Command-line workbench: parameter checks and search, substitution images,
// surface lifts, exact mat geometry, sparsity analysis, binary codes, Wang
// cube patches, OBJ export. Exit codes: 0 success (and expected verdicts),
// 1 verdict failure, 2 usage error.

#include <iostream>

#include <CLI11.hpp>

#include "sparsetrace/analysis.hpp"
#include "sparsetrace/json_io.hpp"

using namespace sparsetrace;

namespace {

struct SystemArgs {
    std::string system = "tau";
    std::int64_t a = 16, b = 1316, c = 1504, d = 11344;

    SubstSystem make() const {
        if (system == "tau-prime") return SubstSystem::tau_prime();
        return SubstSystem::tau(SubstParams{a, b, c, d});
    }
    SubstParams params() const { return SubstParams{a, b, c, d}; }
};

void add_system_flags(CLI::App* cmd, SystemArgs& sys) {
    cmd->add_option("--system", sys.system, "tau or tau-prime")
        ->check(CLI::IsMember({"tau", "tau-prime"}));
    cmd->add_option("-a", sys.a, "seed row count");
    cmd->add_option("-b", sys.b, "outer bridge rise");
    cmd->add_option("-c", sys.c, "inner bridge rise");
    cmd->add_option("-d", sys.d, "plateau length");
}

std::array<Slope, 3> parse_seed_triple(const std::string& s) {
    if (s.size() != 3) throw CLI::ValidationError("--seeds", "expected three slope chars (f/u/d)");
    std::array<Slope, 3> out{};
    for (int i = 0; i < 3; ++i) {
        switch (s[(size_t)i]) {
            case 'f': out[(size_t)i] = Slope::Flat; break;
            case 'u': out[(size_t)i] = Slope::Up; break;
            case 'd': out[(size_t)i] = Slope::Down; break;
            default: throw CLI::ValidationError("--seeds", "slope chars are f, u, d");
        }
    }
    return out;
}

MatOffset parse_offset(const std::string& s) {
    MatOffset o;
    auto c1 = s.find(','), c2 = s.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--offset", "expected x,y,z rationals");
    o.dx = Rational::parse(s.substr(0, c1));
    o.dy = Rational::parse(s.substr(c1 + 1, c2 - c1 - 1));
    o.dz = Rational::parse(s.substr(c2 + 1));
    return o;
}

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json) std::cout << j.dump(1) << "\n";
    else std::cout << text << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-dimensional sparse-trace subshift workbench"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");
    int exit_code = 0;

    // ---- params ----
    auto* params_cmd = app.add_subcommand("params", "parameter bounds and search");
    params_cmd->require_subcommand(1);
    {
        auto* check = params_cmd->add_subcommand("check", "evaluate the bounds for a tuple");
        auto args = std::make_shared<SystemArgs>();
        check->add_option("-a", args->a)->required();
        check->add_option("-b", args->b)->required();
        check->add_option("-c", args->c)->required();
        check->add_option("-d", args->d)->required();
        check->callback([args, &as_json]() {
            ParamReport r = check_params(args->a, args->b, args->c, args->d);
            emit(to_json(r), as_json,
                 "e = " + std::to_string(r.e) + ", h = " + std::to_string(r.h) + ", epsilon = " +
                     r.epsilon.str() + ", bc bound " + (r.bcbound_ok ? "ok" : "fails") +
                     ", d bound " + (r.dbound_ok ? "ok" : "fails") +
                     (r.t3_ok ? ", overlay hypotheses ok" : ""));
        });

        auto* minimize = params_cmd->add_subcommand("minimize", "smallest feasible tuple by e");
        auto bounds = std::make_shared<SearchBounds>();
        minimize->add_option("--max-a", bounds->max_a);
        minimize->add_option("--min-a", bounds->min_a);
        minimize->add_option("--max-bc", bounds->max_bc);
        minimize->callback([bounds, &as_json, &exit_code]() {
            auto res = minimize_e(*bounds);
            if (!res) {
                emit(json{{"feasible", false}}, as_json, "no feasible tuple within bounds");
                exit_code = 1;
                return;
            }
            ParamReport r = check_params(res->params.a, res->params.b, res->params.c, res->params.d);
            emit(to_json(r), as_json,
                 "a = " + std::to_string(res->params.a) + ", b = " + std::to_string(res->params.b) +
                     ", c = " + std::to_string(res->params.c) + ", d = " +
                     std::to_string(res->params.d) + ", e = " + std::to_string(res->e));
        });
    }

    // ---- subst ----
    auto* subst_cmd = app.add_subcommand("subst", "substitution images and occurrences");
    subst_cmd->require_subcommand(1);
    {
        auto sys = std::make_shared<SystemArgs>();
        auto seed = std::make_shared<std::string>("fn");
        auto level = std::make_shared<int>(1);
        auto out = std::make_shared<std::string>();
        auto max_cells = std::make_shared<std::int64_t>(1 << 26);

        auto* image = subst_cmd->add_subcommand("image", "one substitution image");
        add_system_flags(image, *sys);
        image->add_option("--seed", *seed, "two-char tile code");
        image->add_option("--out", *out, "write pattern JSON here");
        image->callback([=, &as_json]() {
            Pattern2D p = sys->make().image(Tile::from_code(*seed));
            json j = to_json(p);
            if (!out->empty()) save_json_file(*out, j);
            else emit(j, as_json, std::to_string(p.width()) + " x " + std::to_string(p.height()));
        });

        auto* macro = subst_cmd->add_subcommand("macrotile", "n-fold image");
        add_system_flags(macro, *sys);
        macro->add_option("--seed", *seed);
        macro->add_option("--level", *level)->required();
        macro->add_option("--max-cells", *max_cells);
        macro->add_option("--out", *out);
        macro->callback([=, &as_json]() {
            Pattern2D p = sys->make().macrotile(Tile::from_code(*seed), *level, *max_cells);
            json j = to_json(p);
            if (!out->empty()) save_json_file(*out, j);
            else emit(j, as_json, std::to_string(p.width()) + " x " + std::to_string(p.height()));
        });

        auto* occurs = subst_cmd->add_subcommand("occurs", "bounded pattern occurrence");
        auto pat = std::make_shared<std::string>();
        auto maxlvl = std::make_shared<int>(2);
        add_system_flags(occurs, *sys);
        occurs->add_option("--pattern", *pat, "pattern JSON file")->required();
        occurs->add_option("--max-level", *maxlvl);
        occurs->callback([=, &as_json]() {
            Pattern2D p = pattern_from_json(load_json_file(*pat));
            auto v = pattern_occurs(sys->make(), p, *maxlvl);
            emit(json{{"found", v.found}, {"level", v.level}}, as_json,
                 v.found ? "found at level " + std::to_string(v.level)
                         : "not found up to level " + std::to_string(v.level));
        });
    }

    // ---- surf ----
    auto* surf_cmd = app.add_subcommand("surf", "surface lifts, traces, shears");
    surf_cmd->require_subcommand(1);
    {
        auto sys = std::make_shared<SystemArgs>();
        auto seed = std::make_shared<std::string>("fn");
        auto level = std::make_shared<int>(1);
        auto out = std::make_shared<std::string>();

        auto* gen = surf_cmd->add_subcommand("gen", "lift a macrotile to a surface");
        add_system_flags(gen, *sys);
        gen->add_option("--seed", *seed);
        gen->add_option("--level", *level);
        gen->add_option("--out", *out)->required();
        gen->callback([=]() {
            Surface s = surf_macrotile(sys->make(), Tile::from_code(*seed), *level);
            save_json_file(*out, to_json(s.config));
        });

        auto* trace = surf_cmd->add_subcommand("trace", "column occupancy word");
        auto in = std::make_shared<std::string>();
        auto tx = std::make_shared<std::int64_t>(0);
        auto ty = std::make_shared<std::int64_t>(0);
        trace->add_option("--in", *in)->required();
        trace->add_option("-x", *tx)->required();
        trace->add_option("-y", *ty)->required();
        trace->callback([=, &as_json]() {
            json j = load_json_file(*in);
            TraceWord w;
            switch (config_kind(j)) {
                case ConfigKind::Tile: w = extract_trace(tile_config_from_json(j), *tx, *ty); break;
                case ConfigKind::Delta: w = extract_trace(delta_config_from_json(j), *tx, *ty); break;
                case ConfigKind::Bit: w = extract_trace(bit_config_from_json(j), *tx, *ty); break;
            }
            emit(json{{"z_lo", w.z_lo}, {"word", w.str()}, {"ones", w.ones()}}, as_json,
                 w.bits.empty() ? "empty column" : w.str() + " from z = " + std::to_string(w.z_lo));
        });

        auto* sh = surf_cmd->add_subcommand("shear", "apply the lattice shear");
        auto in2 = std::make_shared<std::string>();
        auto inverse = std::make_shared<bool>(false);
        sh->add_option("--in", *in2)->required();
        sh->add_option("--out", *out)->required();
        sh->add_flag("--inverse", *inverse);
        sh->callback([=]() {
            json j = load_json_file(*in2);
            switch (config_kind(j)) {
                case ConfigKind::Tile:
                    save_json_file(*out, to_json(shear(tile_config_from_json(j), *inverse)));
                    break;
                case ConfigKind::Delta:
                    save_json_file(*out, to_json(shear(delta_config_from_json(j), *inverse)));
                    break;
                case ConfigKind::Bit:
                    save_json_file(*out, to_json(shear(bit_config_from_json(j), *inverse)));
                    break;
            }
        });
    }

    // ---- mat ----
    auto* mat_cmd = app.add_subcommand("mat", "exact piecewise-linear mat geometry");
    mat_cmd->require_subcommand(1);
    {
        auto sys = std::make_shared<SystemArgs>();
        auto out = std::make_shared<std::string>();

        auto* ct = mat_cmd->add_subcommand("canonical-t", "the 5 x e mat");
        add_system_flags(ct, *sys);
        ct->add_option("--out", *out)->required();
        ct->callback([=]() { save_json_file(*out, to_json(canonical_T(sys->params()))); });

        auto* ct3 = mat_cmd->add_subcommand("canonical-t3", "three stacked copies");
        add_system_flags(ct3, *sys);
        ct3->add_option("--out", *out)->required();
        ct3->callback([=]() { save_json_file(*out, to_json(canonical_T3(sys->params()))); });

        auto* bad = mat_cmd->add_subcommand("bad", "a bridge layout that admits triple overlays");
        auto variant = std::make_shared<int>(1);
        auto stacked = std::make_shared<bool>(false);
        add_system_flags(bad, *sys);
        bad->add_option("--variant", *variant)->required()->check(CLI::Range(1, 4));
        bad->add_flag("--stacked", *stacked, "emit the three-copy version");
        bad->add_option("--out", *out)->required();
        bad->callback([=]() {
            Mat m = *stacked ? bad_mat_t3(*variant, sys->params()) : bad_mat(*variant, sys->params());
            save_json_file(*out, to_json(m));
        });

        auto* from = mat_cmd->add_subcommand("from-macrotriple", "rescaled lifted seed triple");
        auto level = std::make_shared<int>(1);
        auto seeds = std::make_shared<std::string>("fff");
        add_system_flags(from, *sys);
        from->add_option("--level", *level)->required();
        from->add_option("--seeds", *seeds, "three slope chars, south to north");
        from->add_option("--out", *out)->required();
        from->callback([=]() {
            Mat m = macrotriple_to_mat(sys->params(), *level, parse_seed_triple(*seeds));
            save_json_file(*out, to_json(m));
        });

        auto* dist = mat_cmd->add_subcommand("distance", "exact mat metric");
        auto in1 = std::make_shared<std::string>(), in2 = std::make_shared<std::string>();
        dist->add_option("--in1", *in1)->required();
        dist->add_option("--in2", *in2)->required();
        dist->callback([=, &as_json]() {
            auto d = mat_distance(mat_from_json(load_json_file(*in1)),
                                  mat_from_json(load_json_file(*in2)));
            emit(json{{"distance", d ? json(d->str()) : json("infinite")}}, as_json,
                 d ? d->str() : "infinite");
        });

        auto* cls = mat_cmd->add_subcommand("classify", "string classification against a reference");
        auto inA = std::make_shared<std::string>(), inT = std::make_shared<std::string>();
        auto eps = std::make_shared<std::string>();
        auto hh = std::make_shared<std::int64_t>(0);
        cls->add_option("--in", *inA)->required();
        cls->add_option("--ref", *inT)->required();
        cls->add_option("--eps", *eps, "rational p/q")->required();
        cls->add_option("--bridge-height", *hh, "bridge height for the 4*eps < h guard")->required();
        cls->callback([=, &as_json]() {
            auto classes = classify_strings(mat_from_json(load_json_file(*inA)),
                                            mat_from_json(load_json_file(*inT)),
                                            Rational::parse(*eps), *hh);
            json arr = json::array();
            for (const auto& c : classes)
                arr.push_back(json{{"run", c.a_run},
                                   {"string", c.a_idx},
                                   {"tag", to_string(c.tag)},
                                   {"ref_run", c.ref_run},
                                   {"ref_string", c.ref_idx}});
            emit(arr, as_json, std::to_string(classes.size()) + " strings classified");
        });

        auto* below = mat_cmd->add_subcommand("below", "order of two translated mats");
        auto off1 = std::make_shared<std::string>("0,0,0");
        auto off2 = std::make_shared<std::string>("0,0,0");
        below->add_option("--in1", *in1)->required();
        below->add_option("--in2", *in2)->required();
        below->add_option("--off1", *off1);
        below->add_option("--off2", *off2);
        below->callback([=, &as_json]() {
            BelowVerdict v = below_relation(mat_from_json(load_json_file(*in1)),
                                            parse_offset(*off1),
                                            mat_from_json(load_json_file(*in2)),
                                            parse_offset(*off2));
            emit(json{{"verdict", to_string(v)}}, as_json, to_string(v));
        });

        auto* check = mat_cmd->add_subcommand("check-triple", "the three overlay conditions");
        auto ins = std::make_shared<std::vector<std::string>>();
        auto offs = std::make_shared<std::vector<std::string>>();
        auto rs = std::make_shared<std::vector<std::string>>();
        auto ref = std::make_shared<std::string>();
        add_system_flags(check, *sys);
        check->add_option("--ref", *ref, "reference mat JSON")->required();
        check->add_option("--in", *ins, "mat JSON, three times")->expected(3);
        check->add_option("--offset", *offs, "x,y,z rationals, three times")->expected(3);
        check->add_option("--r", *rs, "column heights, three rationals")->expected(3);
        check->add_option("--eps", *eps, "rational p/q")->required();
        check->callback([=, &as_json, &exit_code]() {
            Mat refm = mat_from_json(load_json_file(*ref));
            std::array<Mat, 3> mats{mat_from_json(load_json_file((*ins)[0])),
                                    mat_from_json(load_json_file((*ins)[1])),
                                    mat_from_json(load_json_file((*ins)[2]))};
            std::array<TriplePart, 3> parts;
            for (int i = 0; i < 3; ++i) {
                MatOffset o = parse_offset((*offs)[(size_t)i]);
                parts[(size_t)i] =
                    TriplePart{&mats[(size_t)i], o.dx, o.dy, o.dz, Rational::parse((*rs)[(size_t)i])};
            }
            TripleResult res = check_triple(refm, sys->params(), Rational::parse(*eps), parts);
            const char* names[] = {"hypotheses-violated", "no-witness", "witness"};
            emit(json{{"verdict", names[(int)res.verdict]}, {"detail", res.detail}}, as_json,
                 std::string(names[(int)res.verdict]) + ": " + res.detail);
            if (res.verdict == TripleVerdict::Witness) exit_code = 1;  // falsification event
        });

        auto* search = mat_cmd->add_subcommand("search-triple", "seeded overlay witness search");
        auto budget = std::make_shared<std::int64_t>(100000);
        auto rng_seed = std::make_shared<std::uint64_t>(0);
        auto expect = std::make_shared<std::string>("");
        auto refkind = std::make_shared<std::string>("t3");
        auto slevel = std::make_shared<int>(0);
        auto seeds3 = std::make_shared<std::string>("fff");
        add_system_flags(search, *sys);
        search->add_option("--ref", *refkind, "t3 or bad1..bad4");
        search->add_option("--level", *slevel, "macrotriple level for the candidate (0 = the reference itself)");
        search->add_option("--seeds", *seeds3);
        search->add_option("--budget", *budget);
        search->add_option("--seed", *rng_seed, "RNG seed")->required();
        search->add_option("--expect", *expect, "witness or nowitness")
            ->check(CLI::IsMember({"", "witness", "nowitness"}));
        search->callback([=, &as_json, &exit_code]() {
            SubstParams p = sys->params();
            Mat ref = *refkind == "t3" ? canonical_T3(p)
                                       : bad_mat_t3(std::stoi(refkind->substr(3)), p);
            Mat cand = *slevel > 0 ? macrotriple_to_mat(p, *slevel, parse_seed_triple(*seeds3)) : ref;
            if (*slevel > 0) {
                auto d = mat_distance(cand, ref);
                if (!d || !(*d <= p.epsilon()))
                    throw std::runtime_error("candidate mat is not within epsilon of the reference");
            }
            auto w = triple_search(ref, p, p.epsilon(), cand, *budget, *rng_seed);
            json j{{"found", w.has_value()}};
            if (w) {
                json vs = json::array();
                for (int i = 0; i < 3; ++i)
                    vs.push_back(json::array({w->v[(size_t)i].dx.str(), w->v[(size_t)i].dy.str(),
                                              w->v[(size_t)i].dz.str()}));
                j["offsets"] = vs;
                j["r"] = json::array(
                    {w->r[0].str(), w->r[1].str(), w->r[2].str()});
                j["candidate_index"] = w->candidate_index;
            }
            emit(j, as_json, w ? "witness found" : "no witness within budget");
            if (*expect == "witness" && !w) exit_code = 1;
            if (*expect == "nowitness" && w) exit_code = 1;
            if (expect->empty() && w && *refkind == "t3") exit_code = 1;  // falsification
        });
    }

    // ---- analyze ----
    auto* an_cmd = app.add_subcommand("analyze", "sparsity and gluing analysis");
    an_cmd->require_subcommand(1);
    {
        auto in = std::make_shared<std::string>();

        auto* cols = an_cmd->add_subcommand("columns", "per-column cell counts");
        cols->add_option("--in", *in)->required();
        cols->callback([=, &as_json]() {
            json j = load_json_file(*in);
            SparsityReport r;
            switch (config_kind(j)) {
                case ConfigKind::Tile: r = column_counts(tile_config_from_json(j)); break;
                case ConfigKind::Delta: r = column_counts(delta_config_from_json(j)); break;
                case ConfigKind::Bit: r = column_counts(bit_config_from_json(j)); break;
            }
            json out{{"max", r.max_column_count}};
            if (r.witness_column)
                out["column"] = json{{"x", r.witness_column->first}, {"y", r.witness_column->second}};
            emit(out, as_json, "max cells per column: " + std::to_string(r.max_column_count));
        });

        auto* comps = an_cmd->add_subcommand("components", "r-connected components");
        auto radius = std::make_shared<std::int64_t>(1);
        comps->add_option("--in", *in)->required();
        comps->add_option("-r", *radius);
        comps->callback([=, &as_json]() {
            json j = load_json_file(*in);
            ComponentSet cs;
            switch (config_kind(j)) {
                case ConfigKind::Tile: cs = connected_components(tile_config_from_json(j), *radius); break;
                case ConfigKind::Delta: cs = connected_components(delta_config_from_json(j), *radius); break;
                case ConfigKind::Bit: cs = connected_components(bit_config_from_json(j), *radius); break;
            }
            json sizes = json::array();
            for (const auto& c : cs.components) sizes.push_back(c.size());
            emit(json{{"r", cs.r}, {"count", cs.components.size()}, {"sizes", sizes}}, as_json,
                 std::to_string(cs.components.size()) + " components at r = " +
                     std::to_string(*radius));
        });

        auto* glue = an_cmd->add_subcommand("zero-gluing", "validity under 1-zero-gluing");
        auto sys = std::make_shared<SystemArgs>();
        auto depth = std::make_shared<int>(2);
        add_system_flags(glue, *sys);
        glue->add_option("--in", *in)->required();
        glue->add_option("--max-depth", *depth);
        glue->callback([=, &as_json, &exit_code]() {
            json j = load_json_file(*in);
            DeltaConfig c = config_kind(j) == ConfigKind::Delta
                                ? delta_config_from_json(j)
                                : to_delta(tile_config_from_json(j));
            GluingResult r = zero_gluing_check(c, sys->make(), *depth);
            const char* names[] = {"accept", "reject", "inconclusive"};
            emit(json{{"verdict", names[(int)r.verdict]},
                      {"component", r.component},
                      {"reason", r.reason}},
                 as_json, std::string(names[(int)r.verdict]) + ": " + r.reason);
            if (r.verdict == GluingVerdict::Reject) exit_code = 1;
        });

        auto* stack = an_cmd->add_subcommand("stack", "one surface above another");
        auto inB = std::make_shared<std::string>();
        auto gap = std::make_shared<std::int64_t>(2);
        auto out = std::make_shared<std::string>();
        stack->add_option("--in-a", *in)->required();
        stack->add_option("--in-b", *inB)->required();
        stack->add_option("--min-gap", *gap);
        stack->add_option("--out", *out)->required();
        stack->callback([=, &exit_code]() {
            Surface a{tile_config_from_json(load_json_file(*in))};
            Surface b{tile_config_from_json(load_json_file(*inB))};
            auto glued = stack_two(a, b, *gap);
            if (!glued) {
                std::cout << "no placement\n";
                exit_code = 1;
                return;
            }
            save_json_file(*out, to_json(*glued));
        });

        auto* ov = an_cmd->add_subcommand("overlay-search", "seeded column-overlap search");
        auto sys2 = std::make_shared<SystemArgs>();
        auto levels = std::make_shared<std::vector<int>>();
        auto triples = std::make_shared<bool>(false);
        auto target = std::make_shared<int>(3);
        auto budget = std::make_shared<std::int64_t>(100000);
        auto rng_seed = std::make_shared<std::uint64_t>(0);
        auto span = std::make_shared<std::int64_t>(0);
        auto expect = std::make_shared<std::string>("");
        auto threads = std::make_shared<int>(1);
        add_system_flags(ov, *sys2);
        ov->add_option("--levels", *levels, "one level per patch")->required();
        ov->add_flag("--triples", *triples, "south-north macrotile triples");
        ov->add_option("--target", *target)->required();
        ov->add_option("--budget", *budget);
        ov->add_option("--seed", *rng_seed, "RNG seed")->required();
        ov->add_option("--span", *span, "witness column z-window (0 = default)");
        ov->add_option("--threads", *threads);
        ov->add_option("--expect", *expect)->check(CLI::IsMember({"", "witness", "nowitness"}));
        ov->callback([=, &as_json, &exit_code]() {
            auto system = sys2->make();
            std::vector<Patch> patches;
            for (int lvl : *levels)
                patches.push_back(*triples
                                      ? make_patch_triple(system,
                                                          {Slope::Flat, Slope::Flat, Slope::Flat}, lvl)
                                      : make_patch(system, Tile{Slope::Flat, false, false}, lvl));
            auto w = overlay_search(patches, *target, *budget, *rng_seed,
                                    *span > 0 ? std::optional<std::int64_t>(*span) : std::nullopt,
                                    *threads);
            if (w) emit(to_json(*w, patches), as_json,
                        "witness: " + std::to_string(w->count) + " cells in one column");
            else emit(json{{"found", false}}, as_json, "no witness within budget");
            if (*expect == "witness" && !w) exit_code = 1;
            if (*expect == "nowitness" && w) exit_code = 1;
        });
    }

    // ---- codes ----
    auto* codes_cmd = app.add_subcommand("codes", "unbordered binary codes");
    codes_cmd->require_subcommand(1);
    {
        auto out = std::make_shared<std::string>();
        auto in = std::make_shared<std::string>();

        auto* gen = codes_cmd->add_subcommand("gen", "greedy unbordered code");
        auto size = std::make_shared<std::int64_t>(1);
        gen->add_option("--size", *size)->required();
        gen->add_option("--out", *out)->required();
        gen->callback([=]() { save_json_file(*out, to_json(build_code(*size))); });

        auto* verify = codes_cmd->add_subcommand("verify", "exhaustive border scan");
        verify->add_option("--in", *in)->required();
        verify->callback([=, &as_json, &exit_code]() {
            UnborderedCode c = code_from_json(load_json_file(*in));
            auto w = find_border(c.words);
            if (w) {
                emit(json{{"unbordered", false}, {"v", w->v}, {"w", w->w}, {"len", w->len}},
                     as_json, "bordered: prefix of word " + std::to_string(w->v) +
                                  " is a suffix of word " + std::to_string(w->w));
                exit_code = 1;
            } else {
                emit(json{{"unbordered", true}}, as_json, "unbordered");
            }
        });

        auto* embed = codes_cmd->add_subcommand("embed", "lay out cells as codewords");
        auto code_path = std::make_shared<std::string>();
        auto modified = std::make_shared<bool>(false);
        embed->add_option("--code", *code_path)->required();
        embed->add_option("--in", *in, "config JSON; payloads from symbol codes")->required();
        embed->add_flag("--modified", *modified, "write a 1 below each occurrence start");
        embed->add_option("--out", *out)->required();
        embed->callback([=]() {
            UnborderedCode code = code_from_json(load_json_file(*code_path));
            json j = load_json_file(*in);
            TileConfig c = tile_config_from_json(j);
            std::vector<PayloadCell> cells;
            // codewords march along the south-north axis, where neighbor
            // occurrences sit n bits apart with their slope z-steps
            for (const auto& [p, t] : c.cells())
                cells.push_back(PayloadCell{Vec3{p.y * code.word_length(), p.x, p.z},
                                            t.index() % (std::int64_t)code.words.size()});
            EmbeddedConfig emb = embed_cells(cells, code, *modified);
            json outj = to_json(emb.bits);
            outj["word_length"] = emb.n;
            save_json_file(*out, outj);
        });

        auto* decode = codes_cmd->add_subcommand("decode", "recover cells from an embedding");
        decode->add_option("--code", *code_path)->required();
        decode->add_option("--in", *in)->required();
        decode->callback([=, &as_json]() {
            UnborderedCode code = code_from_json(load_json_file(*code_path));
            json j = load_json_file(*in);
            EmbeddedConfig emb;
            emb.bits = bit_config_from_json(j);
            emb.n = j.at("word_length").get<std::int64_t>();
            auto cells = decode_cells(emb, code);
            json arr = json::array();
            for (const auto& c : cells)
                arr.push_back(json{{"x", c.pos.x}, {"y", c.pos.y}, {"z", c.pos.z},
                                   {"payload", c.payload}});
            emit(arr, as_json, std::to_string(cells.size()) + " cells decoded");
        });
    }

    // ---- wang ----
    auto* wang_cmd = app.add_subcommand("wang", "Wang cube clusters and patches");
    wang_cmd->require_subcommand(1);
    {
        auto in = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();

        auto* cluster = wang_cmd->add_subcommand("cluster", "one cluster layout");
        auto diff = std::make_shared<int>(1);
        cluster->add_option("--diff", *diff, "slope difference 1..3")->required()
            ->check(CLI::Range(1, 3));
        cluster->callback([=, &as_json]() {
            wang::Cluster c = wang::build_cluster(*diff, 0);
            json cubes = json::array();
            for (const auto& cube : c.cubes)
                cubes.push_back(json{{"sn", cube.sn},
                                     {"we", cube.we},
                                     {"z", cube.z},
                                     {"half", cube.spine ? "spine" : "wing"},
                                     {"inferred", cube.inferred}});
            emit(json{{"slope_diff", c.slope_diff}, {"cubes", cubes}}, as_json,
                 std::to_string(c.cubes.size()) + " cubes");
        });

        auto* emit_cmd = wang_cmd->add_subcommand("emit", "clusters for a sheared surface");
        emit_cmd->add_option("--in", *in, "sheared tile config JSON")->required();
        emit_cmd->add_option("--out", *out)->required();
        emit_cmd->callback([=]() {
            wang::CubePatch p = wang::emit_patch(tile_config_from_json(load_json_file(*in)));
            save_json_file(*out, to_json(p));
        });

        auto* verify = wang_cmd->add_subcommand("verify", "face matching");
        verify->add_option("--in", *in)->required();
        verify->callback([=, &as_json, &exit_code]() {
            auto v = wang::verify_patch(cube_patch_from_json(load_json_file(*in)));
            if (v) {
                emit(json{{"valid", false},
                          {"at", json::array({v->at.x, v->at.y, v->at.z})},
                          {"face", v->face},
                          {"detail", v->detail}},
                     as_json, "face mismatch at (" + std::to_string(v->at.x) + "," +
                                  std::to_string(v->at.y) + "," + std::to_string(v->at.z) + ")");
                exit_code = 1;
            } else {
                emit(json{{"valid", true}}, as_json, "valid");
            }
        });

        auto* cols = wang_cmd->add_subcommand("columns", "non-blank cubes per column");
        cols->add_option("--in", *in)->required();
        cols->callback([=, &as_json]() {
            auto st = wang::cube_column_counts(cube_patch_from_json(load_json_file(*in)));
            json j{{"max", st.max_count}};
            if (st.witness)
                j["column"] = json{{"sn", st.witness->first}, {"we", st.witness->second}};
            emit(j, as_json, "max cubes per column: " + std::to_string(st.max_count));
        });
    }

    // ---- export ----
    auto* export_cmd = app.add_subcommand("export", "mesh export");
    export_cmd->require_subcommand(1);
    {
        auto in = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto precision = std::make_shared<int>(9);
        auto* obj = export_cmd->add_subcommand("obj", "Wavefront OBJ, one quad per cell");
        obj->add_option("--in", *in)->required();
        obj->add_option("--out", *out)->required();
        obj->add_option("--precision", *precision);
        obj->callback([=]() {
            Surface s{tile_config_from_json(load_json_file(*in))};
            std::ofstream f(*out);
            if (!f) throw std::runtime_error("cannot write " + *out);
            f << export_obj(s, *precision);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
