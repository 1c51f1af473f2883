// Command-line driver: constructions, classification tables, higher-limit
// tables, Rep-graph dumps and theorem-level verification runs, all emitted as
// self-contained JSON reports.
//
// Exit codes: 0 success, 2 configuration error, 3 hypothesis failure,
// 4 invariant-violation alarm.

#include <iostream>

#include "CLI11.hpp"
#include "fuslim/fuslim.hpp"

using namespace fuslim;

namespace {

struct RunConfig {
    std::string group;
    int sylow = 0;
    std::string seed_homs;
    std::string family = "centric";
    std::string functor;  // cohomology:<j> | constant | path; empty = all j <= jmax
    int jmax = 3;
    int nmax = 3;
    std::string out;
    std::string scenario;
    std::string prune;
    std::string dump_fusion;
    size_t hom_cap = kDefaultHomCap;
};

struct Instance {
    GroupPtr G;        // realizing group (may equal the p-group)
    GroupPtr amb;      // S materialized
    LatticePtr lat;
    FusionPtr F;
    FusionPtr H;       // subsystem for scenario commands (inner fusion default)
    int p = 2;
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    check_arg(bool(in), "cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

GroupPtr resolve_group(const std::string& spec) {
    if (spec.rfind("preset:", 0) == 0) return group_from_preset(spec);
    if (std::ifstream probe(spec); probe) return group_from_json(load_json_file(spec));
    // bare preset names like "quaternion8" or "dihedral:8"
    return group_from_preset(spec);
}

std::vector<Hom> parse_seed_homs(const json& j, const GroupPtr& amb) {
    std::vector<Hom> seeds;
    check_arg(j.contains("seeds"), "seed-homs JSON needs a 'seeds' array");
    for (const auto& s : j["seeds"]) {
        std::vector<int> dom_idx, img_idx;
        for (const auto& g : s["domain_gens"])
            dom_idx.push_back(amb->index_of(Perm::from_ints(g.get<std::vector<int>>())));
        for (const auto& g : s["images"])
            img_idx.push_back(amb->index_of(Perm::from_ints(g.get<std::vector<int>>())));
        check_arg(dom_idx.size() == img_idx.size(), "seed-homs: generator/image count mismatch");
        Subgroup dom(amb, subgroup_closure(*amb, dom_idx));
        // extend multiplicatively from generator images
        std::vector<int> map(amb->size(), -1);
        map[amb->id()] = amb->id();
        std::vector<int> known{amb->id()};
        for (size_t k = 0; k < dom_idx.size(); ++k) {
            map[dom_idx[k]] = img_idx[k];
            known.push_back(dom_idx[k]);
        }
        bool changed = true;
        while (changed) {
            changed = false;
            size_t n = known.size();
            for (size_t i = 0; i < n; ++i)
                for (size_t k = 0; k < n; ++k) {
                    int x = amb->mul(known[i], known[k]);
                    int y = amb->mul(map[known[i]], map[known[k]]);
                    if (map[x] == -1) {
                        map[x] = y;
                        known.push_back(x);
                        changed = true;
                    } else {
                        check_arg(map[x] == y, "seed-homs: images are not multiplicative");
                    }
                }
        }
        Bitset img_mask(amb->size());
        std::vector<uint16_t> m(dom.order());
        for (int k = 0; k < dom.order(); ++k) {
            check_arg(map[dom.member(k)] >= 0, "seed-homs: map not defined on the domain");
            m[k] = uint16_t(map[dom.member(k)]);
            img_mask.set(m[k]);
        }
        Subgroup img(amb, img_mask);
        seeds.emplace_back(dom, img, m);
    }
    return seeds;
}

Instance build_instance(const RunConfig& cfg) {
    check_arg(!cfg.group.empty(), "--group is required");
    check_arg(cfg.jmax >= 0 && cfg.nmax >= 0, "--jmax/--nmax must be nonnegative");
    Instance ins;
    ins.G = resolve_group(cfg.group);
    Subgroup SinG = Subgroup::full(ins.G);
    if (cfg.sylow) {
        check_arg(is_prime(cfg.sylow), "--sylow must be prime");
        SinG = sylow(ins.G, cfg.sylow);
    } else {
        check_arg(prime_power_base(ins.G->size()) != 0,
                  "group is not a p-group; give --sylow p");
    }
    ins.amb = SinG.materialize();
    ins.lat = SubgroupLattice::build(ins.amb);
    ins.p = prime_power_base(ins.amb->size());
    ins.F = realize_into(ins.lat, Subgroup::full(ins.amb), ins.G);
    if (!cfg.seed_homs.empty()) {
        auto seeds = parse_seed_homs(load_json_file(cfg.seed_homs), ins.amb);
        ins.H = generate(ins.lat, Subgroup::full(ins.amb), seeds, cfg.hom_cap);
    } else {
        ins.H = inner_fusion(ins.lat, Subgroup::full(ins.amb));
    }
    return ins;
}

Subgroup resolve_subgroup(const std::string& sel, const Instance& ins) {
    const auto& subs = ins.lat->subgroups;
    auto starts = [&](const char* pre) { return sel.rfind(pre, 0) == 0; };
    if (sel == "center") return center(ins.F->S);
    if (sel == "derived") return derived_subgroup(ins.F->S);
    if (sel == "V") {
        // normal elementary-abelian subgroup of order p^2 with the largest
        // F-automorphism group (first in canonical order on ties)
        const Subgroup* best = nullptr;
        size_t best_aut = 0;
        for (const auto& P : subs) {
            if (P.order() != ins.p * ins.p) continue;
            bool elab = true;
            for (int m : P.members())
                if (m != ins.amb->id() && ins.amb->element_order(m) != ins.p) elab = false;
            if (!elab) continue;
            if (normalizer(ins.F->S, P).order() != ins.amb->size()) continue;
            int a = ins.F->obj_index(P);
            size_t aut = ins.F->hom[a][a].size();
            if (!best || aut > best_aut) {
                best = &P;
                best_aut = aut;
            }
        }
        if (!best)
            throw ArgumentError("selector V: no normal elementary-abelian subgroup of order p^2");
        return *best;
    }
    if (starts("index:")) {
        int k = std::stoi(sel.substr(6));
        check_arg(k >= 0 && k < int(subs.size()), "selector index out of range");
        return subs[k];
    }
    if (starts("order:")) {
        std::string rest = sel.substr(6);
        auto colon = rest.find(':');
        int n = std::stoi(rest.substr(0, colon));
        int want = colon == std::string::npos ? 0 : std::stoi(rest.substr(colon + 1));
        int seen = 0;
        for (const auto& P : subs)
            if (P.order() == n && seen++ == want) return P;
        throw ArgumentError("selector order:" + rest + ": not enough subgroups of that order");
    }
    if (starts("gens:")) {
        json j = json::parse(sel.substr(5));
        std::vector<int> idx;
        for (const auto& g : j)
            idx.push_back(ins.amb->index_of(Perm::from_ints(g.get<std::vector<int>>())));
        return Subgroup(ins.amb, subgroup_closure(*ins.amb, idx));
    }
    throw ArgumentError("unknown subgroup selector: " + sel);
}

SubgroupFamily resolve_family(const RunConfig& cfg, const Instance& ins, int* exit_code) {
    if (cfg.family == "centric") return centric_family(ins.F);
    if (cfg.family == "centric-radical-closure") return centric_radical_closure_family(ins.F);
    // custom path: JSON array of member lists (ambient element indices)
    json j = load_json_file(cfg.family);
    std::vector<int> members;
    for (const auto& lst : j)
        members.push_back(ins.F->obj_index(
            Subgroup::from_members(ins.amb, lst.get<std::vector<int>>())));
    std::string why;
    SubgroupFamily fam = certify_family(ins.F, members, &why);
    if (!fam.certified()) {
        std::cerr << "family is not closed: " << why << "\n";
        *exit_code = 3;
    }
    return fam;
}

void emit(const RunConfig& cfg, const json& report) {
    if (!cfg.out.empty())
        write_report(cfg.out, report);
    else
        std::cout << report.dump(2) << "\n";
}

json config_provenance(const RunConfig& cfg, const Instance& ins) {
    json out;
    out["schema"] = kSchema;
    out["group"] = cfg.group;
    out["group_generators"] = group_provenance(ins.G)["generators"];
    out["sylow"] = cfg.sylow;
    out["p"] = ins.p;
    out["family"] = cfg.family;
    out["jmax"] = cfg.jmax;
    out["nmax"] = cfg.nmax;
    out["hom_cap"] = cfg.hom_cap;
    if (!cfg.seed_homs.empty()) out["seed_homs"] = cfg.seed_homs;
    if (!cfg.prune.empty()) out["prune"] = cfg.prune;
    return out;
}

void add_family_provenance(json& report, const SubgroupFamily& fam) {
    json members = json::array();
    for (int a : fam.members) members.push_back(fam.F->obj(a).members());
    report["family_members"] = members;
}

std::ostream& summary_stream(const RunConfig& cfg) {
    return cfg.out.empty() ? std::cerr : std::cout;
}

int cmd_classify(const RunConfig& cfg) {
    Instance ins = build_instance(cfg);
    json report = config_provenance(cfg, ins);
    report["command"] = "classify";
    report["report"] = classify_to_json(*ins.F);
    if (!cfg.dump_fusion.empty()) write_report(cfg.dump_fusion, fusion_to_json(*ins.F));
    emit(cfg, report);
    auto reps = classify(*ins.F);
    int centr = 0, ess = 0;
    for (const auto& r : reps) {
        centr += r.centric;
        ess += r.essential;
    }
    summary_stream(cfg) << reps.size() << " subgroups, " << centr << " centric, " << ess
                        << " essential\n";
    return 0;
}

int cmd_limits(const RunConfig& cfg) {
    Instance ins = build_instance(cfg);
    int exit_code = 0;
    SubgroupFamily fam = resolve_family(cfg, ins, &exit_code);
    if (exit_code) return exit_code;
    OrbitPtr O = build_orbit_category(fam);
    CohomologyCache cache(ins.p);
    json report = config_provenance(cfg, ins);
    add_family_provenance(report, fam);
    report["command"] = "limits";
    json table = json::array();

    auto run_functor = [&](const std::string& name, const FunctorModule& M) {
        auto lims = higher_limits(M, cfg.nmax);
        json row;
        row["functor"] = name;
        json dims = json::array();
        for (const auto& l : lims) dims.push_back(l.dim);
        row["lim_dims"] = dims;
        row["route"] = lims[0].route;
        table.push_back(row);
        auto& os = summary_stream(cfg);
        os << name << ":";
        for (const auto& l : lims) os << " " << l.dim;
        os << "  [" << lims[0].route << "]\n";
    };

    if (cfg.functor.empty()) {
        for (int j = 0; j <= cfg.jmax; ++j)
            run_functor("H^" + std::to_string(j), cohomology_functor(cache, O, j));
    } else if (cfg.functor == "constant") {
        run_functor("constant", constant_functor(O, ins.p));
    } else if (cfg.functor.rfind("cohomology:", 0) == 0) {
        int j = std::stoi(cfg.functor.substr(11));
        run_functor("H^" + std::to_string(j), cohomology_functor(cache, O, j));
    } else {
        FunctorModule M = functor_from_json(load_json_file(cfg.functor), O);
        run_functor("custom", M);
    }
    report["table"] = table;
    emit(cfg, report);
    return 0;
}

// G_e candidates for the splitting hypothesis of theorem-c: the normalizer
// of P inside S, or inside the realizing group G.
GroupPtr resolve_edge_group(const Instance& ins, const Triple& T, const Subgroup& P) {
    std::vector<GroupPtr> candidates;
    candidates.push_back(normalizer(ins.F->S, P).materialize());
    {
        std::vector<int> mem;
        for (int x = 0; x < ins.G->size(); ++x) {
            bool ok = true;
            for (int m : P.members()) {
                Perm c = ins.G->element(x) * ins.amb->element(m) * ins.G->element(x).inverse();
                if (!ins.amb->contains(c) || !P.contains(ins.amb->index_of(c))) ok = false;
            }
            if (ok) mem.push_back(x);
        }
        candidates.push_back(Subgroup::from_members(ins.G, mem).materialize());
    }
    for (const auto& Ge : candidates) {
        bool contains = true;
        for (int m : T.Sprime().members())
            if (!Ge->contains(ins.amb->element(m))) contains = false;
        if (!contains) continue;
        auto Freal = realize_into(ins.lat, T.Sprime(), Ge);
        if (fusion_subsystem_eq(*Freal, *T.Fe)) return Ge;
    }
    return candidates.front();  // hypotheses will report the mismatch honestly
}

int cmd_verify(const RunConfig& cfg) {
    Instance ins = build_instance(cfg);
    int exit_code = 0;
    SubgroupFamily fam = resolve_family(cfg, ins, &exit_code);
    if (exit_code) return exit_code;
    CohomologyCache cache(ins.p);
    json report = config_provenance(cfg, ins);
    add_family_provenance(report, fam);
    report["command"] = "verify";
    report["scenario"] = cfg.scenario;

    std::vector<Subgroup> pruned;
    if (!cfg.prune.empty()) {
        std::stringstream ss(cfg.prune);
        std::string tok;
        while (std::getline(ss, tok, ',')) pruned.push_back(resolve_subgroup(tok, ins));
    }

    auto finish = [&](bool hyps, bool concl) {
        emit(cfg, report);
        auto& os = summary_stream(cfg);
        if (!hyps) {
            os << "hypothesis failure\n";
            return 3;
        }
        if (!concl) {
            os << "conclusion failed with hypotheses satisfied: invariant alarm\n";
            return 4;
        }
        os << "all checks passed\n";
        return 0;
    };

    if (cfg.scenario == "sharpness") {
        auto rep = sharpness_suite(ins.F, cache, cfg.jmax, cfg.nmax);
        json jr;
        jr["saturated"] = rep.saturated;
        jr["table"] = rep.table;
        jr["stable_dims"] = rep.stable_dims;
        jr["sharp"] = rep.sharp;
        report["report"] = jr;
        return finish(rep.saturated, rep.sharp);
    }
    if (cfg.scenario == "trees") {
        check_arg(pruned.size() == 1, "verify trees needs --prune with one subgroup");
        auto v = pruning_vanishing_check(ins.F, ins.H, pruned[0], fam, ins.p);
        json jr;
        json hyp = json::array();
        for (auto& [name, ok] : v.hypotheses) {
            json h;
            h["name"] = name;
            h["holds"] = ok;
            hyp.push_back(h);
        }
        jr["hypotheses"] = hyp;
        jr["hypotheses_hold"] = v.hypotheses_hold;
        jr["all_trees"] = v.all_trees;
        jr["p_minimal_in_family"] = v.p_minimal_in_family;
        jr["kernel_vanishes"] = v.kernel_vanishes;
        jr["conclusion_holds"] = v.conclusion_holds;
        if (v.hypotheses_hold) {
            Triple T = pruning_triple(ins.F, ins.H, pruned[0]);
            json graphs = json::array();
            for (int a : fam.members) {
                RepGraph g = build_rep_graph(T, fam.F->obj(a));
                json jg = rep_graph_to_json(g);
                jg["object"] = a;
                jg["dot"] = rep_graph_to_dot(g, "object_" + std::to_string(a));
                graphs.push_back(jg);
            }
            jr["graphs"] = graphs;
        }
        report["report"] = jr;
        return finish(v.hypotheses_hold, v.conclusion_holds);
    }
    if (cfg.scenario == "theorem-a") {
        check_arg(pruned.size() == 1, "verify theorem-a needs --prune with one subgroup");
        Triple T = pruning_triple(ins.F, ins.H, pruned[0]);
        auto OFc = centric_orbit_category(T.F);
        json runs = json::array();
        bool hyps = true, concl = true;
        for (int j = 0; j <= cfg.jmax; ++j) {
            FunctorModule M = cohomology_functor(cache, OFc, j);
            auto led = theorem_a_check(T, fam, OFc, M, cfg.nmax);
            json jr = ledger_to_json(led);
            jr["functor"] = "H^" + std::to_string(j);
            runs.push_back(jr);
            hyps = hyps && led.verdict.hypotheses_hold;
            concl = concl && led.verdict.conclusion_holds;
        }
        report["report"] = runs;
        return finish(hyps, concl);
    }
    if (cfg.scenario == "theorem-b") {
        check_arg(!pruned.empty(), "verify theorem-b needs --prune");
        auto v = theorem_b_scenario(ins.F, ins.H, pruned, cache, cfg.jmax, cfg.nmax);
        report["report"] = verdict_to_json(v);
        return finish(v.hypotheses_hold, v.conclusion_holds);
    }
    if (cfg.scenario == "theorem-c") {
        check_arg(pruned.size() == 1, "verify theorem-c needs --prune with one subgroup");
        Triple T = pruning_triple(ins.F, ins.H, pruned[0]);
        auto OFc = centric_orbit_category(T.F);
        GroupPtr Ge = resolve_edge_group(ins, T, pruned[0]);
        auto v = theorem_c_scenario(T, pruned[0], fam, OFc, cache, Ge, cfg.jmax, cfg.nmax);
        report["report"] = verdict_to_json(v);
        return finish(v.hypotheses_hold, v.conclusion_holds);
    }
    if (cfg.scenario == "two-essential") {
        check_arg(pruned.size() == 2, "verify two-essential needs --prune P,Q");
        auto v = two_essential_scenario(ins.F, pruned[0], pruned[1], cache, cfg.jmax, cfg.nmax);
        report["report"] = verdict_to_json(v);
        return finish(v.hypotheses_hold, v.conclusion_holds);
    }
    throw ArgumentError("unknown scenario: " + cfg.scenario);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation of higher limits over centric orbit categories "
                 "of saturated fusion systems"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--group", cfg.group, "preset:NAME:ARGS or path to a group JSON file")
            ->required();
        sub->add_option("--sylow", cfg.sylow, "prime p; use the Sylow p-subgroup of the group");
        sub->add_option("--seed-homs", cfg.seed_homs,
                        "JSON file of seed homomorphisms generating the subsystem H");
        sub->add_option("--family", cfg.family,
                        "centric | centric-radical-closure | path to a member-list JSON");
        sub->add_option("--jmax", cfg.jmax, "largest cohomology degree");
        sub->add_option("--nmax", cfg.nmax, "largest higher-limit degree");
        sub->add_option("--out", cfg.out, "report file (stdout when omitted)");
        sub->add_option("--hom-cap", cfg.hom_cap, "morphism count cap for fusion closures");
    };

    CLI::App* c_classify = app.add_subcommand("classify", "subgroup classification table");
    add_common(c_classify);
    c_classify->add_option("--dump-fusion", cfg.dump_fusion,
                           "also write the full fusion-system dump to this file");

    CLI::App* c_limits = app.add_subcommand("limits", "higher-limit dimension table");
    add_common(c_limits);
    c_limits->add_option("--functor", cfg.functor,
                         "cohomology:<j> | constant | path to a functor JSON");

    CLI::App* c_verify = app.add_subcommand("verify", "theorem-level verification");
    add_common(c_verify);
    c_verify->add_option("scenario", cfg.scenario,
                         "theorem-a | theorem-b | theorem-c | two-essential | trees | sharpness");
    c_verify->add_option("--verify", cfg.scenario,
                         "scenario name (alternative to the positional form)");
    c_verify->add_option("--prune", cfg.prune,
                         "subgroup selector(s): V | center | derived | index:K | order:N:K | "
                         "gens:<json>; two comma-separated for two-essential");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_classify->parsed()) return cmd_classify(cfg);
        if (c_limits->parsed()) return cmd_limits(cfg);
        if (c_verify->parsed()) {
            check_arg(!cfg.scenario.empty(), "verify needs a scenario");
            return cmd_verify(cfg);
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
