#pragma once

// JSON input/output: group descriptions, fusion-system and functor dumps,
// classification tables, limit tables and scenario verdicts. All reports are
// emitted through ordered maps with stable member order, so identical
// configurations produce byte-identical files.

#include <fstream>

#include "json.hpp"
#include "verify.hpp"

namespace fuslim {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "fusion-limits/1";

inline json perm_to_json(const Perm& p) {
    json arr = json::array();
    for (int i = 0; i < p.degree(); ++i) arr.push_back(p(i));
    return arr;
}

inline GroupPtr group_from_json(const json& j, int size_cap = kDefaultGroupCap) {
    check_arg(j.contains("degree") && j.contains("generators"),
              "group JSON needs 'degree' and 'generators'");
    int degree = j["degree"].get<int>();
    std::vector<Perm> gens;
    for (const auto& g : j["generators"]) {
        std::vector<int> img = g.get<std::vector<int>>();
        check_arg(int(img.size()) == degree, "group JSON: generator degree mismatch");
        gens.push_back(Perm::from_ints(img));
    }
    return group_from_generators(degree, gens, size_cap);
}

inline json group_provenance(const GroupPtr& g) {
    json out;
    out["degree"] = g->degree();
    out["order"] = g->size();
    json gens = json::array();
    for (const auto& p : g->generators()) gens.push_back(perm_to_json(p));
    out["generators"] = gens;
    return out;
}

inline json subgroup_to_json(const Subgroup& s) {
    json out;
    out["order"] = s.order();
    json mem = json::array();
    for (int m : s.members()) mem.push_back(perm_to_json(s.ambient()->element(m)));
    out["members"] = mem;
    return out;
}

inline json hom_to_json(const Hom& h) {
    // element map as the list of images (ambient element indices) of the
    // sorted members of the domain
    json out = json::array();
    for (uint16_t v : h.map()) out.push_back(int(v));
    return out;
}

inline json fusion_to_json(const FusionSystem& F) {
    json out;
    out["schema"] = kSchema;
    out["kind"] = "fusion-system";
    out["p"] = F.p;
    json amb;
    amb["degree"] = F.ambient()->degree();
    json elems = json::array();
    for (const auto& e : F.ambient()->elements()) elems.push_back(perm_to_json(e));
    amb["elements"] = elems;
    out["ambient"] = amb;
    json objs = json::array();
    for (int a = 0; a < F.nobj(); ++a) {
        json o;
        o["index"] = a;
        o["order"] = F.obj(a).order();
        o["members"] = F.obj(a).members();
        objs.push_back(o);
    }
    out["objects"] = objs;
    json homs = json::array();
    for (int a = 0; a < F.nobj(); ++a)
        for (int b = 0; b < F.nobj(); ++b) {
            if (F.hom[a][b].empty()) continue;
            json hs;
            hs["from"] = a;
            hs["to"] = b;
            json maps = json::array();
            for (const Hom& h : F.hom[a][b]) maps.push_back(hom_to_json(h));
            hs["maps"] = maps;
            homs.push_back(hs);
        }
    out["homsets"] = homs;
    return out;
}

inline json classify_to_json(const FusionSystem& F) {
    json out;
    out["schema"] = kSchema;
    out["kind"] = "classify-report";
    out["p"] = F.p;
    auto reports = classify(F);
    json rows = json::array();
    for (const auto& r : reports) {
        json row;
        row["index"] = r.object;
        row["order"] = F.obj(r.object).order();
        row["members"] = F.obj(r.object).members();
        row["fully_normalized"] = r.fully_normalized;
        row["centric"] = r.centric;
        row["radical"] = r.radical;
        row["centric_radical"] = r.centric_radical;
        row["essential_raw"] = r.essential_raw;
        row["essential"] = r.essential;
        row["conjugacy_class"] = r.conjugacy_class;
        rows.push_back(row);
    }
    out["subgroups"] = rows;
    return out;
}

inline json functor_to_json(const FunctorModule& M) {
    json out;
    out["schema"] = kSchema;
    out["kind"] = "functor";
    out["p"] = M.p;
    out["dims"] = M.dims;
    json mors = json::array();
    const OrbitCategory& O = *M.cat;
    for (int i = 0; i < O.nmor(); ++i) {
        json m;
        m["from"] = O.mors[i].src;
        m["to"] = O.mors[i].dst;
        m["rep"] = hom_to_json(O.mors[i].rep);
        json mat = json::array();
        for (int r = 0; r < M.action[i].rows(); ++r) {
            json row = json::array();
            for (int c = 0; c < M.action[i].cols(); ++c) row.push_back(M.action[i].get(r, c));
            mat.push_back(row);
        }
        m["matrix"] = mat;
        mors.push_back(m);
    }
    out["morphisms"] = mors;
    return out;
}

inline FunctorModule functor_from_json(const json& j, const OrbitPtr& O) {
    check_arg(j.contains("p") && j.contains("dims") && j.contains("morphisms"),
              "functor JSON needs p, dims, morphisms");
    FunctorModule M;
    M.cat = O;
    M.p = j["p"].get<int>();
    M.dims = j["dims"].get<std::vector<int>>();
    check_arg(int(M.dims.size()) == O->nobj(), "functor JSON: wrong object count");
    check_arg(j["morphisms"].size() == size_t(O->nmor()), "functor JSON: wrong morphism count");
    for (int i = 0; i < O->nmor(); ++i) {
        const auto& m = j["morphisms"][i];
        const auto& mor = O->mors[i];
        FpMat mat(M.p, M.dims[mor.src], M.dims[mor.dst]);
        const auto& rows = m["matrix"];
        check_arg(int(rows.size()) == mat.rows(), "functor JSON: matrix shape");
        for (int r = 0; r < mat.rows(); ++r)
            for (int c = 0; c < mat.cols(); ++c) mat.set(r, c, rows[r][c].get<int>());
        M.action.push_back(std::move(mat));
    }
    verify_functor(M);
    return M;
}

inline json rep_graph_to_json(const RepGraph& g) {
    json out;
    out["kind"] = "rep-graph";
    json v1 = json::array(), v2 = json::array(), ed = json::array();
    for (const auto& c : g.verts_f1) v1.push_back(hom_to_json(c.rep));
    for (const auto& c : g.verts_f2) v2.push_back(hom_to_json(c.rep));
    for (const auto& e : g.edges) {
        json je;
        je["class"] = hom_to_json(e.cls.rep);
        je["v1"] = e.v1;
        je["v2"] = e.v2;
        ed.push_back(je);
    }
    out["vertices_f1"] = v1;
    out["vertices_f2"] = v2;
    out["edges"] = ed;
    out["components"] = g.components();
    out["h1_dim"] = g.h1_dim();
    out["is_tree"] = g.is_tree();
    return out;
}

inline std::string rep_graph_to_dot(const RepGraph& g, const std::string& name) {
    std::string out = "graph \"" + name + "\" {\n";
    for (size_t i = 0; i < g.verts_f1.size(); ++i)
        out += "  f1_" + std::to_string(i) + " [shape=box];\n";
    for (size_t i = 0; i < g.verts_f2.size(); ++i)
        out += "  f2_" + std::to_string(i) + " [shape=circle];\n";
    for (const auto& e : g.edges)
        out += "  f1_" + std::to_string(e.v1) + " -- f2_" + std::to_string(e.v2) + ";\n";
    out += "}\n";
    return out;
}

inline json verdict_to_json(const ScenarioVerdict& v) {
    json out;
    json hyp = json::array();
    for (const auto& h : v.hypotheses) {
        json jh;
        jh["name"] = h.name;
        jh["holds"] = h.holds;
        if (!h.witness.empty()) jh["witness"] = h.witness;
        hyp.push_back(jh);
    }
    out["hypotheses"] = hyp;
    out["hypotheses_hold"] = v.hypotheses_hold;
    out["conclusion_checked"] = v.conclusion_checked;
    out["conclusion_holds"] = v.conclusion_holds;
    if (!v.notes.empty()) out["notes"] = v.notes;
    return out;
}

inline json ledger_to_json(const TheoremALedger& led) {
    json out;
    out["kind"] = "theorem-a-ledger";
    out["verdict"] = verdict_to_json(led.verdict);
    out["hypothesis_note"] = led.hypothesis_note;
    out["lim_dims"] = led.lim_dims;
    out["ext_dims"] = led.ext_dims;
    out["nat_dim"] = led.nat_dim;
    out["coker_fstar_dim"] = led.coker_fstar_dim;
    out["ker_upsilon"] = led.ker_upsilon;
    out["coker_upsilon"] = led.coker_upsilon;
    out["part1_holds"] = led.part1_holds;
    out["part2_holds"] = led.part2_holds;
    out["upsilon_well_defined"] = led.upsilon_well_defined;
    json lo;
    lo["ker_fstar"] = led.limone.ker_fstar;
    lo["stable_f"] = led.limone.stable_f;
    lo["coker_fstar"] = led.limone.coker_fstar;
    lo["quotient_dim"] = led.limone.quotient_dim;
    lo["ker_matches"] = led.limone.ker_matches;
    lo["coker_matches"] = led.limone.coker_matches;
    out["limone"] = lo;
    return out;
}

inline void write_report(const std::string& path, const json& j) {
    std::ofstream out(path);
    check_arg(bool(out), "cannot open output file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace fuslim
