#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wedgecalc/classify.hpp"
#include "wedgecalc/errors.hpp"
#include "wedgecalc/normalize.hpp"
#include "wedgecalc/oracle.hpp"
#include "wedgecalc/parser.hpp"

using json = nlohmann::ordered_json;
using namespace wedgecalc;

namespace {

struct Output {
    bool as_json = false;
    std::string path; // empty: stdout
    json doc;
    std::string text;

    void line(const std::string& s) { text += s + "\n"; }

    int flush() {
        const std::string body = as_json ? doc.dump(2) + "\n" : text;
        if (path.empty()) {
            std::cout << body;
        } else {
            std::ofstream f(path);
            if (!f) {
                std::cerr << "error: cannot open output file " << path << "\n";
                return 1;
            }
            f << body;
        }
        return 0;
    }
};

struct ShapeArgs {
    int n = 4;
    int k = 1;                        // classifier pairs
    int r = 1, l = 1;                 // splitter pairs / middle spheres
    std::vector<std::string> opaque;  // splitter extra summands
    std::vector<std::string> atoms;   // "id,target,source,order,suspended[,hopf]"
};

AtomDecl parse_atom_spec(const std::string& spec) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : spec) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    if (fields.size() < 5 || fields.size() > 6)
        throw ParseError("malformed --atom spec '" + spec + "'", 1, 1,
                         "id,target,source,order,suspended[,hopf]");
    AtomDecl d;
    try {
        d.id = fields[0];
        d.target_dim = std::stoi(fields[1]);
        d.source_dim = std::stoi(fields[2]);
        d.order = std::stoi(fields[3]);
        if (fields[4] == "1" || fields[4] == "true") d.suspended = true;
        else if (fields[4] == "0" || fields[4] == "false") d.suspended = false;
        else throw std::invalid_argument("suspended");
        if (fields.size() == 6) d.hopf = Coeff(fields[5]);
    } catch (const CalcError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed field in --atom spec '" + spec + "'", 1, 1,
                         "id,target,source,order,suspended[,hopf]");
    }
    if (d.id.empty())
        throw ParseError("empty class id in --atom spec '" + spec + "'", 1, 1);
    return d;
}

ShapePtr make_shape(const ShapeArgs& a, Mode mode) {
    std::shared_ptr<WedgeShape> sh =
        mode == Mode::classifier ? build_classifier(a.n, a.k)
                                 : build_splitter(a.n, a.r, a.l, a.opaque);
    for (const std::string& spec : a.atoms) sh->declare_atom(parse_atom_spec(spec));
    return sh;
}

void add_common(CLI::App* cmd, ShapeArgs& a, Mode mode) {
    cmd->add_option("--n", a.n, "ambient parameter n (complex dimension 2n)")
        ->capture_default_str();
    if (mode == Mode::classifier) {
        cmd->add_option("--k", a.k, "number of (S^{n-1} v S^{n+1}) pairs")->required();
    } else {
        cmd->add_option("--r", a.r, "K1 pair count")->required();
        cmd->add_option("--l", a.l, "K2 middle sphere count")->required();
        cmd->add_option("--opaque", a.opaque, "extra opaque K1 summand label (repeatable)");
    }
    cmd->add_option("--atom", a.atoms,
                    "declare a composition class: id,target,source,order,suspended[,hopf] "
                    "(order 0 = infinite, -1 = unknown; repeatable)");
}

json shape_json(const ShapeArgs& a, Mode mode) {
    json s;
    s["mode"] = mode == Mode::classifier ? "classifier" : "splitter";
    s["n"] = a.n;
    if (mode == Mode::classifier) {
        s["k"] = a.k;
    } else {
        s["r"] = a.r;
        s["l"] = a.l;
        if (!a.opaque.empty()) s["opaque"] = a.opaque;
    }
    if (!a.atoms.empty()) s["atoms"] = a.atoms;
    return s;
}

json pairs_json(const std::vector<SummandPair>& pairs) {
    json arr = json::array();
    for (const SummandPair& p : pairs)
        arr.push_back({{"alpha", to_string(p.alpha)}, {"beta", to_string(p.beta)}});
    return arr;
}

const char* verdict_str(Verdict v) {
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    default: return "unknown";
    }
}

json law_json(const LawReport& r) {
    json j;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    if (!r.failure_notes.empty()) j["notes"] = r.failure_notes;
    return j;
}

int run_split(Output& out, const ShapeArgs& sa, const std::string& phi_text) {
    ShapePtr sh = make_shape(sa, Mode::splitter);
    Element phi = parse_element(phi_text, sh, 2 * sa.n - 1);
    SplitResult r = split_connected_sum(phi);
    out.doc["command"] = "split";
    out.doc["input"] = {{"shape", shape_json(sa, Mode::splitter)}, {"phi", to_string(phi)}};
    out.doc["result"] = {{"phi_transformed", to_string(r.phi_transformed)},
                         {"phi1", to_string(r.phi1)},
                         {"phi2", to_string(r.phi2)}};
    out.doc["witness"] = to_string(r.witness);
    out.line("witness:          " + to_string(r.witness));
    out.line("phi transformed:  " + to_string(r.phi_transformed));
    out.line("K1 part:          " + to_string(r.phi1));
    out.line("K2 part:          " + to_string(r.phi2));
    return out.flush();
}

int run_normalize(Output& out, const ShapeArgs& sa, const std::string& phi_text) {
    ShapePtr sh = make_shape(sa, Mode::classifier);
    Element phi = parse_element(phi_text, sh, 2 * sa.n - 1);
    NormalizeResult r = normalize_attaching_map(phi);
    out.doc["command"] = "normalize";
    out.doc["input"] = {{"shape", shape_json(sa, Mode::classifier)}, {"phi", to_string(phi)}};
    out.doc["result"] = {{"normal_form", to_string(r.normal_form)},
                         {"pairs", pairs_json(r.pairs)},
                         {"b_residue", r.b_residue}};
    out.doc["witness"] = to_string(r.witness.fold());
    out.doc["witness_inverse"] = to_string(r.witness.fold_inverse());
    out.line("normal form:      " + to_string(r.normal_form));
    for (size_t i = 0; i < r.pairs.size(); ++i)
        out.line("pair " + std::to_string(i + 1) + ":           alpha = " +
                 to_string(r.pairs[i].alpha) + ",  beta = " + to_string(r.pairs[i].beta));
    if (r.b_residue) out.line("note: sphere-local torsion picked up residue (n >= 5)");
    out.line("witness:          " + to_string(r.witness.fold()));
    return out.flush();
}

int run_classify(Output& out, const ShapeArgs& sa, const std::string& phi_text) {
    ShapePtr sh = make_shape(sa, Mode::classifier);
    Element phi = parse_element(phi_text, sh, 2 * sa.n - 1);
    CanonicalizeResult r = canonicalize(phi);
    Obstruction ob = obstruction_vector(r.label.normal_form);
    out.doc["command"] = "classify";
    out.doc["input"] = {{"shape", shape_json(sa, Mode::classifier)}, {"phi", to_string(phi)}};
    out.doc["result"] = {{"class", class_name(r.label.kind)},
                         {"k", r.label.k},
                         {"normal_form", to_string(r.label.normal_form)},
                         {"obstruction",
                          {{"has_nu", ob.has_nu}, {"has_eta", ob.has_eta}, {"alignment", ob.alignment}}}};
    out.doc["witness"] = to_string(r.witness.fold());
    out.doc["witness_inverse"] = to_string(r.witness.fold_inverse());
    out.line("class:            " + std::string(class_name(r.label.kind)) +
             "  (k = " + std::to_string(r.label.k) + ")");
    out.line("normal form:      " + to_string(r.label.normal_form));
    out.line("obstruction:      nu=" + std::to_string(ob.has_nu) +
             " eta2=" + std::to_string(ob.has_eta) + " align=" + std::to_string(ob.alignment));
    out.line("witness:          " + to_string(r.witness.fold()));
    return out.flush();
}

int run_equiv(Output& out, const ShapeArgs& sa, const std::string& phi_text,
              const std::string& psi_text, long budget) {
    ShapePtr sh = make_shape(sa, Mode::classifier);
    Element phi = parse_element(phi_text, sh, 2 * sa.n - 1);
    Element psi = parse_element(psi_text, sh, 2 * sa.n - 1);
    EquivalenceResult r = equivalent(phi, psi, budget);
    out.doc["command"] = "equiv";
    out.doc["input"] = {{"shape", shape_json(sa, Mode::classifier)},
                        {"phi", to_string(phi)},
                        {"psi", to_string(psi)},
                        {"budget", budget}};
    json res;
    res["verdict"] = verdict_str(r.verdict);
    if (r.verdict == Verdict::yes) res["negated"] = r.negated;
    if (!r.obstruction.empty()) res["obstruction"] = r.obstruction;
    if (r.nodes_explored > 0) res["nodes_explored"] = r.nodes_explored;
    out.doc["result"] = res;
    if (r.witness) out.doc["witness"] = to_string(*r.witness);
    out.line(std::string("verdict:          ") + verdict_str(r.verdict) +
             (r.verdict == Verdict::yes && r.negated ? "  (up to sign)" : ""));
    if (r.witness) out.line("witness:          " + to_string(*r.witness));
    if (!r.obstruction.empty()) out.line("obstruction:      " + r.obstruction);
    if (r.nodes_explored > 0)
        out.line("nodes explored:   " + std::to_string(r.nodes_explored));
    const int fr = out.flush();
    if (fr != 0) return fr;
    return r.verdict == Verdict::unknown ? 5 : 0;
}

int run_act(Output& out, const ShapeArgs& sa, bool splitter_mode, const std::string& map_text,
            const std::string& phi_text, int degree_hint) {
    const Mode mode = splitter_mode ? Mode::splitter : Mode::classifier;
    ShapePtr sh = make_shape(sa, mode);
    Element phi = degree_hint >= 0 ? parse_element(phi_text, sh, degree_hint)
                                   : parse_element(phi_text, sh);
    SelfMap f = parse_selfmap(map_text, sh);
    Element img = apply(f, phi);
    const bool eq = is_equivalence(f);
    out.doc["command"] = "act";
    out.doc["input"] = {{"shape", shape_json(sa, mode)},
                        {"map", to_string(f)},
                        {"phi", to_string(phi)}};
    out.doc["result"] = {{"image", to_string(img)}, {"map_is_equivalence", eq}};
    out.line("image:            " + to_string(img));
    out.line(std::string("map status:       ") +
             (eq ? "equivalence (all degree blocks unimodular)" : "not an equivalence"));
    return out.flush();
}

int run_basis(Output& out, const ShapeArgs& sa, bool splitter_mode, int degree, bool full) {
    const Mode mode = splitter_mode ? Mode::splitter : Mode::classifier;
    ShapePtr sh = make_shape(sa, mode);
    std::vector<Term> terms = degree_basis(sh, degree, full);
    out.doc["command"] = "basis";
    out.doc["input"] = {{"shape", shape_json(sa, mode)}, {"degree", degree}, {"full", full}};
    json arr = json::array();
    for (const Term& t : terms)
        arr.push_back({{"term", term_str(t)}, {"order", term_order(*sh, t)}});
    out.doc["result"] = {{"count", terms.size()}, {"terms", arr}};
    out.line("pi_" + std::to_string(degree) + " basis (" + std::to_string(terms.size()) +
             " terms; order 0 = infinite, -1 = unknown):");
    for (const Term& t : terms)
        out.line("  " + term_str(t) + "   (order " + std::to_string(term_order(*sh, t)) + ")");
    return out.flush();
}

int oracle_exit(Output& out, bool ok) {
    const int fr = out.flush();
    if (fr != 0) return fr;
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic homotopy calculus for attaching maps on sphere wedges"};
    app.require_subcommand(1);
    app.fallthrough();

    Output out;
    app.add_flag("--json", out.as_json, "emit a machine-readable JSON document");
    app.add_option("--out", out.path, "write output to a file instead of stdout");

    ShapeArgs sa;
    std::string phi_text, psi_text, map_text;
    long budget = 20000;
    int degree = 0, degree_hint = -1;
    bool splitter_mode = false, full_range = false;
    int trials = 1000, generators = 3, depth = 6;
    long node_cap = 200000;
    std::uint64_t seed = 1;

    CLI::App* c_split = app.add_subcommand(
        "split", "shear a splitter attaching map so the K2 summand splits off");
    add_common(c_split, sa, Mode::splitter);
    c_split->add_option("--phi", phi_text, "attaching element of degree 2n-1")->required();

    CLI::App* c_norm = app.add_subcommand(
        "normalize", "per-summand normal form of a classifier attaching map");
    add_common(c_norm, sa, Mode::classifier);
    c_norm->add_option("--phi", phi_text, "attaching element of degree 2n-1")->required();

    CLI::App* c_class = app.add_subcommand(
        "classify", "homotopy-type class of a classifier attaching map (n = 4)");
    add_common(c_class, sa, Mode::classifier);
    c_class->add_option("--phi", phi_text, "attaching element of degree 2n-1")->required();

    CLI::App* c_equiv = app.add_subcommand(
        "equiv", "decide phi ~ +-(f . psi) for a self-equivalence f");
    add_common(c_equiv, sa, Mode::classifier);
    c_equiv->add_option("--phi", phi_text, "first attaching element")->required();
    c_equiv->add_option("--psi", psi_text, "second attaching element")->required();
    c_equiv->add_option("--budget", budget, "search node budget")->capture_default_str();

    CLI::App* c_act = app.add_subcommand("act", "apply a self-map to an element");
    c_act->add_flag("--splitter", splitter_mode, "use the splitter wedge");
    c_act->add_option("--n", sa.n, "ambient parameter n")->capture_default_str();
    c_act->add_option("--k", sa.k, "classifier pair count")->capture_default_str();
    c_act->add_option("--r", sa.r, "splitter pair count")->capture_default_str();
    c_act->add_option("--l", sa.l, "splitter middle sphere count")->capture_default_str();
    c_act->add_option("--opaque", sa.opaque, "extra opaque K1 summand label (repeatable)");
    c_act->add_option("--atom", sa.atoms, "declare a composition class (see other commands)");
    c_act->add_option("--map", map_text, "self-map: i(d,i) -> elem; ...")->required();
    c_act->add_option("--phi", phi_text, "element to push forward")->required();
    c_act->add_option("--degree", degree_hint, "degree hint when phi is 0");

    CLI::App* c_basis = app.add_subcommand("basis", "canonical basis of a supported degree");
    c_basis->add_flag("--splitter", splitter_mode, "use the splitter wedge");
    c_basis->add_option("--n", sa.n, "ambient parameter n")->capture_default_str();
    c_basis->add_option("--k", sa.k, "classifier pair count")->capture_default_str();
    c_basis->add_option("--r", sa.r, "splitter pair count")->capture_default_str();
    c_basis->add_option("--l", sa.l, "splitter middle sphere count")->capture_default_str();
    c_basis->add_option("--opaque", sa.opaque, "extra opaque K1 summand label (repeatable)");
    c_basis->add_option("--atom", sa.atoms, "declare a composition class (see other commands)");
    c_basis->add_option("--degree", degree, "homotopy degree d")->required();
    c_basis->add_flag("--full", full_range, "include the top-sphere inclusions at (4,2,5)");

    CLI::App* c_oracle = app.add_subcommand(
        "oracle", "independent randomized checks of the calculus laws");
    c_oracle->require_subcommand(1);

    CLI::App* o_mlaw = c_oracle->add_subcommand(
        "mlaw", "check M_{F.phi} = Qf M_phi Qh^T on random classifier data");
    o_mlaw->add_option("--n", sa.n)->capture_default_str();
    o_mlaw->add_option("--k", sa.k)->capture_default_str();
    o_mlaw->add_option("--trials", trials)->capture_default_str();
    o_mlaw->add_option("--seed", seed)->capture_default_str();

    CLI::App* o_alaw = c_oracle->add_subcommand(
        "alaw", "check A_{f.phi} = A_phi + C_f B_phi on random splitter data");
    o_alaw->add_option("--n", sa.n)->capture_default_str();
    o_alaw->add_option("--r", sa.r)->capture_default_str();
    o_alaw->add_option("--l", sa.l)->capture_default_str();
    o_alaw->add_option("--trials", trials)->capture_default_str();
    o_alaw->add_option("--seed", seed)->capture_default_str();

    CLI::App* o_lie = c_oracle->add_subcommand(
        "lie", "compare all weight <= 3 brackets against a free graded Lie model");
    o_lie->add_option("--generators", generators, "generator count (1..4)")
        ->capture_default_str();

    CLI::App* o_orbit = c_oracle->add_subcommand(
        "orbit", "breadth-first orbit of phi under the torsion move set (n = 4)");
    o_orbit->add_option("--n", sa.n)->capture_default_str();
    o_orbit->add_option("--k", sa.k)->required();
    o_orbit->add_option("--phi", phi_text)->required();
    o_orbit->add_option("--depth", depth)->capture_default_str();
    o_orbit->add_option("--cap", node_cap, "node cap")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    out.doc["schema"] = "wedgecalc/1";

    try {
        if (*c_split) return run_split(out, sa, phi_text);
        if (*c_norm) return run_normalize(out, sa, phi_text);
        if (*c_class) return run_classify(out, sa, phi_text);
        if (*c_equiv) return run_equiv(out, sa, phi_text, psi_text, budget);
        if (*c_act) return run_act(out, sa, splitter_mode, map_text, phi_text, degree_hint);
        if (*c_basis) return run_basis(out, sa, splitter_mode, degree, full_range);
        if (*o_mlaw) {
            LawReport r = check_matrix_law_classifier(sa.n, sa.k, trials, seed);
            out.doc["command"] = "oracle.mlaw";
            out.doc["input"] = {{"n", sa.n}, {"k", sa.k}, {"trials", trials}, {"seed", seed}};
            out.doc["report"] = law_json(r);
            out.line("M-law: " + std::to_string(r.trials) + " trials, " +
                     std::to_string(r.failures) + " failures (seed " + std::to_string(r.seed) + ")");
            for (const std::string& s : r.failure_notes) out.line("  " + s);
            return oracle_exit(out, r.ok());
        }
        if (*o_alaw) {
            LawReport r = check_matrix_law_splitter(sa.n, sa.r, sa.l, trials, seed);
            out.doc["command"] = "oracle.alaw";
            out.doc["input"] = {
                {"n", sa.n}, {"r", sa.r}, {"l", sa.l}, {"trials", trials}, {"seed", seed}};
            out.doc["report"] = law_json(r);
            out.line("A-law: " + std::to_string(r.trials) + " trials, " +
                     std::to_string(r.failures) + " failures (seed " + std::to_string(r.seed) + ")");
            for (const std::string& s : r.failure_notes) out.line("  " + s);
            return oracle_exit(out, r.ok());
        }
        if (*o_lie) {
            FreeLieReport r = free_lie_model_check(generators);
            out.doc["command"] = "oracle.lie";
            out.doc["input"] = {{"generators", generators}};
            out.doc["report"] = {{"generators", r.generators},
                                 {"hall_basis_ok", r.hall_basis_ok},
                                 {"weight2_checked", r.weight2_checked},
                                 {"weight3_checked", r.weight3_checked},
                                 {"mismatches", r.mismatches}};
            if (!r.mismatch_notes.empty()) out.doc["report"]["notes"] = r.mismatch_notes;
            out.line("free Lie model, " + std::to_string(r.generators) + " generators:");
            out.line(std::string("  Hall basis check: ") + (r.hall_basis_ok ? "ok" : "FAILED"));
            out.line("  weight-2 brackets checked: " + std::to_string(r.weight2_checked));
            out.line("  weight-3 brackets checked: " + std::to_string(r.weight3_checked));
            out.line("  mismatches: " + std::to_string(r.mismatches));
            for (const std::string& s : r.mismatch_notes) out.line("  " + s);
            return oracle_exit(out, r.ok());
        }
        if (*o_orbit) {
            ShapePtr sh = make_shape(sa, Mode::classifier);
            Element phi = parse_element(phi_text, sh, 2 * sa.n - 1);
            OrbitReport r = orbit_bfs(phi, torsion_moves(sh), depth, node_cap);
            out.doc["command"] = "oracle.orbit";
            out.doc["input"] = {{"n", sa.n},
                                {"k", sa.k},
                                {"phi", to_string(phi)},
                                {"depth", depth},
                                {"cap", node_cap}};
            out.doc["report"] = {{"nodes", r.nodes},
                                 {"distinct", r.elements.size()},
                                 {"truncated", r.truncated}};
            out.line("orbit: " + std::to_string(r.nodes) + " nodes, " +
                     std::to_string(r.elements.size()) + " distinct elements" +
                     (r.truncated ? " (truncated at cap)" : ""));
            return oracle_exit(out, true);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 3;
    } catch (const MissingDataError& e) {
        std::cerr << "missing data: " << e.what() << "\n";
        return 3;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 4;
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 5;
    } catch (const CalcError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
