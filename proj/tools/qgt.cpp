#include "CLI11.hpp"

#include "qgt/families.hpp"
#include "qgt/json_io.hpp"

#include <iostream>
#include <sstream>

using namespace qgt;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t b = item.find_first_not_of(" \t");
        size_t e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    }
    if (out.empty()) out.push_back("");
    return out;
}

long long parse_int(const std::string& s, const std::string& what) {
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw ValidationError("bad integer for " + what + ": '" + s + "'");
        return v;
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("bad integer for " + what + ": '" + s + "'");
    }
}

TriangulationQuiver quiver_arg(const std::string& name_or_path) {
    for (const auto& n : families::family_names())
        if (n == name_or_path) return families::named_quiver(name_or_path);
    json j = load_json_file(name_or_path);
    std::optional<std::vector<std::vector<int>>> fc;
    Quiver q = quiver_from_json(j, &fc);
    if (!fc) throw ValidationError("quiver " + name_or_path + " carries no \"f\" cycles");
    return validate_triangulation(q, *fc);
}

WeightData weights_arg(const TriangulationQuiver& tq, const Field& F, const std::string& m_str,
                       const std::string& c_str, const std::string& b_str, bool deformed) {
    WeightData w;
    auto ms = split_list(m_str);
    auto cs = split_list(c_str);
    size_t k = tq.g_orbits.size();
    if (ms.size() != 1 && ms.size() != k)
        throw ValidationError("--m needs one value or one per g-orbit (" + std::to_string(k) + ")");
    if (cs.size() != 1 && cs.size() != k)
        throw ValidationError("--c needs one value or one per g-orbit (" + std::to_string(k) + ")");
    for (size_t i = 0; i < k; ++i) {
        int rep = tq.g_orbits[i][0];
        w.m[rep] = parse_int(ms[ms.size() == 1 ? 0 : i], "--m");
        w.c[rep] = F.parse(cs[cs.size() == 1 ? 0 : i]);
    }
    if (deformed) {
        auto bvs = border_vertices(tq);
        auto bs = split_list(b_str);
        if (bs.size() != 1 && bs.size() != bvs.size())
            throw ValidationError("--b needs one value or one per border vertex (" +
                                  std::to_string(bvs.size()) + ")");
        for (size_t i = 0; i < bvs.size(); ++i) {
            Scalar v = F.parse(bs[bs.size() == 1 ? 0 : i]);
            if (!v.is_zero()) w.b[bvs[i]] = v;
        }
    }
    validate_weights(tq, F, w);
    return w;
}

struct FamilyArgs {
    std::string family;
    std::string quiver = "markov";
    std::string m = "1";
    std::string c = "1";
    std::string b = "0";
    std::string lambda = "0";
    std::string field = "Q";
};

void add_family_options(CLI::App* cmd, FamilyArgs& fa, bool required) {
    auto* f = cmd->add_option("--family", fa.family,
                              "weighted | deformed | tetrahedral | markov");
    if (required) f->required();
    cmd->add_option("--quiver", fa.quiver, "built-in quiver name or quiver JSON path");
    cmd->add_option("--m", fa.m, "multiplicities (single value or per-orbit list)");
    cmd->add_option("--c", fa.c, "parameters (single value or per-orbit list)");
    cmd->add_option("--b", fa.b, "border deformation scalars (deformed family)");
    cmd->add_option("--lambda", fa.lambda, "deformation scalar (tetrahedral family)");
    cmd->add_option("--field", fa.field, "Q or GF:p (default Q)");
}

Presentation family_presentation(const FamilyArgs& fa) {
    FieldDescriptor fd = field_from_string(fa.field);
    Field F(fd);
    if (fa.family == "tetrahedral")
        return families::tetrahedral_presentation(fd, parse_int(fa.m, "--m"), F.parse(fa.lambda));
    std::string qname = fa.family == "markov" ? "markov" : fa.quiver;
    bool deformed = fa.family == "deformed";
    if (!deformed && fa.family != "weighted" && fa.family != "markov")
        throw ValidationError("unknown family '" + fa.family + "'");
    TriangulationQuiver tq = quiver_arg(qname);
    WeightData w = weights_arg(tq, F, fa.m, fa.c, fa.b, deformed);
    return deformed ? deformed_presentation(tq, fd, w) : weighted_presentation(tq, fd, w);
}

Surface surface_of_quiver(const TriangulationQuiver& tq) {
    const Quiver& q = tq.q;
    Surface s;
    s.edges = q.vertices;
    for (const auto& cyc : tq.f.cycles()) {
        if (cyc.size() == 1) {
            s.boundary.push_back(q.vname(q.src(cyc[0])));
            continue;
        }
        Triangle t;
        int loop_at = -1;
        for (size_t i = 0; i < cyc.size(); ++i)
            if (q.src(cyc[i]) == q.tgt(cyc[i])) loop_at = int(i);
        if (loop_at >= 0) {
            t.self_folded = true;
            const std::string& folded = q.vname(q.src(cyc[size_t(loop_at)]));
            const std::string& other = q.vname(q.tgt(cyc[size_t((loop_at + 1) % 3)]));
            t.edges = {folded, folded, other};
        } else {
            t.edges = {q.vname(q.src(cyc[0])), q.vname(q.src(cyc[1])), q.vname(q.src(cyc[2]))};
        }
        s.triangles.push_back(std::move(t));
    }
    return s;
}

std::string cell_report_line(const CellComplexReport& r) {
    std::ostringstream os;
    os << "euler_characteristic " << r.euler_characteristic << ", "
       << (r.orientable ? "orientable" : "non-orientable") << ", boundary components "
       << r.boundary_components;
    return os.str();
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty()) std::cout << text;
    else save_text_file(path, text);
}

std::string cover_string(const Quiver& q, const std::vector<int>& mults) {
    std::string out;
    for (size_t v = 0; v < mults.size(); ++v) {
        if (mults[v] == 0) continue;
        if (!out.empty()) out += " + ";
        if (mults[v] != 1) out += std::to_string(mults[v]) + "*";
        out += "P_" + q.vname(int(v));
    }
    return out.empty() ? "0" : out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"triangulation quiver algebra toolkit"};
    app.require_subcommand(1);

    // validate
    auto* cmd_validate = app.add_subcommand("validate", "check quiver/surface/presentation files");
    std::vector<std::string> validate_paths;
    cmd_validate->add_option("paths", validate_paths, "JSON files to check")->required();

    // generate
    auto* cmd_generate = app.add_subcommand("generate", "write a presentation for a family");
    FamilyArgs gen_args;
    std::string gen_output, gen_dsl;
    add_family_options(cmd_generate, gen_args, true);
    cmd_generate->add_option("--output", gen_output, "presentation JSON path (default stdout)");
    cmd_generate->add_option("--dsl", gen_dsl, "also write the relations as DSL text");

    // analyze
    auto* cmd_analyze = app.add_subcommand("analyze", "full structure report for an algebra");
    FamilyArgs an_args;
    std::string an_input, an_report;
    int an_bound = 8, an_jobs = 1;
    unsigned long long an_seed = 12345;
    add_family_options(cmd_analyze, an_args, false);
    cmd_analyze->add_option("--input", an_input, "presentation JSON path");
    cmd_analyze->add_option("--report", an_report, "report JSON path (default stdout)");
    cmd_analyze->add_option("--bound", an_bound, "syzygy period search bound")
        ->check(CLI::PositiveNumber);
    cmd_analyze->add_option("--seed", an_seed, "seed for randomized subroutines");
    cmd_analyze->add_option("--jobs", an_jobs, "worker threads")->check(CLI::PositiveNumber);

    // resolve
    auto* cmd_resolve = app.add_subcommand("resolve", "projective resolution of a simple module");
    FamilyArgs re_args;
    std::string re_input, re_vertex, re_output;
    int re_bound = 8, re_jobs = 1;
    add_family_options(cmd_resolve, re_args, false);
    cmd_resolve->add_option("--input", re_input, "presentation JSON path");
    cmd_resolve->add_option("--vertex", re_vertex, "vertex of the simple module (default first)");
    cmd_resolve->add_option("--bound", re_bound, "number of syzygy steps")
        ->check(CLI::PositiveNumber);
    cmd_resolve->add_option("--output", re_output, "trace JSON path");
    cmd_resolve->add_option("--jobs", re_jobs, "worker threads")->check(CLI::PositiveNumber);

    // surface
    auto* cmd_surface = app.add_subcommand("surface", "convert between surfaces and quivers");
    cmd_surface->require_subcommand(1);
    auto* cmd_s2q = cmd_surface->add_subcommand("to-quiver", "surface JSON -> quiver JSON");
    std::string s2q_input, s2q_output;
    cmd_s2q->add_option("input", s2q_input, "surface JSON path")->required();
    cmd_s2q->add_option("--output", s2q_output, "quiver JSON path (default stdout)");
    auto* cmd_q2s = cmd_surface->add_subcommand("from-quiver", "quiver JSON -> surface JSON");
    std::string q2s_input, q2s_output;
    cmd_q2s->add_option("input", q2s_input, "quiver JSON path (with f)")->required();
    cmd_q2s->add_option("--output", q2s_output, "surface JSON path (default none)");

    // export-dot
    auto* cmd_dot = app.add_subcommand("export-dot", "GraphViz view of a quiver");
    std::string dot_input, dot_output;
    cmd_dot->add_option("input", dot_input, "quiver or presentation JSON path")->required();
    cmd_dot->add_option("--output", dot_output, "dot file path (default stdout)");

    try {
        app.parse(argc, argv);

        if (*cmd_validate) {
            for (const auto& path : validate_paths) {
                json j = load_json_file(path);
                std::string kind;
                if (j.is_object() && j.contains("relations")) {
                    Presentation p = presentation_from_json(j);
                    validate_presentation(p);
                    if (p.f_cycles) validate_triangulation(p.quiver, *p.f_cycles);
                    kind = "presentation";
                } else if (j.is_object() && j.contains("triangles")) {
                    Surface s = surface_from_json(j);
                    SurfaceCheck chk = validate_surface(s);
                    if (!chk.ok) {
                        std::string msg;
                        for (const auto& pr : chk.problems) msg += (msg.empty() ? "" : "; ") + pr;
                        throw ValidationError(path + ": " + msg);
                    }
                    quiver_of_surface(s);
                    kind = "surface";
                } else {
                    std::optional<std::vector<std::vector<int>>> fc;
                    Quiver q = quiver_from_json(j, &fc);
                    QuiverCheck chk = validate_quiver(q);
                    if (!chk.ok) {
                        std::string msg;
                        for (const auto& pr : chk.problems) msg += (msg.empty() ? "" : "; ") + pr;
                        throw ValidationError(path + ": " + msg);
                    }
                    if (fc) {
                        validate_triangulation(q, *fc);
                        kind = "triangulation quiver";
                    } else {
                        kind = "quiver";
                    }
                }
                std::cout << "OK " << path << " (" << kind << ")\n";
            }
        } else if (*cmd_generate) {
            Presentation p = family_presentation(gen_args);
            validate_presentation(p);
            json j = presentation_to_json(p);
            write_or_print(gen_output, json_dump(j));
            if (!gen_dsl.empty())
                save_text_file(gen_dsl,
                               serialize_relations(p.quiver, Field(p.field), p.relations));
        } else if (*cmd_analyze) {
            Presentation p = an_input.empty() ? family_presentation(an_args)
                                              : presentation_from_json(load_json_file(an_input));
            if (an_input.empty() && an_args.family.empty())
                throw ValidationError("analyze needs --input or --family");
            AlgebraOptions opt;
            opt.jobs = an_jobs;
            FiniteDimAlgebra A = FiniteDimAlgebra::build(p, opt);
            GqtReport rep = gqt_report(A, an_bound, 32, an_seed);
            json j = gqt_report_to_json(A, rep);
            if (an_report.empty()) {
                std::cout << json_dump(j);
            } else {
                save_json_file(an_report, j);
                std::cout << "verdict: " << rep.verdict << "\n";
            }
        } else if (*cmd_resolve) {
            Presentation p = re_input.empty() ? family_presentation(re_args)
                                              : presentation_from_json(load_json_file(re_input));
            if (re_input.empty() && re_args.family.empty())
                throw ValidationError("resolve needs --input or --family");
            AlgebraOptions opt;
            opt.jobs = re_jobs;
            FiniteDimAlgebra A = FiniteDimAlgebra::build(p, opt);
            const Quiver& q = A.quiver();
            int v = re_vertex.empty() ? 0 : q.vertex(re_vertex);
            Resolution r = resolve_simple(A, v, re_bound);
            std::cout << "simple module at vertex " << q.vname(v) << "\n";
            for (size_t k = 0; k < r.steps.size(); ++k) {
                const auto& st = r.steps[k];
                long long total = 0;
                for (int d : st.syzygy_dims) total += d;
                std::cout << "step " << (k + 1) << ": cover " << cover_string(q, st.cover_multiplicities)
                          << " -> syzygy dims [";
                for (size_t i = 0; i < st.syzygy_dims.size(); ++i)
                    std::cout << (i ? "," : "") << st.syzygy_dims[i];
                std::cout << "] (total " << total << ")\n";
            }
            if (r.period) std::cout << "period: " << *r.period << "\n";
            else std::cout << "period: none within bound " << r.bound << "\n";
            if (!re_output.empty()) save_json_file(re_output, resolution_to_json(A, r));
        } else if (*cmd_s2q) {
            Surface s = surface_from_json(load_json_file(s2q_input));
            SurfaceCheck chk = validate_surface(s);
            if (!chk.ok) {
                std::string msg;
                for (const auto& pr : chk.problems) msg += (msg.empty() ? "" : "; ") + pr;
                throw ValidationError(s2q_input + ": " + msg);
            }
            TriangulationQuiver tq = quiver_of_surface(s);
            auto cycles = tq.f.cycles();
            write_or_print(s2q_output, json_dump(quiver_to_json(tq.q, &cycles)));
            if (!s2q_output.empty())
                std::cout << cell_report_line(cell_complex_of_surface(s)) << "\n";
        } else if (*cmd_q2s) {
            json j = load_json_file(q2s_input);
            std::optional<std::vector<std::vector<int>>> fc;
            Quiver q = quiver_from_json(j.is_object() && j.contains("quiver") ? j["quiver"] : j,
                                        &fc);
            if (!fc) throw ValidationError(q2s_input + " carries no \"f\" cycles");
            TriangulationQuiver tq = validate_triangulation(q, *fc);
            CellComplexReport rep = cell_complex_of_quiver(tq);
            Surface s = surface_of_quiver(tq);
            SurfaceCheck chk = validate_surface(s);
            if (chk.ok) {
                CellComplexReport cross = cell_complex_of_surface(s);
                if (cross.euler_characteristic != rep.euler_characteristic ||
                    cross.orientable != rep.orientable ||
                    cross.boundary_components != rep.boundary_components)
                    throw ValidationError("internal: surface/quiver cell complexes disagree");
            }
            std::cout << cell_report_line(rep) << "\n";
            if (!q2s_output.empty()) save_json_file(q2s_output, surface_to_json(s));
        } else if (*cmd_dot) {
            json j = load_json_file(dot_input);
            std::optional<std::vector<std::vector<int>>> fc;
            Quiver q;
            if (j.is_object() && j.contains("relations")) {
                Presentation p = presentation_from_json(j);
                q = p.quiver;
                fc = p.f_cycles;
            } else {
                q = quiver_from_json(j.is_object() && j.contains("quiver") ? j["quiver"] : j, &fc);
            }
            write_or_print(dot_output, export_dot(q, fc ? &*fc : nullptr));
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
