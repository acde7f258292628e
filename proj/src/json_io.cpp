#include "qgt/json_io.hpp"

#include "qgt/errors.hpp"

#include <fstream>
#include <sstream>

namespace qgt {

namespace {

void want(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

std::string jstr(const json& j, const char* key, const char* where) {
    want(j.contains(key) && j[key].is_string(),
         std::string(where) + ": missing string field \"" + key + "\"");
    return j[key].get<std::string>();
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    if (s.find(',') != std::string::npos) {
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            size_t b = item.find_first_not_of(" \t");
            size_t e = item.find_last_not_of(" \t");
            out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
        }
    } else {
        for (char c : s) out.push_back(std::string(1, c));
    }
    return out;
}

} // namespace

FieldDescriptor field_from_string(const std::string& s) {
    if (s == "Q") return FieldDescriptor{FieldKind::Rationals, 0};
    std::string body;
    if (s.rfind("GF:", 0) == 0) body = s.substr(3);
    else if (s.rfind("GF(", 0) == 0 && s.back() == ')') body = s.substr(3, s.size() - 4);
    else throw ValidationError("unknown field \"" + s + "\" (expected Q or GF:p)");
    try {
        size_t used = 0;
        long long p = std::stoll(body, &used);
        want(used == body.size() && p >= 2, "bad prime in field \"" + s + "\"");
        return FieldDescriptor{FieldKind::Prime, p};
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("bad prime in field \"" + s + "\"");
    }
}

json quiver_to_json(const Quiver& q, const std::vector<std::vector<int>>* f_cycles) {
    json j;
    j["vertices"] = json::array();
    for (const auto& v : q.vertices) j["vertices"].push_back(v);
    j["arrows"] = json::array();
    for (const auto& a : q.arrows)
        j["arrows"].push_back(json{{"id", a.id}, {"src", q.vname(a.src)}, {"tgt", q.vname(a.tgt)}});
    if (f_cycles) {
        json f = json::array();
        for (const auto& cyc : *f_cycles) {
            json c = json::array();
            for (int a : cyc) c.push_back(q.aname(a));
            f.push_back(std::move(c));
        }
        j["f"] = std::move(f);
    }
    return j;
}

Quiver quiver_from_json(const json& j, std::optional<std::vector<std::vector<int>>>* f_out) {
    want(j.is_object() && j.contains("vertices") && j["vertices"].is_array() &&
             j.contains("arrows") && j["arrows"].is_array(),
         "quiver: expected object with \"vertices\" and \"arrows\" arrays");
    Quiver q;
    for (const auto& v : j["vertices"]) {
        want(v.is_string(), "quiver: vertex names must be strings");
        q.vertices.push_back(v.get<std::string>());
    }
    std::map<std::string, int> vidx;
    for (size_t i = 0; i < q.vertices.size(); ++i) {
        want(!vidx.count(q.vertices[i]), "quiver: duplicate vertex \"" + q.vertices[i] + "\"");
        vidx[q.vertices[i]] = int(i);
    }
    for (const auto& a : j["arrows"]) {
        Arrow ar;
        ar.id = jstr(a, "id", "quiver arrow");
        std::string s = jstr(a, "src", "quiver arrow"), t = jstr(a, "tgt", "quiver arrow");
        want(vidx.count(s), "quiver: arrow \"" + ar.id + "\" has unknown source \"" + s + "\"");
        want(vidx.count(t), "quiver: arrow \"" + ar.id + "\" has unknown target \"" + t + "\"");
        ar.src = vidx[s];
        ar.tgt = vidx[t];
        q.arrows.push_back(std::move(ar));
    }
    q.finalize();
    if (f_out) {
        *f_out = std::nullopt;
        if (j.contains("f")) {
            want(j["f"].is_array(), "quiver: \"f\" must be an array of cycles");
            std::vector<std::vector<int>> cycles;
            for (const auto& cyc : j["f"]) {
                want(cyc.is_array(), "quiver: each f-cycle must be an array of arrow names");
                std::vector<int> c;
                for (const auto& a : cyc) {
                    want(a.is_string(), "quiver: f-cycle entries must be arrow names");
                    c.push_back(q.arrow(a.get<std::string>()));
                }
                cycles.push_back(std::move(c));
            }
            *f_out = std::move(cycles);
        }
    }
    return q;
}

json surface_to_json(const Surface& s) {
    json j;
    j["edges"] = json::array();
    for (const auto& e : s.edges) j["edges"].push_back(e);
    j["triangles"] = json::array();
    for (const auto& t : s.triangles) {
        json tj;
        if (t.self_folded) {
            tj["kind"] = "self_folded";
            tj["folded"] = t.edges[0];
            tj["other"] = t.edges[2];
        } else {
            tj["kind"] = "ordinary";
            tj["edges"] = json::array({t.edges[0], t.edges[1], t.edges[2]});
            tj["orient"] = t.edges[0] + "," + t.edges[1] + "," + t.edges[2];
        }
        j["triangles"].push_back(std::move(tj));
    }
    j["boundary"] = json::array();
    for (const auto& e : s.boundary) j["boundary"].push_back(e);
    return j;
}

Surface surface_from_json(const json& j) {
    want(j.is_object() && j.contains("edges") && j["edges"].is_array() && j.contains("triangles") &&
             j["triangles"].is_array(),
         "surface: expected object with \"edges\" and \"triangles\" arrays");
    Surface s;
    for (const auto& e : j["edges"]) {
        want(e.is_string(), "surface: edge names must be strings");
        s.edges.push_back(e.get<std::string>());
    }
    for (const auto& tj : j["triangles"]) {
        Triangle t;
        std::string kind = tj.contains("kind") ? jstr(tj, "kind", "surface triangle") : "ordinary";
        if (kind == "self_folded") {
            t.self_folded = true;
            std::string folded = jstr(tj, "folded", "self-folded triangle");
            std::string other = jstr(tj, "other", "self-folded triangle");
            t.edges = {folded, folded, other};
        } else {
            want(kind == "ordinary", "surface: unknown triangle kind \"" + kind + "\"");
            std::vector<std::string> edges;
            if (tj.contains("orient") && tj["orient"].is_string())
                edges = split_names(tj["orient"].get<std::string>());
            else if (tj.contains("edges") && tj["edges"].is_array())
                for (const auto& e : tj["edges"]) {
                    want(e.is_string(), "surface: triangle edges must be strings");
                    edges.push_back(e.get<std::string>());
                }
            want(edges.size() == 3, "surface: ordinary triangle needs three edges");
            t.edges = std::move(edges);
        }
        s.triangles.push_back(std::move(t));
    }
    if (j.contains("boundary")) {
        want(j["boundary"].is_array(), "surface: \"boundary\" must be an array");
        for (const auto& e : j["boundary"]) {
            want(e.is_string(), "surface: boundary entries must be edge names");
            s.boundary.push_back(e.get<std::string>());
        }
    }
    return s;
}

json presentation_to_json(const Presentation& p) {
    Field F(p.field);
    json j;
    j["schema_version"] = 1;
    if (p.field.kind == FieldKind::Rationals) {
        j["field"] = "Q";
    } else {
        j["field"] = "GF";
        j["p"] = p.field.p;
    }
    j["quiver"] = quiver_to_json(p.quiver, p.f_cycles ? &*p.f_cycles : nullptr);
    j["relations"] = json::array();
    for (const auto& r : p.relations)
        j["relations"].push_back(path_expr_to_string(p.quiver, F, r));
    return j;
}

Presentation presentation_from_json(const json& j) {
    want(j.is_object() && j.contains("field") && j.contains("quiver") && j.contains("relations") &&
             j["relations"].is_array(),
         "presentation: expected object with \"field\", \"quiver\" and \"relations\"");
    Presentation p;
    std::string f = jstr(j, "field", "presentation");
    if (f == "GF") {
        want(j.contains("p") && j["p"].is_number_integer(),
             "presentation: field \"GF\" needs an integer \"p\"");
        p.field = FieldDescriptor{FieldKind::Prime, j["p"].get<long long>()};
    } else {
        p.field = field_from_string(f);
    }
    std::optional<std::vector<std::vector<int>>> fc;
    p.quiver = quiver_from_json(j["quiver"], &fc);
    p.f_cycles = std::move(fc);
    Field F(p.field);
    std::string text;
    for (const auto& r : j["relations"]) {
        want(r.is_string(), "presentation: relations must be strings");
        text += r.get<std::string>();
        text += "\n";
    }
    p.relations = parse_relations(text, p.quiver, F);
    return p;
}

json algebra_report_json(const FiniteDimAlgebra& A) {
    const Quiver& q = A.quiver();
    json j;
    j["schema_version"] = 1;
    j["field"] = field_to_string(A.field().descriptor());
    j["dimension"] = A.dimension();
    j["nilpotency"] = A.nilpotency_index();
    json vd = json::array();
    for (int v = 0; v < A.n_vertices(); ++v) vd.push_back(A.vertex_dim(v));
    j["vertex_dims"] = std::move(vd);

    const auto& layers = A.radical_layer_dims();
    size_t maxlen = 0;
    for (const auto& row : layers) maxlen = std::max(maxlen, row.size());
    json global = json::array();
    for (size_t l = 0; l < maxlen; ++l) {
        long long total = 0;
        for (const auto& row : layers)
            if (l < row.size()) total += row[l];
        global.push_back(total);
    }
    j["radical_layers"] = std::move(global);
    json by_vertex = json::array();
    for (const auto& row : layers) by_vertex.push_back(row);
    j["radical_layers_by_vertex"] = std::move(by_vertex);

    json cartan = json::array();
    for (const auto& row : A.cartan_matrix()) cartan.push_back(row);
    j["cartan"] = std::move(cartan);
    j["cartan_det"] = to_string_i128(A.cartan_determinant());

    json basis = json::array();
    for (int i = 0; i < A.dimension(); ++i) basis.push_back(A.basis_word_string(i));
    j["basis"] = std::move(basis);
    (void)q;
    return j;
}

json resolution_to_json(const FiniteDimAlgebra& A, const Resolution& r) {
    const Quiver& q = A.quiver();
    json j;
    j["schema_version"] = 1;
    j["vertex"] = q.vname(r.vertex);
    j["bound"] = r.bound;
    if (r.period) j["period"] = *r.period;
    else j["period"] = nullptr;
    j["steps"] = json::array();
    for (const auto& st : r.steps) {
        json sj;
        json cover = json::object();
        for (size_t v = 0; v < st.cover_multiplicities.size(); ++v)
            if (st.cover_multiplicities[v] > 0)
                cover[q.vname(int(v))] = st.cover_multiplicities[v];
        sj["cover"] = std::move(cover);
        sj["syzygy_dims"] = st.syzygy_dims;
        long long total = 0;
        for (int d : st.syzygy_dims) total += d;
        sj["syzygy_dim"] = total;
        j["steps"].push_back(std::move(sj));
    }
    return j;
}

json gqt_report_to_json(const FiniteDimAlgebra& A, const GqtReport& r) {
    const Quiver& q = A.quiver();
    Field F(A.field().descriptor());
    json j;
    j["schema_version"] = 1;
    j["field"] = r.field;
    j["two_regular"] = r.two_regular;
    j["connected"] = r.connected;
    j["dimension"] = r.dimension;
    j["vertex_dims"] = r.vertex_dims;
    json cartan = json::array();
    for (const auto& row : r.cartan) cartan.push_back(row);
    j["cartan"] = std::move(cartan);
    j["cartan_det"] = r.cartan_det;

    j["symmetric_form"] =
        json{{"witness_found", r.symmetric_witness},
             {"refuted", r.symmetric_refuted},
             {"detail", r.symmetric_detail}};

    json periods = json::array(), tubes = json::array();
    for (const auto& p : r.simple_periods) periods.push_back(p ? json(*p) : json(nullptr));
    for (const auto& t : r.tube_ranks) tubes.push_back(t ? json(*t) : json(nullptr));
    j["simple_periods"] = std::move(periods);
    j["tube_ranks"] = std::move(tubes);

    j["census"] = json{{"ran", r.census_ran},
                       {"dims_ok", r.census_dims_ok},
                       {"two_independent", r.census_two_independent},
                       {"propagation_inconsistencies", r.census_propagation_inconsistencies},
                       {"classes", r.census_classes}};

    json tri;
    tri["found"] = r.triangulation_found;
    if (r.f_cycles) {
        json f = json::array();
        for (const auto& cyc : *r.f_cycles) {
            json c = json::array();
            for (int a : cyc) c.push_back(q.aname(a));
            f.push_back(std::move(c));
        }
        tri["f"] = std::move(f);
    }
    j["triangulation"] = std::move(tri);

    j["family"] = r.family;
    if (r.fitted) {
        json w;
        json m = json::object(), c = json::object(), b = json::object();
        for (const auto& [rep, mv] : r.fitted->weights.m) m[q.aname(rep)] = mv;
        for (const auto& [rep, cv] : r.fitted->weights.c) c[q.aname(rep)] = F.to_string(cv);
        for (const auto& [v, bv] : r.fitted->weights.b) b[q.vname(v)] = F.to_string(bv);
        w["m"] = std::move(m);
        w["c"] = std::move(c);
        w["b"] = std::move(b);
        j["weights"] = std::move(w);
    }
    j["tame_quoted"] = r.family != "unknown";
    j["verdict"] = r.verdict;
    j["violations"] = r.violations;
    return j;
}

std::string json_dump(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const std::exception& e) {
        throw IoError("cannot parse " + path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const json& j) {
    save_text_file(path, json_dump(j));
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

} // namespace qgt
