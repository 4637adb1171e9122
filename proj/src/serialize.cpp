#include "qisurf/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qisurf {

json graph_to_json(const Graph& g) {
    json j;
    j["n"] = g.n;
    json edges = json::array();
    for (auto [u, v] : g.edges) edges.push_back(json::array({u, v}));
    j["edges"] = std::move(edges);
    return j;
}

Graph graph_from_json(const json& j) {
    Graph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    g.sort_adjacency();
    g.validate();
    return g;
}

json decomposition_to_json(const CycleDecomposition& dec) {
    json j;
    j["cycles"] = dec.cycles;
    return j;
}

CycleDecomposition decomposition_from_json(const json& j, const Graph& g) {
    CycleDecomposition dec;
    dec.cycles = j.at("cycles").get<std::vector<std::vector<int>>>();
    dec.vertex_cycles.assign(g.n, {-1, -1});
    for (std::size_t c = 0; c < dec.cycles.size(); ++c)
        for (int v : dec.cycles[c]) {
            auto& pr = dec.vertex_cycles[v];
            if (pr.first == -1) pr.first = static_cast<int>(c);
            else if (pr.second == -1) pr.second = static_cast<int>(c);
            else throw Error("decomposition_from_json: vertex on more than two cycles");
        }
    return dec;
}

json rotation_to_json(const RotationSystem& rs) {
    json j;
    j["graph"] = graph_to_json(rs.graph);
    json rot = json::array();
    for (int v = 0; v < rs.graph.n; ++v) {
        json order = json::array();
        for (int d : rs.rot[v]) order.push_back(rs.dart_head(d));
        rot.push_back(std::move(order));
    }
    j["rotations"] = std::move(rot);
    return j;
}

RotationSystem rotation_from_json(const json& j) {
    RotationSystem rs;
    rs.graph = graph_from_json(j.at("graph"));
    rs.rot.assign(rs.graph.n, {});
    const auto& rot = j.at("rotations");
    for (int v = 0; v < rs.graph.n; ++v) {
        for (const auto& nb : rot.at(v)) {
            int w = nb.get<int>();
            int e = rs.graph.edge_index(v, w);
            if (e < 0) throw Error("rotation_from_json: neighbor is not adjacent");
            rs.rot[v].push_back(2 * e + (rs.graph.edges[e].first == v ? 0 : 1));
        }
    }
    rs.validate();
    return rs;
}

json faces_to_json(const FaceSet& fs) {
    json j;
    j["faces"] = fs.faces;
    return j;
}

json mesh_params_to_json(const MeshParams& p) {
    return json{{"epsilon", p.epsilon}, {"K", p.K},       {"M", p.M},
                {"strip_width", p.strip_width}, {"step", p.step}, {"face_depth", p.face_depth}};
}

MeshParams mesh_params_from_json(const json& j) {
    MeshParams p;
    p.epsilon = j.at("epsilon").get<double>();
    p.K = j.at("K").get<double>();
    p.M = j.at("M").get<double>();
    p.strip_width = j.at("strip_width").get<int>();
    p.step = j.at("step").get<double>();
    p.face_depth = j.at("face_depth").get<double>();
    return p;
}

json mesh_to_json(const SurfaceMesh& m) {
    json j;
    j["nv"] = m.nv;
    json edges = json::array();
    for (std::size_t e = 0; e < m.edges.size(); ++e)
        edges.push_back(json::array({m.edges[e].first, m.edges[e].second, m.weights[e]}));
    j["edges"] = std::move(edges);
    j["triangles"] = m.triangles;
    json vt = json::array();
    for (int v = 0; v < m.nv; ++v) {
        vt.push_back(json::array({static_cast<int>(m.region_kind[v]), m.region_id[v],
                                  static_cast<int>(m.within_d[v]), static_cast<int>(m.on_boundary_d[v]),
                                  static_cast<int>(m.on_rho[v]), m.owner[v]}));
    }
    j["vertices"] = std::move(vt);
    j["anchors"] = m.anchor;
    j["edge_center_path"] = m.edge_center_path;
    j["rho_columns"] = m.rho_columns;
    j["realized_edge_length"] = m.realized_edge_length;
    j["f_graph"] = graph_to_json(m.f_graph);
    j["params"] = mesh_params_to_json(m.params);
    j["embedding_faces"] = m.embedding_faces;
    j["genus"] = m.genus;
    return j;
}

SurfaceMesh mesh_from_json(const json& j) {
    SurfaceMesh m;
    m.nv = j.at("nv").get<int>();
    m.adj.assign(m.nv, {});
    for (const auto& e : j.at("edges")) {
        m.add_mesh_edge(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>());
    }
    for (const auto& t : j.at("triangles"))
        m.triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    m.region_kind.resize(m.nv);
    m.region_id.resize(m.nv);
    m.within_d.resize(m.nv);
    m.on_boundary_d.resize(m.nv);
    m.on_rho.resize(m.nv);
    m.owner.resize(m.nv);
    const auto& vt = j.at("vertices");
    for (int v = 0; v < m.nv; ++v) {
        const auto& row = vt.at(v);
        m.region_kind[v] = static_cast<RegionKind>(row.at(0).get<int>());
        m.region_id[v] = row.at(1).get<int>();
        m.within_d[v] = static_cast<char>(row.at(2).get<int>());
        m.on_boundary_d[v] = static_cast<char>(row.at(3).get<int>());
        m.on_rho[v] = static_cast<char>(row.at(4).get<int>());
        m.owner[v] = row.at(5).get<int>();
    }
    m.anchor = j.at("anchors").get<std::vector<int>>();
    m.edge_center_path = j.at("edge_center_path").get<std::vector<std::vector<int>>>();
    m.rho_columns = j.at("rho_columns").get<std::vector<std::vector<int>>>();
    m.realized_edge_length = j.at("realized_edge_length").get<std::vector<double>>();
    m.f_graph = graph_from_json(j.at("f_graph"));
    m.params = mesh_params_from_json(j.at("params"));
    m.embedding_faces = j.at("embedding_faces").get<int>();
    m.genus = j.at("genus").get<int>();
    return m;
}

json embedded_graph_to_json(const EmbeddedGraph& g) {
    json j;
    j["skeleton_vertices"] = g.skel_vertices;
    json edges = json::array();
    for (auto [a, b] : g.skel_edges) edges.push_back(json::array({a, b}));
    j["skeleton_edges"] = std::move(edges);
    j["routes"] = g.routes;
    j["separation"] = g.separation;
    return j;
}

EmbeddedGraph embedded_graph_from_json(const json& j, int mesh_nv) {
    EmbeddedGraph g;
    g.skel_vertices = j.at("skeleton_vertices").get<std::vector<int>>();
    for (const auto& e : j.at("skeleton_edges"))
        g.skel_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    g.routes = j.at("routes").get<std::vector<std::vector<int>>>();
    g.separation = j.at("separation").get<double>();
    g.build_index(mesh_nv);
    return g;
}

json qi_report_to_json(const QiReport& r) {
    json j;
    j["M"] = r.M_fixed;
    j["A_lower"] = r.A_lower;
    j["A_upper_ineq"] = r.A_upper_ineq;
    j["A_density"] = r.A_density;
    j["A_min"] = r.A_min;
    j["plan"] = r.plan;
    j["pairs_evaluated"] = r.pairs_evaluated;
    j["lower_witness"] = json::array({r.lower_witness.skel_u, r.lower_witness.skel_v,
                                      r.lower_witness.d_mesh, r.lower_witness.d_skel});
    j["upper_witness"] = json::array({r.upper_witness.skel_u, r.upper_witness.skel_v,
                                      r.upper_witness.d_mesh, r.upper_witness.d_skel});
    j["density_witness_vertex"] = r.density_witness_vertex;
    return j;
}

QiReport qi_report_from_json(const json& j) {
    QiReport r;
    r.M_fixed = j.at("M").get<double>();
    r.A_lower = j.at("A_lower").get<double>();
    r.A_upper_ineq = j.at("A_upper_ineq").get<double>();
    r.A_density = j.at("A_density").get<double>();
    r.A_min = j.at("A_min").get<double>();
    r.plan = j.at("plan").get<std::string>();
    r.pairs_evaluated = j.at("pairs_evaluated").get<long long>();
    const auto& lw = j.at("lower_witness");
    r.lower_witness = {lw.at(0).get<int>(), lw.at(1).get<int>(), lw.at(2).get<double>(),
                       lw.at(3).get<int>(), 0.0};
    const auto& uw = j.at("upper_witness");
    r.upper_witness = {uw.at(0).get<int>(), uw.at(1).get<int>(), uw.at(2).get<double>(),
                       uw.at(3).get<int>(), 0.0};
    r.density_witness_vertex = j.at("density_witness_vertex").get<int>();
    return r;
}

std::string qi_report_csv_header() {
    return "g,seed,separation,M,A_lower,A_upper_ineq,A_density,A_min,certificate";
}

namespace {
std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}
}  // namespace

std::string qi_report_csv_row(int g, std::uint64_t seed, double separation, const QiReport& r,
                              const std::string& certificate_kind) {
    std::ostringstream os;
    os << g << ',' << seed << ',' << fmt_double(separation) << ',' << fmt_double(r.M_fixed) << ','
       << fmt_double(r.A_lower) << ',' << fmt_double(r.A_upper_ineq) << ','
       << fmt_double(r.A_density) << ',' << fmt_double(r.A_min) << ',' << certificate_kind;
    return os.str();
}

json certificate_to_json(const ObstructionCertificate& c) {
    json j;
    j["kind"] = ObstructionCertificate::kind_name(c.kind);
    j["reason"] = c.reason;
    j["claim"] = json{{"M", c.M}, {"A", c.A}};
    j["ladder_R"] = c.ladder_R;
    j["epsilon"] = c.epsilon;
    switch (c.kind) {
        case ObstructionCertificate::Kind::DensityViolation:
            j["witness"] = json{{"mesh_vertex", c.density_mesh_vertex},
                                {"distance", c.density_distance},
                                {"bound", c.density_bound}};
            break;
        case ObstructionCertificate::Kind::LegViolation:
            j["witness"] = json{{"cycle", c.leg_cycle},       {"leg", c.leg_index},
                                {"from_skel", c.leg_from},    {"to_skel", c.leg_to},
                                {"mesh_distance", c.leg_mesh_distance},
                                {"skel_distance", c.leg_skel_distance},
                                {"bound", c.leg_bound}};
            break;
        case ObstructionCertificate::Kind::WalkTooLong:
            j["witness"] = json{{"cycle", c.walk_cycle}, {"length", c.walk_length}, {"bound", c.walk_bound}};
            break;
        case ObstructionCertificate::Kind::ContradictionWitness:
            j["witness"] = json{{"cycle", c.witness_cycle},
                                {"walk_pos", c.witness_walk_pos},
                                {"u_skel", c.witness_u_skel},
                                {"v", c.witness_v},
                                {"z_mesh", c.witness_z_mesh},
                                {"tree_certified", c.tree_certified},
                                {"gamma1", c.gamma1},
                                {"gamma2", c.gamma2}};
            break;
        default:
            break;
    }
    return j;
}

ObstructionCertificate certificate_from_json(const json& j) {
    ObstructionCertificate c;
    std::string kind = j.at("kind").get<std::string>();
    using Kind = ObstructionCertificate::Kind;
    if (kind == "ContradictionWitness") c.kind = Kind::ContradictionWitness;
    else if (kind == "DensityViolation") c.kind = Kind::DensityViolation;
    else if (kind == "LegViolation") c.kind = Kind::LegViolation;
    else if (kind == "WalkTooLong") c.kind = Kind::WalkTooLong;
    else if (kind == "OutOfTheoremRange") c.kind = Kind::OutOfTheoremRange;
    else if (kind == "JordanFailure") c.kind = Kind::JordanFailure;
    else if (kind == "DiscFailure") c.kind = Kind::DiscFailure;
    else throw Error("certificate_from_json: unknown kind " + kind);
    c.reason = j.at("reason").get<std::string>();
    c.M = j.at("claim").at("M").get<double>();
    c.A = j.at("claim").at("A").get<double>();
    c.ladder_R = j.at("ladder_R").get<double>();
    c.epsilon = j.at("epsilon").get<double>();
    if (j.contains("witness")) {
        const auto& w = j.at("witness");
        switch (c.kind) {
            case Kind::DensityViolation:
                c.density_mesh_vertex = w.at("mesh_vertex").get<int>();
                c.density_distance = w.at("distance").get<double>();
                c.density_bound = w.at("bound").get<double>();
                break;
            case Kind::LegViolation:
                c.leg_cycle = w.at("cycle").get<int>();
                c.leg_index = w.at("leg").get<int>();
                c.leg_from = w.at("from_skel").get<int>();
                c.leg_to = w.at("to_skel").get<int>();
                c.leg_mesh_distance = w.at("mesh_distance").get<double>();
                c.leg_skel_distance = w.at("skel_distance").get<long long>();
                c.leg_bound = w.at("bound").get<double>();
                break;
            case Kind::WalkTooLong:
                c.walk_cycle = w.at("cycle").get<int>();
                c.walk_length = w.at("length").get<long long>();
                c.walk_bound = w.at("bound").get<double>();
                break;
            case Kind::ContradictionWitness:
                c.witness_cycle = w.at("cycle").get<int>();
                c.witness_walk_pos = w.at("walk_pos").get<int>();
                c.witness_u_skel = w.at("u_skel").get<int>();
                c.witness_v = w.at("v").get<int>();
                c.witness_z_mesh = w.at("z_mesh").get<int>();
                c.tree_certified = w.at("tree_certified").get<bool>();
                c.gamma1 = w.at("gamma1").get<std::vector<int>>();
                c.gamma2 = w.at("gamma2").get<std::vector<int>>();
                break;
            default:
                break;
        }
    }
    return c;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

std::string checksum_hex(const json& j) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(j.dump())));
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("write_file_atomic: cannot open " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("read_file: cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json read_json(const std::string& path) { return json::parse(read_file(path)); }

void write_json_checksummed(const std::string& path, json j) {
    j["checksum"] = checksum_hex(j);
    write_file_atomic(path, j.dump(1) + "\n");
}

}  // namespace qisurf
