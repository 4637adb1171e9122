#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "qisurf/certify.hpp"

namespace qisurf {

using json = nlohmann::json;

json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

json decomposition_to_json(const CycleDecomposition& dec);
CycleDecomposition decomposition_from_json(const json& j, const Graph& g);

// Per-vertex arrays of neighbor ids in cyclic order.
json rotation_to_json(const RotationSystem& rs);
RotationSystem rotation_from_json(const json& j);

json faces_to_json(const FaceSet& fs);

json mesh_params_to_json(const MeshParams& p);
MeshParams mesh_params_from_json(const json& j);

json mesh_to_json(const SurfaceMesh& m);
SurfaceMesh mesh_from_json(const json& j);

json embedded_graph_to_json(const EmbeddedGraph& g);
EmbeddedGraph embedded_graph_from_json(const json& j, int mesh_nv);

json qi_report_to_json(const QiReport& r);
QiReport qi_report_from_json(const json& j);
std::string qi_report_csv_header();
std::string qi_report_csv_row(int g, std::uint64_t seed, double separation, const QiReport& r,
                              const std::string& certificate_kind);

json certificate_to_json(const ObstructionCertificate& c);
ObstructionCertificate certificate_from_json(const json& j);

// FNV-1a over the serialized text; stable across runs.
std::uint64_t fnv1a(const std::string& bytes);
std::string checksum_hex(const json& j);

void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);
json read_json(const std::string& path);
// Serializes with a "checksum" field inserted over the canonical content.
void write_json_checksummed(const std::string& path, json j);

}  // namespace qisurf
