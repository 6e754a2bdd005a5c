#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "discord/equilibrium.hpp"
#include "discord/network.hpp"
#include "discord/spectrum.hpp"

namespace discord {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// Provenance block embedded in every output file. Reruns with an identical
// manifest produce byte-identical outputs; set SOURCE_DATE_EPOCH to pin the
// timestamp.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // flag, value
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string timestamp;  // ISO-8601 UTC
};

/// UTC timestamp for manifests; honors SOURCE_DATE_EPOCH when set.
std::string current_timestamp();

json manifest_to_json(const RunManifest& manifest);

/// snprintf "%.17g": every double round-trips exactly.
std::string format_double(double v);

/// Serializes with 17-significant-digit floats (nlohmann's writer re-derives
/// shortest representations, so output files use this instead).
void dump_json(const json& value, std::ostream& os, int indent = 2);
std::string dump_json(const json& value, int indent = 2);

// Network JSON: {"n": n, "edges": [[i, j, w], ...]} with each undirected
// edge stored once, i < j. Extra keys (e.g. "manifest") are ignored on read.
json network_to_json(const Network& net);
Network network_from_json(const json& j);

/// CSV rows "i,j,w" with header, one undirected edge per row.
void write_network_csv(std::ostream& os, const Network& net,
                       const RunManifest& manifest);

// Spectrum JSON: {"eigenvalues": [...], "eigenvectors": [[u^1 entries], ...]}.
json spectrum_to_json(const Spectrum& spec);

/// Plot-ready rows (ell, lambda_ell, entries of u^ell), one per component.
void write_spectrum_csv(std::ostream& os, const Spectrum& spec,
                        const RunManifest& manifest);

/// Node-indexed profile from CSV: "node,value" rows; a header line and
/// '#' comments are skipped; a bare single column of values also parses.
Profile read_profile_csv(std::istream& is);
Profile read_profile_csv_file(const std::string& path);

/// Undirected edge list from CSV rows "i,j,w" (header and '#' comments
/// skipped; w defaults to 1 when the column is missing).
std::vector<WeightedEdge> read_edges_csv(std::istream& is);
std::vector<WeightedEdge> read_edges_csv_file(const std::string& path);

/// Equilibrium report: node, f, a_star, payoff.
void write_solve_csv(std::ostream& os, const Profile& f, const Profile& a_star,
                     const Profile& payoffs, const RunManifest& manifest);

Network load_network_file(const std::string& path);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace discord
