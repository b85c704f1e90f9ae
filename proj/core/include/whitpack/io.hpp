#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "whitpack/observables.hpp"
#include "whitpack/packet.hpp"
#include "whitpack/radiative.hpp"

namespace whitpack {

using ordered_json = nlohmann::ordered_json;

// full-precision decimal form (17 significant digits), round-trip safe
std::string format_full(double v);

// Generic CSV writer: optional "# key=value ..." preamble line, then the
// header row, then one row per sample. Comma-separated, LF line endings,
// full-precision numbers.
void write_csv(const std::string& path, const std::string& preamble,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

void write_json(const std::string& path, const ordered_json& doc);

std::string params_preamble(const PacketParams& params);
ordered_json params_json(const PacketParams& params);
ordered_json constants_json();

void write_field_csv(const std::string& path, const RadialField& field);
void write_envelope_csv(const std::string& path, const PacketParams& params,
                        const EnvelopeFit& fit);
void write_overlap_csv(const std::string& path, const PacketParams& params,
                       const OverlapSeries& series);
void write_nodes_csv(const std::string& path, const PacketParams& params,
                     const NodeTrack& track);
void write_decay_csv(const std::string& path, const DecayTable& table);

}  // namespace whitpack
