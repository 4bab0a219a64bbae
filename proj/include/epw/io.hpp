#pragma once

#include <iosfwd>

#include "epw/correspondences.hpp"

namespace epw {

/// Instance file format (versioned text).  Writing then reading is
/// byte-exact; the reader is strict about the version line.
void write_lag(std::ostream& os, const LagrangianInstance& inst);
LagrangianInstance read_lag(std::istream& is);
void save_lag(const std::string& path, const LagrangianInstance& inst);
LagrangianInstance load_lag(const std::string& path);

/// GM instance format: embeds the .lag content plus V5 (as the dual point
/// phi), v0, the W basis and the six quadric Gram matrices.  On load the
/// instance is rebuilt from (A, phi) and checked against the embedded data.
void write_gm(std::ostream& os, const GMInstance& gm);
GMInstance read_gm(std::istream& is);
void save_gm(const std::string& path, const GMInstance& gm);
GMInstance load_gm(const std::string& path);

std::string field_spec_string(const FieldSpec& fs);
FieldSpec parse_field_spec(const std::string& s);

/// Serialized coordinates: elements joined by commas.
std::string point_string(const Field& F, const std::vector<Fel>& v);
std::vector<Fel> parse_point(const Field& F, const std::string& s, size_t expect);

}  // namespace epw
