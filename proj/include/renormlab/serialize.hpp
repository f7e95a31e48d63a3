#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "renormlab/douady.hpp"
#include "renormlab/nest.hpp"
#include "renormlab/parabolic.hpp"
#include "renormlab/renorm.hpp"
#include "renormlab/sequence.hpp"
#include "renormlab/solver.hpp"

namespace renormlab {

inline constexpr const char* kSchemaVersion = "1";

// 17 significant digits.
std::string decimal17(ext x);

// Pretty-printed JSON documents; every document carries "schema" and "version".
std::string to_json(const ReturnTypeSequence& seq);
std::string to_json(const PrincipalNest& nest, const ReturnTypeSequence& seq);
std::string to_json(const ParabolicChart& chart);
std::string to_json(const DouadyChart& chart);
std::string to_json(const Per3Report& report);
// Single line, for streaming one record per stage.
std::string to_json_line(const RenormDiagnostics& d);

std::string centers_csv_header();
void write_centers_csv(std::ostream& out, const std::string& label, const std::vector<Sigma3Center>& rows);

std::string fatou_csv_header();
void write_fatou_csv(std::ostream& out, const std::vector<FatouSample>& rows);

}  // namespace renormlab
