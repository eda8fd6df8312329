#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pjacobi/borg.hpp"
#include "pjacobi/connectivity.hpp"
#include "pjacobi/fdm.hpp"
#include "pjacobi/operator.hpp"
#include "pjacobi/spectral.hpp"

namespace pjacobi::io {

/// Malformed input file; message names the offending field.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Operator spec file (JSON): { "period": p, "a": [...], "b": [...], "c": [...] }
// plus optional "stencil": "first_order". Length mismatches are rejected with
// a message naming the field.
PeriodicJacobiOperator read_operator(const std::filesystem::path& path);
PeriodicJacobiOperator parse_operator(const std::string& text);
void write_operator(const PeriodicJacobiOperator& op,
                    const std::filesystem::path& path);
std::string format_operator(const PeriodicJacobiOperator& op);

// ODE spec file (JSON): { "order": "first" | "second_const_g1" |
// "second_general", "p": ..., "x0": ..., "g1": ..., "g2": ..., ["g3": ...] }.
// Coefficients are a number, {"samples": [...]}, or {"generator": {...}}.
// Returns any notices (e.g. "g3 ignored") via `notices`.
OdeProblem read_ode(const std::filesystem::path& path,
                    std::vector<std::string>* notices = nullptr);
OdeProblem parse_ode(const std::string& text,
                     std::vector<std::string>* notices = nullptr);

// Tabular exports (TSV with '#' header rows). Deterministic bytes.
void write_spectrum_table(const SpectrumSample& sample, std::ostream& out);
void write_field_table(const PseudoField& field, std::ostream& out);
void write_label_table(const RegionReport& report, std::ostream& out);
void write_certificates_table(const std::vector<BorgCertificate>& certs,
                              std::ostream& out);

// Structured reports (JSON, stable key order). Deterministic bytes.
std::string region_report_json(const RegionReport& report, bool with_labels = false);
std::string certificates_json(const std::vector<BorgCertificate>& certs);
std::string band_gap_json(const BandGapReport& report);

}  // namespace pjacobi::io
