#pragma once

// JSON encodings for everything the command-line tool reads and writes:
// exact polynomials and principal equations, system descriptions, bound and
// disk reports, and the local-family objects (truncated series, annihilating
// operators, Smith data).
//
// Exact values travel as decimal strings ("num"/"den", or "p/q" entries), so
// parsing them back is bit-exact; floating-point values stay JSON numbers.
// A single system document must be all-exact or all-float; mixing the two is
// rejected. Encoders emit objects with alphabetically ordered keys, so a
// fixed value always serializes to the same bytes.

#include <string>
#include <variant>

#include <json.hpp>

#include "oscbound/bounds.hpp"
#include "oscbound/contour.hpp"
#include "oscbound/family.hpp"
#include "oscbound/models.hpp"
#include "oscbound/mpoly.hpp"
#include "oscbound/reduce.hpp"

namespace oscbound {

using Json = nlohmann::json;

// --- exact polynomials and principal equations ---

Json poly_to_json(const MPoly &p);
MPoly poly_from_json(const Json &j);

Json principal_to_json(const Principal<MPoly> &eq);
Principal<MPoly> principal_from_json(const Json &j);

Json degeneracy_to_json(const DegeneracyResult<MPoly> &d);

// --- systems ---

using SystemVariant = std::variant<PolySystem, FuchsSystem, HypergeomSystem>;

Json system_to_json(const PolySystem &s);
Json system_to_json(const FuchsSystem &s);
Json system_to_json(const HypergeomSystem &s);
// dispatches on "kind" and validates shapes; exact entries must be real
SystemVariant system_from_json(const Json &j);

// --- numeric values and reports ---

Json complex_to_json(cplx z);
cplx complex_from_json(const Json &j);

Json constants_to_json(const BoundConstants &bc);
BoundConstants constants_from_json(const Json &j);

// "log10_log10_value" is null when even the log-log value overflows a double
Json bound_to_json(const TowerBound &b);
Json disconjugacy_to_json(const DisconjugacyReport &r);
Json norm_profile_to_json(const NormProfile &p);
Json zero_bound_to_json(const ZeroBoundReport &r);
Json clearance_to_json(const ClearanceReport &r);
Json certificates_to_json(const CertificateReport &r);

Json path_to_json(const Path &path);
Json disk_report_to_json(const DiskReport &r);

// --- local families ---

Json series_to_json(const ZSeries &s);
ZSeries series_from_json(const Json &j);

Json series_mat_to_json(const SeriesMat &m);
SeriesMat series_mat_from_json(const Json &j);

Json smith_to_json(const SmithLocalForm &f);
SmithLocalForm smith_from_json(const Json &j);

Json diffop_to_json(const DiffOp &op);
DiffOp diffop_from_json(const Json &j);

Json annihilator_to_json(const Annihilator &an);
Json vanishing_to_json(const VanishingReport &r);
Json span_basis_to_json(const SpanBasis &b);

// --- files ---

Json load_json_file(const std::string &path);
// two-space indent plus a trailing newline
void write_json_file(const std::string &path, const Json &j);

}  // namespace oscbound
