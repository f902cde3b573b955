#pragma once

#include "qheat/convection.hpp"
#include "qheat/instability.hpp"
#include "qheat/modforms.hpp"
#include "qheat/qseries.hpp"
#include "qheat/rat_series.hpp"
#include "qheat/solutions.hpp"

#include <json.hpp>

#include <string>

namespace qheat {

using Json = nlohmann::json;

/// Canonical text: sorted keys, no whitespace variance, trailing newline.
std::string canonical_dump(const Json& j);

/// { "p", "N", "f", "valuation", "residue" } with the residue the decimal
/// canonical representative in [0, p^k) at full known precision (coordinates
/// comma-joined for f > 1).  Exact zero: residue "0", valuation null.
Json to_json(const PadicNum& v);
PadicNum padic_from_json(const CtxPtr& ctx, const Json& j);

/// { "p", "N", "f", "M", "lowest", "coeffs", "eff_prec" }; coeffs are decimal
/// canonical residues mod p^eff_prec, indexed lowest..M.
Json to_json(const QSeries& s);
QSeries qseries_from_json(const CtxPtr& ctx, const Json& j);

/// Exact integer/rational series: { "M", "lowest", "coeffs" } with decimal
/// strings ("n" or "n/d"); the fixture format.
Json to_json(const RatSeries& s);
RatSeries rat_series_from_json(const Json& j);

Json to_json(const ModularPoint& pt);
ModularPoint point_from_json(const CtxPtr& ctx, const Json& j);

Json to_json(const SolutionFamily& fam);
SolutionFamily family_from_json(const CtxPtr& ctx, const Json& j);

Json to_json(const ResidualReport& r);
Json to_json(const SolveCensus& c);
Json to_json(const InstabilityWitness& w);

}  // namespace qheat
