#ifndef CARNOT_JSONIO_HPP
#define CARNOT_JSONIO_HPP

#include "carnot/harness.hpp"
#include "carnot/taylor.hpp"

#include <json.hpp>

#include <string>

namespace carnot {

using Json = nlohmann::ordered_json;

/// Polynomials serialize as ordered term lists
/// [{"coeff": "p/q", "exponents": [...]}, ...] in canonical term order.
Json poly_to_json(const Poly& p);
Json poly_to_json(const PolyD& p);

Json field_to_json(const VectorField& f);

Json taylor_to_json(const TaylorResult<Rational>& t, const VarSet& vars);
Json taylor_to_json(const TaylorResult<double>& t, const VarSet& vars);

Json remainder_report_to_json(const RemainderReport& r);
Json sup_transfer_report_to_json(const SupTransferReport& r);
Json probe_report_to_json(const ProbeReport& r);
Json harmonic_report_to_json(const HarmonicReport& r);

/// Canonical machine envelope: {command, inputs, results, pass, meta}.
Json envelope(const std::string& command, Json inputs, Json results, bool pass,
              Json extra_meta);

std::string format_double(double v);

}  // namespace carnot

#endif
