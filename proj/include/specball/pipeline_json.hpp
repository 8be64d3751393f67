#pragma once

#include <string>

#include "specball/automorphism.hpp"
#include "specball/entire_poly.hpp"
#include "specball/matrix2.hpp"

namespace specball {

// Parse errors from the JSON surfaces are reported as this type so the CLI
// can map them to the usage exit code.
struct ParseError : Error {
    explicit ParseError(const std::string &msg) : Error(msg) {}
};

// Mat2 wire format: [[[re,im],[re,im]],[[re,im],[re,im]]] row-major.
Mat2 parse_mat2_json(const std::string &text);

// Coefficient list, ascending degree; entries are [re,im] pairs or plain
// real numbers.
EntirePoly parse_phi_json(const std::string &text);

// Pipeline: a JSON list of steps applied left-to-right.  Step shapes:
//   {"op":"transpose"}
//   {"op":"moebius","alpha":[re,im],"gamma":[re,im]}
//   {"op":"diag_twist","phi":[[re,im],...]}
//   {"op":"lower_twist","a":{"monomials":[{"i":..,"j":..,"k":..,"c":[re,im]},...]}}
//   {"op":"diag_conj","a":{"monomials":[...]}}      (optional "exp": true)
Automorphism parse_pipeline_json(const std::string &text);

} // namespace specball
