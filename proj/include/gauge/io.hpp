#pragma once

#include <string>

#include "gauge/dominance.hpp"
#include "gauge/duality.hpp"
#include "gauge/matrix.hpp"
#include "gauge/norms.hpp"
#include "gauge/snumbers.hpp"
#include "gauge/step_function.hpp"

namespace gauge {

// JSON schemas
//   step function   {"domain": <number or "inf">, "pieces": [[length, value], ...]}
//   matrix          {"n": k, "re": [[...]], "im": [[...]]}
//   simple operator {"terms": [[value, weight], ...]}
//   gauge family    {"family": [<step function>, ...]} or a bare array
// Matrices are also accepted as CSV: n rows of 2n columns, re/im interleaved.
// Schema and syntax problems raise parse_error with file/position context.

StepFunction step_from_json(const std::string& text, const std::string& where);
std::string step_to_json(const StepFunction& f);

ComplexMatrix matrix_from_json(const std::string& text, const std::string& where);
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_csv(const std::string& text, const std::string& where);
std::string matrix_to_csv(const ComplexMatrix& m);

SimpleOperator simple_from_json(const std::string& text, const std::string& where);
std::string simple_to_json(const SimpleOperator& op);

std::vector<StepFunction> family_from_json(const std::string& text,
                                           const std::string& where);

std::string curve_to_json(const SNumberCurve& mu);
std::string curve_to_csv(const SNumberCurve& mu);

std::string dual_estimate_to_json(const DualEstimate& est);
std::string dual_estimate_to_csv(const DualEstimate& est);

std::string dominance_report_to_json(const DominanceReport& rep);
std::string dominance_report_to_csv(const DominanceReport& rep);

// One of the three operand kinds, recognized by its schema.
struct Operand {
  enum class Kind { matrix, step, simple } kind;
  ComplexMatrix matrix;
  StepFunction step;
  SimpleOperator simple;

  SNumberCurve curve() const;
};

// Shortest decimal representation that parses back to the same double.
std::string format_number(double x);

std::string read_file(const std::string& path);
Operand load_operand(const std::string& path);
ComplexMatrix load_matrix(const std::string& path);
StepFunction load_step(const std::string& path);
SimpleOperator load_simple(const std::string& path);
std::vector<StepFunction> load_family(const std::string& path);

}  // namespace gauge
