#pragma once

#include <gmpxx.h>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pickleball/rational.hpp"

namespace pickleball {

// Published closed forms of the first-server advantage, evaluated directly
// from their coefficient tables. This module deliberately knows nothing
// about the chain pipeline: agreement between the two routes is the
// strongest transcription check either side has.
enum class ClosedFormId {
  SideOut11,           // advantage under side-out scoring to 11, full (x, y)
  SideOut15,           // advantage under side-out scoring to 15, full (x, y)
  ModifiedRally21Diag, // advantage under modified rally scoring to 21 on y = x
  Hybrid21Diag,        // advantage under hybrid rally scoring to 21 on y = x
};

// Integer coefficient of x^i y^j per line; univariate tables keep j = 0.
struct MonomialTerm {
  int i = 0;
  int j = 0;
  mpz_class coeff;
};

struct MonomialTable {
  std::vector<MonomialTerm> terms;
  mpz_class coefficient(int i, int j) const;  // 0 when absent
  mpz_class sum() const;                      // value at x = y = 1
  mpz_class abs_sum() const;
  int max_degree() const;
};

struct ClosedForm {
  ClosedFormId id;
  bool diagonal;            // univariate in x
  MonomialTable numerator;  // the big printed polynomial
  MonomialTable denominator;  // printed polynomial factor(s), expanded

  // Structural pieces applied around the tables:
  //   full forms:     -(x y)^prefactor_power * N(x,y)
  //                   / ((2 - x - y + x y)^bracket_power * D(x,y))
  //   modified rally: -(1 - 2x) * N(x) / D(x)
  //   hybrid:         N(x) / D(x)
  int prefactor_power = 0;
  int bracket_power = 0;
  int sign = 1;
  bool linear_prefactor = false;  // the (1 - 2x) factor
};

// Loads the coefficient tables for one form from `data_dir`. Throws
// std::runtime_error on missing or malformed files.
ClosedForm load_closed_form(ClosedFormId id, const std::filesystem::path& data_dir);

// Exact rational value at (x, y), Horner evaluation of numerator and
// denominator. Diagonal forms take x only; passing y to one (or omitting y
// for a full form) throws std::invalid_argument. Points must lie in [0,1]^2
// with a nonvanishing denominator, else std::domain_error.
Rational evaluate_closed_form(const ClosedForm& form, const Rational& x,
                              const std::optional<Rational>& y = std::nullopt);

// True iff numerator and denominator tables are (i,j) <-> (j,i) symmetric.
// Only meaningful for the two-variable forms; throws for diagonal ones.
bool coefficient_symmetry_check(const ClosedForm& form);

std::string closed_form_name(ClosedFormId id);
std::optional<ClosedFormId> closed_form_from_name(const std::string& name);

}  // namespace pickleball
