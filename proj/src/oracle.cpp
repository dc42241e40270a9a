#include "pickleball/oracle.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace pickleball {

namespace {

MonomialTable read_table(const std::filesystem::path& path, bool bivariate) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient table " + path.string());
  MonomialTable table;
  std::string line;
  int line_no = 0;
  std::map<std::pair<int, int>, bool> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    MonomialTerm term;
    std::string coeff_text;
    bool ok = bivariate ? static_cast<bool>(row >> term.i >> term.j >> coeff_text)
                        : static_cast<bool>(row >> term.i >> coeff_text);
    std::string trailing;
    if (!ok || term.i < 0 || term.j < 0 || (row >> trailing))
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed monomial line");
    try {
      term.coeff = mpz_class(coeff_text, 10);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad coefficient");
    }
    if (seen.emplace(std::make_pair(term.i, term.j), true).second == false)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": duplicate monomial");
    table.terms.push_back(std::move(term));
  }
  if (table.terms.empty()) throw std::runtime_error(path.string() + ": empty coefficient table");
  return table;
}

// Dense coefficient grid c[i][j] for Horner evaluation.
std::vector<std::vector<mpz_class>> densify(const MonomialTable& t) {
  int max_i = 0, max_j = 0;
  for (const auto& term : t.terms) {
    max_i = std::max(max_i, term.i);
    max_j = std::max(max_j, term.j);
  }
  std::vector<std::vector<mpz_class>> c(max_i + 1, std::vector<mpz_class>(max_j + 1, mpz_class(0)));
  for (const auto& term : t.terms) c[term.i][term.j] = term.coeff;
  return c;
}

// Horner in y, with each y-coefficient itself evaluated by Horner in x.
Rational horner_xy(const MonomialTable& t, const Rational& x, const Rational& y) {
  auto c = densify(t);
  const std::size_t max_i = c.size() - 1;
  const std::size_t max_j = c[0].size() - 1;
  Rational acc = 0;
  for (std::size_t j = max_j + 1; j-- > 0;) {
    Rational col = 0;
    for (std::size_t i = max_i + 1; i-- > 0;) col = col * x + c[i][j];
    acc = acc * y + col;
  }
  return acc;
}

Rational horner_x(const MonomialTable& t, const Rational& x) {
  auto c = densify(t);
  Rational acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i][0];
  return acc;
}

std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

MonomialTable univariate_table(const std::vector<long>& coeffs) {
  MonomialTable t;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) t.terms.push_back(MonomialTerm{static_cast<int>(i), 0, mpz_class(coeffs[i])});
  return t;
}

Rational int_pow(const Rational& base, int e) {
  Rational acc = 1;
  for (int k = 0; k < e; ++k) acc *= base;
  return acc;
}

}  // namespace

mpz_class MonomialTable::coefficient(int i, int j) const {
  for (const auto& term : terms)
    if (term.i == i && term.j == j) return term.coeff;
  return 0;
}

mpz_class MonomialTable::sum() const {
  mpz_class s = 0;
  for (const auto& term : terms) s += term.coeff;
  return s;
}

mpz_class MonomialTable::abs_sum() const {
  mpz_class s = 0;
  for (const auto& term : terms) s += abs(term.coeff);
  return s;
}

int MonomialTable::max_degree() const {
  int d = 0;
  for (const auto& term : terms) d = std::max(d, term.i + term.j);
  return d;
}

ClosedForm load_closed_form(ClosedFormId id, const std::filesystem::path& data_dir) {
  ClosedForm form;
  form.id = id;
  switch (id) {
    case ClosedFormId::SideOut11:
      form.diagonal = false;
      form.sign = -1;
      form.prefactor_power = 11;
      form.bracket_power = 19;
      form.numerator = read_table(data_dir / "advantage_side_out_11_num.txt", true);
      form.denominator = read_table(data_dir / "advantage_shared_den.txt", true);
      break;
    case ClosedFormId::SideOut15:
      form.diagonal = false;
      form.sign = -1;
      form.prefactor_power = 15;
      form.bracket_power = 27;
      form.numerator = read_table(data_dir / "advantage_side_out_15_num.txt", true);
      form.denominator = read_table(data_dir / "advantage_shared_den.txt", true);
      break;
    case ClosedFormId::ModifiedRally21Diag:
      form.diagonal = true;
      form.sign = -1;
      form.linear_prefactor = true;
      form.numerator = read_table(data_dir / "advantage_modified_rally_21_diag_num.txt", false);
      form.denominator = univariate_table(poly_mul({2, -1}, {4, -3}));
      break;
    case ClosedFormId::Hybrid21Diag:
      form.diagonal = true;
      form.numerator = read_table(data_dir / "advantage_hybrid_21_diag_num.txt", false);
      form.denominator =
          univariate_table(poly_mul(poly_mul({2, -1}, {2, -2, 1}), {8, -18, 22, -19, 10, -2}));
      break;
  }
  return form;
}

Rational evaluate_closed_form(const ClosedForm& form, const Rational& x,
                              const std::optional<Rational>& y) {
  if (form.diagonal && y.has_value())
    throw std::invalid_argument("diagonal closed form takes a single variable");
  if (!form.diagonal && !y.has_value())
    throw std::invalid_argument("two-variable closed form needs both x and y");
  if (x < 0 || x > 1 || (y && (*y < 0 || *y > 1)))
    throw std::domain_error("closed forms are defined on the unit square");

  if (form.diagonal) {
    Rational den = horner_x(form.denominator, x);
    if (den == 0) throw std::domain_error("closed form denominator vanishes at the point");
    Rational num = horner_x(form.numerator, x);
    if (form.linear_prefactor) num *= 1 - 2 * x;
    return form.sign * num / den;
  }

  const Rational& yy = *y;
  Rational bracket = 2 - x - yy + x * yy;
  Rational den = int_pow(bracket, form.bracket_power) * horner_xy(form.denominator, x, yy);
  if (den == 0) throw std::domain_error("closed form denominator vanishes at the point");
  Rational num = int_pow(x * yy, form.prefactor_power) * horner_xy(form.numerator, x, yy);
  return form.sign * num / den;
}

bool coefficient_symmetry_check(const ClosedForm& form) {
  if (form.diagonal)
    throw std::invalid_argument("symmetry check applies to the two-variable forms");
  for (const MonomialTable* table : {&form.numerator, &form.denominator})
    for (const auto& term : table->terms)
      if (table->coefficient(term.j, term.i) != term.coeff) return false;
  return true;
}

std::string closed_form_name(ClosedFormId id) {
  switch (id) {
    case ClosedFormId::SideOut11: return "side-out-11";
    case ClosedFormId::SideOut15: return "side-out-15";
    case ClosedFormId::ModifiedRally21Diag: return "modified-rally-21-diag";
    case ClosedFormId::Hybrid21Diag: return "hybrid-21-diag";
  }
  return "unknown";
}

std::optional<ClosedFormId> closed_form_from_name(const std::string& name) {
  if (name == "side-out-11") return ClosedFormId::SideOut11;
  if (name == "side-out-15") return ClosedFormId::SideOut15;
  if (name == "modified-rally-21-diag") return ClosedFormId::ModifiedRally21Diag;
  if (name == "hybrid-21-diag") return ClosedFormId::Hybrid21Diag;
  return std::nullopt;
}

}  // namespace pickleball
