#pragma once

// Text formats shared by the library and the command line tool.
//
//   band matrix   {"n": 3, "diag": [...], "off": [...]}
//   Q parameters  {"M": 2, "s": [...], "y": <band>}        optional "sigma": [...]
//   P parameters  {"M": 2, "s": [...], "x": <band>}
//   H parameters  {"alpha": [...], "beta": [...]}          beta[0] is vertex 2
//   dense matrix  row-major CSV, one row per line
//   samples       CSV rows diag(1..n), off(1..n-1); '#' lines carry metadata
//   missing data  CSV with n fields per row, empty field = not observed
//
// Numbers are written with 17 significant digits, so reading back what was
// written gives the same doubles.

#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "chainwish/letac_massam.hpp"
#include "chainwish/matrix_spaces.hpp"
#include "chainwish/missing_data.hpp"
#include "chainwish/power_functions.hpp"

namespace chainwish {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_double(double v);

std::string band_to_json(const Eigen::VectorXd& diag, const Eigen::VectorXd& off);
std::string to_json(const TridiagSym& y);
std::string to_json(const IncompleteSym& x);
TridiagSym tridiag_from_json(const std::string& text);
IncompleteSym incomplete_from_json(const std::string& text);

// Shape and natural parameter of either family. `natural` holds y for the Q
// family and x for the P family; the band entries are the same either way.
struct FamilyParams {
  ShapeParams shape;
  Eigen::VectorXd diag;
  Eigen::VectorXd off;
  std::optional<Eigen::VectorXd> sigma;
};
// key is "y" or "x".
FamilyParams params_from_json(const std::string& text, const std::string& key);
std::string params_to_json(const FamilyParams& p, const std::string& key);

HParams hparams_from_json(const std::string& text);
std::string hparams_to_json(const HParams& h);

DenseSym dense_from_csv(std::istream& in);
void dense_to_csv(std::ostream& out, const DenseSym& a);

void write_sample_header(std::ostream& out, const std::vector<std::string>& metadata, int n);
void write_sample_row(std::ostream& out, const Eigen::VectorXd& coords);
// Skips '#' lines and the column header.
std::vector<Eigen::VectorXd> read_samples(std::istream& in);

MissingDataset missing_from_csv(std::istream& in);

}  // namespace chainwish
