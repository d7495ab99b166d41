#pragma once

#include <extvol/cycle_verify.hpp>
#include <extvol/extremal_length.hpp>
#include <extvol/lattice.hpp>
#include <extvol/moduli.hpp>
#include <extvol/reinhardt.hpp>
#include <extvol/systole.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace extvol::cli {

using Json = nlohmann::ordered_json;

/// Malformed or ill-typed input. The message starts with the JSON path of the offending value.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inline JSON if the text starts with '{' or '[', otherwise the name of a file holding it.
Json load_json(const std::string& text_or_path, const std::string& root);

ComplexLattice parse_lattice(const Json& j, const std::string& path);
DecomposableClass parse_class(const Json& j, const std::string& path);
SiegelPoint parse_siegel(const Json& j, const std::string& path);
IntMatrix parse_int_matrix(const Json& j, const std::string& path);
Complex parse_complex(const Json& j, const std::string& path);
ConformalField parse_field(const Json& j, const std::string& path);
LogBase parse_log_base(const Json& j, const std::string& path);

Json to_json(const ComplexLattice& lattice);
Json to_json(const DecomposableClass& cls);
Json to_json(const SiegelPoint& point);
Json to_json(const IntMatrix& m);
Json to_json(const Eigen::MatrixXd& m);
Json to_json(const Eigen::MatrixXcd& m);
Json to_json(Complex z);
Json to_json(const ReductionTrace& trace);
Json to_json(const BoundReport& report);
Json to_json(const LoewnerReport& report);
Json to_json(const MinimalityReport& report);
Json to_json(const MinimalityTrial& trial);
Json to_json(const Box& box);

/// Compact JSON with every floating-point number printed to 15 significant digits.
/// Non-finite numbers become null.
std::string dump(const Json& j);

/// "%.15g"
std::string format_number(double x);

}  // namespace extvol::cli
