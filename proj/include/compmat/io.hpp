#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "compmat/classify.hpp"
#include "compmat/core.hpp"
#include "compmat/oracle.hpp"

/// File formats and report serialization. All indices written or read here
/// are 1-based; conversion to the library's 0-based indices happens at this
/// boundary. Numbers are written with 17 significant digits so that
/// write-then-read reproduces every double exactly.
namespace compmat::io {

class ParseError : public std::runtime_error {
  public:
    ParseError(std::string source, std::size_t line, const std::string& message);

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }

  private:
    std::string source_;
    std::size_t line_;
};

enum class MatrixFormat { matrix_market, dense_csv };

/// .mtx/.mm mean Matrix Market, .csv means dense CSV; anything else falls
/// back to sniffing the file for the %%MatrixMarket banner.
MatrixFormat infer_matrix_format(const std::string& path);

DenseRealMatrix read_matrix(const std::string& path);
DenseRealMatrix read_matrix(std::istream& in, MatrixFormat format, const std::string& source);

void write_matrix(const DenseRealMatrix& a, const std::string& path);
void write_matrix(const DenseRealMatrix& a, std::ostream& out, MatrixFormat format);

/// Injection file: first line "m n", second line m space-separated 1-based
/// targets. Diagnostics name the violated invariant (duplicate target,
/// out-of-range target, m > n).
Injection read_injection(const std::string& path);
Injection read_injection(std::istream& in, const std::string& source);

void write_injection(const Injection& pi, const std::string& path);
void write_injection(const Injection& pi, std::ostream& out);

/// Vector file: comma-separated values on one line, or one value per line.
RealVector read_vector(const std::string& path);
RealVector read_vector(std::istream& in, const std::string& source);

/// One line, comma-separated, full precision.
std::string format_vector(const RealVector& v);

/// Stable report schema:
/// {"shape":[m,n],"is_binary":b,"is_row_permutation_like":b,
///  "is_column_permutation_like":b,"row_sums_all_one":b,
///  "is_composition_matrix":b,"witnesses":[{"clause":s,"indices":[...],
///  "value":x?}]}
nlohmann::json report_to_json(const ClassificationReport& report);

void write_report_text(const ClassificationReport& report, std::ostream& out);

nlohmann::json counts_to_json(const ClassCounts& counts);

nlohmann::json witness_to_json(const Witness& w);

std::string format_double(double v);

}  // namespace compmat::io
