#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace compmat {

/// A failure record: which clause was violated and where.
///
/// Indices are 1-based, matching every external surface of the library
/// (reports, JSON, file formats). Meaning per clause:
///
///   non-binary-entry       [i, j]       value = offending entry
///   idempotency-violation  [i, j]       value = offending entry
///   cross-product-violation[i, j, k]    value = a(i,j) * a(i,k)
///   multiple-ones-in-row   [i, j, k]    columns j < k both hold a 1 in row i
///   repeated-column        [j, i1, i2]  rows i1 < i2 both hold a 1 in column j
///   zero-row               [i]          row i has no 1
///   row-sum-not-one        [i]          value = the row sum
///   bad-shape              [m, n]       more rows than columns
///   column-conflict        [j, i1, ...] all rows whose best column is j
struct Witness {
    std::string clause;
    std::vector<std::size_t> indices;
    std::optional<double> value;

    bool operator==(const Witness&) const = default;
};

/// Outcome of a yes/no check; carries a witness exactly when the check fails.
struct Verdict {
    bool ok = true;
    std::optional<Witness> witness;

    explicit operator bool() const { return ok; }

    static Verdict pass() { return {}; }
    static Verdict fail(Witness w) { return {false, std::move(w)}; }
};

/// Value-or-witness result for fallible conversions.
template <typename T>
class Expected {
  public:
    Expected(T value) : state_(std::move(value)) {}
    Expected(Witness failure) : state_(std::move(failure)) {}

    bool ok() const { return std::holds_alternative<T>(state_); }
    explicit operator bool() const { return ok(); }

    const T& value() const { return std::get<T>(state_); }
    const Witness& failure() const { return std::get<Witness>(state_); }

  private:
    std::variant<T, Witness> state_;
};

}  // namespace compmat
