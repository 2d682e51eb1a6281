#pragma once

// Pairwise-comparisons data model: the matrix of ratios, the reference
// assignment, and the preprocessing steps every solver relies on.
//
// Indices are 0-based throughout the library. The text format and the
// CLI use 1-based concept numbers; conversion happens at those edges only.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hre {

using Index = std::size_t;

/// Square grid of optional ratios m_ij ("how many times c_i outweighs c_j").
/// An absent entry is an unspecified comparison. The type only enforces the
/// shape; the value-level invariants (positivity, unit diagonal) are
/// checked by validate() so that bad input can be reported, not rejected.
class PcMatrix {
 public:
  /// n x n matrix with a unit diagonal and every off-diagonal entry absent.
  explicit PcMatrix(std::size_t n);

  /// Throws InputError when rows are ragged or fewer than two concepts.
  static PcMatrix from_rows(const std::vector<std::vector<std::optional<double>>>& rows);
  static PcMatrix from_dense(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }

  const std::optional<double>& entry(Index i, Index j) const { return cells_[i * n_ + j]; }
  bool present(Index i, Index j) const { return entry(i, j).has_value(); }
  /// Value of a present entry.
  double operator()(Index i, Index j) const { return *entry(i, j); }

  void set(Index i, Index j, std::optional<double> value) { cells_[i * n_ + j] = value; }

  bool is_complete() const noexcept;

  bool operator==(const PcMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<std::optional<double>> cells_;
};

/// Fixed a-priori weights for the reference concepts C_K.
struct ReferenceAssignment {
  std::map<Index, double> weights;

  bool empty() const noexcept { return weights.empty(); }
  bool contains(Index i) const { return weights.count(i) != 0; }
  double at(Index i) const { return weights.at(i); }
  std::size_t size() const noexcept { return weights.size(); }

  bool operator==(const ReferenceAssignment&) const = default;
};

struct Problem {
  PcMatrix matrix;
  ReferenceAssignment references;

  std::size_t size() const noexcept { return matrix.size(); }
  bool is_reference(Index i) const { return references.contains(i); }
  /// C_U in ascending index order; this is also the row order of every
  /// linear system built from the problem.
  std::vector<Index> unknowns() const;

  bool operator==(const Problem&) const = default;
};

enum class IssueCategory {
  nonpositive_entry,
  bad_diagonal,
  non_square,
  non_reciprocal_pair,
  unreachable_concept,
  known_known_mismatch,
};

std::string_view to_string(IssueCategory category);
bool is_fatal(IssueCategory category);

struct Issue {
  /// 0-based (row, column) or concept index repeated for concept issues.
  std::optional<std::pair<Index, Index>> location;
  IssueCategory category;
  std::string message;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const;
  std::vector<Issue> warnings() const;
};

/// Reads the matrix text format:
///
///     <n>
///     <n rows of n tokens>     token := decimal | integer | a/b | ?
///     ref <i> <w>              zero or more, i is 1-based
///
/// '#' starts a comment; tokens are separated by spaces, tabs or commas.
/// Throws ParseError with the offending line and column.
Problem parse_matrix(std::istream& in);
Problem parse_matrix(std::string_view text);

/// Reports every invariant violation. Non-reciprocal pairs are warnings.
/// Reachability is only evaluated when references are present.
ValidationReport validate(const Problem& problem);

/// Replaces each pair (m_ij, m_ji) by a mutually reciprocal one: the
/// geometric mean sqrt(m_ij / m_ji) when both are present, the reciprocal
/// of the present side otherwise. Pairs that are already reciprocal to
/// within 1e-12 are left untouched, so the operation is a fixpoint on
/// reciprocal input.
PcMatrix restore_reciprocity(const PcMatrix& matrix);

struct FillResult {
  Problem problem;
  std::vector<Issue> warnings;
};

/// Overwrites every entry between two reference concepts with the ratio of
/// their fixed weights. Provided values that differ by more than 1e-6
/// relative produce a known-known-mismatch warning.
FillResult fill_known_ratios(const Problem& problem);

struct Reachability {
  bool reachable;
  std::vector<Index> unreachable;
};

/// Graph reachability of every unknown concept from C_K over present
/// entries (either direction of a pair counts as a link).
Reachability is_reachable(const Problem& problem);

struct PreparedProblem {
  Problem problem;
  std::vector<Issue> warnings;
};

/// validate -> restore_reciprocity -> fill_known_ratios. Throws InputError
/// on any fatal validation issue or an empty reference set.
PreparedProblem prepare(const Problem& problem);

}  // namespace hre
