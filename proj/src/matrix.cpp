#include "hre/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <istream>
#include <sstream>

#include "hre/error.hpp"

namespace hre {

namespace {

constexpr double kDiagonalTolerance = 1e-12;
constexpr double kReciprocalTolerance = 1e-9;
constexpr double kRestoreTolerance = 1e-12;
constexpr double kMismatchTolerance = 1e-6;

std::string pair_label(Index i, Index j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

// ---------------------------------------------------------------------------
// Tokenizer for the matrix text format.

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (pos < line.size()) {
    while (pos < line.size() && is_sep(line[pos])) ++pos;
    if (pos >= line.size()) break;
    std::size_t start = pos;
    while (pos < line.size() && !is_sep(line[pos])) ++pos;
    tokens.push_back({std::string(line.substr(start, pos - start)), start + 1});
  }
  return tokens;
}

std::optional<double> to_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  // from_chars rejects a leading '+', the format accepts it.
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<long long> to_integer(std::string_view s) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::optional<double> parse_entry(const Token& token, std::size_t line_no) {
  if (token.text == "?") return std::nullopt;
  double value = 0.0;
  if (auto slash = token.text.find('/'); slash != std::string::npos) {
    auto num = to_double(std::string_view(token.text).substr(0, slash));
    auto den = to_double(std::string_view(token.text).substr(slash + 1));
    if (!num || !den) throw ParseError(line_no, token.column, "malformed fraction '" + token.text + "'");
    if (*den == 0.0) throw ParseError(line_no, token.column, "zero denominator in '" + token.text + "'");
    value = *num / *den;
  } else {
    auto parsed = to_double(token.text);
    if (!parsed) throw ParseError(line_no, token.column, "malformed number '" + token.text + "'");
    value = *parsed;
  }
  if (!std::isfinite(value)) throw ParseError(line_no, token.column, "non-finite value '" + token.text + "'");
  return value;
}

}  // namespace

// ---------------------------------------------------------------------------

PcMatrix::PcMatrix(std::size_t n) : n_(n), cells_(n * n) {
  if (n < 2) throw InputError("a comparisons matrix needs at least two concepts");
  for (Index i = 0; i < n; ++i) cells_[i * n + i] = 1.0;
}

PcMatrix PcMatrix::from_rows(const std::vector<std::vector<std::optional<double>>>& rows) {
  PcMatrix m(rows.size());
  for (Index i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw InputError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                       " entries, expected " + std::to_string(rows.size()));
    }
    for (Index j = 0; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

PcMatrix PcMatrix::from_dense(const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<std::optional<double>>> optional_rows;
  optional_rows.reserve(rows.size());
  for (const auto& row : rows) optional_rows.emplace_back(row.begin(), row.end());
  return from_rows(optional_rows);
}

bool PcMatrix::is_complete() const noexcept {
  return std::all_of(cells_.begin(), cells_.end(), [](const auto& c) { return c.has_value(); });
}

std::vector<Index> Problem::unknowns() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i)
    if (!is_reference(i)) out.push_back(i);
  return out;
}

std::string_view to_string(IssueCategory category) {
  switch (category) {
    case IssueCategory::nonpositive_entry: return "nonpositive-entry";
    case IssueCategory::bad_diagonal: return "bad-diagonal";
    case IssueCategory::non_square: return "non-square";
    case IssueCategory::non_reciprocal_pair: return "non-reciprocal-pair";
    case IssueCategory::unreachable_concept: return "unreachable-concept";
    case IssueCategory::known_known_mismatch: return "known-known-mismatch";
  }
  return "unknown";
}

bool is_fatal(IssueCategory category) {
  return category != IssueCategory::non_reciprocal_pair &&
         category != IssueCategory::known_known_mismatch;
}

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(), [](const Issue& i) { return is_fatal(i.category); });
}

std::vector<Issue> ValidationReport::warnings() const {
  std::vector<Issue> out;
  std::copy_if(issues.begin(), issues.end(), std::back_inserter(out),
               [](const Issue& i) { return !is_fatal(i.category); });
  return out;
}

// ---------------------------------------------------------------------------

Problem parse_matrix(std::istream& in) {
  std::optional<std::size_t> n;
  std::vector<std::vector<std::optional<double>>> rows;
  ReferenceAssignment refs;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (!n) {
      auto value = to_integer(tokens[0].text);
      if (!value) throw ParseError(line_no, tokens[0].column, "expected the matrix dimension, found '" + tokens[0].text + "'");
      if (*value < 2) throw ParseError(line_no, tokens[0].column, "matrix dimension must be at least 2");
      if (tokens.size() > 1) throw ParseError(line_no, tokens[1].column, "unexpected token after the dimension");
      n = static_cast<std::size_t>(*value);
      continue;
    }

    if (rows.size() < *n) {
      if (tokens.size() != *n) {
        std::size_t col = tokens.size() > *n ? tokens[*n].column : tokens.back().column;
        throw ParseError(line_no, col,
                         "row " + std::to_string(rows.size() + 1) + " has " + std::to_string(tokens.size()) +
                             " entries, expected " + std::to_string(*n));
      }
      std::vector<std::optional<double>> row;
      row.reserve(*n);
      for (const auto& tok : tokens) row.push_back(parse_entry(tok, line_no));
      rows.push_back(std::move(row));
      continue;
    }

    if (tokens[0].text != "ref") throw ParseError(line_no, tokens[0].column, "expected 'ref <i> <w>', found '" + tokens[0].text + "'");
    if (tokens.size() != 3) throw ParseError(line_no, tokens[0].column, "a ref line needs exactly an index and a weight");
    auto index = to_integer(tokens[1].text);
    if (!index) throw ParseError(line_no, tokens[1].column, "malformed concept index '" + tokens[1].text + "'");
    if (*index < 1 || static_cast<std::size_t>(*index) > *n)
      throw ParseError(line_no, tokens[1].column, "concept index " + tokens[1].text + " out of range 1.." + std::to_string(*n));
    auto weight = parse_entry(tokens[2], line_no);
    if (!weight) throw ParseError(line_no, tokens[2].column, "reference weight cannot be '?'");
    if (!(*weight > 0.0)) throw ParseError(line_no, tokens[2].column, "reference weight must be positive");
    Index i = static_cast<Index>(*index - 1);
    if (refs.contains(i)) throw ParseError(line_no, tokens[1].column, "duplicate ref line for concept " + tokens[1].text);
    refs.weights.emplace(i, *weight);
  }

  if (!n) throw ParseError(line_no + 1, 1, "missing matrix dimension");
  if (rows.size() < *n)
    throw ParseError(line_no + 1, 1, "expected " + std::to_string(*n) + " rows, found " + std::to_string(rows.size()));
  return Problem{PcMatrix::from_rows(rows), std::move(refs)};
}

Problem parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in);
}

// ---------------------------------------------------------------------------

ValidationReport validate(const Problem& problem) {
  ValidationReport report;
  const auto& m = problem.matrix;
  const std::size_t n = m.size();

  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const auto& e = m.entry(i, j);
      if (i == j) {
        if (!e || std::abs(*e - 1.0) > kDiagonalTolerance)
          report.issues.push_back({std::pair{i, j}, IssueCategory::bad_diagonal,
                                   "diagonal entry " + pair_label(i, j) + " must be 1"});
        continue;
      }
      if (e && !(std::isfinite(*e) && *e > 0.0))
        report.issues.push_back({std::pair{i, j}, IssueCategory::nonpositive_entry,
                                 "entry " + pair_label(i, j) + " must be positive and finite"});
    }
  }

  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (!m.present(i, j) || !m.present(j, i)) continue;
      if (std::abs(m(i, j) * m(j, i) - 1.0) > kReciprocalTolerance)
        report.issues.push_back({std::pair{i, j}, IssueCategory::non_reciprocal_pair,
                                 "entries " + pair_label(i, j) + " and " + pair_label(j, i) + " are not reciprocal"});
    }
  }

  // A reference outside the matrix is a dimension mismatch between the two
  // halves of the problem; a bad reference weight is a nonpositive entry.
  for (const auto& [i, w] : problem.references.weights) {
    if (i >= n)
      report.issues.push_back({std::pair{i, i}, IssueCategory::non_square,
                               "reference concept " + std::to_string(i + 1) + " is outside the matrix"});
    else if (!(std::isfinite(w) && w > 0.0))
      report.issues.push_back({std::pair{i, i}, IssueCategory::nonpositive_entry,
                               "reference weight of concept " + std::to_string(i + 1) + " must be positive"});
  }

  if (!problem.references.empty() && report.ok()) {
    for (Index j : is_reachable(problem).unreachable)
      report.issues.push_back({std::pair{j, j}, IssueCategory::unreachable_concept,
                               "concept " + std::to_string(j + 1) + " is not linked to any reference concept"});
  }
  return report;
}

PcMatrix restore_reciprocity(const PcMatrix& matrix) {
  PcMatrix out = matrix;
  const std::size_t n = matrix.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const auto& upper = matrix.entry(i, j);
      const auto& lower = matrix.entry(j, i);
      if (upper && lower) {
        if (std::abs(*upper * *lower - 1.0) <= kRestoreTolerance) continue;
        double g = std::sqrt(*upper / *lower);
        out.set(i, j, g);
        out.set(j, i, 1.0 / g);
      } else if (upper) {
        out.set(j, i, 1.0 / *upper);
      } else if (lower) {
        out.set(i, j, 1.0 / *lower);
      }
    }
  }
  return out;
}

FillResult fill_known_ratios(const Problem& problem) {
  FillResult result{problem, {}};
  auto& m = result.problem.matrix;
  for (const auto& [i, wi] : problem.references.weights) {
    for (const auto& [j, wj] : problem.references.weights) {
      if (i == j) continue;
      const double expected = wi / wj;
      const auto& given = problem.matrix.entry(i, j);
      if (given && std::abs(*given - expected) / expected > kMismatchTolerance) {
        result.warnings.push_back({std::pair{i, j}, IssueCategory::known_known_mismatch,
                                   "entry " + pair_label(i, j) + " overwritten by the ratio of reference weights"});
      }
      m.set(i, j, expected);
    }
  }
  return result;
}

Reachability is_reachable(const Problem& problem) {
  const auto& m = problem.matrix;
  const std::size_t n = m.size();
  std::vector<bool> seen(n, false);
  std::deque<Index> queue;
  for (const auto& [i, w] : problem.references.weights) {
    if (i < n && !seen[i]) {
      seen[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    Index i = queue.front();
    queue.pop_front();
    for (Index j = 0; j < n; ++j) {
      if (seen[j] || !(m.present(i, j) || m.present(j, i))) continue;
      seen[j] = true;
      queue.push_back(j);
    }
  }
  Reachability r{true, {}};
  for (Index j = 0; j < n; ++j) {
    if (!seen[j]) r.unreachable.push_back(j);
  }
  r.reachable = r.unreachable.empty();
  return r;
}

PreparedProblem prepare(const Problem& problem) {
  if (problem.references.empty()) throw InputError("at least one reference concept is required");
  auto report = validate(problem);
  if (!report.ok()) {
    std::string message;
    for (const auto& issue : report.issues) {
      if (!is_fatal(issue.category)) continue;
      if (!message.empty()) message += "; ";
      message += issue.message;
    }
    throw InputError(message);
  }
  Problem restored{restore_reciprocity(problem.matrix), problem.references};
  auto filled = fill_known_ratios(restored);
  PreparedProblem out{std::move(filled.problem), report.warnings()};
  out.warnings.insert(out.warnings.end(), filled.warnings.begin(), filled.warnings.end());
  return out;
}

}  // namespace hre
