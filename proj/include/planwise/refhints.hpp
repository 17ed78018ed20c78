#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "planwise/action.hpp"

namespace planwise::refhints {

// Columns of the refactoring-effect table.
enum class Column : std::size_t { dit, noc, cbo, rfc, fout, wmc, nom, loc, lcom };
inline constexpr std::size_t kColumnCount = 9;
inline constexpr std::array<std::string_view, kColumnCount> kColumnNames = {
    "dit", "noc", "cbo", "rfc", "fout", "wmc", "nom", "loc", "lcom"};

// '+' / '-' for a documented effect, ' ' where the
// literature is silent. Blank never means "no change".
enum class Effect : char { up = '+', down = '-', blank = ' ' };

struct RefactoringSignature {
  std::string_view name;
  std::array<Effect, kColumnCount> effects;

  bool empty() const;
};

inline constexpr std::size_t kTableSize = 12;

const std::array<RefactoringSignature, kTableSize>& table();

// Table as CSV: action,dit,...,lcom with blanks left empty.
std::string table_csv();

// Dataset metric feeding each table column. fout has no exact counterpart in
// the dataset and is read from efferent coupling (ce); nom is read from the
// public-method count (npm).
inline constexpr std::array<Metric, kColumnCount> kColumnSource = {
    Metric::dit, Metric::noc, Metric::cbo, Metric::rfc, Metric::ce,
    Metric::wmc, Metric::npm, Metric::loc, Metric::lcom};

}  // namespace planwise::refhints
