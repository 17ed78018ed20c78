#include "planwise/refhints.hpp"

#include <algorithm>

namespace planwise::refhints {
namespace {

constexpr Effect U = Effect::up;
constexpr Effect D = Effect::down;
constexpr Effect _ = Effect::blank;

//                                              dit noc cbo rfc fout wmc nom loc lcom
constexpr std::array<RefactoringSignature, kTableSize> kTable = {{
    {"Extract Class",           {_, _, U, D, U, D, D, D, D}},
    {"Extract Method",          {_, _, _, U, _, U, U, U, U}},
    {"Hide Method",             {_, _, _, _, _, _, _, _, _}},
    {"Inline Method",           {_, _, _, D, _, D, D, D, D}},
    {"Inline Temp",             {_, _, _, _, _, _, _, D, _}},
    {"Remove Setting Method",   {_, _, _, D, _, D, D, D, D}},
    {"Replace Assignment",      {_, _, _, _, _, _, _, D, _}},
    {"Replace Magic Number",    {_, _, _, _, _, _, _, U, _}},
    {"Consolidate Conditional", {_, _, _, U, _, U, U, D, U}},
    {"Reverse Conditional",     {_, _, _, _, _, _, _, _, _}},
    {"Encapsulate Field",       {_, _, _, _, _, U, U, U, U}},
    {"Inline Class",            {_, _, D, U, D, U, U, U, U}},
}};

}  // namespace

bool RefactoringSignature::empty() const {
  return std::all_of(effects.begin(), effects.end(), [](Effect e) { return e == Effect::blank; });
}

const std::array<RefactoringSignature, kTableSize>& table() { return kTable; }

std::string table_csv() {
  std::string out = "action";
  for (auto c : kColumnNames) {
    out += ',';
    out += c;
  }
  out += '\n';
  for (const auto& row : kTable) {
    out += row.name;
    for (Effect e : row.effects) {
      out += ',';
      if (e != Effect::blank) out += static_cast<char>(e);
    }
    out += '\n';
  }
  return out;
}

}  // namespace planwise::refhints
