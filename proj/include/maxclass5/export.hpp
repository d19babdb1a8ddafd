#pragma once

#include <ostream>
#include <string>

#include "maxclass5/errors.hpp"
#include "maxclass5/json_io.hpp"
#include "maxclass5/structure.hpp"
#include "maxclass5/transfer.hpp"

namespace maxclass5 {

enum class ExportFormat { dot, json, table };

inline ExportFormat parse_export_format(const std::string& s) {
  if (s == "dot") return ExportFormat::dot;
  if (s == "json") return ExportFormat::json;
  if (s == "table") return ExportFormat::table;
  throw ParamError("format", "expected dot, json or table, got '" + s + "'");
}

/// Largest n with a multiplication-table export.
inline constexpr int kMaxTableN = 4;

/// Subgroup lattice G > H_i > gamma_2 with the transfer V_{H_i -> gamma_2}
/// on each lower edge; the H_i equal to chi_2 is marked.
inline void export_dot(const PcGroup& g, std::ostream& out) {
  const GroupAnalysis a = analyze(g);
  const auto maps = maximal_transfers(g, a);
  const int chi2 = maximal_index(a.chi2, a.maximals);
  out << "digraph \"" << FamilyLabel::from_params(g.params()).text() << "\" {\n";
  out << "  rankdir=TB;\n";
  out << "  G [label=\"G (5^" << g.n() << ")\"];\n";
  for (int i = 1; i <= 6; ++i) {
    out << "  H_" << i << " [label=\"H_" << i;
    if (i == chi2) out << " = chi_2";
    out << "\"];\n";
  }
  out << "  gamma_2 [label=\"gamma_2 (5^" << g.n() - 2 << ")\"];\n";
  for (int i = 1; i <= 6; ++i) out << "  G -> H_" << i << ";\n";
  for (int i = 1; i <= 6; ++i) {
    const bool trivial = maps[i - 1].trivial;
    out << "  H_" << i << " -> gamma_2 [label=\"V " << (trivial ? "trivial" : "nontrivial")
        << "\", style=" << (trivial ? "dashed" : "solid") << "];\n";
  }
  out << "}\n";
}

inline void export_json(const PcGroup& g, std::ostream& out) {
  const Json j{{"descriptor", to_json(g.params())},
               {"structure", to_json(structure_report(g))}};
  out << j.dump(2) << "\n";
}

/// One line per element u (by code): u, then the codes of u*v for every v.
inline void export_table(const PcGroup& g, std::ostream& out) {
  if (g.n() > kMaxTableN) {
    throw SizeGuard("multiplication table export needs n <= " + std::to_string(kMaxTableN));
  }
  const auto size = static_cast<std::uint32_t>(g.order());
  for (std::uint32_t a = 0; a < size; ++a) {
    const Element u = Element::from_code(g.n(), a);
    out << a;
    for (std::uint32_t b = 0; b < size; ++b) {
      out << ',' << g.multiply(u, Element::from_code(g.n(), b)).code();
    }
    out << '\n';
  }
}

inline void export_group(const PcGroup& g, ExportFormat format, std::ostream& out) {
  switch (format) {
    case ExportFormat::dot: export_dot(g, out); break;
    case ExportFormat::json: export_json(g, out); break;
    case ExportFormat::table: export_table(g, out); break;
  }
}

}  // namespace maxclass5
