#include "bjet/serialize.hpp"

#include <cstdio>

namespace bjet {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

OrderedJson complex_json(const Complex& c) {
  return OrderedJson{{"re", c.real()}, {"im", c.imag()}};
}

const char* status_name(CheckReport::Status s) {
  switch (s) {
    case CheckReport::Status::Pass:
      return "PASS";
    case CheckReport::Status::Fail:
      return "FAIL";
    case CheckReport::Status::ContractViolation:
      return "CONTRACT-VIOLATION";
  }
  return "?";
}

}  // namespace

OrderedJson to_json(const MetricValue& mv) {
  OrderedJson shells = OrderedJson::array();
  for (const auto& [t, v] : mv.shell_estimates)
    shells.push_back(OrderedJson{{"t", t}, {"value", complex_json(v)}});
  return OrderedJson{{"schema", kSchemaTag},
                     {"shell_estimates", shells},
                     {"extrapolated", complex_json(mv.extrapolated)},
                     {"closed_form", complex_json(mv.closed_form)},
                     {"converged", mv.converged},
                     {"agreement", mv.agreement},
                     {"agreement_tol", mv.agreement_tol}};
}

OrderedJson to_json(const BoundReport& rep) {
  return OrderedJson{{"schema", kSchemaTag},
                     {"primal_norm_sq", rep.primal_norm_sq},
                     {"jet_norm_sq", rep.jet_norm_sq},
                     {"ratio", rep.ratio},
                     {"tol", rep.tol},
                     {"verdict", rep.satisfied ? "PASS" : "FAIL"}};
}

OrderedJson to_json(const ExtensionResult& res) {
  OrderedJson coeffs = OrderedJson::array();
  for (std::size_t i = 0; i < res.basis.index_set.size(); ++i) {
    const Complex c = res.coefficients(static_cast<Eigen::Index>(i));
    if (c == Complex{0.0, 0.0}) continue;
    coeffs.push_back(OrderedJson{{"index", res.basis.index_set[i].exponents()},
                                 {"re", c.real()},
                                 {"im", c.imag()}});
  }
  return OrderedJson{{"schema", kSchemaTag},
                     {"coefficients", coeffs},
                     {"primal_norm_sq", res.primal_norm_sq}};
}

OrderedJson to_json(const CheckReport& rep) {
  return OrderedJson{{"schema", kSchemaTag}, {"name", rep.name},
                     {"status", status_name(rep.status)}, {"margin", rep.margin},
                     {"witness", rep.witness},            {"detail", rep.detail}};
}

OrderedJson to_json(const GapReport& rep) {
  OrderedJson rows = OrderedJson::array();
  for (std::size_t i = 0; i < rep.t.size(); ++i)
    rows.push_back(OrderedJson{{"t", rep.t[i]},
                               {"reference", complex_json(rep.reference[i])},
                               {"variant", complex_json(rep.variant[i])},
                               {"gap", rep.gap[i]}});
  return OrderedJson{{"schema", kSchemaTag}, {"rows", rows}, {"final_gap", rep.final_gap}};
}

OrderedJson to_json(const RotationReport& rep) {
  return OrderedJson{{"schema", kSchemaTag},
                     {"original", complex_json(rep.original)},
                     {"rotated", complex_json(rep.rotated)},
                     {"gap", rep.gap},
                     {"mc_original", complex_json(rep.mc_original)},
                     {"mc_rotated", complex_json(rep.mc_rotated)},
                     {"mc_gap", rep.mc_gap},
                     {"mc_stderr", rep.mc_stderr}};
}

OrderedJson to_json(const FubiniReport& rep) {
  OrderedJson rows = OrderedJson::array();
  for (const auto& [t, v] : rep.rhs)
    rows.push_back(OrderedJson{{"t", t}, {"value", complex_json(v)}});
  return OrderedJson{{"schema", kSchemaTag},
                     {"lhs", rep.lhs},
                     {"rhs", rows},
                     {"final_gap", rep.final_gap}};
}

CsvWriter::CsvWriter(std::string header) {
  out_ = "# schema=";
  out_ += kSchemaTag;
  out_ += '\n';
  out_ += header;
  out_ += '\n';
}

void CsvWriter::add_row(std::span<const std::string> cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ',';
    const std::string& cell = cells[i];
    if (cell.find_first_of(",\"\n") == std::string::npos) {
      out_ += cell;
    } else {
      out_ += '"';
      for (char c : cell) {
        if (c == '"') out_ += '"';
        out_ += c;
      }
      out_ += '"';
    }
  }
  out_ += '\n';
}

std::string sweep_csv(std::span<const SweepRow> rows, double q) {
  CsvWriter csv("s,q,norm,es_norm");
  for (const SweepRow& r : rows) {
    const std::string cells[] = {format_double(r.s), format_double(q),
                                 format_double(r.norm_sq), format_double(r.es_norm_sq)};
    csv.add_row(cells);
  }
  return csv.str();
}

std::string gram_csv(const GramMatrix& gm) {
  CsvWriter csv("# weight=" + gm.weight_tag +
                "\n# max_tail=" + format_double(gm.max_tail) + "\ni,j,index_i,index_j,re,im");
  for (Eigen::Index i = 0; i < gm.entries.rows(); ++i)
    for (Eigen::Index j = 0; j < gm.entries.cols(); ++j) {
      const Complex v = gm.entries(i, j);
      const std::string cells[] = {
          std::to_string(i),
          std::to_string(j),
          gm.basis.index_set[static_cast<std::size_t>(i)].str(),
          gm.basis.index_set[static_cast<std::size_t>(j)].str(),
          format_double(v.real()),
          format_double(v.imag())};
      csv.add_row(cells);
    }
  return csv.str();
}

}  // namespace bjet
