#ifndef BJET_SERIALIZE_HPP_
#define BJET_SERIALIZE_HPP_

#include <string>

#include <json.hpp>

#include "bjet/bergman.hpp"
#include "bjet/extension.hpp"
#include "bjet/jet_metric.hpp"
#include "bjet/lemma_lab.hpp"

namespace bjet {

using OrderedJson = nlohmann::ordered_json;

/// Versioned fingerprint stamped into every CSV/JSON output.
inline constexpr const char* kSchemaTag = "bergman-jet/v1";

/// Deterministic shortest-round-trip double formatting ("%.17g").
std::string format_double(double v);

OrderedJson to_json(const MetricValue& mv);
OrderedJson to_json(const BoundReport& rep);
OrderedJson to_json(const ExtensionResult& res);
OrderedJson to_json(const CheckReport& rep);
OrderedJson to_json(const GapReport& rep);
OrderedJson to_json(const RotationReport& rep);
OrderedJson to_json(const FubiniReport& rep);

/// CSV writer: "# schema=bergman-jet/v1" comment, then a header row, then
/// rows; UTF-8, LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::string header);
  void add_row(std::span<const std::string> cells);
  const std::string& str() const { return out_; }

 private:
  std::string out_;
};

std::string sweep_csv(std::span<const SweepRow> rows, double q);

/// Gram matrix dump for external plotting: one row per entry with the
/// multi-indices spelled out.
std::string gram_csv(const GramMatrix& gm);

}  // namespace bjet

#endif  // BJET_SERIALIZE_HPP_
