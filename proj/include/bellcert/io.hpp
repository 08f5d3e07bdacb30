#ifndef BELLCERT_IO_HPP
#define BELLCERT_IO_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bellcert/experiments.hpp"

// JSON schemas and the sweep CSV format. Parsing validates invariants and
// reports offending fields/indices; serialize-parse round trips are
// lossless for every numeric value.
namespace bellcert::io {

using json = nlohmann::json;

json expression_to_json(const bell::Expression& e);
bell::Expression expression_from_json(const json& j);

json correlation_to_json(const bell::Correlation& c);
bell::Correlation correlation_from_json(const json& j);

json certificate_to_json(const nondeg::Certificate& cert);
nondeg::Certificate certificate_from_json(const json& j);

json entanglement_to_json(const bounds::EntanglementCertificate& ec);

json estimate_to_json(const tsirelson::TsirelsonEstimate& est, const std::string& name);

json state_to_json(const numerics::Matrix& rho);
numerics::Matrix state_from_json(const json& j);

json assemblage_to_json(const bell::Assemblage& m);
bell::Assemblage assemblage_from_json(const json& j);

inline constexpr const char* kSweepCsvHeader =
    "w,violation,gap,eps1,eps2,purity_lower,s_upper,gamma_a,s_lower,ic_lower,ic_true";

// CSV with the exact header above; floats printed with 17 significant
// digits, absent values as empty cells, '\n' line endings.
std::string sweep_to_csv(const std::vector<experiments::SweepRow>& rows);

// Parse with ParseError carrying the parser's position context.
json parse_json_text(const std::string& text);
json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

// 2-space indented dump with a trailing newline.
std::string dump(const json& j);

// Expression by builtin name or JSON file path, whichever matches.
bell::Expression expression_by_name_or_file(const std::string& name_or_path);

}  // namespace bellcert::io

#endif
