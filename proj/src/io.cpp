#include "bellcert/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bellcert::io {

namespace {

bell::Scenario scenario_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nx") || !j.contains("ny") || !j.contains("na") ||
      !j.contains("nb"))
    throw ValidationError("scenario: expected an object with nx, ny, na, nb");
  bell::Scenario s{j.at("nx").get<int>(), j.at("ny").get<int>(), j.at("na").get<int>(),
                   j.at("nb").get<int>()};
  bell::check_scenario(s);
  return s;
}

json scenario_to_json(const bell::Scenario& s) {
  return json{{"nx", s.nx}, {"ny", s.ny}, {"na", s.na}, {"nb", s.nb}};
}

// Reads a nested [x][y][a][b] tensor into flat storage, checking the shape
// against the scenario level by level.
std::vector<double> tensor_from_json(const json& j, const bell::Scenario& s,
                                     const char* field) {
  const auto fail = [&](const std::string& detail) {
    throw ValidationError(std::string(field) + ": " + detail);
  };
  if (!j.is_array() || static_cast<int>(j.size()) != s.nx) fail("outer size must be nx");
  std::vector<double> flat(s.tensor_size());
  for (int x = 0; x < s.nx; ++x) {
    const json& jx = j.at(x);
    if (!jx.is_array() || static_cast<int>(jx.size()) != s.ny) fail("level-2 size must be ny");
    for (int y = 0; y < s.ny; ++y) {
      const json& jy = jx.at(y);
      if (!jy.is_array() || static_cast<int>(jy.size()) != s.na) fail("level-3 size must be na");
      for (int a = 0; a < s.na; ++a) {
        const json& ja = jy.at(a);
        if (!ja.is_array() || static_cast<int>(ja.size()) != s.nb) fail("level-4 size must be nb");
        for (int b = 0; b < s.nb; ++b) {
          if (!ja.at(b).is_number()) fail("entries must be numbers");
          flat[s.index(x, y, a, b)] = ja.at(b).get<double>();
        }
      }
    }
  }
  return flat;
}

json tensor_to_json(const std::vector<double>& flat, const bell::Scenario& s) {
  json out = json::array();
  for (int x = 0; x < s.nx; ++x) {
    json jx = json::array();
    for (int y = 0; y < s.ny; ++y) {
      json jy = json::array();
      for (int a = 0; a < s.na; ++a) {
        json ja = json::array();
        for (int b = 0; b < s.nb; ++b) ja.push_back(flat[s.index(x, y, a, b)]);
        jy.push_back(std::move(ja));
      }
      jx.push_back(std::move(jy));
    }
    out.push_back(std::move(jx));
  }
  return out;
}

}  // namespace

json expression_to_json(const bell::Expression& e) {
  return json{{"name", e.name},
              {"scenario", scenario_to_json(e.scenario)},
              {"coeffs", tensor_to_json(e.coeffs, e.scenario)}};
}

bell::Expression expression_from_json(const json& j) {
  if (!j.is_object() || !j.contains("scenario") || !j.contains("coeffs"))
    throw ValidationError("expression: expected an object with scenario and coeffs");
  bell::Expression e;
  e.scenario = scenario_from_json(j.at("scenario"));
  e.coeffs = tensor_from_json(j.at("coeffs"), e.scenario, "coeffs");
  e.name = j.value("name", std::string{});
  return e;
}

json correlation_to_json(const bell::Correlation& c) {
  return json{{"scenario", scenario_to_json(c.scenario)},
              {"p", tensor_to_json(c.p, c.scenario)}};
}

bell::Correlation correlation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("scenario") || !j.contains("p"))
    throw ValidationError("correlation: expected an object with scenario and p");
  bell::Correlation c;
  c.scenario = scenario_from_json(j.at("scenario"));
  c.p = tensor_from_json(j.at("p"), c.scenario, "p");
  // Absorb float dust, then enforce the correlation invariants.
  for (auto& v : c.p)
    if (v < 0.0 && v >= -1e-12) v = 0.0;
  const auto report = bell::validate_correlation(c, false);
  if (!report.valid) {
    std::string msg = "correlation:";
    for (const auto& issue : report.issues) msg += " " + issue + ";";
    throw ValidationError(msg);
  }
  return c;
}

json certificate_to_json(const nondeg::Certificate& cert) {
  json j{{"name", cert.expr_name},
         {"d", cert.d},
         {"c_q", cert.c_q},
         {"c2", cert.c2},
         {"c_prev", nullptr},
         {"nondegenerate", cert.nondegenerate},
         {"eps1_max", cert.eps1_max},
         {"method", cert.method},
         {"heuristic_caveat", cert.heuristic_caveat}};
  if (cert.c_prev) j["c_prev"] = *cert.c_prev;
  return j;
}

nondeg::Certificate certificate_from_json(const json& j) {
  for (const char* key : {"name", "d", "c_q", "c2", "nondegenerate", "eps1_max"})
    if (!j.is_object() || !j.contains(key))
      throw ValidationError(std::string("certificate: missing field '") + key + "'");
  nondeg::Certificate cert;
  cert.expr_name = j.at("name").get<std::string>();
  cert.d = j.at("d").get<int>();
  cert.c_q = j.at("c_q").get<double>();
  cert.c2 = j.at("c2").get<double>();
  if (j.contains("c_prev") && !j.at("c_prev").is_null())
    cert.c_prev = j.at("c_prev").get<double>();
  cert.nondegenerate = j.at("nondegenerate").get<bool>();
  cert.eps1_max = j.at("eps1_max").get<double>();
  cert.method = j.value("method", std::string("lemma1"));
  cert.heuristic_caveat = j.value("heuristic_caveat", true);
  if (std::abs(cert.eps1_max - (cert.c_q - 0.5 * cert.c2)) > 1e-9)
    throw ValidationError("certificate: eps1_max does not equal c_q - c2/2");
  return cert;
}

json entanglement_to_json(const bounds::EntanglementCertificate& ec) {
  json j{{"violation", ec.analysis.violation},
         {"eps1", ec.analysis.eps1},
         {"f1", ec.f1},
         {"f2", ec.f2},
         {"gamma_a", ec.gamma_a},
         {"s_lower_bits", ec.s_lower},
         {"certified", ec.certified},
         {"caveats", ec.caveats}};
  if (ec.analysis.has_certificate) {
    j["eps2"] = ec.analysis.eps2;
    j["a1_lower"] = ec.analysis.a1_lower;
    j["purity_lower"] = ec.analysis.purity_lower;
  }
  if (ec.s_upper) j["s_upper_bits"] = *ec.s_upper;
  if (ec.s_upper_low_outlier) j["s_upper_low_outlier_bits"] = *ec.s_upper_low_outlier;
  if (ec.ic_lower) j["ic_lower_ebits"] = *ec.ic_lower;
  return j;
}

json estimate_to_json(const tsirelson::TsirelsonEstimate& est, const std::string& name) {
  std::vector<double> eigs(est.top_eigenvalues.data(),
                           est.top_eigenvalues.data() + est.top_eigenvalues.size());
  return json{{"name", name},
              {"d", est.dim},
              {"t", est.t},
              {"value", est.value},
              {"top_eigenvalues", eigs},
              {"per_restart_values", est.per_restart_values},
              {"converged", est.converged}};
}

json state_to_json(const numerics::Matrix& rho) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    json re_row = json::array(), im_row = json::array();
    for (Eigen::Index k = 0; k < rho.cols(); ++k) {
      re_row.push_back(rho(i, k).real());
      im_row.push_back(rho(i, k).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"size", rho.rows()}, {"re", re}, {"im", im}};
}

numerics::Matrix state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ValidationError("state: expected an object with re and im matrices");
  const json& re = j.at("re");
  const json& im = j.at("im");
  const auto n = re.size();
  if (n == 0 || im.size() != n)
    throw ValidationError("state: re and im must be equal-size square matrices");
  numerics::Matrix rho(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (re.at(i).size() != n || im.at(i).size() != n)
      throw ValidationError("state: re and im must be square");
    for (std::size_t k = 0; k < n; ++k)
      rho(i, k) = numerics::Complex(re.at(i).at(k).get<double>(),
                                    im.at(i).at(k).get<double>());
  }
  return rho;
}

json assemblage_to_json(const bell::Assemblage& m) {
  json settings = json::array();
  for (const auto& povm : m.povms) {
    json outcomes = json::array();
    for (const auto& op : povm) outcomes.push_back(state_to_json(op));
    settings.push_back(std::move(outcomes));
  }
  return json{{"dim", m.dim}, {"povms", settings}};
}

bell::Assemblage assemblage_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("povms"))
    throw ValidationError("assemblage: expected an object with dim and povms");
  bell::Assemblage m;
  m.dim = j.at("dim").get<int>();
  for (const auto& setting : j.at("povms")) {
    std::vector<numerics::Matrix> povm;
    for (const auto& op : setting) povm.push_back(state_from_json(op));
    m.povms.push_back(std::move(povm));
  }
  bell::check_assemblage(m);
  return m;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string{}; }

}  // namespace

std::string sweep_to_csv(const std::vector<experiments::SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepCsvHeader << "\n";
  for (const auto& r : rows) {
    out << fmt(r.w) << ',' << fmt(r.violation) << ',' << fmt(r.gap) << ',' << fmt(r.eps1)
        << ',' << fmt_opt(r.eps2) << ',' << fmt_opt(r.purity_lower) << ','
        << fmt_opt(r.s_upper) << ',' << fmt(r.gamma_a) << ',' << fmt(r.s_lower) << ','
        << fmt_opt(r.ic_lower) << ',' << fmt_opt(r.ic_true) << "\n";
  }
  return out.str();
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError("in " + path + ": " + e.what());
  }
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write file: " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

bell::Expression expression_by_name_or_file(const std::string& name_or_path) {
  if (name_or_path == "cglmp3" || name_or_path == "chsh")
    return bell::builtin_expression(name_or_path);
  if (std::filesystem::exists(name_or_path))
    return expression_from_json(load_json_file(name_or_path));
  throw UnknownNameError("expression '" + name_or_path +
                         "' is neither a builtin name nor an existing file");
}

}  // namespace bellcert::io
