#include "germcalc/json_io.hpp"

#include <fstream>

#include "germcalc/errors.hpp"

namespace germcalc {

namespace {

json rational_pair(const GaussianRational& v) {
  return json{{"re", GaussianRational::rational_str(v.re())},
              {"im", GaussianRational::rational_str(v.im())}};
}

GaussianRational rational_pair_from(const json& j) {
  require(j.is_object() && j.contains("re") && j.contains("im"), ErrorKind::ParseError,
          "expected an object with \"re\" and \"im\"");
  return GaussianRational(GaussianRational::parse_rational(j.at("re").get<std::string>()),
                          GaussianRational::parse_rational(j.at("im").get<std::string>()));
}

std::vector<std::uint32_t> exponents_from(const json& j, int expect, const char* what) {
  require(j.is_array() && static_cast<int>(j.size()) == expect, ErrorKind::ParseError,
          std::string("bad ") + what + " exponent list");
  std::vector<std::uint32_t> e;
  e.reserve(j.size());
  for (const auto& v : j) {
    require(v.is_number_integer() && v.get<long>() >= 0, ErrorKind::ParseError,
            std::string(what) + " exponents must be non-negative integers");
    e.push_back(static_cast<std::uint32_t>(v.get<long>()));
  }
  return e;
}

}  // namespace

json jet_to_json(const Jet& jet) {
  json base = json::array();
  for (const auto& b : jet.base())
    base.push_back(json::array({GaussianRational::rational_str(b.re()),
                                GaussianRational::rational_str(b.im())}));
  json coeffs = json::array();
  for (const auto& [alpha, v] : jet.coeffs()) {
    json entry;
    entry["alpha"] = alpha.entries();
    entry["re"] = GaussianRational::rational_str(v.re());
    entry["im"] = GaussianRational::rational_str(v.im());
    coeffs.push_back(std::move(entry));
  }
  return json{{"dim", jet.dim()}, {"order", jet.order()}, {"base", std::move(base)},
              {"coeffs", std::move(coeffs)}};
}

Jet jet_from_json(const json& j) {
  require(j.is_object() && j.contains("dim") && j.contains("order") && j.contains("base") &&
              j.contains("coeffs"),
          ErrorKind::ParseError, "jet document needs dim, order, base, coeffs");
  const int dim = j.at("dim").get<int>();
  const int order = j.at("order").get<int>();
  Point base;
  for (const auto& b : j.at("base")) {
    require(b.is_array() && b.size() == 2, ErrorKind::ParseError,
            "base entries must be [re, im] string pairs");
    base.emplace_back(GaussianRational::parse_rational(b[0].get<std::string>()),
                      GaussianRational::parse_rational(b[1].get<std::string>()));
  }
  Jet::CoeffMap coeffs;
  for (const auto& entry : j.at("coeffs")) {
    MultiIndex alpha{exponents_from(entry.at("alpha"), dim, "alpha")};
    GaussianRational v(GaussianRational::parse_rational(entry.at("re").get<std::string>()),
                       GaussianRational::parse_rational(entry.at("im").get<std::string>()));
    auto [it, inserted] = coeffs.emplace(std::move(alpha), std::move(v));
    require(inserted, ErrorKind::ParseError, "duplicate coefficient entry");
  }
  return Jet(dim, order, std::move(base), std::move(coeffs));
}

json system_to_json(const ImplicitSystem& sys) {
  json components = json::array();
  for (const auto& p : sys.components()) {
    json monos = json::array();
    for (const auto& [alpha, v] : p.coeffs()) {
      std::vector<std::uint32_t> xexp, yexp;
      for (int i = 0; i < sys.var_count(); ++i) xexp.push_back(alpha[i]);
      for (int i = sys.var_count(); i < sys.poly_dim(); ++i) yexp.push_back(alpha[i]);
      monos.push_back(json{{"xexp", xexp}, {"yexp", yexp}, {"coeff", rational_pair(v)}});
    }
    components.push_back(std::move(monos));
  }
  return json{{"size", sys.size()}, {"vars", sys.var_count()},
              {"components", std::move(components)}};
}

ImplicitSystem system_from_json(const json& j) {
  require(j.is_object() && j.contains("size") && j.contains("vars") && j.contains("components"),
          ErrorKind::ParseError, "system document needs size, vars, components");
  const int size = j.at("size").get<int>();
  const int vars = j.at("vars").get<int>();
  require(size >= 1 && vars > size, ErrorKind::ParseError,
          "system needs vars > size (vars = base_dim + size)");
  const int base_dim = vars - size;
  std::vector<Polynomial> comps;
  for (const auto& mono_list : j.at("components")) {
    Polynomial::CoeffMap m;
    for (const auto& mono : mono_list) {
      std::vector<std::uint32_t> e = exponents_from(mono.at("xexp"), vars, "xexp");
      std::vector<std::uint32_t> y = exponents_from(mono.at("yexp"), vars, "yexp");
      e.insert(e.end(), y.begin(), y.end());
      auto [it, inserted] = m.emplace(MultiIndex(std::move(e)),
                                      rational_pair_from(mono.at("coeff")));
      if (!inserted) it->second += rational_pair_from(mono.at("coeff"));
    }
    comps.emplace_back(2 * vars, std::move(m));
  }
  return ImplicitSystem(base_dim, size, std::move(comps));
}

json solution_to_json(const ImplicitSolution& sol) {
  json jets = json::array();
  for (int i = 1; i <= sol.base_dim(); ++i)
    jets.push_back(jet_to_json(
        Jet::coordinate(sol.base_dim(), sol.order(), sol.base(), i)));
  for (const auto& jjet : sol.unknowns()) jets.push_back(jet_to_json(jjet));
  return json{{"base_dim", sol.base_dim()}, {"jets", std::move(jets)}};
}

ImplicitSolution solution_from_json(const json& j) {
  require(j.is_object() && j.contains("base_dim") && j.contains("jets"), ErrorKind::ParseError,
          "solution document needs base_dim and jets");
  const int d = j.at("base_dim").get<int>();
  std::vector<Jet> jets;
  for (const auto& e : j.at("jets")) jets.push_back(jet_from_json(e));
  require(static_cast<int>(jets.size()) > d, ErrorKind::ParseError,
          "solution needs coordinate germs plus at least one unknown");
  for (int i = 1; i <= d; ++i) {
    const Jet& c = jets[static_cast<std::size_t>(i - 1)];
    Jet expect = Jet::coordinate(c.dim(), c.order(), c.base(), i);
    require(c == expect, ErrorKind::ParseError,
            "leading solution entries must be the coordinate germs");
  }
  return ImplicitSolution(std::vector<Jet>(jets.begin() + d, jets.end()));
}

json chart_to_json(const Chart& chart) { return json{{"lambda", chart.label()}}; }

Chart chart_from_json(const json& j) {
  require(j.is_object() && j.contains("lambda"), ErrorKind::ParseError,
          "chart document needs a lambda label");
  return Chart::parse(j.at("lambda").get<std::string>());
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded(), ErrorKind::ParseError, "malformed JSON document");
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::BadArgument, "cannot open file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_json_text(text);
}

}  // namespace germcalc
