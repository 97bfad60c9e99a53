#include "joinery/io.hpp"

#include <fstream>
#include <numeric>

#include "joinery/error.hpp"

namespace joinery {

Json system_to_json(const FiniteSystem& sys) {
  Json j;
  j["n"] = sys.size();
  Json weights = Json::array();
  for (int p = 0; p < sys.size(); ++p)
    weights.push_back(format_rational(sys.weight(p)));
  j["weights"] = std::move(weights);
  Json maps = Json::array();
  for (int m = 0; m < sys.dims(); ++m) maps.push_back(sys.map(m).forward());
  j["maps"] = std::move(maps);
  return j;
}

SystemData system_data_from_json(const Json& j) {
  SystemData data;
  try {
    data.n = j.at("n").get<int>();
    for (const auto& w : j.at("weights"))
      data.weights.push_back(parse_rational(w.get<std::string>()));
    for (const auto& m : j.at("maps"))
      data.maps.push_back(m.get<std::vector<int>>());
  } catch (const Json::exception& e) {
    fail(ErrorKind::invalid_input, std::string("bad system JSON: ") + e.what());
  }
  return data;
}

SystemPtr system_from_json(const Json& j) {
  return std::make_shared<const FiniteSystem>(FiniteSystem(system_data_from_json(j)));
}

Json partition_to_json(const Partition& p) {
  return Json{{"label", p.labels()}};
}

Partition partition_from_json(SystemPtr sys, const Json& j) {
  try {
    return Partition(std::move(sys), j.at("label").get<std::vector<int>>());
  } catch (const Json::exception& e) {
    fail(ErrorKind::invalid_input,
         std::string("bad partition JSON: ") + e.what());
  }
}

Json observable_to_json(const Observable& f) {
  Json j;
  if (!f.is_exact()) {
    bool any_imag = false;
    for (const auto& v : f.float_values()) any_imag = any_imag || v.imag() != 0;
    Json values = Json::array();
    for (const auto& v : f.float_values()) {
      if (any_imag)
        values.push_back(Json::array({v.real(), v.imag()}));
      else
        values.push_back(v.real());
    }
    j["float"] = std::move(values);
    return j;
  }

  bool gaussian = true;
  std::vector<std::pair<Rational, Rational>> rect;
  for (const auto& v : f.values()) {
    auto parts = v.gaussian_parts();
    if (!parts) {
      gaussian = false;
      break;
    }
    rect.push_back(*parts);
  }
  if (gaussian) {
    Json re = Json::array(), im = Json::array();
    for (const auto& [r, i] : rect) {
      re.push_back(format_rational(r));
      im.push_back(format_rational(i));
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
  }

  long order = 1;
  for (const auto& v : f.values()) order = std::lcm(order, v.order());
  Json coeffs = Json::array();
  for (const auto& v : f.values()) {
    Json row = Json::array();
    for (const auto& c : v.lifted_coeffs(order)) row.push_back(format_rational(c));
    coeffs.push_back(std::move(row));
  }
  j["order"] = order;
  j["coeffs"] = std::move(coeffs);
  return j;
}

Observable observable_from_json(SystemPtr sys, const Json& j) {
  try {
    if (j.contains("float")) {
      std::vector<std::complex<double>> values;
      for (const auto& v : j.at("float")) {
        if (v.is_array())
          values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        else
          values.emplace_back(v.get<double>(), 0.0);
      }
      return Observable::floating(std::move(sys), std::move(values));
    }
    if (j.contains("coeffs")) {
      long order = j.at("order").get<long>();
      std::vector<Cyclotomic> values;
      for (const auto& row : j.at("coeffs")) {
        Cyclotomic acc;
        long k = 0;
        for (const auto& c : row) {
          acc += Cyclotomic(parse_rational(c.get<std::string>())) *
                 Cyclotomic::root_of_unity(order, k);
          ++k;
        }
        values.push_back(std::move(acc));
      }
      return Observable::exact(std::move(sys), std::move(values));
    }
    std::vector<Cyclotomic> values;
    const auto& re = j.at("re");
    const Json* im = j.contains("im") ? &j.at("im") : nullptr;
    for (size_t p = 0; p < re.size(); ++p) {
      Rational r = parse_rational(re.at(p).get<std::string>());
      Rational i = im ? parse_rational(im->at(p).get<std::string>()) : Rational(0);
      values.push_back(Cyclotomic::from_rect(r, i));
    }
    return Observable::exact(std::move(sys), std::move(values));
  } catch (const Json::exception& e) {
    fail(ErrorKind::invalid_input,
         std::string("bad observable JSON: ") + e.what());
  }
}

Json coupling_to_json(const Coupling& c) {
  Json j;
  Json components = Json::array();
  for (const auto& sys : c.components()) components.push_back(system_to_json(*sys));
  j["components"] = std::move(components);
  Json masses = Json::array();
  for (const auto& [t, m] : c.masses())
    masses.push_back(Json{{"tuple", t}, {"mass", format_rational(m)}});
  j["masses"] = std::move(masses);
  return j;
}

Coupling coupling_from_json(const Json& j,
                            const std::filesystem::path& base_dir) {
  try {
    std::vector<SystemPtr> components;
    for (const auto& entry : j.at("components")) {
      if (entry.is_string()) {
        Json sub = load_json_file(base_dir / entry.get<std::string>());
        components.push_back(system_from_json(sub));
      } else {
        components.push_back(system_from_json(entry));
      }
    }
    std::map<Tuple, Rational> masses;
    for (const auto& entry : j.at("masses")) {
      Tuple t = entry.at("tuple").get<Tuple>();
      masses[t] = parse_rational(entry.at("mass").get<std::string>());
    }
    return Coupling(std::move(components), std::move(masses), {});
  } catch (const Json::exception& e) {
    fail(ErrorKind::invalid_input,
         std::string("bad coupling JSON: ") + e.what());
  }
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorKind::invalid_input, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorKind::invalid_input,
         "parse error in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j,
                     bool pretty) {
  std::ofstream out(path);
  if (!out)
    fail(ErrorKind::invalid_input, "cannot open " + path.string() + " for writing");
  out << (pretty ? j.dump(2) : j.dump()) << "\n";
}

}  // namespace joinery
