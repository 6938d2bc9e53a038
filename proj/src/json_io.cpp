#include "pjlab/json_io.hpp"

#include <sstream>

namespace pjlab {

Rat rat_from_json(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_number_float()) {
    // parse the decimal text, not the binary double, so "0.1" means 1/10
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return parse_rational(os.str());
  }
  fail(Errc::DomainError, "expected a number or a rational string");
}

Json scalar_json(const Rat& q) {
  return Json{{"rat", rat_string(q)}, {"val", to_double(q)}};
}

Json scalar_json(double x) { return Json(x); }

Json sqrtrat_json(const SqrtRat& v) {
  Json j{{"val", v.value()}};
  if (auto r = v.as_rational())
    j["rat"] = rat_string(*r);
  else
    j["sqrt_of"] = Json{{"sign", v.sign}, {"square", rat_string(v.square)}};
  return j;
}

Json mask_json(Mask S) {
  Json arr = Json::array();
  for (int c : mask_coords(S)) arr.push_back(c + 1);
  return arr;
}

Mask mask_from_json(const Json& v, int n) {
  require(v.is_array(), Errc::DomainError, "coordinate set must be an array");
  Mask m = 0;
  for (const auto& item : v) {
    long long c = item.get<long long>();
    require(c >= 1 && c <= n, Errc::SymbolOutOfRange,
            "coordinate " + std::to_string(c) + " out of [1," + std::to_string(n) + "]");
    m |= Mask(1) << (c - 1);
  }
  return m;
}

template <class R>
SpacePtr<R> space_from_json(const Json& doc) {
  require(doc.contains("n") && doc.contains("space"), Errc::DomainError,
          "space spec needs fields n and space");
  int n = doc.at("n").get<int>();
  const Json& s = doc.at("space");
  std::string kind = s.value("kind", "");
  if (kind == "p-biased") {
    Rat p = rat_from_json(s.at("p"));
    return ProductSpace<R>::pbiased(n, scalar_cast<R>(p));
  }
  if (kind == "finite") {
    const Json& coords = s.at("coords");
    require(coords.is_array() && static_cast<int>(coords.size()) == n, Errc::DomainError,
            "finite space needs exactly n coordinate weight lists");
    std::vector<std::vector<R>> ws;
    for (const auto& row : coords) {
      std::vector<R> w;
      for (const auto& x : row) w.push_back(scalar_cast<R>(rat_from_json(x)));
      ws.push_back(std::move(w));
    }
    return ProductSpace<R>::make(std::move(ws));
  }
  fail(Errc::DomainError, "space kind must be p-biased or finite");
}

template <class R>
Json space_to_json(const ProductSpace<R>& sp) {
  Json j;
  j["n"] = sp.n();
  if (auto p = sp.common_bias()) {
    if constexpr (kExact<R>)
      j["space"] = Json{{"kind", "p-biased"}, {"p", rat_string(*p)}};
    else
      j["space"] = Json{{"kind", "p-biased"}, {"p", *p}};
  } else {
    Json coords = Json::array();
    for (int i = 0; i < sp.n(); ++i) {
      Json row = Json::array();
      for (int a = 0; a < sp.m(i); ++a) {
        if constexpr (kExact<R>)
          row.push_back(rat_string(sp.weight(i, a)));
        else
          row.push_back(sp.weight(i, a));
      }
      coords.push_back(std::move(row));
    }
    j["space"] = Json{{"kind", "finite"}, {"coords", std::move(coords)}};
  }
  return j;
}

namespace {

std::vector<std::uint8_t> bool_values_from_json(const Json& values, std::uint64_t expected) {
  std::vector<std::uint8_t> tab;
  if (values.is_string()) {
    for (char c : values.get<std::string>()) {
      require(c == '0' || c == '1', Errc::NonBooleanValue, "table string must be 0/1 digits");
      tab.push_back(c == '1');
    }
  } else {
    require(values.is_array(), Errc::DomainError, "table values must be an array or 0/1 string");
    for (const auto& v : values) {
      long long x = v.get<long long>();
      require(x == 0 || x == 1, Errc::NonBooleanValue, "boolean table entry not in {0,1}");
      tab.push_back(static_cast<std::uint8_t>(x));
    }
  }
  require(tab.size() == expected, Errc::TableLengthMismatch,
          "table length " + std::to_string(tab.size()) + " != outcome count " +
              std::to_string(expected));
  return tab;
}

}  // namespace

template <class R>
FunctionRep<R> function_from_json(const Json& doc) {
  require(doc.contains("space") && doc.contains("function"), Errc::DomainError,
          "function spec needs fields space and function");
  auto sp = space_from_json<R>(doc);
  const Json& fn = doc.at("function");
  std::string kind = fn.value("kind", "");
  if (kind == "table") {
    const Json& values = fn.at("values");
    std::string range = fn.value("range", "boolean");
    if (range == "boolean")
      return FunctionRep<R>::bool_table(sp, bool_values_from_json(values, sp->outcome_count()));
    std::vector<R> tab;
    for (const auto& v : values) tab.push_back(scalar_cast<R>(rat_from_json(v)));
    return FunctionRep<R>::real_table(sp, std::move(tab));
  }
  if (kind == "builtin") {
    BuiltinSpec spec;
    spec.name = fn.at("name").get<std::string>();
    const Json params = fn.value("params", Json::object());
    if (spec.name == "dictator") spec.param = params.value("i", 1) - 1;  // 1-based input
    if (spec.name == "threshold") spec.param = params.value("t", 1);
    if (spec.name == "tribes") spec.param = params.value("w", 1);
    if (spec.name == "parity") spec.param = params.value("even", true) ? 0 : 1;
    return FunctionRep<R>::builtin(sp, std::move(spec));
  }
  fail(Errc::UnknownBuiltin, "function kind must be table or builtin");
}

template <class R>
Json function_to_json(const FunctionRep<R>& f) {
  Json j = space_to_json(*f.space());
  if (const auto& b = f.builtin_spec()) {
    Json params = Json::object();
    if (b->name == "dictator") params["i"] = b->param + 1;
    if (b->name == "threshold") params["t"] = b->param;
    if (b->name == "tribes") params["w"] = b->param;
    if (b->name == "parity") params["even"] = b->param == 0;
    j["function"] = Json{{"kind", "builtin"}, {"name", b->name}, {"params", params}};
    return j;
  }
  Json values = Json::array();
  if (f.is_boolean()) {
    for (auto v : f.bool_values()) values.push_back(static_cast<int>(v));
    j["function"] = Json{{"kind", "table"}, {"values", values}};
  } else {
    for (const auto& v : f.real_values()) {
      if constexpr (kExact<R>)
        values.push_back(rat_string(v));
      else
        values.push_back(v);
    }
    j["function"] = Json{{"kind", "table"}, {"range", "real"}, {"values", values}};
  }
  return j;
}

template <class R>
JuntaCollection<R> collection_from_json(const Json& doc, SpacePtr<R> sp) {
  require(doc.contains("entries") && doc.at("entries").is_array(), Errc::DomainError,
          "collection needs an entries array");
  JuntaCollection<R> J(sp);
  for (const auto& e : doc.at("entries")) {
    Mask S = mask_from_json(e.at("S"), sp->n());
    const Json& detector = e.at("J");
    std::string kind = detector.value("kind", "");
    if (kind == "table") {
      SubGrid g = sp->subgrid(S);
      J.set_entry(S, bool_values_from_json(detector.at("values"), g.count));
    } else if (kind == "all-ones-indicator") {
      J.set_all_ones_indicator(S);
    } else if (kind == "const1") {
      J.set_const_one(S);
    } else {
      fail(Errc::DomainError, "detector kind must be table, all-ones-indicator, or const1");
    }
  }
  return J;
}

template <class R>
Json collection_to_json(const JuntaCollection<R>& J) {
  Json entries = Json::array();
  for (const auto& [S, e] : J.entries()) {
    Json values = Json::array();
    for (auto v : e.table) values.push_back(static_cast<int>(v));
    entries.push_back(Json{{"S", mask_json(S)}, {"J", Json{{"kind", "table"}, {"values", values}}}});
  }
  return Json{{"entries", entries}};
}

Json schedule_to_json(const ParameterSchedule& s) {
  Json j;
  j["mode"] = mode_name(s.mode);
  j["C"] = s.C;
  j["epsilon"] = rat_string(s.epsilon);
  j["bit_budget"] = s.bit_budget;
  Json fields = Json::object();
  for (const auto* f : s.fields()) {
    Json fj{{"log2", f->log2},
            {"overridden", f->overridden},
            {"underflows_double", f->underflows_double}};
    if (f->exact) fj["exact"] = rat_string(*f->exact);
    fields[f->name] = std::move(fj);
  }
  j["fields"] = std::move(fields);
  j["overridden"] = s.any_overridden();
  return j;
}

std::string json_digest(const Json& doc) {
  std::string dump = doc.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a:") + buf;
}

template SpacePtr<Rat> space_from_json<Rat>(const Json&);
template SpacePtr<double> space_from_json<double>(const Json&);
template Json space_to_json<Rat>(const ProductSpace<Rat>&);
template Json space_to_json<double>(const ProductSpace<double>&);
template FunctionRep<Rat> function_from_json<Rat>(const Json&);
template FunctionRep<double> function_from_json<double>(const Json&);
template Json function_to_json<Rat>(const FunctionRep<Rat>&);
template Json function_to_json<double>(const FunctionRep<double>&);
template JuntaCollection<Rat> collection_from_json<Rat>(const Json&, SpacePtr<Rat>);
template JuntaCollection<double> collection_from_json<double>(const Json&, SpacePtr<double>);
template Json collection_to_json<Rat>(const JuntaCollection<Rat>&);
template Json collection_to_json<double>(const JuntaCollection<double>&);

}  // namespace pjlab
