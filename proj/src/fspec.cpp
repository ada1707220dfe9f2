#include "bftk/fspec.hpp"

#include <charconv>
#include <stdexcept>

#include "json.hpp"

#include "bftk/approx.hpp"
#include "bftk/formula.hpp"
#include "bftk/graph_property.hpp"
#include "bftk/polynomial.hpp"
#include "bftk/relations.hpp"
#include "bftk/spectral.hpp"

namespace bftk {

namespace {

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string("invalid ") + what + ": '" +
                                std::string(s) + "'");
  return v;
}

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    out.push_back(parse_int(s.substr(pos, comma - pos), "family parameter"));
    pos = comma + 1;
    if (comma == s.size()) break;
  }
  return out;
}

}  // namespace

TruthTable load_function_spec(std::string_view spec) {
  if (spec.substr(0, 3) == "tt:") return TruthTable::parse(spec);
  if (spec.substr(0, 4) == "fam:") {
    std::string_view rest = spec.substr(4);
    size_t colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("expected 'fam:<name>:<p1,p2,...>'");
    auto params = parse_int_list(rest.substr(colon + 1));
    return from_family(rest.substr(0, colon), params);
  }
  if (spec.substr(0, 8) == "formula:")
    return formula_to_table(parse_formula(spec.substr(8)));
  if (spec.substr(0, 6) == "graph:") {
    std::string_view rest = spec.substr(6);
    size_t colon = rest.rfind(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("expected 'graph:<name>:<vertices>'");
    return make_graph_property(rest.substr(0, colon),
                               parse_int(rest.substr(colon + 1), "vertices"))
        .table;
  }
  throw std::invalid_argument(
      "function spec must start with tt:, fam:, formula: or graph:");
}

MeasureRecord measure_function(const TruthTable& f, const std::string& fspec,
                               const std::vector<std::string>& measures) {
  MeasureRecord rec;
  rec.fspec = fspec;
  rec.n = f.arity();
  auto cap_error = [&](const std::string& id, int cap) {
    throw std::invalid_argument("measure '" + id + "' supports arity <= " +
                                std::to_string(cap) + "; '" + fspec +
                                "' has arity " + std::to_string(f.arity()));
  };
  for (const auto& id : measures) {
    if (id == "s" || id == "s0" || id == "s1" || id == "avg-s") {
      auto prof = sensitivity(f);
      rec.s = prof.s;
      rec.s0 = prof.s0;
      rec.s1 = prof.s1;
      rec.avg_sensitivity = prof.average;
    } else if (id == "bs") {
      if (f.arity() > kBlockSensitivityMaxArity)
        cap_error(id, kBlockSensitivityMaxArity);
      rec.bs = block_sensitivity(f).bs;
    } else if (id == "C" || id == "C0" || id == "C1") {
      if (f.arity() > kCertificateMaxArity) cap_error(id, kCertificateMaxArity);
      auto prof = certificate_complexity(f);
      rec.c = prof.c;
      rec.c0 = prof.c0;
      rec.c1 = prof.c1;
    } else if (id == "D") {
      if (f.arity() > kDecisionTreeMaxArity) cap_error(id, kDecisionTreeMaxArity);
      rec.d = det_query_complexity(f);
    } else if (id == "deg") {
      rec.deg = degree(f);
    } else if (id == "deg2") {
      rec.deg2 = degree_gf2(f);
    } else if (id == "lambda") {
      rec.lambda = spectral_sensitivity(f).lambda;
    } else if (id == "adeg") {
      if (f.arity() > kApproxDegreeMaxArity)
        cap_error(id, kApproxDegreeMaxArity);
      rec.adeg = approx_degree(f, 1.0 / 3.0).degree;
    } else {
      throw std::invalid_argument("unknown measure id '" + id + "'");
    }
  }
  return rec;
}

namespace {

template <class T>
void put(nlohmann::ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
std::string cell(const std::optional<T>& v) {
  return v ? std::to_string(*v) : "";
}

}  // namespace

std::string record_json(const MeasureRecord& rec) {
  nlohmann::ordered_json j;
  j["f"] = rec.fspec;
  j["n"] = rec.n;
  put(j, "s0", rec.s0);
  put(j, "s1", rec.s1);
  put(j, "s", rec.s);
  put(j, "bs", rec.bs);
  put(j, "C0", rec.c0);
  put(j, "C1", rec.c1);
  put(j, "C", rec.c);
  put(j, "D", rec.d);
  put(j, "deg", rec.deg);
  put(j, "deg2", rec.deg2);
  put(j, "adeg", rec.adeg);
  put(j, "lambda", rec.lambda);
  put(j, "avg_sensitivity", rec.avg_sensitivity);
  return j.dump(2) + "\n";
}

std::string record_csv_header() {
  return "f,n,s0,s1,s,bs,C0,C1,C,D,deg,deg2,adeg,lambda,avg_sensitivity\n";
}

std::string record_csv(const MeasureRecord& rec) {
  return rec.fspec + "," + std::to_string(rec.n) + "," + cell(rec.s0) + "," +
         cell(rec.s1) + "," + cell(rec.s) + "," + cell(rec.bs) + "," +
         cell(rec.c0) + "," + cell(rec.c1) + "," + cell(rec.c) + "," +
         cell(rec.d) + "," + cell(rec.deg) + "," + cell(rec.deg2) + "," +
         cell(rec.adeg) + "," + cell(rec.lambda) + "," +
         cell(rec.avg_sensitivity) + "\n";
}

}  // namespace bftk
