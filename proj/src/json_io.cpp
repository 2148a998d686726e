#include "hn/json_io.hpp"

#include <chrono>

#include "hn/engine.hpp"

namespace hn {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Rat parse_rat_field(const json& j, const char* where) {
  if (j.is_number_integer()) return Rat(long(j.get<int64_t>()));
  if (!j.is_string()) throw input_error(std::string(where) + ": rational must be a string \"a/b\"");
  try {
    return rat_from_string(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw input_error(std::string(where) + ": " + e.what());
  }
}

MultiFiltSpace parse_multifilt(const json& j) {
  MultiFiltSpace x;
  if (!j.contains("p") || !j["p"].is_number_integer()) throw input_error("multifilt_fp: missing prime p");
  x.p = j["p"].get<int>();
  if (x.p < 2 || x.p > 97) throw input_error("multifilt_fp: p out of range");
  for (int d = 2; d * d <= x.p; ++d)
    if (x.p % d == 0) throw input_error("multifilt_fp: p not prime");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw input_error("multifilt_fp: missing dim");
  x.dim = j["dim"].get<int>();
  if (x.dim < 0 || x.dim > 12) throw input_error("multifilt_fp: dim out of range");
  if (!j.contains("alpha") || !j["alpha"].is_array()) throw input_error("multifilt_fp: missing alpha");
  for (const auto& a : j["alpha"]) {
    const Rat q = parse_rat_field(a, "alpha");
    if (q < 0) throw input_error("multifilt_fp: negative alpha entry");
    x.alpha.push_back(q);
  }
  if (!j.contains("filtrations") || !j["filtrations"].is_array())
    throw input_error("multifilt_fp: missing filtrations");
  if (j["filtrations"].size() != x.alpha.size())
    throw input_error("multifilt_fp: alpha/filtrations length mismatch");
  for (const auto& jf : j["filtrations"]) {
    if (!jf.contains("weights") || !jf.contains("flag"))
      throw input_error("multifilt_fp: filtration needs weights and flag");
    FpFiltration f;
    f.orientation = Orientation::left_continuous;
    for (const auto& w : jf["weights"]) f.breakpoints.push_back(parse_rat_field(w, "weights"));
    for (size_t i = 1; i < f.breakpoints.size(); ++i)
      if (!(f.breakpoints[i] < f.breakpoints[i - 1]))
        throw input_error("multifilt_fp: weights not strictly decreasing");
    f.values.push_back(SubspaceFp::zero(x.p, x.dim));
    if (!jf["flag"].is_array() || jf["flag"].size() != f.breakpoints.size())
      throw input_error("multifilt_fp: flag/weights length mismatch");
    for (const auto& step : jf["flag"]) {
      if (!step.is_array()) throw input_error("multifilt_fp: flag step must be a vector list");
      FpMat rows(x.p, int(step.size()), x.dim);
      int r = 0;
      for (const auto& vec : step) {
        if (!vec.is_array() || int(vec.size()) != x.dim)
          throw input_error("multifilt_fp: flag vector has wrong length");
        for (int c = 0; c < x.dim; ++c) {
          if (!vec[c].is_number_integer()) throw input_error("multifilt_fp: flag entries are integers");
          long v = vec[c].get<long>() % x.p;
          if (v < 0) v += x.p;
          rows.at(r, c) = uint8_t(v);
        }
        ++r;
      }
      const SubspaceFp s = SubspaceFp::from_rows(rows);
      if (!subspace_contains(s, f.values.back()) || s == f.values.back())
        throw input_error("multifilt_fp: flag is not a strictly increasing chain");
      f.values.push_back(s);
    }
    if (!(f.values.back() == SubspaceFp::full(x.p, x.dim)))
      throw input_error("multifilt_fp: flag must end at the full space");
    x.filtrations.push_back(std::move(f));
  }
  try {
    validate(x);
  } catch (const std::exception& e) {
    throw input_error(std::string("multifilt_fp: ") + e.what());
  }
  return x;
}

EuclideanLattice parse_lattice(const json& j) {
  if (!j.contains("gram") || !j["gram"].is_array()) throw input_error("lattice: missing gram");
  const auto& g = j["gram"];
  const int r = int(g.size());
  EuclideanLattice l{r, QMat(r, r)};
  for (int i = 0; i < r; ++i) {
    if (!g[i].is_array() || int(g[i].size()) != r) throw input_error("lattice: gram must be square");
    for (int k = 0; k < r; ++k) l.gram.at(i, k) = parse_rat_field(g[i][k], "gram");
  }
  try {
    validate(l);
  } catch (const std::exception& e) {
    throw input_error(std::string("lattice: ") + e.what());
  }
  return l;
}

}  // namespace

InputDocument parse_input(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("version") || j["version"] != kInputVersion)
    throw input_error(std::string("unsupported input version (want ") + kInputVersion + ")");
  if (!j.contains("kind") || !j["kind"].is_string()) throw input_error("missing kind");
  InputDocument doc;
  doc.kind = j["kind"].get<std::string>();
  if (doc.kind == "multifilt_fp") {
    if (!j.contains("multifilt_fp")) throw input_error("missing multifilt_fp payload");
    doc.multifilt = parse_multifilt(j["multifilt_fp"]);
  } else if (doc.kind == "lattice") {
    if (!j.contains("lattice")) throw input_error("missing lattice payload");
    doc.lattice = parse_lattice(j["lattice"]);
  } else {
    throw input_error("unknown kind: " + doc.kind);
  }
  return doc;
}

InputDocument input_from_multifilt(const MultiFiltSpace& x) {
  InputDocument d;
  d.kind = "multifilt_fp";
  d.multifilt = x;
  return d;
}

InputDocument input_from_lattice(const EuclideanLattice& l) {
  InputDocument d;
  d.kind = "lattice";
  d.lattice = l;
  return d;
}

std::string serialize_input(const InputDocument& doc) {
  ordered_json j;
  j["version"] = kInputVersion;
  j["kind"] = doc.kind;
  if (doc.multifilt) {
    const auto& x = *doc.multifilt;
    ordered_json m;
    m["p"] = x.p;
    m["dim"] = x.dim;
    ordered_json alphas = ordered_json::array();
    for (const auto& a : x.alpha) alphas.push_back(rat_to_string(a));
    m["alpha"] = std::move(alphas);
    ordered_json filts = ordered_json::array();
    for (const auto& f : x.filtrations) {
      ordered_json jf;
      ordered_json weights = ordered_json::array();
      for (const auto& w : f.breakpoints) weights.push_back(rat_to_string(w));
      jf["weights"] = std::move(weights);
      ordered_json flag = ordered_json::array();
      for (size_t i = 1; i < f.values.size(); ++i) {
        ordered_json step = ordered_json::array();
        for (int r = 0; r < f.values[i].basis.rows; ++r) {
          ordered_json vec = ordered_json::array();
          for (int c = 0; c < f.values[i].dim; ++c) vec.push_back(int(f.values[i].basis.at(r, c)));
          step.push_back(std::move(vec));
        }
        flag.push_back(std::move(step));
      }
      jf["flag"] = std::move(flag);
      filts.push_back(std::move(jf));
    }
    m["filtrations"] = std::move(filts);
    j["multifilt_fp"] = std::move(m);
  }
  if (doc.lattice) {
    ordered_json g = ordered_json::array();
    for (int i = 0; i < doc.lattice->rank; ++i) {
      ordered_json row = ordered_json::array();
      for (int k = 0; k < doc.lattice->rank; ++k) row.push_back(rat_to_string(doc.lattice->gram.at(i, k)));
      g.push_back(std::move(row));
    }
    j["lattice"] = {{"gram", std::move(g)}};
  }
  return j.dump(2);
}

ordered_json slope_json(const ExactSlope& s, int digits) {
  ordered_json j;
  ordered_json exact;
  if (!s.is_finite()) {
    exact["sentinel"] = s.kind() == ExactSlope::Kind::neg_inf ? "-inf" : "+inf";
  } else if (s.scale() == Scale::rational) {
    exact["rational"] = rat_to_string(s.rational_value());
  } else {
    exact["neg_half_log_of"] = rat_to_string(s.log_argument());
    if (s.log_rank() != 1) exact["root"] = s.log_rank().get_si();
  }
  j["exact"] = std::move(exact);
  if (s.is_finite()) j["decimal"] = decimal_string(s.to_double(), digits);
  return j;
}

ordered_json degree_json(const ExactDegree& d, int digits) {
  ordered_json j;
  ordered_json exact;
  if (d.scale() == Scale::rational)
    exact["rational"] = rat_to_string(d.rational_value());
  else
    exact["neg_half_log_of"] = rat_to_string(d.log_argument());
  j["exact"] = std::move(exact);
  j["decimal"] = decimal_string(d.to_double(), digits);
  return j;
}

ExactSlope slope_from_json(const json& j) {
  const json& exact = j.contains("exact") ? j["exact"] : j;
  if (exact.contains("sentinel"))
    return exact["sentinel"] == "-inf" ? ExactSlope::negative_infinity()
                                       : ExactSlope::positive_infinity();
  if (exact.contains("rational"))
    return ExactSlope::rational(rat_from_string(exact["rational"].get<std::string>()));
  if (exact.contains("neg_half_log_of")) {
    Int root(1);
    if (exact.contains("root")) root = Int(exact["root"].get<long>());
    return ExactSlope::log_scaled(rat_from_string(exact["neg_half_log_of"].get<std::string>()), root);
  }
  throw input_error("unrecognized slope encoding");
}

namespace {

ordered_json polygon_json(const Polygon& p, int digits) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : p.vertices) {
    ordered_json jv;
    jv["t"] = rat_to_string(v.t);
    jv["height"] = slope_json(v.height, digits);
    arr.push_back(std::move(jv));
  }
  return arr;
}

ordered_json measure_json(const DiracMeasure& m, int digits) {
  ordered_json arr = ordered_json::array();
  for (const auto& a : m.atoms) {
    ordered_json ja;
    ja["location"] = slope_json(a.location, digits);
    ja["mass"] = rat_to_string(a.mass);
    arr.push_back(std::move(ja));
  }
  return arr;
}

ordered_json fp_basis_json(const SubspaceFp& s) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < s.basis.rows; ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < s.dim; ++j) row.push_back(int(s.basis.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json lattice_basis_json(const Sublattice& s) {
  ordered_json cols = ordered_json::array();
  for (int j = 0; j < s.basis.cols; ++j) {
    ordered_json col = ordered_json::array();
    for (int i = 0; i < s.basis.rows; ++i) col.push_back(s.basis.at(i, j).get_str());
    cols.push_back(std::move(col));
  }
  return cols;
}

}  // namespace

ComputeOutput compute_document(const InputDocument& doc, const ComputeOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  ComputeOutput out;
  ordered_json& j = out.result;
  j["version"] = kResultVersion;
  j["kind"] = doc.kind;
  j["digits"] = opt.digits;

  auto finish = [&](auto&& host, const auto& obj, const auto& d, const char* cert) {
    j["rank"] = d.total_rank;
    if (!d.is_zero()) {
      j["degree"] = degree_json(d.degrees.back(), opt.digits);
      j["slope"] = slope_json(ExactSlope::from_degree(d.degrees.back(), Int(d.total_rank)), opt.digits);
      j["semistable"] = d.length() == 1;
    } else {
      j["semistable"] = nullptr;
    }
    ordered_json chain = ordered_json::array();
    for (size_t i = 0; i < d.chain.size(); ++i) {
      ordered_json step;
      step["rank"] = d.ranks[i];
      if constexpr (std::is_same_v<std::decay_t<decltype(obj)>, MultiFiltSpace>)
        step["basis"] = fp_basis_json(d.chain[i]);
      else
        step["basis"] = lattice_basis_json(d.chain[i]);
      chain.push_back(std::move(step));
    }
    j["hn_chain"] = std::move(chain);
    ordered_json slopes = ordered_json::array();
    for (const auto& s : d.slopes) slopes.push_back(slope_json(s, opt.digits));
    j["slopes"] = std::move(slopes);
    out.polygon = hn_polygon(d);
    out.measure = hn_measure(d);
    j["polygon"] = polygon_json(out.polygon, opt.digits);
    j["measure"] = measure_json(out.measure, opt.digits);
    j["certification"] = cert;
    (void)host;
  };

  auto partial_failure = [&](const auto& e, const auto& ranks_of) {
    j["oracle_failure"] = e.what();
    ordered_json partial = ordered_json::array();
    for (const auto& s : e.partial_chain) partial.push_back(ranks_of(s));
    j["partial_chain_ranks"] = std::move(partial);
    out.oracle_failed = true;
  };

  if (doc.multifilt) {
    MultiFiltHost host;
    host.cfg = opt.fp_cfg;
    try {
      const auto d = hn_sequence(host, *doc.multifilt);
      const Int count = count_subspaces(doc.multifilt->p, doc.multifilt->dim);
      finish(host, *doc.multifilt, d, count <= opt.fp_cfg.enum_ceiling ? "exact" : "heuristic");
    } catch (const hn_sequence_error<SubspaceFp>& e) {
      partial_failure(e, [](const SubspaceFp& s) { return s.rank(); });
    }
  } else if (doc.lattice) {
    LatticeHost host;
    host.cfg = opt.lattice_cfg;
    host.worst_cert = Certification::proved;
    try {
      const auto d = hn_sequence(host, *doc.lattice);
      finish(host, *doc.lattice, d,
             host.worst_cert == Certification::proved ? "proved" : "heuristic");
    } catch (const hn_sequence_error<Sublattice>& e) {
      partial_failure(e, [](const Sublattice& s) { return s.rank(); });
    }
  } else {
    throw input_error("empty input document");
  }

  if (opt.include_timing) {
    const auto t1 = std::chrono::steady_clock::now();
    j["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  }
  return out;
}

}  // namespace hn
