#include "innerfun/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "innerfun/zoo.hpp"

namespace innerfun {

namespace {

// FIPS 180-4 SHA-256, compact scalar version.
struct Sha256 {
  std::array<std::uint32_t, 8> h{0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                                 0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
  std::array<std::uint8_t, 64> buf{};
  std::uint64_t total = 0;
  std::size_t fill = 0;

  static std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void block(const std::uint8_t* p) {
    static const std::uint32_t k[64] = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
        0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
        0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
        0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
        0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
        0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
        0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
        0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
        0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
        0xc67178f2};
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    auto a = h;
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t s1 = rotr(a[4], 6) ^ rotr(a[4], 11) ^ rotr(a[4], 25);
      const std::uint32_t ch = (a[4] & a[5]) ^ (~a[4] & a[6]);
      const std::uint32_t t1 = a[7] + s1 + ch + k[i] + w[i];
      const std::uint32_t s0 = rotr(a[0], 2) ^ rotr(a[0], 13) ^ rotr(a[0], 22);
      const std::uint32_t maj = (a[0] & a[1]) ^ (a[0] & a[2]) ^ (a[1] & a[2]);
      const std::uint32_t t2 = s0 + maj;
      a[7] = a[6]; a[6] = a[5]; a[5] = a[4]; a[4] = a[3] + t1;
      a[3] = a[2]; a[2] = a[1]; a[1] = a[0]; a[0] = t1 + t2;
    }
    for (int i = 0; i < 8; ++i) h[i] += a[i];
  }

  void update(const std::uint8_t* p, std::size_t n) {
    total += n;
    while (n > 0) {
      const std::size_t take = std::min(n, buf.size() - fill);
      std::memcpy(buf.data() + fill, p, take);
      fill += take; p += take; n -= take;
      if (fill == buf.size()) { block(buf.data()); fill = 0; }
    }
  }

  std::string hex_digest() {
    const std::uint64_t bits = total * 8;
    const std::uint8_t one = 0x80;
    update(&one, 1);
    const std::uint8_t zero = 0;
    while (fill != 56) update(&zero, 1);
    std::uint8_t len[8];
    for (int i = 0; i < 8; ++i) len[i] = std::uint8_t(bits >> (56 - 8 * i));
    update(len, 8);
    char out[65];
    for (int i = 0; i < 8; ++i) std::snprintf(out + 8 * i, 9, "%08x", h[i]);
    return std::string(out, 64);
  }
};

double parse_turns(const Json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return std::stod(s);
      const double num = std::stod(s.substr(0, slash));
      const double den = std::stod(s.substr(slash + 1));
      if (den == 0.0) throw input_error(field + ": zero denominator");
      return num / den;
    } catch (const input_error&) {
      throw;
    } catch (const std::exception&) {
      throw input_error(field + ": expected a number or rational string like \"1/3\"");
    }
  }
  throw input_error(field + ": expected a number or rational string");
}

double require_number(const Json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number())
    throw input_error("missing or non-numeric field '" + field + "'");
  return j[field].get<double>();
}

long require_integer(const Json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw input_error("missing or non-integer field '" + field + "'");
  return j[field].get<long>();
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 s;
  s.update(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());
  return s.hex_digest();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw input_error("cannot write file: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Json zeroset_to_json(const ZeroSet& zs) {
  Json j;
  j["model"] = zs.model() == Model::disc ? "disc" : "half-plane";
  Json zeros = Json::array();
  for (const auto& z : zs.zeros()) {
    Json e;
    e["re"] = z.position.real();
    e["im"] = z.position.imag();
    e["mult"] = z.multiplicity;
    if (zs.model() == Model::disc) e["gap"] = z.boundary_gap;
    zeros.push_back(std::move(e));
  }
  j["zeros"] = std::move(zeros);
  if (zs.tail()) j["tail_bound"] = zs.tail()->blaschke_sum;
  Json md = zs.metadata();
  if (zs.tail() && zs.tail()->min_modulus > 0.0) md["tail_min_modulus"] = zs.tail()->min_modulus;
  j["metadata"] = std::move(md);
  return j;
}

ZeroSet zeroset_from_json(const Json& j) {
  if (!j.is_object()) throw input_error("zero set: expected a JSON object");
  if (!j.contains("model") || !j["model"].is_string())
    throw input_error("zero set: missing string field 'model'");
  const std::string model = j["model"].get<std::string>();
  if (model != "disc" && model != "half-plane")
    throw input_error("zero set: field 'model' must be \"disc\" or \"half-plane\"");
  ZeroSet zs(model == "disc" ? Model::disc : Model::half_plane);
  if (!j.contains("zeros") || !j["zeros"].is_array())
    throw input_error("zero set: missing array field 'zeros'");
  for (const auto& e : j["zeros"]) {
    const double re = require_number(e, "re");
    const double im = require_number(e, "im");
    int mult = 1;
    if (e.contains("mult")) mult = static_cast<int>(require_integer(e, "mult"));
    if (mult < 1) throw input_error("zero set: field 'mult' must be >= 1");
    if (model == "disc") {
      double gap = e.contains("gap") ? require_number(e, "gap") : 1.0 - std::hypot(re, im);
      if (!(gap > 0.0) || gap > 1.0)
        throw input_error("zero set: zero outside the open disc (need 0 < gap <= 1)");
      zs.add_raw({re, im}, gap, mult);
    } else {
      if (!(im > 0.0)) throw input_error("zero set: half-plane zero must have im > 0");
      zs.add_raw({re, im}, im, mult);
    }
  }
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) throw input_error("zero set: 'metadata' must be an object");
    zs.metadata() = j["metadata"];
  }
  if (j.contains("tail_bound")) {
    TailBound tb;
    tb.blaschke_sum = require_number(j, "tail_bound");
    if (tb.blaschke_sum < 0.0) throw input_error("zero set: 'tail_bound' must be >= 0");
    if (zs.metadata().contains("tail_min_modulus"))
      tb.min_modulus = zs.metadata()["tail_min_modulus"].get<double>();
    zs.set_tail(tb);
  }
  return zs;
}

Json measure_to_json(const SingularMeasure& mu) {
  Json j;
  Json atoms = Json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back(Json{{"angle_turns", a.angle / kTwoPi}, {"mass", a.mass}});
  j["atoms"] = std::move(atoms);
  return j;
}

SingularMeasure measure_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
    throw input_error("measure: missing array field 'atoms'");
  std::vector<MeasureAtom> atoms;
  for (const auto& e : j["atoms"]) {
    if (!e.contains("angle_turns")) throw input_error("measure: atom missing 'angle_turns'");
    const double turns = parse_turns(e["angle_turns"], "angle_turns");
    const double mass = require_number(e, "mass");
    if (!(mass > 0.0)) throw input_error("measure: field 'mass' must be > 0");
    atoms.push_back({turns * kTwoPi, mass});
  }
  return SingularMeasure(std::move(atoms));
}

Json boundary_to_json(const BoundarySet& e) {
  Json arcs = Json::array();
  for (const auto& a : e.arcs()) arcs.push_back(Json::array({a.lo, a.hi()}));
  return Json{{"arcs", std::move(arcs)}};
}

BoundarySet boundary_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("arcs") || !j["arcs"].is_array())
    throw input_error("boundary set: missing array field 'arcs'");
  std::vector<BoundaryArc> arcs;
  for (const auto& e : j["arcs"]) {
    if (!e.is_array() || e.size() != 2)
      throw input_error("boundary set: each arc must be a [start, end] pair (turns)");
    const double lo = parse_turns(e[0], "arc start");
    const double hi = parse_turns(e[1], "arc end");
    if (!(hi >= lo) || hi - lo >= 1.0)
      throw input_error("boundary set: arc must satisfy 0 <= end - start < 1 (turns)");
    arcs.push_back({lo, hi - lo});
  }
  try {
    return BoundarySet(std::move(arcs));
  } catch (const std::invalid_argument& ex) {
    throw input_error(std::string("boundary set: ") + ex.what());
  }
}

std::variant<ZeroSet, BoundarySet> run_generator_spec(const Json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
    throw input_error("generator spec: missing string field 'kind'");
  const std::string kind = spec["kind"].get<std::string>();
  const Json params = spec.contains("params") ? spec["params"] : Json::object();
  const std::uint64_t seed =
      spec.contains("seed") ? spec["seed"].get<std::uint64_t>() : std::uint64_t{0};
  try {
    if (kind == "exponential") {
      const double q = require_number(params, "q");
      if (!(q > 0.0) || !(q < 1.0))
        throw input_error("generator spec: field 'q' must lie in (0, 1)");
      const long n = require_integer(params, "n");
      if (n < 0 || n > 100000) throw input_error("generator spec: field 'n' must lie in [0, 1e5]");
      const double angle = params.contains("angle") ? require_number(params, "angle") : 0.0;
      return gen_exponential(q, static_cast<int>(n), angle);
    }
    if (kind == "treil_grid") {
      const long n_max = require_integer(params, "n_max");
      const long hw = require_integer(params, "half_width");
      if (n_max < 1 || n_max > 50)
        throw input_error("generator spec: field 'n_max' must lie in [1, 50]");
      if (hw < 0 || hw > 100000)
        throw input_error("generator spec: field 'half_width' must lie in [0, 1e5]");
      return gen_treil_grid(static_cast<int>(n_max), static_cast<int>(hw));
    }
    if (kind == "rect_grid") {
      if (params.contains("rows")) {
        const long rows = require_integer(params, "rows");
        if (rows < 1 || rows > 12)
          throw input_error("generator spec: field 'rows' must lie in [1, 12]");
        std::vector<double> lengths;
        std::vector<long> counts;
        rect_grid_heavy_params(static_cast<int>(rows), lengths, counts);
        return gen_rect_grid(lengths, counts);
      }
      if (!params.contains("lengths") || !params["lengths"].is_array() ||
          !params.contains("counts") || !params["counts"].is_array())
        throw input_error("generator spec: rect_grid needs 'rows' or 'lengths'+'counts'");
      std::vector<double> lengths = params["lengths"].get<std::vector<double>>();
      std::vector<long> counts = params["counts"].get<std::vector<long>>();
      const std::string rule =
          params.contains("gap_rule") ? params["gap_rule"].get<std::string>() : "tight";
      return gen_rect_grid(lengths, counts,
                           rule == "triple" ? GapRule::triple_spacing : GapRule::tight_packing);
    }
    if (kind == "stolz_mult") {
      const long n = require_integer(params, "n");
      if (n < 1 || n > 40) throw input_error("generator spec: field 'n' must lie in [1, 40]");
      return gen_stolz_mult(static_cast<int>(n));
    }
    if (kind == "finite_cross") {
      const double r = require_number(params, "r");
      if (!(r > 0.0) || !(r < 1.0))
        throw input_error("generator spec: field 'r' must lie in (0, 1)");
      return gen_finite_cross(r);
    }
    if (kind == "thin") {
      const long n = require_integer(params, "n");
      if (n < 1 || n > 30) throw input_error("generator spec: field 'n' must lie in [1, 30]");
      const std::string angles =
          params.contains("angles") ? params["angles"].get<std::string>() : "fixed";
      if (angles != "fixed" && angles != "spread")
        throw input_error("generator spec: field 'angles' must be \"fixed\" or \"spread\"");
      const double fixed_angle =
          params.contains("angle") ? require_number(params, "angle") : 0.0;
      return gen_thin(static_cast<int>(n), RadiusRule::double_exp,
                      angles == "fixed" ? AngleMode::fixed : AngleMode::spread, seed, fixed_angle);
    }
    if (kind == "cantor_like") {
      const long depth = require_integer(params, "depth");
      if (depth < 0 || depth > 14)
        throw input_error("generator spec: field 'depth' must lie in [0, 14]");
      const double ratio = require_number(params, "ratio");
      if (!(ratio > 0.0) || !(ratio < 0.5))
        throw input_error("generator spec: field 'ratio' must lie in (0, 1/2)");
      return BoundarySet::from_radian_arcs(gen_cantor_like(static_cast<int>(depth), ratio));
    }
  } catch (const input_error&) {
    throw;
  } catch (const std::exception& ex) {
    throw input_error(std::string("generator spec: ") + ex.what());
  }
  throw input_error("generator spec: unknown 'kind' \"" + kind +
                    "\" (expected exponential|treil_grid|rect_grid|stolz_mult|finite_cross|thin|"
                    "cantor_like)");
}

Json eta_curve_to_json(const EtaCurve& curve) {
  Json j;
  j["r_max"] = curve.r_max;
  j["mesh"] = curve.mesh;
  Json samples = Json::array();
  for (const auto& s : curve.samples) {
    Json e;
    e["t"] = s.t;
    e["estimate"] = s.estimate ? Json(*s.estimate) : Json();
    e["n_probes"] = s.n_probes;
    if (s.argmin) {
      e["argmin_re"] = s.argmin->re();
      e["argmin_im"] = s.argmin->im();
    }
    samples.push_back(std::move(e));
  }
  j["samples"] = std::move(samples);
  Json jumps = Json::array();
  for (const auto& [a, b] : curve.jump_candidates) jumps.push_back(Json::array({a, b}));
  j["jump_candidates"] = std::move(jumps);
  return j;
}

Json report_to_json(const Report& rep) {
  Json j;
  j["cn"] = {{"value", rep.cn.value},
             {"prefix_values", rep.cn.prefix_values},
             {"growth_pct", rep.cn.growth_pct},
             {"divergent", rep.cn.divergent}};
  j["thin_tail"] = rep.thin_tail;
  j["separation"] = rep.separation;
  Json boxes = Json::array();
  for (const auto& [d, s] : rep.box_sup_by_delta) boxes.push_back(Json{{"delta", d}, {"sup", s}});
  j["box_sup_by_delta"] = std::move(boxes);
  j["eta_curve"] = eta_curve_to_json(rep.eta);
  Json narrow;
  narrow["m_class"] = {{"r_found", rep.narrow_m.r_found}};
  narrow["p_class"] = {{"r_found", rep.narrow_p.r_found}};
  if (rep.narrow_m.center)
    narrow["m_class"]["center"] = {rep.narrow_m.center->re(), rep.narrow_m.center->im()};
  if (rep.narrow_p.center)
    narrow["p_class"]["center"] = {rep.narrow_p.center->re(), rep.narrow_p.center->im()};
  j["narrowness"] = std::move(narrow);
  if (rep.area_integral) j["area_integral"] = *rep.area_integral;
  Json verdicts = Json::object();
  for (const auto& [name, v] : rep.verdicts)
    verdicts[name] = Json{{"label", v.label}, {"details", v.details}};
  j["verdicts"] = std::move(verdicts);
  j["context"] = rep.context;
  return j;
}

Json make_provenance(const std::string& command, const Json& config,
                     const std::vector<std::string>& input_paths) {
  Json j;
  j["tool"] = "innerfun";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config;
  Json inputs = Json::object();
  for (const auto& p : input_paths) inputs[p] = "sha256:" + sha256_hex(read_file(p));
  j["inputs"] = std::move(inputs);
  return j;
}

std::string format_sig17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string provenance_comment(const Json& provenance) {
  std::string out;
  out += "# innerfun " + std::string(kToolVersion) + "\n";
  out += "# provenance " + provenance.dump() + "\n";
  return out;
}

}  // namespace

std::string eta_curve_to_csv(const EtaCurve& curve, const Json& provenance) {
  std::string out = provenance_comment(provenance);
  out += "t,estimate,argmin_re,argmin_im,n_probes\n";
  for (const auto& s : curve.samples) {
    out += format_sig17(s.t);
    out += ',';
    if (s.estimate) out += format_sig17(*s.estimate);
    out += ',';
    if (s.argmin) out += format_sig17(s.argmin->re());
    out += ',';
    if (s.argmin) out += format_sig17(s.argmin->im());
    out += ',';
    out += std::to_string(s.n_probes);
    out += '\n';
  }
  return out;
}

std::string sublevel_to_csv(const std::vector<SublevelRow>& rows, const Json& provenance) {
  std::string out = provenance_comment(provenance);
  out += "re,im,modulus,in_set\n";
  for (const auto& r : rows) {
    out += format_sig17(r.re);
    out += ',';
    out += format_sig17(r.im);
    out += ',';
    out += format_sig17(r.modulus);
    out += ',';
    out += r.in_set ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace innerfun
