#pragma once

// JSON form of the pipeline results. Polynomials are written as expression
// strings in the parser's grammar (terms in descending lex order) and
// rationals as "p/q" strings, so every document decodes back to equal values.

#include <string>
#include <vector>

#include <json.hpp>

#include "lnd/coordinates.hpp"
#include "lnd/factor.hpp"
#include "lnd/groebner.hpp"
#include "lnd/parse.hpp"
#include "lnd/plinth.hpp"
#include "lnd/rank.hpp"

namespace lnd::report {

using json = nlohmann::ordered_json;

inline std::string version() { return "0.1.0"; }

// ---- encoding ----

inline json encode(const Poly& p) { return p.to_string(); }
inline json encode(const Rational& q) { return q.get_str(); }

inline json encode(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(encode(q));
  return a;
}

inline json encode(const std::vector<Poly>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back(encode(p));
  return a;
}

inline json encode(const CoordinateCertificate& c);

template <class T>
json encode_opt(const std::optional<T>& v) {
  return v ? encode(*v) : json(nullptr);
}

inline json encode(const Derivation& d) { return json::array({encode(d.coeff(0)), encode(d.coeff(1)), encode(d.coeff(2))}); }

inline json encode(const LocalSlice& s) { return {{"s", encode(s.s)}, {"value", encode(s.value)}}; }

inline json encode(const ReductionRecord& r) {
  return {{"prime", encode(r.prime)},
          {"success", r.success},
          {"a_abstract", encode_opt(r.a_abstract)},
          {"a", encode_opt(r.a)},
          {"quotient", encode_opt(r.quotient)}};
}

inline json encode(const std::vector<ReductionRecord>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(encode(r));
  return a;
}

inline json encode(const PlinthCertificate& c) {
  return {{"initial", encode(c.initial)},
          {"slice", encode(c.slice)},
          {"generator", encode(c.generator)},
          {"trail", encode(c.trail)},
          {"minimality", encode(c.minimality)}};
}

inline json encode(const Automorphism2& a) {
  json steps = json::array();
  for (const auto& s : a.steps()) {
    json j;
    if (const auto* l = std::get_if<LinearStep>(&s)) {
      j = {{"kind", "linear"},
           {"m", encode(std::vector<Rational>{l->m11, l->m12, l->m21, l->m22})},
           {"t", encode(std::vector<Rational>{l->t1, l->t2})}};
    } else {
      const auto& e = std::get<ElementaryStep>(s);
      j = {{"kind", "elementary"}, {"swapped", e.swapped}, {"h", encode(e.h)}};
    }
    j["text"] = a.describe_step(s);
    steps.push_back(std::move(j));
  }
  return {{"vars", a.ring().names()}, {"steps", std::move(steps)}};
}

inline json encode(const CoordinateCertificate& c) {
  return {{"is_coordinate", c.is_coordinate},
          {"witness", encode(c.witness)},
          {"complement", encode_opt(c.complement)},
          {"rejection", c.rejection}};
}

inline json encode(const std::vector<RejectedCandidate>& log) {
  json a = json::array();
  for (const auto& r : log)
    a.push_back({{"candidate", encode(r.candidate)}, {"reason", to_string(r.reason)}, {"detail", r.detail}});
  return a;
}

inline json encode(const DecompositionResult& d) {
  return {{"found", d.found},
          {"inner", encode_opt(d.inner)},
          {"outer", d.found ? encode(d.outer) : json(nullptr)},
          {"certificate", encode_opt(d.certificate)},
          {"candidates_tried", encode(d.candidates_tried)}};
}

inline json encode(const Factorization& f) {
  json fs = json::array();
  for (const auto& [p, m] : f.factors) fs.push_back({{"factor", encode(p)}, {"multiplicity", m}});
  return {{"unit", encode(f.unit)}, {"factors", std::move(fs)}};
}

inline json encode(const GroebnerBasis& g) {
  return {{"order", g.order().to_string()}, {"basis", encode(g.generators())}};
}

inline json encode(const RankReport& r) {
  json w;
  if (const auto* s = std::get_if<SliceWitness>(&r.witness)) {
    w = {{"kind", "slice"}, {"s", encode(s->s)}};
  } else if (const auto* t = std::get_if<RankTwoWitness>(&r.witness)) {
    w = {{"kind", "coordinate"},
         {"inner_abstract", encode(t->inner_abstract)},
         {"inner", encode(t->inner)},
         {"outer", encode(t->outer)},
         {"certificate", encode(t->certificate)}};
  } else {
    w = {{"kind", "rejections"}, {"log", encode(std::get<RankThreeWitness>(r.witness).log)}};
  }
  return {{"rank", r.rank},
          {"content", encode(r.content)},
          {"reduced", encode(r.reduced)},
          {"plinth", encode(r.plinth)},
          {"generator_abstract", encode(r.generator_abstract)},
          {"witness", std::move(w)}};
}

inline json encode(const std::vector<StageTiming>& ts) {
  json o = json::object();
  for (const auto& t : ts) o[t.stage] = t.seconds;
  return o;
}

// ---- decoding ----

inline Poly decode_poly(const json& j, const Ring& r) { return parse_poly(j.get<std::string>(), r); }
inline Rational decode_rational(const json& j) { return Rational(j.get<std::string>()); }

inline std::vector<Rational> decode_rationals(const json& j) {
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(decode_rational(x));
  return out;
}

inline std::optional<Poly> decode_opt_poly(const json& j, const Ring& r) {
  if (j.is_null()) return std::nullopt;
  return decode_poly(j, r);
}

inline Derivation decode_derivation(const json& j) {
  const Ring& r = Ring::xyz();
  return Derivation(decode_poly(j.at(0), r), decode_poly(j.at(1), r), decode_poly(j.at(2), r));
}

inline LocalSlice decode_slice(const json& j) {
  return {decode_poly(j.at("s"), Ring::xyz()), decode_poly(j.at("value"), Ring::xyz())};
}

inline std::vector<ReductionRecord> decode_records(const json& j) {
  std::vector<ReductionRecord> out;
  for (const auto& r : j)
    out.push_back({decode_poly(r.at("prime"), Ring::xyz()), r.at("success").get<bool>(),
                   decode_opt_poly(r.at("a_abstract"), kernel_ring()), decode_opt_poly(r.at("a"), Ring::xyz()),
                   decode_opt_poly(r.at("quotient"), Ring::xyz())});
  return out;
}

inline PlinthCertificate decode_plinth(const json& j) {
  return {decode_slice(j.at("initial")), decode_slice(j.at("slice")), decode_poly(j.at("generator"), Ring::xyz()),
          decode_records(j.at("trail")), decode_records(j.at("minimality"))};
}

inline Automorphism2 decode_automorphism(const json& j) {
  Automorphism2 a(Ring(j.at("vars").get<std::vector<std::string>>()));
  for (const auto& s : j.at("steps")) {
    if (s.at("kind") == "linear") {
      auto m = decode_rationals(s.at("m")), t = decode_rationals(s.at("t"));
      a.push(LinearStep{m.at(0), m.at(1), m.at(2), m.at(3), t.at(0), t.at(1)});
    } else {
      a.push(ElementaryStep{s.at("swapped").get<bool>(), decode_rationals(s.at("h"))});
    }
  }
  return a;
}

inline CoordinateCertificate decode_certificate(const json& j) {
  Automorphism2 w = decode_automorphism(j.at("witness"));
  auto comp = decode_opt_poly(j.at("complement"), w.ring());
  return {j.at("is_coordinate").get<bool>(), std::move(w), std::move(comp), j.at("rejection").get<std::string>()};
}

inline RejectionReason decode_reason(const std::string& s) {
  for (auto r : {RejectionReason::NotAffineFactorForm, RejectionReason::DivisibilityFailed, RejectionReason::NotACoordinate})
    if (s == to_string(r)) return r;
  throw std::invalid_argument("unknown rejection reason '" + s + "'");
}

inline std::vector<RejectedCandidate> decode_log(const json& j, const Ring& r) {
  std::vector<RejectedCandidate> out;
  for (const auto& c : j)
    out.push_back({decode_poly(c.at("candidate"), r), decode_reason(c.at("reason").get<std::string>()),
                   c.at("detail").get<std::string>()});
  return out;
}

inline DecompositionResult decode_decomposition(const json& j, const Ring& r) {
  DecompositionResult d;
  d.found = j.at("found").get<bool>();
  d.inner = decode_opt_poly(j.at("inner"), r);
  if (d.found) d.outer = decode_rationals(j.at("outer"));
  if (!j.at("certificate").is_null()) d.certificate = decode_certificate(j.at("certificate"));
  d.candidates_tried = decode_log(j.at("candidates_tried"), r);
  return d;
}

inline Factorization decode_factorization(const json& j, const Ring& r) {
  Factorization f;
  f.unit = decode_rational(j.at("unit"));
  for (const auto& x : j.at("factors")) f.factors.emplace_back(decode_poly(x.at("factor"), r), x.at("multiplicity").get<unsigned>());
  return f;
}

inline MonomialOrder parse_order(const std::string& text) {
  if (text.rfind("lex:", 0) != 0) throw std::invalid_argument("order must look like lex:v1,v2,... (least to greatest)");
  std::vector<std::string> vars;
  std::string cur;
  for (char c : text.substr(4)) {
    if (c == ',') {
      vars.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  vars.push_back(cur);
  return MonomialOrder::lex(std::move(vars));
}

inline GroebnerBasis decode_groebner(const json& j) {
  MonomialOrder o = parse_order(j.at("order").get<std::string>());
  std::vector<Poly> gens;
  for (const auto& p : j.at("basis")) gens.push_back(decode_poly(p, o.ring()));
  return GroebnerBasis(std::move(o), std::move(gens));
}

/// Everything except the timings, which are reported separately.
inline RankReport decode_rank(const json& j) {
  RankReport r{j.at("rank").get<int>(),
               decode_poly(j.at("content"), Ring::xyz()),
               decode_derivation(j.at("reduced")),
               decode_plinth(j.at("plinth")),
               decode_poly(j.at("generator_abstract"), kernel_ring()),
               SliceWitness{},
               {}};
  const json& w = j.at("witness");
  if (w.at("kind") == "slice") {
    r.witness = SliceWitness{decode_poly(w.at("s"), Ring::xyz())};
  } else if (w.at("kind") == "coordinate") {
    r.witness = RankTwoWitness{decode_poly(w.at("inner_abstract"), kernel_ring()), decode_poly(w.at("inner"), Ring::xyz()),
                               decode_rationals(w.at("outer")), decode_certificate(w.at("certificate"))};
  } else {
    r.witness = RankThreeWitness{decode_log(w.at("log"), kernel_ring())};
  }
  return r;
}

}  // namespace lnd::report
