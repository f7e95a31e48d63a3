#include "renormlab/serialize.hpp"

#include <cstdio>

#include "json.hpp"

namespace renormlab {

using nlohmann::ordered_json;

namespace {

ordered_json header(const char* schema) {
  ordered_json j;
  j["schema"] = schema;
  j["version"] = kSchemaVersion;
  return j;
}

ordered_json complex_json(xcplx z) { return ordered_json::array({decimal17(z.real()), decimal17(z.imag())}); }

ordered_json interval_json(const Interval& iv) { return ordered_json::array({decimal17(iv.lo), decimal17(iv.hi)}); }

ordered_json sequence_body(const ReturnTypeSequence& seq) {
  ordered_json j;
  j["top"] = seq.top();
  j["irreducible"] = seq.irreducible;
  ordered_json levels = ordered_json::array();
  for (const auto& g : seq.levels) levels.push_back(to_text(g));
  j["semigroups"] = levels;
  ordered_json homs = ordered_json::array();
  for (std::size_t m = 0; m < seq.homs.size(); ++m) {
    ordered_json h;
    h["level"] = m + 1;
    ordered_json words;
    for (const auto& [pos, w] : seq.homs[m].words) words[generator_name(pos)] = to_text(w);
    h["words"] = words;
    homs.push_back(h);
  }
  j["homs"] = homs;
  return j;
}

}  // namespace

std::string decimal17(ext x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", x);
  return buf;
}

std::string to_json(const ReturnTypeSequence& seq) {
  ordered_json j = header("renormlab.return-type-sequence");
  j["sequence"] = sequence_body(seq);
  return j.dump(2);
}

std::string to_json(const PrincipalNest& nest, const ReturnTypeSequence& seq) {
  ordered_json j = header("renormlab.principal-nest");
  j["c"] = decimal17(nest.c);
  j["period"] = nest.period;
  j["alpha"] = decimal17(nest.alpha);
  j["beta"] = decimal17(nest.beta);
  Itinerary it;
  ordered_json orbit = ordered_json::array();
  for (ext x : nest.orbit) {
    orbit.push_back(decimal17(x));
    it.push_back(side_of(x));
  }
  j["orbit"] = orbit;
  j["itinerary"] = to_string(it);
  ordered_json levels = ordered_json::array();
  for (std::size_t m = 0; m < nest.levels.size(); ++m) {
    ordered_json lv;
    lv["level"] = m;
    ordered_json comps = ordered_json::array();
    for (const auto& comp : nest.levels[m].components) {
      ordered_json cj;
      cj["name"] = generator_name(comp.pos);
      cj["interval"] = interval_json(comp.interval);
      cj["sign"] = comp.sign;
      cj["return_time"] = comp.return_time;
      cj["orbit_time"] = comp.orbit_time;
      cj["word"] = to_text(comp.word);
      comps.push_back(cj);
    }
    lv["components"] = comps;
    levels.push_back(lv);
  }
  j["levels"] = levels;
  j["noncentral_levels"] = nest.noncentral_levels;
  j["sequence"] = sequence_body(seq);
  return j.dump(2);
}

std::string to_json(const ParabolicChart& chart) {
  ordered_json j = header("renormlab.parabolic-chart");
  j["c"] = complex_json(chart.c);
  j["q"] = chart.q;
  j["xi"] = complex_json(chart.xi);
  j["multiplier"] = complex_json(chart.multiplier);
  j["a"] = complex_json(chart.a);
  j["b"] = complex_json(chart.b);
  j["B"] = complex_json(chart.B);
  j["u_in"] = complex_json(chart.u_in);
  j["petal_radius"] = decimal17(chart.petal_radius);
  j["petal_radius_out"] = decimal17(chart.petal_radius_out);
  j["anchor_in"] = complex_json(chart.anchor(PetalSide::Incoming));
  j["anchor_out"] = complex_json(chart.anchor(PetalSide::Outgoing));
  return j.dump(2);
}

std::string to_json(const DouadyChart& chart) {
  ordered_json j = header("renormlab.douady-chart");
  j["c"] = complex_json(chart.c);
  j["c0"] = complex_json(chart.base.c);
  j["q"] = chart.base.q;
  j["xi_f"] = complex_json(chart.base.xi + chart.xi_f);
  j["xi_f_prime"] = complex_json(chart.base.xi + chart.xi_f2);
  j["lambda"] = complex_json(chart.lambda);
  j["lambda_prime"] = complex_json(chart.lambda2);
  j["holomorphic_index"] = complex_json(holomorphic_index(chart));
  j["z_plus"] = complex_json(chart.z_plus);
  j["z_minus"] = complex_json(chart.z_minus);
  j["gate_radius"] = decimal17(chart.gate_radius);
  j["transit_steps"] = chart.transit_steps;
  j["a_f"] = complex_json(chart.a_f);
  j["phase"] = complex_json(to_xcplx(chart.phase()));
  j["transit_time"] = decimal17(chart.transit_time());
  return j.dump(2);
}

std::string to_json(const Per3Report& report) {
  ordered_json j = header("renormlab.per3-report");
  j["tuning"] = report.tuning;
  j["period"] = report.period;
  j["c"] = decimal17(report.c);
  j["residual"] = decimal17(report.residual);
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json rj;
    rj["stage"] = r.stage;
    rj["period"] = r.period;
    rj["bracket"] = interval_json(r.bracket);
    rj["midpoint"] = decimal17(r.midpoint);
    rj["distance"] = decimal17(std::abs(r.midpoint + 1.75L));
    rj["agreement"] = r.agreement;
    rj["itinerary_undefined"] = r.itinerary_undefined;
    rows.push_back(rj);
  }
  j["stages"] = rows;
  j["verdict"] = to_string(report.verdict);
  j["message"] = report.message;
  return j.dump(2);
}

std::string to_json_line(const RenormDiagnostics& d) {
  ordered_json j;
  j["schema"] = "renormlab.renorm-stage";
  j["version"] = kSchemaVersion;
  j["stage"] = d.stage;
  j["period"] = d.period;
  j["kneading_prefix"] = to_string(d.kneading_prefix);
  j["critical_value"] = decimal17(d.critical_value);
  j["alpha"] = decimal17(d.alpha);
  j["beta"] = decimal17(d.beta);
  j["inner_bracket"] = interval_json(d.inner.bracket);
  j["inner_depth"] = d.inner.depth_used;
  j["itinerary_undefined"] = d.inner.itinerary_undefined;
  j["base_half_width"] = decimal17(d.base_half_width);
  return j.dump();
}

std::string centers_csv_header() { return "label,n,c,residual,period"; }

void write_centers_csv(std::ostream& out, const std::string& label, const std::vector<Sigma3Center>& rows) {
  out << "# renormlab centers schema " << kSchemaVersion << '\n' << centers_csv_header() << '\n';
  for (const auto& r : rows) {
    out << label << ',' << r.n << ',' << decimal17(r.c) << ',' << decimal17(r.residual) << ',' << r.period
        << '\n';
  }
}

std::string fatou_csv_header() { return "z_re,z_im,phi_re,phi_im,residual"; }

void write_fatou_csv(std::ostream& out, const std::vector<FatouSample>& rows) {
  out << "# renormlab fatou-grid schema " << kSchemaVersion << '\n' << fatou_csv_header() << '\n';
  for (const auto& r : rows) {
    out << decimal17(r.z.real()) << ',' << decimal17(r.z.imag()) << ',' << decimal17(r.phi.real()) << ','
        << decimal17(r.phi.imag()) << ',' << decimal17(r.residual) << '\n';
  }
}

}  // namespace renormlab
