// Copyright 2026 The bureslab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bures/analysis.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <sstream>

#include "bures/metrics.hpp"

namespace bures {

using nlohmann::json;

namespace {

// Distinct substream identifiers per analysis, so budgets can change for one
// probe without disturbing the draws of another.
enum StreamId : std::uint64_t {
  kStreamStates = 1,
  kStreamSchwarz = 2,
  kStreamKPositive = 3,
  kStreamDomains = 4,
  kStreamIrreducibility = 5,
  kStreamContraction = 6,
};

json verdict_to_json(const PropertyVerdict& v, int budget = 0) {
  json out;
  out["status"] = to_string(v.status);
  out["samples_used"] = v.samples_used;
  if (budget > 0) out["sample_budget"] = budget;
  out["seed"] = v.seed;
  out["tolerance"] = v.tolerance;
  if (!v.detail.empty()) out["detail"] = v.detail;
  if (v.witness) out["witness"] = element_to_json(*v.witness);
  if (!v.certificate_eigenvalues.empty()) {
    out["certificate_eigenvalues"] = v.certificate_eigenvalues;
  }
  return out;
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Channel build_channel(const RunConfig& cfg) {
  const ChannelSpecConfig& ch = cfg.channel;
  try {
    if (ch.kind == "kraus") {
      return Channel::from_kraus(cfg.algebra, ch.kraus_ops);
    }
    if (ch.kind == "superoperator") {
      return Channel::from_superoperator(cfg.algebra, *ch.superoperator);
    }
    return standard_channel(cfg.algebra, ch.kind, ch.lambda, ch.u, ch.v, cfg.tol);
  } catch (const StructureError& e) {
    throw ConfigError(std::string("channel: ") + e.what());
  }
}

std::vector<std::pair<std::string, DensityElement>> build_states(const RunConfig& cfg) {
  std::vector<std::pair<std::string, DensityElement>> out;
  Rng base(cfg.seed);
  for (std::size_t i = 0; i < cfg.states.size(); ++i) {
    const StateConfig& st = cfg.states[i];
    try {
      if (st.kind == "matrix") {
        out.emplace_back(st.name, DensityElement(*st.matrix, cfg.tol));
      } else if (st.kind == "basis_state") {
        out.emplace_back(st.name,
                         DensityElement::normalized(
                             AlgElement::matrix_unit(cfg.algebra, st.block, st.index, st.index),
                             cfg.tol));
      } else if (st.kind == "centre") {
        out.emplace_back(st.name, DensityElement::centre(cfg.algebra));
      } else {  // random
        Rng rr = base.fork((kStreamStates << 32) + i);
        std::optional<RankProfile> profile;
        if (st.rank) {
          std::vector<Index> ranks;
          for (std::size_t b = 0; b < cfg.algebra.block_count(); ++b) {
            ranks.push_back(std::min(*st.rank, cfg.algebra.block_dim(b)));
          }
          profile = RankProfile{std::move(ranks)};
        }
        out.emplace_back(st.name, random_density(cfg.algebra, rr, profile, cfg.tol));
      }
    } catch (const PositivityError& e) {
      std::ostringstream msg;
      msg << "states[" << i << "] ('" << st.name << "'): " << e.what();
      throw ConfigError(msg.str());
    }
  }
  return out;
}

json subspace_to_json(const SubspaceBasis& sub) {
  json out;
  out["dimension"] = sub.dimension;
  out["adjoint_closed"] = sub.adjoint_closed;
  out["product_closed"] = sub.product_closed;
  out["contains_identity"] = sub.contains_identity;
  out["verified"] = sub.verified;
  if (!sub.note.empty()) out["note"] = sub.note;
  json basis = json::array();
  for (const auto& b : sub.basis) basis.push_back(element_to_json(b));
  out["basis"] = std::move(basis);
  return out;
}

json spectrum_to_json(const SpectrumReport& rep) {
  json out;
  json evs = json::array();
  for (const auto& ev : rep.eigenvalues) evs.push_back(complex_to_json(ev));
  out["eigenvalues"] = std::move(evs);
  out["perron_value"] = rep.perron_value;
  json per = json::array();
  for (const auto& ev : rep.peripheral) per.push_back(complex_to_json(ev));
  out["peripheral"] = std::move(per);
  out["perron_in_spectrum"] = rep.perron_in_spectrum;
  out["peripheral_trivial"] = rep.peripheral_trivial;
  return out;
}

}  // namespace

AnalysisReport analyze(const RunConfig& cfg) {
  const Channel channel = build_channel(cfg);
  const auto states = build_states(cfg);
  Rng base(cfg.seed);

  const auto selected = [&](const std::string& name) {
    return std::find(cfg.analyses.begin(), cfg.analyses.end(), name) != cfg.analyses.end();
  };

  json results;

  if (selected("metrics") && states.size() >= 2) {
    json table = json::array();
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (std::size_t j = i + 1; j < states.size(); ++j) {
        const MetricReport m = metric_report(states[i].second, states[j].second, cfg.tol);
        const DensityElement img_a = channel.apply(states[i].second, cfg.tol);
        const DensityElement img_b = channel.apply(states[j].second, cfg.tol);
        const MetricReport post = metric_report(img_a, img_b, cfg.tol);
        json row;
        row["a"] = states[i].first;
        row["b"] = states[j].first;
        row["fidelity"] = m.fidelity;
        row["bures"] = m.bures;
        row["trace_dist"] = m.trace_dist;
        row["fvdg"] = {m.fvdg_lower, m.fvdg_upper};
        row["orthogonal"] = m.orthogonal;
        row["bures_after_channel"] = post.bures;
        row["fidelity_after_channel"] = post.fidelity;
        table.push_back(std::move(row));
      }
    }
    results["metrics"] = {{"pairs", std::move(table)}, {"tolerance", cfg.tol.fid}};
  } else if (selected("metrics")) {
    results["metrics"] = {{"note", "metrics need at least two states"}};
  }

  if (selected("properties")) {
    json props;
    props["trace_preserving"] = verdict_to_json(channel.is_trace_preserving(cfg.tol));
    props["unital"] = verdict_to_json(channel.is_unital(cfg.tol));
    props["completely_positive"] = verdict_to_json(channel.is_cp(cfg.tol));
    props["schwarz"] = verdict_to_json(
        channel.schwarz_probe(cfg.samples.schwarz, base.fork(kStreamSchwarz).seed(), cfg.tol),
        cfg.samples.schwarz);
    props["positive_k1"] = verdict_to_json(
        channel.k_positive_probe(1, cfg.samples.k_positive, base.fork(kStreamKPositive).seed(),
                                 cfg.tol),
        cfg.samples.k_positive);
    props["positive_k2"] = verdict_to_json(
        channel.k_positive_probe(2, cfg.samples.k_positive,
                                 base.fork(kStreamKPositive + 16).seed(), cfg.tol),
        cfg.samples.k_positive);
    results["properties"] = std::move(props);
  }

  if (selected("domains")) {
    json doms;
    doms["fixed_points"] = subspace_to_json(fixed_point_space(channel, cfg.tol));
    if (channel.is_trace_preserving(cfg.tol).holds()) {
      doms["multiplicative"] = subspace_to_json(
          multiplicative_domain(channel, cfg.tol, base.fork(kStreamDomains).seed()));
    } else {
      doms["multiplicative"] = {{"note", "channel is not trace-preserving"}};
    }
    results["domains"] = std::move(doms);
  }

  if (selected("irreducibility")) {
    if (channel.is_trace_preserving(cfg.tol).holds()) {
      results["irreducibility"] = verdict_to_json(
          irreducibility_verdict(channel, cfg.tol, base.fork(kStreamIrreducibility).seed(),
                                 cfg.samples.irreducibility),
          cfg.samples.irreducibility);
    } else {
      results["irreducibility"] = {{"note", "channel is not trace-preserving"}};
    }
  }

  if (selected("spectrum")) {
    results["spectrum"] = spectrum_to_json(superoperator_spectrum(channel, cfg.tol));
  }

  if (selected("contraction")) {
    const std::uint64_t seed = base.fork(kStreamContraction).seed();
    const ContractionReport rep =
        nonexpansive_probe(channel, cfg.samples.pairs, seed, cfg.tol);
    if (rep.expansion_witness) {
      throw TheoremViolation(
          "contraction probe found a Bures-distance expanding pair; input is not a channel");
    }
    json c;
    c["pairs_tested"] = rep.pairs_tested;
    c["sample_budget"] = cfg.samples.pairs;
    c["seed"] = seed;
    c["min_ratio"] = rep.min_ratio;
    c["max_ratio"] = rep.max_ratio;
    if (rep.certificate) c["certificate"] = *rep.certificate;
    if (rep.isometric_witness) {
      c["isometric_witness"] = {
          {"a", element_to_json(rep.isometric_witness->first.element())},
          {"b", element_to_json(rep.isometric_witness->second.element())}};
    }
    c["verdict"] =
        verdict_to_json(bures_contraction_probe(channel, cfg.samples.pairs, seed, cfg.tol),
                        cfg.samples.pairs);
    results["contraction"] = std::move(c);
  }

  if (selected("correctability")) {
    if (states.size() >= 2) {
      std::vector<DensityElement> codes;
      codes.reserve(states.size());
      for (const auto& [name, d] : states) codes.push_back(d);
      const auto witness = correctability_obstruction(channel, codes, cfg.tol);
      json c;
      c["obstruction_found"] = witness.has_value();
      if (witness) {
        // Report which states formed the obstruction pair.
        for (const auto& [name, d] : states) {
          if (norm2(d.element() - witness->first.element()) <= 1e-12) c["a"] = name;
          if (norm2(d.element() - witness->second.element()) <= 1e-12) c["b"] = name;
        }
        c["detail"] = "Bures distance strictly shrinks on this pair; no recovery channel exists";
      }
      results["correctability"] = std::move(c);
    } else {
      results["correctability"] = {{"note", "correctability needs at least two states as codes"}};
    }
  }

  AnalysisReport report;
  report.doc["schema"] = "bureslab-report/1";
  report.doc["config"] = cfg.echo;
  report.doc["results"] = std::move(results);
  return report;
}

std::string emit(const AnalysisReport& report, const std::string& format) {
  if (format == "structured-report") {
    return report.doc.dump(2) + "\n";
  }
  if (format == "eigenvalue-table") {
    std::string out = "re,im,modulus,is_peripheral\n";
    if (!report.doc.contains("results") || !report.doc["results"].contains("spectrum")) {
      return out;
    }
    const json& spec = report.doc["results"]["spectrum"];
    const double perron = spec["perron_value"].get<double>();
    const json& tolerances = report.doc["config"]["tolerances"];
    const double tol = tolerances.contains("spectral") ? tolerances["spectral"].get<double>()
                                                       : Tolerances{}.spectral;
    for (const auto& ev : spec["eigenvalues"]) {
      const double re = ev[0].get<double>();
      const double im = ev[1].get<double>();
      const double mod = std::hypot(re, im);
      const int peripheral = std::abs(mod - perron) <= tol ? 1 : 0;
      char buf[128];
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d\n", re, im, mod, peripheral);
      out += buf;
    }
    return out;
  }
  throw ConfigError("emit: unknown output format '" + format + "'");
}

}  // namespace bures
