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

#include "bures/config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bures {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing required field '" + key + "'");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

// Complex entries are [re, im] pairs; a bare number is accepted as a real.
Complex parse_complex(const json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  fail(path, "expected a complex entry [re, im]");
}

Matrix parse_matrix(const json& j, Index rows, Index cols, const std::string& path) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
    std::ostringstream msg;
    msg << "expected " << rows << " rows";
    fail(path, msg.str());
  }
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      std::ostringstream msg;
      msg << "row " << r << ": expected " << cols << " entries";
      fail(path, msg.str());
    }
    for (Index c = 0; c < cols; ++c) {
      std::ostringstream sub;
      sub << path << "[" << r << "][" << c << "]";
      m(r, c) = parse_complex(row[static_cast<std::size_t>(c)], sub.str());
    }
  }
  return m;
}

// An algebra element is an array with one square matrix per block.
AlgElement parse_element(const json& j, const AlgebraSpec& spec, const std::string& path) {
  if (!j.is_array() || j.size() != spec.block_count()) {
    std::ostringstream msg;
    msg << "expected one matrix per block (" << spec.block_count() << " blocks)";
    fail(path, msg.str());
  }
  std::vector<Matrix> blocks;
  blocks.reserve(spec.block_count());
  for (std::size_t b = 0; b < spec.block_count(); ++b) {
    std::ostringstream sub;
    sub << path << "[" << b << "]";
    blocks.push_back(
        parse_matrix(j[b], spec.block_dim(b), spec.block_dim(b), sub.str()));
  }
  return AlgElement(spec, std::move(blocks));
}

AlgebraSpec parse_algebra(const json& j) {
  const json& blocks = require(j, "blocks", "algebra");
  const json& weights = require(j, "weights", "algebra");
  if (!blocks.is_array() || blocks.empty()) fail("algebra.blocks", "expected a nonempty array");
  if (!weights.is_array() || weights.size() != blocks.size()) {
    fail("algebra.weights", "expected one weight per block");
  }
  std::vector<Index> dims;
  std::vector<double> ws;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::ostringstream p;
    p << "algebra.blocks[" << i << "]";
    const double d = as_number(blocks[i], p.str());
    if (d < 1.0 || d != std::floor(d)) fail(p.str(), "block dimension must be a positive integer");
    dims.push_back(static_cast<Index>(d));
    std::ostringstream q;
    q << "algebra.weights[" << i << "]";
    const double w = as_number(weights[i], q.str());
    if (!(w > 0.0)) fail(q.str(), "trace weight must be positive (faithfulness)");
    ws.push_back(w);
  }
  return AlgebraSpec(std::move(dims), std::move(ws));
}

ChannelSpecConfig parse_channel(const json& j, const AlgebraSpec& spec) {
  ChannelSpecConfig out;
  const json& kind = require(j, "kind", "channel");
  if (!kind.is_string()) fail("channel.kind", "expected a string");
  out.kind = kind.get<std::string>();

  static const std::set<std::string> kinds = {
      "identity",        "completely_depolarising", "depolarising",
      "unitary",         "unitary_mixture",         "transpose",
      "choi_schwarz_m2", "kraus",                   "superoperator"};
  if (kinds.count(out.kind) == 0) fail("channel.kind", "unknown channel kind '" + out.kind + "'");

  if (out.kind == "depolarising" || out.kind == "unitary_mixture") {
    out.lambda = as_number(require(j, "lambda", "channel"), "channel.lambda");
    if (out.lambda < 0.0 || out.lambda > 1.0) fail("channel.lambda", "must lie in [0,1]");
  }
  if (out.kind == "unitary" || out.kind == "unitary_mixture") {
    out.u = parse_element(require(j, "u", "channel"), spec, "channel.u");
  }
  if (out.kind == "unitary_mixture") {
    out.v = parse_element(require(j, "v", "channel"), spec, "channel.v");
  }
  if (out.kind == "kraus") {
    const json& ops = require(j, "operators", "channel");
    if (!ops.is_array() || ops.empty()) fail("channel.operators", "expected a nonempty array");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      std::ostringstream p;
      p << "channel.operators[" << i << "]";
      out.kraus_ops.push_back(parse_element(ops[i], spec, p.str()));
    }
  }
  if (out.kind == "superoperator") {
    const Index dim = spec.vector_dim();
    out.superoperator =
        parse_matrix(require(j, "matrix", "channel"), dim, dim, "channel.matrix");
  }
  return out;
}

std::vector<StateConfig> parse_states(const json& j, const AlgebraSpec& spec) {
  std::vector<StateConfig> out;
  if (!j.is_array()) fail("states", "expected an array");
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::ostringstream p;
    p << "states[" << i << "]";
    const json& s = j[i];
    if (!s.is_object()) fail(p.str(), "expected an object");
    StateConfig st;
    st.name = s.contains("name") && s["name"].is_string() ? s["name"].get<std::string>()
                                                          : "state" + std::to_string(i);
    if (s.contains("matrix")) {
      st.kind = "matrix";
      st.matrix = parse_element(s["matrix"], spec, p.str() + ".matrix");
    } else {
      const json& kind = require(s, "kind", p.str());
      if (!kind.is_string()) fail(p.str() + ".kind", "expected a string");
      st.kind = kind.get<std::string>();
      if (st.kind == "basis_state") {
        const double b = as_number(require(s, "block", p.str()), p.str() + ".block");
        const double idx = as_number(require(s, "index", p.str()), p.str() + ".index");
        if (b < 0 || b >= static_cast<double>(spec.block_count())) {
          fail(p.str() + ".block", "block index out of range");
        }
        st.block = static_cast<std::size_t>(b);
        if (idx < 0 || idx >= static_cast<double>(spec.block_dim(st.block))) {
          fail(p.str() + ".index", "entry index out of range");
        }
        st.index = static_cast<Index>(idx);
      } else if (st.kind == "centre") {
        // nothing else
      } else if (st.kind == "random") {
        if (s.contains("rank")) {
          const double r = as_number(s["rank"], p.str() + ".rank");
          if (r < 1) fail(p.str() + ".rank", "rank must be >= 1");
          st.rank = static_cast<Index>(r);
        }
      } else {
        fail(p.str() + ".kind", "unknown state kind '" + st.kind + "'");
      }
    }
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace

json element_to_json(const AlgElement& x) {
  json blocks = json::array();
  for (std::size_t j = 0; j < x.block_count(); ++j) {
    json rows = json::array();
    for (Index r = 0; r < x.block(j).rows(); ++r) {
      json row = json::array();
      for (Index c = 0; c < x.block(j).cols(); ++c) {
        row.push_back({x.block(j)(r, c).real(), x.block(j)(r, c).imag()});
      }
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return blocks;
}

const std::vector<std::string>& all_analyses() {
  static const std::vector<std::string> names = {
      "metrics",  "properties",  "domains",       "irreducibility",
      "spectrum", "contraction", "correctability"};
  return names;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");

  RunConfig cfg;
  cfg.algebra = parse_algebra(require(doc, "algebra", "config"));
  cfg.channel = parse_channel(require(doc, "channel", "config"), cfg.algebra);
  if (doc.contains("states")) {
    cfg.states = parse_states(doc["states"], cfg.algebra);
  }

  if (doc.contains("analyses")) {
    if (!doc["analyses"].is_array()) fail("analyses", "expected an array of analysis names");
    cfg.analyses_given = true;
    for (std::size_t i = 0; i < doc["analyses"].size(); ++i) {
      const json& a = doc["analyses"][i];
      std::ostringstream p;
      p << "analyses[" << i << "]";
      if (!a.is_string()) fail(p.str(), "expected a string");
      const std::string name = a.get<std::string>();
      if (std::find(all_analyses().begin(), all_analyses().end(), name) ==
          all_analyses().end()) {
        fail(p.str(), "unknown analysis '" + name + "'");
      }
      cfg.analyses.push_back(name);
    }
  } else {
    cfg.analyses = all_analyses();
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      fail("seed", "expected a nonnegative integer");
    }
    const auto s = doc["seed"].get<std::int64_t>();
    if (s < 0) fail("seed", "expected a nonnegative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  }

  if (doc.contains("samples")) {
    const json& s = doc["samples"];
    const auto budget = [&](const json& node, const std::string& path) {
      const double n = as_number(node, path);
      if (n < 1 || n > 100000) fail(path, "sample budget must lie in [1, 100000]");
      return static_cast<int>(n);
    };
    if (s.is_number()) {
      const int n = budget(s, "samples");
      cfg.samples = SampleBudgets{n, n, n, n};
    } else if (s.is_object()) {
      if (s.contains("pairs")) cfg.samples.pairs = budget(s["pairs"], "samples.pairs");
      if (s.contains("schwarz")) cfg.samples.schwarz = budget(s["schwarz"], "samples.schwarz");
      if (s.contains("k_positive")) {
        cfg.samples.k_positive = budget(s["k_positive"], "samples.k_positive");
      }
      if (s.contains("irreducibility")) {
        cfg.samples.irreducibility = budget(s["irreducibility"], "samples.irreducibility");
      }
    } else {
      fail("samples", "expected a number or an object of budgets");
    }
  }

  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) fail("tolerances", "expected an object");
    const auto tolval = [&](const char* key, double fallback) {
      if (!t.contains(key)) return fallback;
      const double v = as_number(t[key], std::string("tolerances.") + key);
      if (!(v > 0.0)) fail(std::string("tolerances.") + key, "tolerance must be positive");
      return v;
    };
    cfg.tol.herm = tolval("herm", cfg.tol.herm);
    cfg.tol.psd = tolval("psd", cfg.tol.psd);
    cfg.tol.zero = tolval("zero", cfg.tol.zero);
    cfg.tol.recon = tolval("recon", cfg.tol.recon);
    cfg.tol.fid = tolval("fid", cfg.tol.fid);
    cfg.tol.fix = tolval("fix", cfg.tol.fix);
    cfg.tol.spectral = tolval("spectral", cfg.tol.spectral);
  }

  if (doc.contains("output")) {
    if (!doc["output"].is_string()) fail("output", "expected a string");
    cfg.output = doc["output"].get<std::string>();
    if (cfg.output != "structured-report" && cfg.output != "eigenvalue-table") {
      fail("output", "unknown output format '" + cfg.output + "'");
    }
  }

  // Normalized echo: the parsed configuration re-serialized, so reports are
  // reproducible documents independent of input formatting.
  json echo;
  echo["algebra"] = {{"blocks", doc["algebra"]["blocks"]}, {"weights", doc["algebra"]["weights"]}};
  echo["channel"] = doc["channel"];
  if (doc.contains("states")) echo["states"] = doc["states"];
  echo["analyses"] = cfg.analyses;
  echo["seed"] = cfg.seed;
  echo["samples"] = {{"pairs", cfg.samples.pairs},
                     {"schwarz", cfg.samples.schwarz},
                     {"k_positive", cfg.samples.k_positive},
                     {"irreducibility", cfg.samples.irreducibility}};
  echo["tolerances"] = {{"herm", cfg.tol.herm}, {"psd", cfg.tol.psd},
                        {"zero", cfg.tol.zero}, {"recon", cfg.tol.recon},
                        {"fid", cfg.tol.fid},   {"fix", cfg.tol.fix},
                        {"spectral", cfg.tol.spectral}};
  echo["output"] = cfg.output;
  cfg.echo = std::move(echo);
  return cfg;
}

}  // namespace bures
