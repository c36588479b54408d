// Copyright 2026 The ionsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ionsynth/targets.hpp"

#include <cmath>

#include "ionsynth/io.hpp"

namespace ionsynth {

namespace {

cplx ipow(cplx z, int n) {
  cplx r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

TargetState finish(StateVector s) {
  const double mass = s.norm_squared();
  s.normalize();
  return {std::move(s), mass};
}

}  // namespace

TargetState target_corr(cplx alpha, Truncation t) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw DomainError("alpha must be finite");
  }
  StateVector s(t);
  const double envelope = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; 3 * n <= t.jmax(); ++n) {
    s.at({{n, n, n}, Level::a}) = envelope * ipow(alpha, n) / std::sqrt(factorial(n));
  }
  return finish(std::move(s));
}

TargetState target_diag(Truncation t) {
  if (t.jmax() < 12) throw DomainError("diag target needs jmax >= 12");
  StateVector s(t);
  const double amp = 1.0 / std::sqrt(5.0);
  for (int n = 0; n <= 4; ++n) s.at({{n, n, n}, Level::a}) = amp;
  return {std::move(s), 1.0};
}

TargetState target_ghz(cplx alpha, Truncation t) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw DomainError("alpha must be finite");
  }
  const double a2 = std::norm(alpha);
  // Exact normalization of the untruncated superposition.
  const double norm2 = 1.0 / (2.0 + 2.0 * std::exp(-6.0 * a2));
  const double envelope = std::exp(-1.5 * a2);
  StateVector s(t);
  for (const Component& c : enumerate_basis(t)) {
    if (c.level != Level::a) continue;
    const int j = c.occ.total();
    if (j % 2 != 0) continue;  // the +alpha and -alpha branches cancel
    const double denom =
        std::sqrt(factorial(c.occ.nx) * factorial(c.occ.ny) * factorial(c.occ.nz));
    s.at(c) = 2.0 * envelope * ipow(alpha, j) / denom;
  }
  const double raw = s.norm_squared();
  s.normalize();
  return {std::move(s), norm2 * raw};
}

std::string kind_name(TargetSpec::Kind kind) {
  switch (kind) {
    case TargetSpec::Kind::ghz: return "ghz";
    case TargetSpec::Kind::corr: return "corr";
    case TargetSpec::Kind::diag: return "diag";
    case TargetSpec::Kind::file: return "file";
  }
  return "unknown";
}

TargetSpec parse_target_spec(std::string_view text) {
  TargetSpec spec;
  if (text == "ghz") {
    spec.kind = TargetSpec::Kind::ghz;
  } else if (text == "corr") {
    spec.kind = TargetSpec::Kind::corr;
  } else if (text == "diag") {
    spec.kind = TargetSpec::Kind::diag;
  } else if (text.starts_with("file:") && text.size() > 5) {
    spec.kind = TargetSpec::Kind::file;
    spec.path = std::string(text.substr(5));
  } else {
    throw DomainError("unknown target '" + std::string(text) +
                      "' (expected ghz, corr, diag or file:<path>)");
  }
  return spec;
}

BuiltTarget make_target(const TargetSpec& spec) {
  if (spec.kind == TargetSpec::Kind::file) {
    TargetState ts = load_target(spec.path, spec.jmax);
    TargetTag tag{"file", 0.0, spec.path, ts.kept_mass};
    return {std::move(ts.state), tag};
  }
  const Truncation t(spec.jmax.value_or(kDefaultJmax));
  TargetState ts;
  double alpha = spec.alpha;
  switch (spec.kind) {
    case TargetSpec::Kind::ghz: ts = target_ghz(alpha, t); break;
    case TargetSpec::Kind::corr: ts = target_corr(alpha, t); break;
    default:
      ts = target_diag(t);
      alpha = 0.0;
      break;
  }
  return {std::move(ts.state), TargetTag{kind_name(spec.kind), alpha, "", ts.kept_mass}};
}

BuiltTarget target_from_tag(const TargetTag& tag, Truncation t) {
  TargetSpec spec;
  if (tag.kind == "file") {
    spec = parse_target_spec("file:" + tag.path);
  } else {
    spec = parse_target_spec(tag.kind);
    spec.alpha = tag.alpha;
  }
  spec.jmax = t.jmax();
  BuiltTarget bt = make_target(spec);
  bt.state = embed(bt.state, t);
  return bt;
}

std::vector<BuiltinInfo> builtin_targets() {
  return {
      {"ghz", "N(|alpha,alpha,alpha> + |-alpha,-alpha,-alpha>), default alpha = 1, jmax = 12"},
      {"corr", "exp(-|alpha|^2/2) sum_n alpha^n/sqrt(n!) |n,n,n>, default alpha = 1, jmax = 12"},
      {"diag", "(1/sqrt 5) sum_{n=0..4} |n,n,n>, needs jmax >= 12"},
      {"file:<path>", "JSON list of {\"n\": [nx,ny,nz], \"re\": .., \"im\": ..}, unit norm"},
  };
}

}  // namespace ionsynth
