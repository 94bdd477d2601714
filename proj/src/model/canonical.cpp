// Copyright 2026 The sage-forge Authors
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

#include "sageforge/model/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "sageforge/util/hash.hpp"
#include "sageforge/util/numfmt.hpp"

namespace sageforge::model {

namespace {

/// Assigns each distinct signature string a rank in sorted order.
std::vector<int> rank_of(const std::vector<std::string>& sigs) {
  std::vector<std::string> sorted = sigs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::map<std::string, int> rank;
  for (size_t i = 0; i < sorted.size(); ++i) rank[sorted[i]] = (int)i;
  std::vector<int> out(sigs.size());
  for (size_t i = 0; i < sigs.size(); ++i) out[i] = rank.at(sigs[i]);
  return out;
}

std::string joined_sorted(std::vector<std::string> parts) {
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) {
    out += p;
    out += ';';
  }
  return out;
}

}  // namespace

CanonicalForm canonicalize(const FlatModel& m) {
  const size_t nv = m.vars.size();
  const size_t nc = m.constraints.size();

  std::vector<double> obj_coef(nv, 0.0);
  for (const auto& [idx, coef] : m.objective) obj_coef[idx] = coef;

  // incidence[v] = (constraint index, coefficient)
  std::vector<std::vector<std::pair<int, double>>> incidence(nv);
  for (size_t c = 0; c < nc; ++c)
    for (const auto& [idx, coef] : m.constraints[c].coefs)
      incidence[idx].emplace_back((int)c, coef);

  // Pass structure: local variable fingerprint, constraints over it, then
  // one refinement of each side through the other's classes.
  std::vector<std::string> vsig0(nv);
  for (size_t v = 0; v < nv; ++v) {
    const auto& var = m.vars[v];
    vsig0[v] = std::string(to_string(var.domain)) + "|" +
               format_exact(var.lower) + "|" + format_exact(var.upper) + "|" +
               format_exact(obj_coef[v]);
  }
  std::vector<int> vrank0 = rank_of(vsig0);

  auto csig_from = [&](const std::vector<int>& vrank) {
    std::vector<std::string> out(nc);
    for (size_t c = 0; c < nc; ++c) {
      const auto& con = m.constraints[c];
      std::vector<std::string> terms;
      for (const auto& [idx, coef] : con.coefs)
        terms.push_back("v" + std::to_string(vrank[idx]) + ":" +
                        format_exact(coef));
      out[c] = std::string(to_string(con.sense)) + "|" +
               format_exact(con.rhs) + "|" + joined_sorted(std::move(terms));
    }
    return out;
  };
  auto vsig_from = [&](const std::vector<std::string>& base,
                       const std::vector<int>& crank) {
    std::vector<std::string> out(nv);
    for (size_t v = 0; v < nv; ++v) {
      std::vector<std::string> inc;
      for (const auto& [c, coef] : incidence[v])
        inc.push_back("c" + std::to_string(crank[c]) + ":" +
                      format_exact(coef));
      out[v] = base[v] + "#" + joined_sorted(std::move(inc));
    }
    return out;
  };

  std::vector<std::string> csig0 = csig_from(vrank0);
  std::vector<int> crank0 = rank_of(csig0);
  std::vector<std::string> vsig1 = vsig_from(vsig0, crank0);
  std::vector<int> vrank1 = rank_of(vsig1);
  std::vector<std::string> csig1 = csig_from(vrank1);

  // Render per refined class, with multiplicities. Every component below
  // is derived from signatures alone, so renaming variables or permuting
  // constraints cannot change the text.
  std::map<std::string, int> vclass_count;
  for (size_t v = 0; v < nv; ++v) ++vclass_count[vsig1[v]];
  std::map<std::string, int> cclass_count;
  for (size_t c = 0; c < nc; ++c) ++cclass_count[csig1[c]];

  std::ostringstream text;
  text << (m.minimize ? "min" : "max") << " const="
       << format_exact(m.objective_constant) << '\n';
  int k = 0;
  for (const auto& [sig, count] : vclass_count)
    text << "vclass " << k++ << " n=" << count << " " << sig << '\n';
  k = 0;
  for (const auto& [sig, count] : cclass_count)
    text << "cclass " << k++ << " n=" << count << " " << sig << '\n';

  CanonicalForm form;
  form.refined_signature = text.str();
  form.digest = to_hex64(fnv1a64(form.refined_signature));
  return form;
}

bool equivalent(const FlatModel& a, const FlatModel& b) {
  return canonicalize(a).digest == canonicalize(b).digest;
}

}  // namespace sageforge::model
