#include "embedrank/pipeline.hpp"

#include <algorithm>

#include "embedrank/error.hpp"
#include "embedrank/geometry.hpp"

namespace embedrank {

std::optional<std::size_t> block_in_orbit(const IncidenceStructure& d, std::size_t orbit_length) {
  for (const auto& orbit : block_orbits(automorphism_group(d))) {
    if (orbit.size() == orbit_length) return orbit.front();
  }
  return std::nullopt;
}

SearchStage search_stage(const IncidenceStructure& d, std::size_t block_idx,
                         const std::vector<IncidenceStructure>& known, int workers) {
  SearchStage stage;
  stage.block = block_idx;
  stage.result = embedding_search(d, block_idx, std::nullopt, workers);
  std::vector<CanonicalCert> certs;
  for (const auto& k : known) certs.push_back(canonical_cert(k));
  for (const auto& c : stage.result.iso_classes) {
    if (std::find(certs.begin(), certs.end(), c.cert) == certs.end()) {
      stage.discovered = c.representative;
      break;
    }
  }
  return stage;
}

AffineFamily64 discover_family(int workers) {
  AffineFamily64 fam;
  fam.ag = ag_design(3, 4, 2).design;
  fam.ag.set_name("AG2(3,4)");
  fam.first = search_stage(fam.ag, 0, {fam.ag}, workers);
  if (!fam.first.discovered) throw Error(ErrorCode::InfeasibleInstance, "first search found no new design");
  fam.e1 = *fam.first.discovered;
  fam.e1.set_name("E1");
  const auto b1 = block_in_orbit(fam.e1, 3);
  if (!b1) throw Error(ErrorCode::InfeasibleInstance, "E1 has no block orbit of length 3");
  fam.second = search_stage(fam.e1, *b1, {fam.ag, fam.e1}, workers);
  if (!fam.second.discovered) throw Error(ErrorCode::InfeasibleInstance, "second search found no new design");
  fam.e2 = *fam.second.discovered;
  fam.e2.set_name("E2");
  return fam;
}

}  // namespace embedrank
