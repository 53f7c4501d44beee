#include "qrand/report.hpp"

namespace qrand {

using nlohmann::json;

json to_json(const BiasReport& report) {
  return {{"max_bias", report.max_bias}, {"witness", report.witness.to_string()}, {"scanned", report.scanned}};
}

json to_json(const VaziraniReport& report) {
  return {{"k", report.k},
          {"epsilon_k", report.epsilon_k},
          {"max_point_deviation", report.max_point_deviation},
          {"point_bound", report.point_bound},
          {"max_marginal_distance", report.max_marginal_distance},
          {"distance_bound", report.distance_bound},
          {"subsets_checked", report.subsets_checked},
          {"violations", report.violations}};
}

json to_json(const Certificate& cert) {
  return {{"n", cert.n},
          {"m", cert.m},
          {"key_bits", cert.key_bits},
          {"delta", cert.delta},
          {"witness_u", BitVector::from_word(cert.n, cert.witness_u).to_string()},
          {"witness_v", BitVector::from_word(cert.n, cert.witness_v).to_string()},
          {"certified_epsilon", cert.certified_epsilon}};
}

json state_to_json(const StateVector& psi) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < psi.size(); ++i) amps.push_back({psi(i).real(), psi(i).imag()});
  return amps;
}

json to_json(const AttackReport& report) {
  return {{"epsilon_hat", report.epsilon_hat},
          {"norm_kind", std::string(to_string(report.norm_kind))},
          {"probes", report.probes},
          {"families_used", report.families_used},
          {"witness_origin", report.witness_origin},
          {"candidates", report.candidates},
          {"climb_improvements", report.climb_improvements},
          {"witness", state_to_json(report.witness)}};
}

json to_json(const DiagnosticsReport& report) {
  return {{"sigma_v_max", report.sigma_v_max},
          {"sigma_v_witness", report.sigma_v_witness},
          {"cat_max", report.cat_max},
          {"cat_witness", report.cat_witness},
          {"stabilizer_max", report.stabilizer_max},
          {"stabilizer_witness", report.stabilizer_witness},
          {"stabilizer_groups", report.stabilizer_groups},
          {"certified_epsilon", report.certified_epsilon},
          {"rank_bound_ok", report.rank_bound_ok},
          {"exhaustive", report.exhaustive}};
}

}  // namespace qrand
