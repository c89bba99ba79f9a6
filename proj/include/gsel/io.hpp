#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <string>

#include "gsel/harness.hpp"

namespace gsel {

// Shortest representation that round-trips through a double.
std::string format_double(double v);

// results schema: policy,m,T_checkpoint,ipcs,std_error,macros,seed
void write_results_header(std::ostream& os);
void write_results_rows(std::ostream& os, const std::string& policy, int m,
                        const IpcsCurve& curve, std::uint64_t seed);

// ratio report schema: alternative,mean_ratio,theory_ratio,residual
// (alternatives are 1-based in files; theory columns empty when unavailable)
void write_ratio_report(std::ostream& os, const RatioReport& report);

// ratios solver schema: alternative,ratio,balance_residual,closure_residual,converged
void write_ratio_solution(std::ostream& os, const Eigen::VectorXd& r, double balance,
                          double closure, bool converged);

// validate-approx schema: d,region_estimate,ball_value,gap
void write_approx_header(std::ostream& os);
void write_approx_row(std::ostream& os, double d, double region, double ball, double gap);

// inventory oracle schema: alternative,s,S,mean_cost,std_error
void write_oracle_header(std::ostream& os);
void write_oracle_row(std::ostream& os, int alternative_1based, int s, int S, double mean_cost,
                      double std_error);

}  // namespace gsel
