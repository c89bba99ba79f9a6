#include "gsel/io.hpp"

#include <charconv>
#include <cmath>

namespace gsel {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_results_header(std::ostream& os) {
  os << "policy,m,T_checkpoint,ipcs,std_error,macros,seed\n";
}

void write_results_rows(std::ostream& os, const std::string& policy, int m,
                        const IpcsCurve& curve, std::uint64_t seed) {
  for (size_t c = 0; c < curve.checkpoints.size(); ++c) {
    os << policy << ',' << m << ',' << curve.checkpoints[c] << ','
       << format_double(curve.ipcs[c]) << ',' << format_double(curve.std_error[c]) << ','
       << curve.macros << ',' << seed << '\n';
  }
}

void write_ratio_report(std::ostream& os, const RatioReport& report) {
  os << "alternative,mean_ratio,theory_ratio,residual\n";
  const int k = static_cast<int>(report.mean_ratios.size());
  for (int i = 0; i < k; ++i) {
    os << (i + 1) << ',' << format_double(report.mean_ratios[i]) << ',';
    const double theory = report.theory_ratios[i];
    if (std::isnan(theory)) {
      os << ",";
    } else {
      os << format_double(theory) << ','
         << format_double(std::fabs(report.mean_ratios[i] - theory));
    }
    os << '\n';
  }
}

void write_ratio_solution(std::ostream& os, const Eigen::VectorXd& r, double balance,
                          double closure, bool converged) {
  os << "alternative,ratio,balance_residual,closure_residual,converged\n";
  for (int i = 0; i < r.size(); ++i) {
    os << (i + 1) << ',' << format_double(r[i]) << ',' << format_double(balance) << ','
       << format_double(closure) << ',' << (converged ? 1 : 0) << '\n';
  }
}

void write_approx_header(std::ostream& os) { os << "d,region_estimate,ball_value,gap\n"; }

void write_approx_row(std::ostream& os, double d, double region, double ball, double gap) {
  os << format_double(d) << ',' << format_double(region) << ',' << format_double(ball) << ','
     << format_double(gap) << '\n';
}

void write_oracle_header(std::ostream& os) {
  os << "alternative,s,S,mean_cost,std_error\n";
}

void write_oracle_row(std::ostream& os, int alternative_1based, int s, int S, double mean_cost,
                      double std_error) {
  os << alternative_1based << ',' << s << ',' << S << ',' << format_double(mean_cost) << ','
     << format_double(std_error) << '\n';
}

}  // namespace gsel
