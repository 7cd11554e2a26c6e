#ifndef DELTAPROP_VERIFY_HPP
#define DELTAPROP_VERIFY_HPP

#include <string>
#include <vector>

namespace deltaprop::verify {

struct CheckResult {
  std::string name;
  double measured = 0.0;   // the quantity compared against the tolerance
  double tolerance = 0.0;
  bool pass = false;
};

/// Fixture directory: $DELTAPROP_FIXTURES when set, otherwise the
/// compiled-in data directory.
std::string fixtures_dir();

std::vector<CheckResult> verify_specfun(const std::string& fixtures);
std::vector<CheckResult> verify_kernels();
std::vector<CheckResult> verify_dynamics();
std::vector<CheckResult> verify_oracle();
std::vector<CheckResult> verify_all(const std::string& fixtures);

bool all_pass(const std::vector<CheckResult>& results);

/// Long-running TDSE certifications (acceptance criterion machinery, not
/// part of cmd_verify): closed form vs grid solver with sigma halving.
/// Returns the L2 relative errors for the two sigma values, coarse first.
struct TdseCertification {
  double l2_coarse = 0.0;
  double l2_fine = 0.0;
  double l2_extrapolated = 0.0;
  bool monotone() const { return l2_fine < l2_coarse; }
};
TdseCertification certify_shutter_tdse();
TdseCertification certify_sine_packet_tdse();

}  // namespace deltaprop::verify

#endif
