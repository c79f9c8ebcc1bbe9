#pragma once

#include "contexture/measures.hpp"
#include "contexture/scenario.hpp"

namespace contexture {

// Raised instead of producing a report when the input signals; carries the
// per-property marginal mismatches.
class SignalingError : public std::runtime_error {
  public:
    explicit SignalingError(NoSignalingReport report);
    const NoSignalingReport& report() const { return report_; }

  private:
    NoSignalingReport report_;
};

struct AnalysisReport {
    Scenario scenario;
    NoSignalingReport no_signaling;
    std::optional<Rational> s_value;  // S_LG / S_CHSH for the standard shapes
    MeasureResult gamma_min;
    MeasureResult delta_min;
    bool equal = false;  // gamma_min.value == delta_min.value
};

// Runs the full pipeline: no-signaling check, both LP measures, closed forms
// where the shape permits. Throws SignalingError on signaling input.
AnalysisReport analyze(const Scenario& s);

// True iff the report is internally consistent: both measures agree with each
// other and with their closed forms.
bool report_consistent(const AnalysisReport& report);

std::string report_to_json(const AnalysisReport& report, bool include_witnesses);
std::string report_to_text(const AnalysisReport& report, bool include_witnesses);

// "p/q (~ 0.123456)" for humans.
std::string pretty_rational(const Rational& q);

}  // namespace contexture
