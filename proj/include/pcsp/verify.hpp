#pragma once

// Verification suites: named groups of finite checks with a stable report.

#include <pcsp/complexes.hpp>
#include <pcsp/io.hpp>

#include <string>
#include <vector>

namespace pcsp {

enum class CheckStatus { pass, fail };

struct CheckRecord {
    std::string id;
    std::string tag; ///< short slug of the claim being checked
    CheckStatus status = CheckStatus::pass;
    double elapsed = 0; ///< seconds
    std::string details;
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckRecord> checks;

    bool passed() const;
    std::size_t failures() const;
};

struct SuiteOptions {
    int jobs = 1;
    Y2Fault y2_fault = Y2Fault::none;
};

/// combinatorics, complexes, homology, bredon, degrees, all.
const std::vector<std::string> & suite_names();

/// Checks run on up to options.jobs threads; report order is fixed. An
/// unknown name raises InvalidParameter.
VerificationReport run_suite(const std::string & name, const SuiteOptions & options = {});

/// One line per check plus a summary line; elapsed times only when timing.
std::string format_report(const VerificationReport & report, bool timing = false);
Json to_json(const VerificationReport & report, bool timing = false);

const char * to_string(CheckStatus s);

} // namespace pcsp
