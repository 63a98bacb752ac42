#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "krf/flow.hpp"
#include "krf/singularity.hpp"

namespace krf::cli {

enum Exit { kOk = 0, kInternal = 1, kInvalidConfig = 2, kFailure = 3, kNotAccepted = 4 };

std::string error_line(int code, const std::string& field, const std::string& msg);

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_run(const RunConfig& cfg, const std::filesystem::path& out_dir, bool accept, std::ostream& out,
            std::ostream& err);
int cmd_verify_curvature(const RunConfig& cfg, const std::filesystem::path* out_dir, std::ostream& out,
                         std::ostream& err);
int cmd_report(const RunConfig& cfg, const std::filesystem::path& run_dir, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::filesystem::path& sweep_file, const std::filesystem::path* out_base, bool accept,
              std::ostream& out, std::ostream& err);

// full command line, as the krf executable sees it
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string summary_json(const FlowSchedule& schedule, const std::vector<MonitorSet>& rows,
                         const TypeThresholds& th = {});
std::vector<MonitorSet> read_monitor_rows(const std::filesystem::path& run_dir);

}  // namespace krf::cli
