#pragma once

#include <string>
#include <vector>

#include "incmeter/solver.hpp"

namespace incmeter {

struct ProcessResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string output;  // stdout
};

// Runs path with args; the process is killed once the deadline passes.
ProcessResult run_process(const std::string& path, const std::vector<std::string>& args, Deadline deadline);

// Temporary file removed on destruction.
class TempFile {
  public:
    TempFile(const std::string& suffix, const std::string& contents);
    ~TempFile();
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

}  // namespace incmeter
