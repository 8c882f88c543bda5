#include "incmeter/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>

#include "incmeter/error.hpp"

namespace incmeter {

ProcessResult run_process(const std::string& path, const std::vector<std::string>& args, Deadline deadline) {
    int fds[2];
    if (pipe(fds) != 0) throw BackendError(std::string("pipe: ") + std::strerror(errno));

    std::vector<std::string> argv_store;
    argv_store.push_back(path);
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    argv.push_back(nullptr);

    pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        throw BackendError(std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
        dup2(fds[1], STDOUT_FILENO);
        int devnull = open("/dev/null", O_WRONLY);
        if (devnull >= 0) dup2(devnull, STDERR_FILENO);
        close(fds[0]);
        close(fds[1]);
        // Own process group so a wrapper script and its children die together.
        setpgid(0, 0);
        execvp(argv[0], argv.data());
        _exit(127);
    }
    close(fds[1]);

    ProcessResult res;
    char buf[65536];
    bool open_pipe = true;
    while (open_pipe) {
        int wait_ms = -1;
        if (deadline.bounded()) {
            double rem = deadline.remaining_seconds();
            if (rem <= 0) {
                res.timed_out = true;
                break;
            }
            wait_ms = static_cast<int>(std::min(rem * 1000.0 + 1, 1e9));
        }
        pollfd p{fds[0], POLLIN, 0};
        int r = poll(&p, 1, wait_ms);
        if (r < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (r == 0) continue;
        ssize_t n = read(fds[0], buf, sizeof buf);
        if (n > 0) {
            res.output.append(buf, static_cast<std::size_t>(n));
        } else if (n == 0 || errno != EINTR) {
            open_pipe = false;
        }
    }
    close(fds[0]);
    if (res.timed_out) {
        kill(-pid, SIGKILL);
        kill(pid, SIGKILL);
    }
    int status = 0;
    while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
    if (res.exit_code == 127 && res.output.empty() && !res.timed_out)
        throw BackendError("cannot execute '" + path + "'");
    return res;
}

TempFile::TempFile(const std::string& suffix, const std::string& contents) {
    auto dir = std::filesystem::temp_directory_path();
    std::string tmpl = (dir / ("incmeter-XXXXXX" + suffix)).string();
    std::vector<char> name(tmpl.begin(), tmpl.end());
    name.push_back('\0');
    int fd = mkstemps(name.data(), static_cast<int>(suffix.size()));
    if (fd < 0) throw BackendError(std::string("mkstemps: ") + std::strerror(errno));
    path_ = name.data();
    std::size_t off = 0;
    while (off < contents.size()) {
        ssize_t n = write(fd, contents.data() + off, contents.size() - off);
        if (n <= 0) {
            close(fd);
            std::remove(path_.c_str());
            throw BackendError("cannot write temporary file");
        }
        off += static_cast<std::size_t>(n);
    }
    close(fd);
}

TempFile::~TempFile() { std::remove(path_.c_str()); }

}  // namespace incmeter
