#pragma once

// Runs the installed CLI binary and captures exit code plus combined output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "paths.hpp"

namespace testcli {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline CliResult run_cli(const std::string& args, const std::string& env_out = "") {
    static int counter = 0;
    std::filesystem::path log =
        testpaths::fresh_dir("cli_log") / ("cli_" + std::to_string(counter++) + ".log");
    std::string cmd;
    if (!env_out.empty()) cmd += "STATEMENT_NET_OUT='" + env_out + "' ";
    cmd += "'" + testpaths::cli_binary() + "' " + args + " >'" + log.string() + "' 2>&1";
    int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.output = slurp(log);
    return r;
}

inline std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

}  // namespace testcli
